#pragma once

#include <span>
#include <variant>
#include <vector>

#include "annealdyn/problems.hpp"

namespace annealdyn {

// T = C / beta with C = h B(1) / (2 k_B) in kelvin.
inline constexpr double kTemperatureScaleK = 0.206;
inline constexpr int kMaxGibbsQubits = 20;

double temperature_from_beta(double beta);  // kelvin
double beta_from_temperature(double kelvin);

std::vector<double> gibbs_probabilities(std::span<const double> energies, double beta);
std::vector<double> gibbs_probabilities(const IsingProblem& p, double beta);

struct EnergyLevel {
  double energy;
  int degeneracy;
};

// Distinct energies in increasing order; values within tol are merged.
std::vector<EnergyLevel> energy_levels(const IsingProblem& p, double tol = 1e-9);
std::vector<double> level_probabilities(std::span<const EnergyLevel> levels, double beta);

double mean_energy(std::span<const double> energies, std::span<const double> probabilities);
double gibbs_mean_energy(std::span<const double> energies, double beta);

// Open chain of N spins with uniform coupling J and no fields.
double chain_mean_energy(int N, double J, double beta);

struct ChainObservation {
  int N;
  double J;
  double mean_energy;
};

struct DistributionObservation {
  IsingProblem problem;
  std::vector<double> probabilities;
};

using BetaObservation = std::variant<ChainObservation, DistributionObservation>;

struct BetaFitOptions {
  double beta_max = 1e3;
  double relative_tolerance = 1e-8;
};

// Least-squares beta over all observations.
double fit_beta(std::span<const BetaObservation> observations, BetaFitOptions options = {});

}  // namespace annealdyn
