#include "annealdyn/equilibrium.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "annealdyn/errors.hpp"

namespace annealdyn {

double temperature_from_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return kTemperatureScaleK / beta;
}

double beta_from_temperature(double kelvin) {
  if (!(kelvin > 0.0)) throw std::invalid_argument("temperature must be positive");
  return kTemperatureScaleK / kelvin;
}

std::vector<double> gibbs_probabilities(std::span<const double> energies, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
  if (energies.empty()) throw std::invalid_argument("empty spectrum");
  const double emin = *std::min_element(energies.begin(), energies.end());
  std::vector<double> p(energies.size());
  double z = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::exp(-beta * (energies[k] - emin));
    z += p[k];
  }
  for (double& x : p) x /= z;
  return p;
}

std::vector<double> gibbs_probabilities(const IsingProblem& p, double beta) {
  if (p.size() > kMaxGibbsQubits) throw std::invalid_argument("exhaustive Gibbs limited to 20 qubits");
  const auto e = p.spectrum();
  return gibbs_probabilities(e, beta);
}

std::vector<EnergyLevel> energy_levels(const IsingProblem& p, double tol) {
  auto e = p.spectrum();
  std::sort(e.begin(), e.end());
  std::vector<EnergyLevel> levels;
  for (double x : e) {
    if (!levels.empty() && x - levels.back().energy <= tol)
      ++levels.back().degeneracy;
    else
      levels.push_back({x, 1});
  }
  return levels;
}

std::vector<double> level_probabilities(std::span<const EnergyLevel> levels, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (levels.empty()) throw std::invalid_argument("no levels");
  const double emin = levels.front().energy;
  std::vector<double> p(levels.size());
  double z = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (levels[k].degeneracy < 1) throw std::invalid_argument("degeneracy must be >= 1");
    p[k] = levels[k].degeneracy * std::exp(-beta * (levels[k].energy - emin));
    z += p[k];
  }
  for (double& x : p) x /= z;
  return p;
}

double mean_energy(std::span<const double> energies, std::span<const double> probabilities) {
  if (energies.size() != probabilities.size()) throw std::invalid_argument("size mismatch");
  double e = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) e += energies[k] * probabilities[k];
  return e;
}

double gibbs_mean_energy(std::span<const double> energies, double beta) {
  const auto p = gibbs_probabilities(energies, beta);
  return mean_energy(energies, p);
}

double chain_mean_energy(int N, double J, double beta) {
  if (N < 2) throw std::invalid_argument("chain needs at least two spins");
  return -J * (N - 1) * std::tanh(beta * J);
}

namespace {

double residual(const BetaObservation& obs, double beta) {
  if (const auto* c = std::get_if<ChainObservation>(&obs)) {
    const double d = chain_mean_energy(c->N, c->J, beta) - c->mean_energy;
    return d * d;
  }
  const auto& d = std::get<DistributionObservation>(obs);
  const auto model = gibbs_probabilities(d.problem, beta);
  double r = 0.0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    const double x = model[k] - d.probabilities[k];
    r += x * x;
  }
  return r;
}

void validate(const BetaObservation& obs) {
  if (const auto* c = std::get_if<ChainObservation>(&obs)) {
    if (c->N < 2 || !std::isfinite(c->J) || !std::isfinite(c->mean_energy))
      throw std::invalid_argument("invalid chain observation");
    return;
  }
  const auto& d = std::get<DistributionObservation>(obs);
  if (d.probabilities.size() != d.problem.dimension())
    throw std::invalid_argument("distribution size does not match problem");
}

}  // namespace

double fit_beta(std::span<const BetaObservation> observations, BetaFitOptions options) {
  if (observations.empty()) throw std::invalid_argument("fit_beta needs at least one observation");
  for (const auto& o : observations) validate(o);

  auto cost = [&](double beta) {
    double r = 0.0;
    for (const auto& o : observations) r += residual(o, beta);
    return r;
  };

  // Coarse log-spaced scan, then Brent on the bracketing interval.
  constexpr int kScan = 400;
  const double lo = 1e-6, hi = options.beta_max;
  std::vector<double> grid(kScan + 1);
  grid[0] = 0.0;
  for (int k = 1; k <= kScan; ++k) grid[k] = lo * std::pow(hi / lo, (k - 1.0) / (kScan - 1.0));
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = cost(grid[k]);

  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double scale = std::max(*mx, std::numeric_limits<double>::min());
  if (*mx - *mn <= 1e-14 * scale || *mx == 0.0)
    throw NonIdentifiableError("observations do not depend on beta");

  const auto best = static_cast<std::size_t>(mn - values.begin());
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  const int bits = static_cast<int>(std::ceil(-std::log2(options.relative_tolerance))) + 4;
  boost::uintmax_t iters = 500;
  const auto r = boost::math::tools::brent_find_minima(cost, a, b, std::min(bits, 52), iters);
  return r.first;
}

}  // namespace annealdyn
