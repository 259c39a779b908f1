#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "annealdyn/problems.hpp"

namespace annealdyn {

// Frequencies of up-up, up-down, down-up, down-down (problems index order).
struct FrequencyTable {
  std::array<double, 4> f{};
  std::uint64_t count = 0;  // 0 when unknown

  static FrequencyTable from_counts(const std::array<std::uint64_t, 4>& counts);
  static FrequencyTable from_probabilities(std::span<const double> p, std::uint64_t count = 0);
  void validate() const;
};

struct SpinAverages {
  double s1;
  double s2;
  double s12;
};

using Multipliers = std::array<double, 3>;

struct ExtractedModel {
  Multipliers lambda{};
  double beta = 0.0;
  double h1_hat = 0.0;
  double h2_hat = 0.0;
  double J_hat = 0.0;
};

SpinAverages spin_averages(const FrequencyTable& t);

// Multipliers of p ~ exp(-l1 S1 - l2 S2 - l3 S1 S2) matching the table.
Multipliers multipliers_from_frequencies(const FrequencyTable& t);
Multipliers multipliers_from_averages(const SpinAverages& a);
// Normalized exp(-l1 S1 - l2 S2 - l3 S1 S2) in index order.
std::array<double, 4> maxent_distribution(const Multipliers& lambda);

ExtractedModel method1(const FrequencyTable& t, const IsingProblem& p);
// beta solving <E>_data = <E>_Gibbs(beta) for the nominal problem.
double method2(const FrequencyTable& t, const IsingProblem& p);

// f -> (count f + 1/2) / (count + 2); needs a known count.
FrequencyTable add_half_smoothing(const FrequencyTable& t);

// Draws `count` samples from `p` (index order) with the multinomial stream of `seed`.
std::array<std::uint64_t, 4> sample_counts(std::span<const double> p, std::uint64_t count,
                                           std::uint64_t seed);

enum class ExtractionMethod { method1, method2 };

struct BootstrapResult {
  double mean = 0.0;
  double stddev = 0.0;
  int resamples = 0;
  int failures = 0;  // resamples on which the method threw
};

// Multinomial resampling of the table's counts; beta statistics over successful resamples.
BootstrapResult bootstrap_beta(const FrequencyTable& t, const IsingProblem& p, ExtractionMethod m,
                               int resamples = 1000, std::uint64_t seed = 1);

}  // namespace annealdyn
