#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace annealdyn {

class Schedule;

inline constexpr int kMaxQubits = 24;

struct ProblemLimits {
  double max_abs_field = 4.0;
  double max_abs_coupling = 2.0;
};

// Spin 1 is the most significant bit: index = sum_k (1 - S_k)/2 * 2^(n-1-k),
// so for two spins 0 = up-up, 1 = up-down, 2 = down-up, 3 = down-down.
class SpinConfiguration {
 public:
  explicit SpinConfiguration(std::vector<int> spins);
  static SpinConfiguration from_index(int n, std::uint64_t index);
  static SpinConfiguration parse(std::string_view text);  // "+-" or "ud"

  int size() const { return static_cast<int>(spins_.size()); }
  int spin(int k) const { return spins_[k]; }
  const std::vector<int>& spins() const { return spins_; }
  std::uint64_t index() const;

 private:
  std::vector<int> spins_;
};

// Coupling J_ij stored with i > j (0-based qubit indices).
struct Coupling {
  int i;
  int j;
  double value;
};

class IsingProblem {
 public:
  IsingProblem(std::vector<double> fields, std::vector<Coupling> couplings,
               ProblemLimits limits = {});
  static IsingProblem single_spin(double h);
  static IsingProblem two_spin(double h1, double h2, double J);
  // Open chain with uniform coupling and zero fields.
  static IsingProblem chain(int n, double J);

  int size() const { return static_cast<int>(fields_.size()); }
  std::uint64_t dimension() const { return std::uint64_t{1} << size(); }
  const std::vector<double>& fields() const { return fields_; }
  double field(int i) const { return fields_[i]; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  double coupling(int i, int j) const;
  double max_abs_field() const;
  const ProblemLimits& limits() const { return limits_; }

  double energy(const SpinConfiguration& c) const;
  double energy(std::uint64_t index) const;
  double field_energy(std::uint64_t index) const;     // sum h_i S_i
  double coupling_energy(std::uint64_t index) const;  // sum J_ij S_i S_j
  std::vector<double> spectrum() const;               // energy per index

 private:
  std::vector<double> fields_;
  std::vector<Coupling> couplings_;
  ProblemLimits limits_;
};

// 2S1..2S4 two-spin instances; 2S2 carries J = +1.
IsingProblem named_instance(std::string_view name);

// Spin value (+1/-1) of qubit k in basis index `index` of an n-qubit register.
inline int spin_of(std::uint64_t index, int n, int k) {
  return ((index >> (n - 1 - k)) & 1u) ? -1 : 1;
}

struct EmbeddedProblem {
  IsingProblem base;
  IsingProblem embedded;          // all fields zero
  std::vector<int> auxiliary_of;  // original qubit -> auxiliary qubit, or -1
  double flux_bias;               // rad/ns, enters as -flux_bias * sigma_z on each auxiliary

  int original_size() const { return base.size(); }
  int auxiliary_count() const { return embedded.size() - base.size(); }
  // Marginal over auxiliaries of an embedded-register distribution.
  std::vector<double> original_marginals(std::span<const double> probabilities) const;
};

// pi * max_s max(A(s), B(s) max|h|), sampled on a fine grid (rad/ns).
double flux_bias_threshold(const IsingProblem& p, const Schedule& schedule);
double default_flux_bias(const IsingProblem& p, const Schedule& schedule);

// Auxiliaries are appended after the original qubits in order of appearance.
EmbeddedProblem embed_fast_anneal(const IsingProblem& p, double flux_bias,
                                  const Schedule& schedule);

IsingProblem spin_reversal_transform(const IsingProblem& p, const std::vector<bool>& flips);
std::uint64_t flip_index(std::uint64_t index, int n, const std::vector<bool>& flips);

}  // namespace annealdyn
