#include "annealdyn/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "annealdyn/schedules.hpp"

namespace annealdyn {

SpinConfiguration::SpinConfiguration(std::vector<int> spins) : spins_(std::move(spins)) {
  if (spins_.empty() || spins_.size() > kMaxQubits)
    throw std::invalid_argument("spin configuration size must be in [1, 24]");
  for (int s : spins_)
    if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
}

SpinConfiguration SpinConfiguration::from_index(int n, std::uint64_t index) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 24]");
  if (index >= (std::uint64_t{1} << n)) throw std::invalid_argument("basis index out of range");
  std::vector<int> spins(n);
  for (int k = 0; k < n; ++k) spins[k] = spin_of(index, n, k);
  return SpinConfiguration(std::move(spins));
}

SpinConfiguration SpinConfiguration::parse(std::string_view text) {
  std::vector<int> spins;
  for (char ch : text) {
    switch (ch) {
      case '+': case 'u': case 'U': case '1': spins.push_back(1); break;
      case '-': case 'd': case 'D': case '0': spins.push_back(-1); break;
      case ' ': case '\t': case '\r': case ',': break;
      default: throw std::invalid_argument("unrecognized spin token '" + std::string(1, ch) + "'");
    }
  }
  return SpinConfiguration(std::move(spins));
}

std::uint64_t SpinConfiguration::index() const {
  std::uint64_t idx = 0;
  for (int s : spins_) idx = (idx << 1) | (s == -1 ? 1u : 0u);
  return idx;
}

IsingProblem::IsingProblem(std::vector<double> fields, std::vector<Coupling> couplings,
                           ProblemLimits limits)
    : fields_(std::move(fields)), couplings_(std::move(couplings)), limits_(limits) {
  const int n = size();
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 24]");
  for (double h : fields_) {
    if (!std::isfinite(h)) throw std::invalid_argument("non-finite field");
    if (std::abs(h) > limits_.max_abs_field)
      throw std::invalid_argument("field magnitude " + std::to_string(h) + " exceeds limit");
  }
  for (auto& c : couplings_) {
    if (c.i < c.j) std::swap(c.i, c.j);
    if (c.j < 0 || c.i >= n) throw std::invalid_argument("coupling index out of range");
    if (c.i == c.j) throw std::invalid_argument("self-coupling is not allowed");
    if (!std::isfinite(c.value)) throw std::invalid_argument("non-finite coupling");
    if (std::abs(c.value) > limits_.max_abs_coupling)
      throw std::invalid_argument("coupling magnitude " + std::to_string(c.value) +
                                  " exceeds limit");
  }
  std::sort(couplings_.begin(), couplings_.end(),
            [](const Coupling& a, const Coupling& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (std::size_t k = 1; k < couplings_.size(); ++k)
    if (couplings_[k].i == couplings_[k - 1].i && couplings_[k].j == couplings_[k - 1].j)
      throw std::invalid_argument("duplicate coupling (" + std::to_string(couplings_[k].i) + ", " +
                                  std::to_string(couplings_[k].j) + ")");
}

IsingProblem IsingProblem::single_spin(double h) { return IsingProblem({h}, {}); }

IsingProblem IsingProblem::two_spin(double h1, double h2, double J) {
  return IsingProblem({h1, h2}, {{1, 0, J}});
}

IsingProblem IsingProblem::chain(int n, double J) {
  std::vector<Coupling> cs;
  for (int k = 1; k < n; ++k) cs.push_back({k, k - 1, J});
  return IsingProblem(std::vector<double>(n, 0.0), std::move(cs));
}

double IsingProblem::coupling(int i, int j) const {
  if (i < j) std::swap(i, j);
  for (const auto& c : couplings_)
    if (c.i == i && c.j == j) return c.value;
  return 0.0;
}

double IsingProblem::max_abs_field() const {
  double m = 0.0;
  for (double h : fields_) m = std::max(m, std::abs(h));
  return m;
}

double IsingProblem::energy(const SpinConfiguration& c) const {
  if (c.size() != size()) throw std::invalid_argument("configuration size does not match problem");
  return energy(c.index());
}

double IsingProblem::field_energy(std::uint64_t index) const {
  const int n = size();
  double e = 0.0;
  for (int k = 0; k < n; ++k) e += fields_[k] * spin_of(index, n, k);
  return e;
}

double IsingProblem::coupling_energy(std::uint64_t index) const {
  const int n = size();
  double e = 0.0;
  for (const auto& c : couplings_) e += c.value * spin_of(index, n, c.i) * spin_of(index, n, c.j);
  return e;
}

double IsingProblem::energy(std::uint64_t index) const {
  if (index >= dimension()) throw std::invalid_argument("basis index out of range");
  return field_energy(index) + coupling_energy(index);
}

std::vector<double> IsingProblem::spectrum() const {
  std::vector<double> e(dimension());
  for (std::uint64_t k = 0; k < e.size(); ++k) e[k] = field_energy(k) + coupling_energy(k);
  return e;
}

IsingProblem named_instance(std::string_view name) {
  if (name == "2S1") return IsingProblem::two_spin(-1.0, -1.0, 0.95);
  if (name == "2S2") return IsingProblem::two_spin(-1.0, -1.0, 1.0);
  if (name == "2S3") return IsingProblem::two_spin(-0.95, -0.95, 1.0);
  if (name == "2S4") return IsingProblem::two_spin(-0.07, 0.05, 0.1);
  throw std::invalid_argument("unknown instance '" + std::string(name) + "'");
}

std::vector<double> EmbeddedProblem::original_marginals(std::span<const double> probabilities) const {
  const int shift = auxiliary_count();
  if (probabilities.size() != embedded.dimension())
    throw std::invalid_argument("distribution size does not match embedded register");
  std::vector<double> out(base.dimension(), 0.0);
  for (std::size_t k = 0; k < probabilities.size(); ++k) out[k >> shift] += probabilities[k];
  return out;
}

double flux_bias_threshold(const IsingProblem& p, const Schedule& schedule) {
  const double hmax = p.max_abs_field();
  double m = 0.0;
  constexpr int kGrid = 4000;
  for (int k = 0; k <= kGrid; ++k) {
    const double s = static_cast<double>(k) / kGrid;
    m = std::max({m, schedule.A(s), schedule.B(s) * hmax});
  }
  return kPi * m;
}

double default_flux_bias(const IsingProblem& p, const Schedule& schedule) {
  return 100.0 * flux_bias_threshold(p, schedule);
}

EmbeddedProblem embed_fast_anneal(const IsingProblem& p, double flux_bias,
                                  const Schedule& schedule) {
  const int n = p.size();
  std::vector<int> aux(n, -1);
  int next = n;
  for (int k = 0; k < n; ++k)
    if (p.field(k) != 0.0) aux[k] = next++;
  if (next == n) return {p, p, aux, 0.0};
  if (next > kMaxQubits) throw std::invalid_argument("embedding exceeds 24 qubits");

  const double threshold = flux_bias_threshold(p, schedule);
  if (!(flux_bias > threshold))
    throw std::invalid_argument("flux bias " + std::to_string(flux_bias) +
                                " rad/ns does not exceed the embedding threshold " +
                                std::to_string(threshold));

  std::vector<Coupling> cs = p.couplings();
  for (int k = 0; k < n; ++k)
    if (aux[k] >= 0) cs.push_back({aux[k], k, p.field(k)});
  ProblemLimits limits = p.limits();
  limits.max_abs_coupling = std::max(limits.max_abs_coupling, limits.max_abs_field);
  IsingProblem embedded(std::vector<double>(next, 0.0), std::move(cs), limits);
  return {p, std::move(embedded), std::move(aux), flux_bias};
}

IsingProblem spin_reversal_transform(const IsingProblem& p, const std::vector<bool>& flips) {
  if (static_cast<int>(flips.size()) != p.size())
    throw std::invalid_argument("flip vector length does not match problem size");
  std::vector<double> h = p.fields();
  for (int k = 0; k < p.size(); ++k)
    if (flips[k]) h[k] = -h[k];
  std::vector<Coupling> cs = p.couplings();
  for (auto& c : cs)
    if (flips[c.i] != flips[c.j]) c.value = -c.value;
  return IsingProblem(std::move(h), std::move(cs), p.limits());
}

std::uint64_t flip_index(std::uint64_t index, int n, const std::vector<bool>& flips) {
  std::uint64_t mask = 0;
  for (int k = 0; k < n; ++k)
    if (flips[k]) mask |= std::uint64_t{1} << (n - 1 - k);
  return index ^ mask;
}

}  // namespace annealdyn
