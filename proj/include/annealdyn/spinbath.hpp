#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"

namespace annealdyn {

inline constexpr int kMaxBathSpins = 20;

struct BathSpec {
  int bath_spins = 16;
  double g = 0.001;
  double K = 1.0;      // GHz
  double Omega = 0.1;  // GHz
  std::uint64_t seed = 1;

  void validate() const;
};

// K[n][m][alpha] couples bath spin n to system spin m; Omega[n][alpha] is the bath field.
struct BathCouplings {
  std::vector<std::array<std::array<double, 3>, 2>> K;
  std::vector<std::array<double, 3>> Omega;
};

// Couplings stream: K drawn with n outer, m middle, alpha (x, y, z) inner, then Omega
// with n outer, alpha inner, all uniform on the symmetric interval.
BathCouplings draw_bath_couplings(const BathSpec& bath);

// Amplitude c(i, p) lives at index p * 4 + i: system index i in the low two bits,
// bath spin n at bit n + 2. Real and imaginary parts are stored separately.
class CompositeState {
 public:
  explicit CompositeState(int bath_spins);

  int bath_spins() const { return bath_spins_; }
  std::size_t dimension() const { return re_.size(); }
  std::vector<double>& re() { return re_; }
  std::vector<double>& im() { return im_; }
  const std::vector<double>& re() const { return re_; }
  const std::vector<double>& im() const { return im_; }
  std::complex<double> amplitude(int i, std::size_t p) const {
    return {re_[p * 4 + static_cast<std::size_t>(i)], im_[p * 4 + static_cast<std::size_t>(i)]};
  }

  double norm() const;  // fixed-order blocked summation
  std::array<double, 4> system_populations() const;
  Eigen::Matrix4cd reduced_density_matrix() const;

 private:
  int bath_spins_;
  std::vector<double> re_;
  std::vector<double> im_;
};

// |++> (x) |Phi>, with Phi built from independent standard complex Gaussian amplitudes
// (bath-state stream) and normalized; the phase is fixed so that c(0, 0) is real and >= 0.
CompositeState init_state(int bath_spins, std::uint64_t seed);

struct BathRunOptions {
  double dt_ns = 0.01;
  int threads = 1;
  std::size_t observe_every = 0;  // 0 disables the observer
  std::function<void(double t_ns, const CompositeState&)> observer{};
};

struct BathRunResult {
  std::array<double, 4> populations;
  double norm_drift;
  std::size_t steps;
  double seconds;
};

// Second-order product formula: consecutive steps apply the same factors in opposite
// order. Factors are the exact system propagator at the step midpoint and one constant
// 8x8 unitary per bath spin (bath field plus its coupling to both system spins).
BathRunResult evolve_bath_tdse(const IsingProblem& p, const Schedule& schedule,
                               const OnsetWindow& w, const BathSpec& bath, double t_a_ns,
                               const BathRunOptions& options = {});

// Same dynamics from a caller-provided initial state and couplings.
BathRunResult evolve_bath_tdse(const IsingProblem& p, const Schedule& schedule,
                               const OnsetWindow& w, const BathSpec& bath,
                               const BathCouplings& couplings, CompositeState& state,
                               double t_a_ns, const BathRunOptions& options = {});

// System Hamiltonian expectation tr(rho_S H_S(t)) in rad/ns.
double system_energy(const CompositeState& state, const IsingProblem& p, const Schedule& schedule,
                     const OnsetWindow& w, double t_ns, double t_a_ns);

}  // namespace annealdyn
