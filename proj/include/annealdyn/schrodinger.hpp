#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"

namespace annealdyn {

using cplx = std::complex<double>;

class QuantumState {
 public:
  QuantumState(int n, std::vector<cplx> amplitudes);

  int qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::vector<cplx>& amplitudes() { return amps_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx operator[](std::size_t k) const { return amps_[k]; }
  double norm() const;

 private:
  int n_;
  std::vector<cplx> amps_;
};

QuantumState uniform_superposition(int n);
QuantumState basis_state(int n, std::uint64_t index);
std::vector<double> populations(const QuantumState& state);
double fidelity(const QuantumState& a, const QuantumState& b);  // |<a|b>|^2

// H/hbar = -pi A sum sx + pi B' sum h sz + pi B sum J sz sz + sum_k bias_k sz_k (rad/ns).
struct AnnealRun {
  IsingProblem problem;
  Schedule schedule = Schedule::standard();
  OnsetWindow onset{};
  double t_a_ns = 1.0;
  double dt_ns = 0.01;
  std::vector<double> static_bias{};  // rad/ns per qubit; empty means none
};

AnnealRun make_embedded_run(const EmbeddedProblem& e, const Schedule& schedule, double t_a_ns,
                            double dt_ns);

// |+...+> on unbiased qubits; biased qubits start in the ground state of
// their own single-qubit Hamiltonian at s = 0.
QuantumState initial_state(const AnnealRun& run);

// Symmetric split step: half diagonal phase, exact transverse rotations, half phase,
// with coefficients taken at the step midpoint. step(t + dt, -dt) undoes step(t, dt).
class TdseStepper {
 public:
  explicit TdseStepper(const AnnealRun& run);
  void step(QuantumState& state, double t_ns, double dt_ns) const;
  std::size_t steps() const { return steps_; }
  double step_size() const { return dt_; }

 private:
  const AnnealRun* run_;
  std::vector<double> field_energy_;
  std::vector<double> coupling_energy_;
  std::vector<double> bias_energy_;
  mutable std::vector<cplx> scratch_;
  std::size_t steps_;
  double dt_;
};

using StateObserver = std::function<void(double t_ns, const QuantumState&)>;

QuantumState evolve_tdse(const AnnealRun& run, const StateObserver& observer = {});

}  // namespace annealdyn
