#include "annealdyn/schrodinger.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "annealdyn/errors.hpp"

namespace annealdyn {

QuantumState::QuantumState(int n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 24]");
  if (amps_.size() != (std::size_t{1} << n)) throw std::invalid_argument("amplitude count must be 2^n");
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

QuantumState uniform_superposition(int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 24]");
  const std::size_t dim = std::size_t{1} << n;
  return QuantumState(n, std::vector<cplx>(dim, cplx(std::pow(2.0, -0.5 * n), 0.0)));
}

QuantumState basis_state(int n, std::uint64_t index) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 24]");
  std::vector<cplx> a(std::size_t{1} << n);
  if (index >= a.size()) throw std::invalid_argument("basis index out of range");
  a[index] = 1.0;
  return QuantumState(n, std::move(a));
}

std::vector<double> populations(const QuantumState& state) {
  std::vector<double> p(state.dimension());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(state[k]);
  return p;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("state dimensions differ");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) s += std::conj(a[k]) * b[k];
  return std::norm(s);
}

AnnealRun make_embedded_run(const EmbeddedProblem& e, const Schedule& schedule, double t_a_ns,
                            double dt_ns) {
  AnnealRun run{e.embedded, schedule, OnsetWindow{}, t_a_ns, dt_ns, {}};
  if (e.auxiliary_count() > 0) {
    run.static_bias.assign(e.embedded.size(), 0.0);
    for (int a : e.auxiliary_of)
      if (a >= 0) run.static_bias[a] = -e.flux_bias;
    // Resolve the bias precession: phase per step at most 0.1 rad.
    run.dt_ns = std::min(dt_ns, 0.1 / e.flux_bias);
  }
  return run;
}

namespace {

void validate(const AnnealRun& run) {
  if (!(run.t_a_ns > 0.0) || !std::isfinite(run.t_a_ns)) throw std::invalid_argument("t_a must be positive");
  if (!(run.dt_ns > 0.0)) throw std::invalid_argument("dt must be positive");
  if (run.dt_ns > run.t_a_ns) throw std::invalid_argument("dt must not exceed t_a");
  if (!run.static_bias.empty() && static_cast<int>(run.static_bias.size()) != run.problem.size())
    throw std::invalid_argument("bias vector length does not match problem");
  run.onset.validate();
}

}  // namespace

QuantumState initial_state(const AnnealRun& run) {
  const int n = run.problem.size();
  // Product state: per-qubit ground state of -a sx + b sz with a = pi A(0).
  const double a = kPi * run.schedule.A(0.0);
  std::vector<std::array<cplx, 2>> local(n);
  for (int k = 0; k < n; ++k) {
    const double b = run.static_bias.empty() ? 0.0 : run.static_bias[k];
    const double r = std::hypot(a, b);
    double x = 1.0, y = 1.0;
    if (r > 0.0) {
      if (b <= 0.0) {
        x = r - b;
        y = a;
      } else {
        x = a;
        y = b + r;
      }
    }
    const double nrm = std::hypot(x, y);
    local[k] = {cplx(x / nrm), cplx(y / nrm)};
  }
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    cplx v = 1.0;
    for (int k = 0; k < n; ++k) v *= local[k][(idx >> (n - 1 - k)) & 1u];
    amps[idx] = v;
  }
  return QuantumState(n, std::move(amps));
}

TdseStepper::TdseStepper(const AnnealRun& run) : run_(&run) {
  validate(run);
  const auto dim = run.problem.dimension();
  const int n = run.problem.size();
  field_energy_.resize(dim);
  coupling_energy_.resize(dim);
  bias_energy_.assign(dim, 0.0);
  for (std::uint64_t k = 0; k < dim; ++k) {
    field_energy_[k] = run.problem.field_energy(k);
    coupling_energy_[k] = run.problem.coupling_energy(k);
    if (!run.static_bias.empty())
      for (int q = 0; q < n; ++q) bias_energy_[k] += run.static_bias[q] * spin_of(k, n, q);
  }
  steps_ = static_cast<std::size_t>(std::ceil(run.t_a_ns / run.dt_ns - 1e-9));
  dt_ = run.t_a_ns / static_cast<double>(steps_);
}

void TdseStepper::step(QuantumState& state, double t_ns, double dt) const {
  const int n = state.qubits();
  auto& amps = state.amplitudes();
  const double tm = t_ns + 0.5 * dt;
  const auto c = coefficients_at(run_->schedule, run_->onset, tm, run_->t_a_ns);

  const std::size_t dim = amps.size();
  auto& phase = scratch_;
  phase.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = c.linear * field_energy_[k] + c.quadratic * coupling_energy_[k] + bias_energy_[k];
    phase[k] = std::polar(1.0, -0.5 * dt * d);
    amps[k] *= phase[k];
  }
  // exp(+i a dt sx) per qubit.
  const double cs = std::cos(c.driver * dt), sn = std::sin(c.driver * dt);
  const cplx isn(0.0, sn);
  for (int q = 0; q < n; ++q) {
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t k = base; k < base + stride; ++k) {
        const cplx u = amps[k], v = amps[k + stride];
        amps[k] = cs * u + isn * v;
        amps[k + stride] = isn * u + cs * v;
      }
    }
  }
  for (std::size_t k = 0; k < dim; ++k) amps[k] *= phase[k];
}

QuantumState evolve_tdse(const AnnealRun& run, const StateObserver& observer) {
  TdseStepper stepper(run);
  QuantumState psi = initial_state(run);
  const double dt = stepper.step_size();
  if (observer) observer(0.0, psi);
  for (std::size_t k = 0; k < stepper.steps(); ++k) {
    stepper.step(psi, static_cast<double>(k) * dt, dt);
    if (observer) observer(static_cast<double>(k + 1) * dt, psi);
    if ((k + 1) % 4096 == 0 || k + 1 == stepper.steps()) {
      const double drift = std::abs(psi.norm() - 1.0);
      if (drift > 1e-6)
        throw NumericalError("state norm drifted by " + std::to_string(drift));
    }
  }
  return psi;
}

}  // namespace annealdyn
