#include "annealdyn/lindblad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "annealdyn/errors.hpp"
#include "annealdyn/equilibrium.hpp"

namespace annealdyn {

namespace {

using cplx = std::complex<double>;
using Super = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

DensityMatrix ket_bra(int i, int j) {
  DensityMatrix m = DensityMatrix::Zero();
  m(i, j) = 1.0;
  return m;
}

// Column-major vec: vec(A X B) = (B^T kron A) vec(X).
Super kron4(const DensityMatrix& a, const DensityMatrix& b) {
  Super out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Super commutator_super(const DensityMatrix& h) {
  const DensityMatrix id = DensityMatrix::Identity();
  return cplx(0.0, -1.0) * (kron4(id, h) - kron4(h.transpose(), id));
}

Super dissipator_super(const DensityMatrix& l) {
  const DensityMatrix id = DensityMatrix::Identity();
  const DensityMatrix ll = l.adjoint() * l;
  return kron4(l.conjugate(), l) - 0.5 * kron4(id, ll) - 0.5 * kron4(ll.transpose(), id);
}

}  // namespace

DissipationSpec DissipationSpec::from_temperature(double c, double kelvin) {
  DissipationSpec s{c, beta_from_temperature(kelvin)};
  s.validate();
  return s;
}

void DissipationSpec::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("dissipation rate c must be finite and >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
}

const std::array<DensityMatrix, 7>& jump_operators() {
  static const std::array<DensityMatrix, 7> ops = [] {
    DensityMatrix dephase = DensityMatrix::Zero();
    dephase.diagonal() << 1.0, -1.0, -1.0, 1.0;
    return std::array<DensityMatrix, 7>{ket_bra(0, 3), ket_bra(3, 0), dephase, ket_bra(0, 2),
                                        ket_bra(2, 0), ket_bra(0, 1), ket_bra(1, 0)};
  }();
  return ops;
}

const std::array<Eigen::Matrix2cd, 3>& single_spin_jump_operators() {
  static const std::array<Eigen::Matrix2cd, 3> ops = [] {
    Eigen::Matrix2cd up = Eigen::Matrix2cd::Zero(), down = Eigen::Matrix2cd::Zero(),
                     z = Eigen::Matrix2cd::Zero();
    up(0, 1) = 1.0;
    down(1, 0) = 1.0;
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return std::array<Eigen::Matrix2cd, 3>{up, down, z};
  }();
  return ops;
}

std::array<double, 4> effective_energies(const IsingProblem& p, const OnsetWindow& w, double t_ns) {
  if (p.size() != 2) throw std::invalid_argument("two-spin problem required");
  const double r = onset_factor(w, t_ns);
  std::array<double, 4> e{};
  for (std::uint64_t k = 0; k < 4; ++k) e[k] = r * p.field_energy(k) + p.coupling_energy(k);
  return e;
}

RateSet rates_at(const DissipationSpec& spec, const IsingProblem& p, const Schedule& schedule,
                 const OnsetWindow& w, double t_ns, double t_a_ns) {
  spec.validate();
  (void)schedule;
  if (!(t_a_ns > 0.0) || !(t_ns >= 0.0) || t_ns > t_a_ns * (1.0 + 1e-12))
    throw std::invalid_argument("time outside [0, t_a]");
  const auto e = effective_energies(p, w, t_ns);
  // p_x / p_uu = exp(-beta (E_x - E_uu))
  auto ratio = [&](int x) {
    const double v = std::exp(-spec.beta * (e[x] - e[0]));
    if (!std::isfinite(v)) throw std::domain_error("Gibbs weight of up-up vanishes; rates undefined");
    return v;
  };
  const double c = spec.c;
  return {c, c * ratio(3), c, c, c * ratio(2), c, c * ratio(1)};
}

Eigen::MatrixXcd dense_hamiltonian(const IsingProblem& p, const Schedule& schedule,
                                   const OnsetWindow& w, double t_ns, double t_a_ns) {
  const int n = p.size();
  if (n > 10) throw std::invalid_argument("dense Hamiltonian limited to 10 qubits");
  const auto c = coefficients_at(schedule, w, t_ns, t_a_ns);
  const auto dim = static_cast<Eigen::Index>(p.dimension());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto idx = static_cast<std::uint64_t>(k);
    h(k, k) = c.linear * p.field_energy(idx) + c.quadratic * p.coupling_energy(idx);
    for (int q = 0; q < n; ++q) h(k ^ (Eigen::Index{1} << (n - 1 - q)), k) -= c.driver;
  }
  return h;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& rho,
                              const std::vector<Eigen::MatrixXcd>& ops,
                              const std::vector<double>& rates) {
  if (ops.size() != rates.size()) throw std::invalid_argument("one rate per jump operator required");
  const cplx mi(0.0, -1.0);
  Eigen::MatrixXcd out = mi * (H * rho - rho * H);
  for (std::size_t j = 0; j < ops.size(); ++j) {
    if (rates[j] == 0.0) continue;
    const auto& L = ops[j];
    const Eigen::MatrixXcd ll = L.adjoint() * L;
    out += rates[j] * (L * rho * L.adjoint() - 0.5 * (ll * rho + rho * ll));
  }
  return out;
}

Eigen::MatrixXcd integrate_master_rk4(const std::function<Eigen::MatrixXcd(double)>& hamiltonian,
                                      const std::vector<Eigen::MatrixXcd>& ops,
                                      const std::function<std::vector<double>(double)>& rates,
                                      Eigen::MatrixXcd rho, double t_end_ns, double dt_ns,
                                      const DensityObserver& observer) {
  if (!(dt_ns > 0.0) || !(t_end_ns >= 0.0)) throw std::invalid_argument("invalid time grid");
  const auto steps = static_cast<std::size_t>(std::ceil(t_end_ns / dt_ns - 1e-9));
  const double dt = steps ? t_end_ns / static_cast<double>(steps) : 0.0;
  if (observer) observer(0.0, rho);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const auto h0 = hamiltonian(t), hm = hamiltonian(t + 0.5 * dt), h1 = hamiltonian(t + dt);
    const auto g0 = rates(t), gm = rates(t + 0.5 * dt), g1 = rates(t + dt);
    const Eigen::MatrixXcd k1 = lindblad_rhs(h0, rho, ops, g0);
    const Eigen::MatrixXcd k2 = lindblad_rhs(hm, rho + 0.5 * dt * k1, ops, gm);
    const Eigen::MatrixXcd k3 = lindblad_rhs(hm, rho + 0.5 * dt * k2, ops, gm);
    const Eigen::MatrixXcd k4 = lindblad_rhs(h1, rho + dt * k3, ops, g1);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer(t + dt, rho);
  }
  return rho;
}

DensityMatrix evolve_lindblad(const IsingProblem& p, const Schedule& schedule, const OnsetWindow& w,
                              const DissipationSpec& spec, double t_a_ns,
                              const LindbladOptions& options) {
  if (p.size() != 2) throw std::invalid_argument("Lindblad dynamics implemented for two spins");
  spec.validate();
  w.validate();
  if (!(t_a_ns > 0.0) || !std::isfinite(t_a_ns)) throw std::invalid_argument("t_a must be positive");
  if (!(options.max_dt_ns > 0.0)) throw std::invalid_argument("dt must be positive");

  DensityMatrix sx = DensityMatrix::Zero(), zh = DensityMatrix::Zero(), zj = DensityMatrix::Zero();
  for (int k = 0; k < 4; ++k) {
    sx(k ^ 2, k) += 1.0;
    sx(k ^ 1, k) += 1.0;
    zh(k, k) = p.field_energy(static_cast<std::uint64_t>(k));
    zj(k, k) = p.coupling_energy(static_cast<std::uint64_t>(k));
  }
  const Super lx = commutator_super(sx), lh = commutator_super(zh), lj = commutator_super(zj);
  std::array<Super, 7> ld;
  for (int j = 0; j < 7; ++j) ld[j] = dissipator_super(jump_operators()[j]);

  std::size_t steps = static_cast<std::size_t>(std::ceil(t_a_ns / options.max_dt_ns - 1e-9));
  steps = std::max(steps, options.min_steps);
  const double dt = t_a_ns / static_cast<double>(steps);

  DensityMatrix rho = plus_state_density();
  Super gen;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double tm = t + 0.5 * dt;
    const auto c = coefficients_at(schedule, w, tm, t_a_ns);
    const auto g = rates_at(spec, p, schedule, w, tm, t_a_ns);
    gen = -c.driver * lx + c.linear * lh + c.quadratic * lj;
    for (int j = 0; j < 7; ++j)
      if (g[j] != 0.0) gen += g[j] * ld[j];
    const Super prop = (dt * gen).exp();
    Eigen::Map<Vec16> v(rho.data());
    const Vec16 next = prop * v;
    v = next;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (drift > 1e-6) throw NumericalError("density matrix trace drifted by " + std::to_string(drift));
    if (options.observer) options.observer(t + dt, rho);
  }
  return rho;
}

DensityMatrix plus_state_density() { return DensityMatrix::Constant(0.25); }

std::vector<double> diagonal(const Eigen::MatrixXcd& rho) {
  std::vector<double> d(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index k = 0; k < rho.rows(); ++k) d[static_cast<std::size_t>(k)] = rho(k, k).real();
  return d;
}

double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::array<double, 3> bloch_vector(const Eigen::Matrix2cd& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

}  // namespace annealdyn
