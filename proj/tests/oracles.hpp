#pragma once

// Independent reference integrators used only by the tests.

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix pauli_on(int n, int q, char which) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const int bit = (k >> (n - 1 - q)) & 1;
    const std::size_t flipped = k ^ (std::size_t{1} << (n - 1 - q));
    switch (which) {
      case 'x': m(flipped, k) = 1.0; break;
      case 'y': m(flipped, k) = bit ? std::complex<double>(0, -1) : std::complex<double>(0, 1); break;
      case 'z': m(k, k) = bit ? -1.0 : 1.0; break;
    }
  }
  return m;
}

// Dense H(t)/hbar built from the Pauli matrices, written independently of the library kernels.
inline Matrix hamiltonian(const annealdyn::IsingProblem& p, const annealdyn::Schedule& sch,
                          const annealdyn::OnsetWindow& w, double t, double ta,
                          const std::vector<double>& bias = {}) {
  const int n = p.size();
  const double s = std::clamp(t / ta, 0.0, 1.0);
  const double a = annealdyn::kPi * sch.A(s);
  const double b = annealdyn::kPi * sch.B(s);
  // A degenerate window switches the field on at t = 0; RK4 must not see the t = 0 jump.
  const double bp = w.degenerate() ? b : b * annealdyn::onset_factor(w, t);
  const std::size_t dim = std::size_t{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (int q = 0; q < n; ++q) {
    h -= a * pauli_on(n, q, 'x');
    h += bp * p.field(q) * pauli_on(n, q, 'z');
    if (!bias.empty()) h += bias[q] * pauli_on(n, q, 'z');
  }
  for (const auto& c : p.couplings()) h += b * c.value * pauli_on(n, c.i, 'z') * pauli_on(n, c.j, 'z');
  return h;
}

// Classic RK4 on i d/dt psi = H(t) psi.
inline Vector rk4_schrodinger(const std::function<Matrix(double)>& H, Vector psi, double t_end,
                              std::size_t steps) {
  const double dt = t_end / static_cast<double>(steps);
  const std::complex<double> mi(0, -1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Matrix h0 = H(t), h1 = H(t + 0.5 * dt), h2 = H(t + dt);
    const Vector k1 = mi * (h0 * psi);
    const Vector k2 = mi * (h1 * (psi + 0.5 * dt * k1));
    const Vector k3 = mi * (h1 * (psi + 0.5 * dt * k2));
    const Vector k4 = mi * (h2 * (psi + dt * k3));
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

}  // namespace oracle
