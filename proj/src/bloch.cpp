#include "annealdyn/bloch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace annealdyn {

namespace {

double inverse(double T) { return std::isinf(T) ? 0.0 : 1.0 / T; }

Vec3 derivative(const Vec3& S, const Vec3& B, double r1, double r2, double m0) {
  return {S[1] * B[2] - S[2] * B[1] - r2 * S[0],
          S[2] * B[0] - S[0] * B[2] - r2 * S[1],
          S[0] * B[1] - S[1] * B[0] - r1 * (S[2] - m0)};
}

Vec3 axpy(const Vec3& x, double a, const Vec3& y) {
  return {x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
}

}  // namespace

double BlochState::norm() const { return std::sqrt(S[0] * S[0] + S[1] * S[1] + S[2] * S[2]); }

void BlochParams::validate() const {
  if (!(T1 > 0.0) || !(T2 > 0.0)) throw std::invalid_argument("relaxation times must be positive");
  if (!(std::abs(M0) <= 1.0)) throw std::invalid_argument("|M0| must not exceed 1");
  if (inverse(T2) < 0.5 * inverse(T1) * (1.0 - 1e-12))
    throw std::invalid_argument("T2 must not exceed 2 T1 for this set of dissipators");
}

BlochParams params_from_rates(const SpinRates& r) {
  if (!(r.gamma1 >= 0.0 && r.gamma2 >= 0.0 && r.gamma3 >= 0.0))
    throw std::invalid_argument("rates must be non-negative");
  const double inf = std::numeric_limits<double>::infinity();
  const double sum = r.gamma1 + r.gamma2;
  const double t1 = sum > 0.0 ? 1.0 / sum : inf;
  const double t2 = sum + 4.0 * r.gamma3 > 0.0 ? 2.0 / (sum + 4.0 * r.gamma3) : inf;
  const double m0 = sum > 0.0 ? (r.gamma1 - r.gamma2) / sum : 0.0;
  return {t1, t2, m0};
}

SpinRates rates_from_params(const BlochParams& p) {
  p.validate();
  const double r1 = inverse(p.T1), r2 = inverse(p.T2);
  return {0.5 * r1 * (1.0 + p.M0), 0.5 * r1 * (1.0 - p.M0), std::max(0.0, 0.5 * (r2 - 0.5 * r1))};
}

double equilibrium_M0(double h1, double beta) { return -std::tanh(beta * h1); }

FieldFunction annealing_field(const IsingProblem& p, const Schedule& schedule,
                              const OnsetWindow& onset, double t_a_ns) {
  if (p.size() != 1) throw std::invalid_argument("Bloch dynamics needs a one-spin problem");
  const double h1 = p.field(0);
  return [h1, schedule, onset, t_a_ns](double t) -> Vec3 {
    const auto c = coefficients_at(schedule, onset, t, t_a_ns);
    return {2.0 * c.driver, 0.0, -2.0 * c.linear * h1};
  };
}

BlochState integrate_bloch(const FieldFunction& field, const BlochParams& params, BlochState start,
                           double t_end_ns, double dt_ns, const BlochObserver& observer) {
  params.validate();
  if (!(dt_ns > 0.0) || !(t_end_ns >= 0.0)) throw std::invalid_argument("invalid time grid");
  const double r1 = inverse(params.T1), r2 = inverse(params.T2), m0 = params.M0;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end_ns / dt_ns - 1e-9));
  const double dt = steps ? t_end_ns / static_cast<double>(steps) : 0.0;

  Vec3 S = start.S;
  Vec3 b0 = field(0.0);
  if (observer) observer(0.0, BlochState{S});
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Vec3 bm = field(t + 0.5 * dt);
    const Vec3 b1 = field(t + dt);
    const Vec3 k1 = derivative(S, b0, r1, r2, m0);
    const Vec3 k2 = derivative(axpy(S, 0.5 * dt, k1), bm, r1, r2, m0);
    const Vec3 k3 = derivative(axpy(S, 0.5 * dt, k2), bm, r1, r2, m0);
    const Vec3 k4 = derivative(axpy(S, dt, k3), b1, r1, r2, m0);
    for (int i = 0; i < 3; ++i) S[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    b0 = b1;
    if (observer) observer(t + dt, BlochState{S});
  }
  return BlochState{S};
}

BlochState evolve_bloch(const IsingProblem& p, const Schedule& schedule, const BlochParams& params,
                        double t_a_ns, double dt_ns, const OnsetWindow& onset,
                        const BlochObserver& observer) {
  if (!(t_a_ns > 0.0)) throw std::invalid_argument("t_a must be positive");
  return integrate_bloch(annealing_field(p, schedule, onset, t_a_ns), params, BlochState{},
                         t_a_ns, dt_ns, observer);
}

}  // namespace annealdyn
