#include "annealdyn/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "annealdyn/errors.hpp"

namespace annealdyn {

RateMatrix build_W(const RateSet& g) {
  for (double x : g)
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("rates must be finite and >= 0");
  enum { uu = 0, ud = 1, du = 2, dd = 3 };
  RateMatrix W = RateMatrix::Zero();
  W(dd, uu) = g[1];
  W(uu, dd) = g[0];
  W(du, uu) = g[4];
  W(uu, du) = g[3];
  W(ud, uu) = g[6];
  W(uu, ud) = g[5];
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      if (i != j) s += W(i, j);
    W(j, j) = -s;
  }
  return W;
}

Populations stationary_distribution(const RateMatrix& W) {
  Eigen::FullPivLU<RateMatrix> lu(W);
  const Eigen::MatrixXd ker = lu.kernel();
  if (ker.cols() != 1) throw std::domain_error("generator has no unique stationary distribution");
  Populations p = ker.col(0);
  p /= p.sum();
  return p;
}

Populations evolve_markov(const IsingProblem& p, const Schedule& schedule, const OnsetWindow& w,
                          const DissipationSpec& spec, double t_a_ns, const MarkovOptions& options) {
  if (p.size() != 2) throw std::invalid_argument("Markov dynamics implemented for two spins");
  if (!(t_a_ns > 0.0) || !std::isfinite(t_a_ns)) throw std::invalid_argument("t_a must be positive");
  if (!(options.max_dt_ns > 0.0)) throw std::invalid_argument("dt must be positive");
  std::size_t steps = static_cast<std::size_t>(std::ceil(t_a_ns / options.max_dt_ns - 1e-9));
  steps = std::max(steps, options.min_steps);
  const double dt = t_a_ns / static_cast<double>(steps);

  Populations P = Populations::Constant(0.25);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const RateMatrix W = build_W(rates_at(spec, p, schedule, w, t + 0.5 * dt, t_a_ns));
    const RateMatrix prop = (dt * W).exp();
    P = (prop * P).eval();
    const double drift = std::abs(P.sum() - 1.0);
    if (drift > 1e-8) throw NumericalError("probability sum drifted by " + std::to_string(drift));
    if (options.observer) options.observer(t + dt, P);
  }
  return P.cwiseMax(0.0);
}

}  // namespace annealdyn
