#pragma once

#include <Eigen/Dense>
#include <functional>

#include "annealdyn/lindblad.hpp"

namespace annealdyn {

using RateMatrix = Eigen::Matrix4d;
using Populations = Eigen::Vector4d;

// Generator of dP/dt = W P on (up-up, up-down, down-up, down-down). All flow routes
// through up-up: gamma2/gamma1 to and from down-down, gamma5/gamma4 with down-up,
// gamma7/gamma6 with up-down. Columns sum to zero.
RateMatrix build_W(const RateSet& rates);

// Null vector of W normalized to unit sum.
Populations stationary_distribution(const RateMatrix& W);

struct MarkovOptions {
  double max_dt_ns = 1.0;
  std::size_t min_steps = 1000;
  std::function<void(double t_ns, const Populations&)> observer{};
};

// Exact exponential of the generator frozen at each step midpoint.
Populations evolve_markov(const IsingProblem& p, const Schedule& schedule, const OnsetWindow& w,
                          const DissipationSpec& spec, double t_a_ns, const MarkovOptions& options = {});

}  // namespace annealdyn
