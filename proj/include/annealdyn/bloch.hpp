#pragma once

#include <array>
#include <functional>

#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"

namespace annealdyn {

using Vec3 = std::array<double, 3>;

struct BlochState {
  Vec3 S{1.0, 0.0, 0.0};

  double norm() const;
  double p_up() const { return 0.5 * (1.0 + S[2]); }
  double p_down() const { return 0.5 * (1.0 - S[2]); }
};

// Relaxation times in ns; infinity switches a channel off.
struct BlochParams {
  double T1;
  double T2;
  double M0;

  void validate() const;
};

// One-spin Lindblad rates for sigma+ (gamma1), sigma- (gamma2), sigma_z (gamma3).
struct SpinRates {
  double gamma1;
  double gamma2;
  double gamma3;
};

BlochParams params_from_rates(const SpinRates& r);
SpinRates rates_from_params(const BlochParams& p);

// Gibbs value of S^z for the final single-spin Hamiltonian h1 sigma_z.
double equilibrium_M0(double h1, double beta);

// Effective field of H = -1/2 B.sigma at time t (rad/ns).
using FieldFunction = std::function<Vec3(double t_ns)>;

// B = (2 pi A(s), 0, -2 pi B'(s) h1).
FieldFunction annealing_field(const IsingProblem& p, const Schedule& schedule,
                              const OnsetWindow& onset, double t_a_ns);

using BlochObserver = std::function<void(double t_ns, const BlochState&)>;

// Classic RK4; dS/dt = S x B - (Sx/T2, Sy/T2, (Sz - M0)/T1).
BlochState integrate_bloch(const FieldFunction& field, const BlochParams& params, BlochState start,
                           double t_end_ns, double dt_ns, const BlochObserver& observer = {});

BlochState evolve_bloch(const IsingProblem& p, const Schedule& schedule, const BlochParams& params,
                        double t_a_ns, double dt_ns = 0.01, const OnsetWindow& onset = {},
                        const BlochObserver& observer = {});

}  // namespace annealdyn
