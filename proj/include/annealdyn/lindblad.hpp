#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"

namespace annealdyn {

using DensityMatrix = Eigen::Matrix4cd;
using RateSet = std::array<double, 7>;  // gamma_1 .. gamma_7

struct DissipationSpec {
  double c;     // base rate, 1/ns
  double beta;  // dimensionless inverse temperature

  static DissipationSpec from_temperature(double c, double kelvin);
  void validate() const;
};

// Jump operators L1..L7 on the two-spin basis (up-up, up-down, down-up, down-down):
// |uu><dd|, |dd><uu|, diag(1,-1,-1,1), |uu><du|, |du><uu|, |uu><ud|, |ud><uu|.
const std::array<DensityMatrix, 7>& jump_operators();

// sigma+, sigma-, sigma_z on (up, down).
const std::array<Eigen::Matrix2cd, 3>& single_spin_jump_operators();

// Energies of the diagonal Hamiltonian at time t with the onset ramp on the field term:
// (B'/B) sum h S + sum J S S, in problem units.
std::array<double, 4> effective_energies(const IsingProblem& p, const OnsetWindow& w, double t_ns);

// gamma1 = gamma3 = gamma4 = gamma6 = c; the rest fixed by detailed balance against the
// instantaneous Gibbs weights of effective_energies at spec.beta.
RateSet rates_at(const DissipationSpec& spec, const IsingProblem& p, const Schedule& schedule,
                 const OnsetWindow& w, double t_ns, double t_a_ns);

// Dense H(t)/hbar (rad/ns) for a problem of up to 10 qubits.
Eigen::MatrixXcd dense_hamiltonian(const IsingProblem& p, const Schedule& schedule,
                                   const OnsetWindow& w, double t_ns, double t_a_ns);

// -i[H, rho] + sum_j gamma_j (L rho L^+ - {L^+ L, rho}/2)
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& rho,
                              const std::vector<Eigen::MatrixXcd>& ops,
                              const std::vector<double>& rates);

using DensityObserver = std::function<void(double t_ns, const Eigen::MatrixXcd& rho)>;

// Fixed-step RK4 for a master equation of any dimension (reference and one-spin use).
Eigen::MatrixXcd integrate_master_rk4(const std::function<Eigen::MatrixXcd(double)>& hamiltonian,
                                      const std::vector<Eigen::MatrixXcd>& ops,
                                      const std::function<std::vector<double>(double)>& rates,
                                      Eigen::MatrixXcd rho, double t_end_ns, double dt_ns,
                                      const DensityObserver& observer = {});

struct LindbladOptions {
  double max_dt_ns = 1.0;
  std::size_t min_steps = 4000;
  DensityObserver observer{};  // called after every step
};

// Exponential midpoint rule: each step applies the exact exponential of the 16x16
// Liouvillian frozen at the step midpoint, which keeps every step completely positive.
DensityMatrix evolve_lindblad(const IsingProblem& p, const Schedule& schedule, const OnsetWindow& w,
                              const DissipationSpec& spec, double t_a_ns,
                              const LindbladOptions& options = {});

DensityMatrix plus_state_density();
std::vector<double> diagonal(const Eigen::MatrixXcd& rho);
double min_eigenvalue(const Eigen::MatrixXcd& rho);
// (tr rho sx, tr rho sy, tr rho sz) of a one-spin density matrix.
std::array<double, 3> bloch_vector(const Eigen::Matrix2cd& rho);

}  // namespace annealdyn
