#include <cmath>
#include <numeric>

#include "annealdyn/equilibrium.hpp"
#include "annealdyn/errors.hpp"
#include "doctest.h"

using namespace annealdyn;

namespace {

double brute_force_chain_energy(int N, double J, double beta) {
  const auto p = IsingProblem::chain(N, J);
  const auto e = p.spectrum();
  double z = 0.0, ez = 0.0;
  for (double x : e) {
    const double w = std::exp(-beta * x);
    z += w;
    ez += x * w;
  }
  return ez / z;
}

}  // namespace

TEST_CASE("Gibbs values at beta = 6.93") {
  const double beta = 6.93;
  auto p = gibbs_probabilities(IsingProblem::single_spin(0.1), beta);
  CHECK(p[0] == doctest::Approx(0.20).epsilon(0.02));
  CHECK(p[1] == doctest::Approx(0.80).epsilon(0.005));
  p = gibbs_probabilities(named_instance("2S1"), beta);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(0.005));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(0.01));
  CHECK(p[2] == doctest::Approx(0.25).epsilon(0.01));
  CHECK(p[3] < 1e-6);
  p = gibbs_probabilities(named_instance("2S3"), beta);
  CHECK(p[0] == doctest::Approx(0.2).epsilon(0.02));
  CHECK(p[1] == doctest::Approx(0.4).epsilon(0.01));
}

TEST_CASE("infinite temperature and normalization") {
  const auto p = gibbs_probabilities(IsingProblem::chain(8, -0.4), 0.0);
  for (double x : p) CHECK(x == doctest::Approx(1.0 / 256));
  const auto q = gibbs_probabilities(named_instance("2S4"), 1e4);
  CHECK(std::accumulate(q.begin(), q.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isfinite(q[0]));
  CHECK_THROWS(gibbs_probabilities(named_instance("2S1"), -1.0));
}

TEST_CASE("level grouping agrees with per-configuration enumeration") {
  for (int n = 1; n <= 10; ++n) {
    const auto p = IsingProblem::chain(n, -0.3);
    for (double beta : {0.3, 2.0, 9.0}) {
      const auto levels = energy_levels(p);
      const auto lp = level_probabilities(levels, beta);
      const auto cp = gibbs_probabilities(p, beta);
      const auto e = p.spectrum();
      int total = 0;
      for (std::size_t l = 0; l < levels.size(); ++l) {
        total += levels[l].degeneracy;
        double sum = 0.0;
        for (std::size_t k = 0; k < e.size(); ++k)
          if (std::abs(e[k] - levels[l].energy) < 1e-9) sum += cp[k];
        CHECK(sum == doctest::Approx(lp[l]).epsilon(1e-12));
      }
      CHECK(total == (1 << n));
    }
  }
}

TEST_CASE("chain closed form") {
  CHECK(chain_mean_energy(10, -0.1, 7.48) == doctest::Approx(-0.5703).epsilon(2e-4));
  CHECK(chain_mean_energy(7, -0.3, 0.0) == 0.0);
  CHECK(chain_mean_energy(2, -0.1, 1e4) == doctest::Approx(-0.1));
  CHECK_THROWS(chain_mean_energy(1, -0.1, 1.0));
  for (int N = 2; N <= 12; ++N)
    for (double J : {-0.1, -1.0})
      for (double beta : {1.0, 7.48})
        CHECK(std::abs(chain_mean_energy(N, J, beta) - brute_force_chain_energy(N, J, beta)) < 1e-10);
}

TEST_CASE("temperature conversion") {
  CHECK(temperature_from_beta(6.93) * 1e3 == doctest::Approx(29.7).epsilon(0.002));
  CHECK(temperature_from_beta(5.64) * 1e3 == doctest::Approx(36.5).epsilon(0.002));
  CHECK(beta_from_temperature(temperature_from_beta(4.2)) == doctest::Approx(4.2));
}

TEST_CASE("fit_beta") {
  SUBCASE("single spin distribution") {
    std::vector<BetaObservation> obs{DistributionObservation{IsingProblem::single_spin(0.1), {0.2, 0.8}}};
    CHECK(fit_beta(obs) == doctest::Approx(std::log(4.0) / 0.2).epsilon(1e-8));
  }
  SUBCASE("chain round trip") {
    std::vector<BetaObservation> obs;
    for (int N : {10, 20, 50, 100, 200, 500, 1000})
      obs.push_back(ChainObservation{N, -0.1, chain_mean_energy(N, -0.1, 7.48)});
    CHECK(std::abs(fit_beta(obs) - 7.48) < 1e-6);
  }
  SUBCASE("mixed observations") {
    std::vector<BetaObservation> obs{
        ChainObservation{30, -0.2, chain_mean_energy(30, -0.2, 3.1)},
        DistributionObservation{named_instance("2S4"), gibbs_probabilities(named_instance("2S4"), 3.1)}};
    CHECK(fit_beta(obs) == doctest::Approx(3.1).epsilon(1e-7));
  }
  SUBCASE("beta-independent data is rejected") {
    std::vector<BetaObservation> obs{
        DistributionObservation{IsingProblem::single_spin(0.0), {0.5, 0.5}}};
    CHECK_THROWS_AS(fit_beta(obs), NonIdentifiableError);
    std::vector<BetaObservation> none;
    CHECK_THROWS_AS(fit_beta(none), std::invalid_argument);
  }
}
