#include <cmath>
#include <random>

#include "annealdyn/equilibrium.hpp"
#include "annealdyn/errors.hpp"
#include "annealdyn/extraction.hpp"
#include "doctest.h"

using namespace annealdyn;

namespace {

// Direct exp(-beta (h1 S1 + h2 S2 + J S1 S2)) over the four states, up-up first.
FrequencyTable gibbs_table(double h1, double h2, double J, double beta) {
  const int s1[4] = {1, 1, -1, -1}, s2[4] = {1, -1, 1, -1};
  FrequencyTable t;
  double z = 0.0;
  for (int k = 0; k < 4; ++k) {
    t.f[k] = std::exp(-beta * (h1 * s1[k] + h2 * s2[k] + J * s1[k] * s2[k]));
    z += t.f[k];
  }
  for (auto& x : t.f) x /= z;
  return t;
}

}  // namespace

TEST_CASE("spin averages") {
  auto s = spin_averages({{0.25, 0.25, 0.25, 0.25}});
  CHECK(s.s1 == 0.0);
  CHECK(s.s2 == 0.0);
  CHECK(s.s12 == 0.0);
  s = spin_averages({{0.5, 0.25, 0.25, 0.0}});
  CHECK(s.s1 == doctest::Approx(0.5));
  CHECK(s.s2 == doctest::Approx(0.5));
  CHECK(s.s12 == doctest::Approx(0.0));
  s = spin_averages({{1, 0, 0, 0}});
  CHECK(s.s1 == 1.0);
  CHECK(s.s2 == 1.0);
  CHECK(s.s12 == 1.0);
  CHECK_THROWS_AS(spin_averages({{0.5, 0.5, 0.5, 0.0}}), std::invalid_argument);
}

TEST_CASE("method 1 on exact 2S4 Gibbs frequencies") {
  const auto m = method1(gibbs_table(-0.07, 0.05, 0.1, 5.64), named_instance("2S4"));
  CHECK(m.beta == doctest::Approx(5.64).epsilon(1e-10));
  CHECK(m.h1_hat == doctest::Approx(-0.069).epsilon(0.02));
  CHECK(m.h2_hat == doctest::Approx(0.046).epsilon(0.1));
  CHECK(m.J_hat == doctest::Approx(0.103).epsilon(0.03));
}

TEST_CASE("uniform frequencies are non-identifiable for method 1") {
  CHECK_THROWS_AS(method1({{0.25, 0.25, 0.25, 0.25}}, named_instance("2S4")), NonIdentifiableError);
  CHECK_THROWS_AS(method1({{0.5, 0.25, 0.25, 0.0}}, named_instance("2S1")), ZeroFrequencyError);
  CHECK_THROWS_AS(method1({{0.25, 0.25, 0.25, 0.25}}, IsingProblem::single_spin(0.1)), std::invalid_argument);
}

TEST_CASE("method 1 inverts Gibbs over random instances") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> field(-1.0, 1.0), temp(0.1, 8.0);
  int used = 0;
  while (used < 1000) {
    const double h1 = field(gen), h2 = field(gen), J = field(gen), beta = temp(gen);
    const auto t = gibbs_table(h1, h2, J, beta);
    bool small = false;
    for (double x : t.f) small = small || x < 1e-6;
    if (small) continue;
    ++used;
    const auto l = multipliers_from_frequencies(t);
    CHECK(std::abs(l[0] - beta * h1) < 1e-8);
    CHECK(std::abs(l[1] - beta * h2) < 1e-8);
    CHECK(std::abs(l[2] - beta * J) < 1e-8);
    const auto m = method1(t, IsingProblem::two_spin(h1, h2, J));
    CHECK(m.beta == doctest::Approx(beta).epsilon(1e-8));
  }
}

TEST_CASE("max-entropy closure and the two multiplier forms") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int r = 0; r < 200; ++r) {
    FrequencyTable t;
    double z = 0.0;
    for (auto& x : t.f) z += x = u(gen);
    for (auto& x : t.f) x /= z;
    const auto a = spin_averages(t);
    const auto l = multipliers_from_frequencies(t);
    const auto l2 = multipliers_from_averages(a);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(l[k] - l2[k]) < 1e-12);
    FrequencyTable back;
    back.f = maxent_distribution(l);
    const auto b = spin_averages(back);
    CHECK(std::abs(a.s1 - b.s1) < 1e-10);
    CHECK(std::abs(a.s2 - b.s2) < 1e-10);
    CHECK(std::abs(a.s12 - b.s12) < 1e-10);
  }
}

TEST_CASE("method 2") {
  const auto p4 = named_instance("2S4");
  const double beta = method2(gibbs_table(-0.07, 0.05, 0.1, 5.59), p4);
  CHECK(beta == doctest::Approx(5.59).epsilon(1e-9));
  CHECK(temperature_from_beta(beta) * 1e3 == doctest::Approx(36.9).epsilon(0.002));
  CHECK(std::abs(method2({{0.25, 0.25, 0.25, 0.25}}, p4)) < 1e-12);
  CHECK(std::abs(method2(gibbs_table(-1, -1, 0.95, 7.0), named_instance("2S1")) - 7.0) < 1e-8);
  CHECK(method2(gibbs_table(-1, -1, 0.95, -0.5), named_instance("2S1")) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(method2({{0, 0, 0, 1}}, named_instance("2S1")), NoSolutionError);
  CHECK_THROWS_AS(method2({{1, 0, 0, 0}}, named_instance("2S1")), NoSolutionError);
  CHECK_THROWS_AS(method2({{0.5, 0.5, 0, 0}}, IsingProblem::two_spin(0, 0, 0)), NonIdentifiableError);
}

namespace {

FrequencyTable with_noisy_top_state(const IsingProblem& p, double beta, double eps) {
  auto t = gibbs_table(p.field(0), p.field(1), p.coupling(1, 0), beta);
  t.f[3] = eps;
  double z = 0.0;
  for (double x : t.f) z += x;
  for (auto& x : t.f) x /= z;
  return t;
}

}  // namespace

TEST_CASE("a noisy near-zero frequency breaks method 1 but not method 2") {
  const auto p = named_instance("2S1");
  CHECK(gibbs_table(-1, -1, 0.95, 7.0).f[3] < 1e-11);
  const auto t = with_noisy_top_state(p, 7.0, 1e-3);
  const double b1 = method1(t, p).beta, b2 = method2(t, p);
  CHECK(std::abs(b1 - b2) > 2.0);
  CHECK(std::abs(b2 - 7.0) < std::abs(b1 - 7.0));
}

TEST_CASE("two-level spectrum: both methods see the same noisy table as exact Gibbs") {
  const auto p = named_instance("2S2");
  const auto t = with_noisy_top_state(p, 7.0, 1e-3);
  const double b1 = method1(t, p).beta, b2 = method2(t, p);
  CHECK(b1 == doctest::Approx(b2).epsilon(1e-9));
  CHECK(b1 == doctest::Approx(0.25 * std::log(1.0 / 3e-3)).epsilon(1e-6));
}

TEST_CASE("add-half smoothing") {
  const auto t = add_half_smoothing(FrequencyTable::from_counts({6, 2, 2, 0}));
  CHECK(t.f[0] == doctest::Approx(6.5 / 12));
  CHECK(t.f[3] == doctest::Approx(0.5 / 12));
  CHECK_NOTHROW(t.validate());
  CHECK_NOTHROW(method1(t, named_instance("2S1")));
  CHECK_THROWS(add_half_smoothing({{0.5, 0.5, 0, 0}}));
}

TEST_CASE("multinomial sampling and bootstrap") {
  const auto exact = gibbs_table(-0.07, 0.05, 0.1, 5.64);
  const auto c1 = sample_counts(exact.f, 100000, 3);
  const auto c2 = sample_counts(exact.f, 100000, 3);
  CHECK(c1 == c2);
  CHECK(c1[0] + c1[1] + c1[2] + c1[3] == 100000);
  const auto t = FrequencyTable::from_counts(c1);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(t.f[k] - exact.f[k]) < 0.01);
  const auto p = named_instance("2S4");
  for (auto m : {ExtractionMethod::method1, ExtractionMethod::method2}) {
    const auto b = bootstrap_beta(t, p, m, 200, 7);
    CHECK(b.failures == 0);
    CHECK(b.stddev > 0.0);
    CHECK(b.stddev < 1.0);
    const double est = m == ExtractionMethod::method1 ? method1(t, p).beta : method2(t, p);
    CHECK(std::abs(est - 5.64) < 3.0 * b.stddev);
  }
}
