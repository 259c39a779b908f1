#include <algorithm>
#include <random>

#include "annealdyn/equilibrium.hpp"
#include "annealdyn/problems.hpp"
#include "annealdyn/schedules.hpp"
#include "doctest.h"

using namespace annealdyn;

TEST_CASE("index convention matches the one- and two-spin rule") {
  CHECK(SpinConfiguration({1}).index() == 0);
  CHECK(SpinConfiguration({-1}).index() == 1);
  // i = (1 - S1)/2 * 2 + (1 - S2)/2
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      const auto expected = static_cast<std::uint64_t>((1 - s1) + (1 - s2) / 2);
      CHECK(SpinConfiguration({s1, s2}).index() == expected);
    }
  for (std::uint64_t k = 0; k < 64; ++k) CHECK(SpinConfiguration::from_index(6, k).index() == k);
  CHECK(SpinConfiguration::parse("+-").index() == 1);
  CHECK(SpinConfiguration::parse("-+").index() == 2);
  CHECK_THROWS(SpinConfiguration::parse("+x"));
}

TEST_CASE("problem energy") {
  const auto p1 = named_instance("2S1");
  CHECK(p1.energy(SpinConfiguration({1, 1})) == doctest::Approx(-1.05).epsilon(1e-14));
  const auto p3 = named_instance("2S3");
  CHECK(p3.energy(SpinConfiguration({1, -1})) == doctest::Approx(-1.0).epsilon(1e-14));
  const IsingProblem empty(std::vector<double>(5, 0.0), {});
  for (std::uint64_t k = 0; k < 32; ++k) CHECK(empty.energy(k) == 0.0);
  CHECK_THROWS_AS(p1.energy(SpinConfiguration({1, 1, 1})), std::invalid_argument);
}

TEST_CASE("problem invariants are enforced") {
  CHECK_THROWS(IsingProblem({5.0}, {}));
  CHECK_THROWS(IsingProblem({0.0, 0.0}, {{1, 0, 2.5}}));
  CHECK_THROWS(IsingProblem({0.0, 0.0}, {{1, 1, 0.5}}));
  CHECK_THROWS(IsingProblem({0.0, 0.0}, {{1, 0, 0.5}, {0, 1, 0.2}}));
  CHECK_THROWS(IsingProblem({0.0, 0.0}, {{2, 0, 0.5}}));
  CHECK_THROWS(IsingProblem({std::nan("")}, {}));
  CHECK_NOTHROW(IsingProblem({5.0}, {}, ProblemLimits{10.0, 2.0}));
  CHECK(IsingProblem({0.0, 0.0}, {{0, 1, 0.3}}).coupling(1, 0) == 0.3);
}

TEST_CASE("2S2 carries J = +1 so three states are degenerate") {
  const auto levels = energy_levels(named_instance("2S2"));
  REQUIRE(levels.size() == 2);
  CHECK(levels[0].energy == doctest::Approx(-1.0));
  CHECK(levels[0].degeneracy == 3);
}

TEST_CASE("spin-reversal transform") {
  const auto p = named_instance("2S1");
  const auto q = spin_reversal_transform(p, {true, true});
  CHECK(q.field(0) == 1.0);
  CHECK(q.field(1) == 1.0);
  CHECK(q.coupling(1, 0) == 0.95);
  CHECK(q.energy(SpinConfiguration({-1, -1})) == doctest::Approx(p.energy(SpinConfiguration({1, 1}))));

  const auto id = spin_reversal_transform(p, {false, false});
  CHECK(id.fields() == p.fields());
  CHECK(id.coupling(1, 0) == p.coupling(1, 0));

  const auto p2 = named_instance("2S2");
  const auto q2 = spin_reversal_transform(p2, {true, false});
  CHECK(q2.field(0) == 1.0);
  CHECK(q2.field(1) == -1.0);
  CHECK(q2.coupling(1, 0) == -1.0);
  auto a = p2.spectrum(), b = q2.spectrum();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
  CHECK_THROWS(spin_reversal_transform(p2, {true}));
}

TEST_CASE("gauge invariance of spectrum and Gibbs weights, random problems up to 10 spins") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> uh(-2.0, 2.0), uj(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 10;
    std::vector<double> h(n);
    for (auto& x : h) x = uh(rng);
    std::vector<Coupling> cs;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (coin(rng)) cs.push_back({i, j, uj(rng)});
    const IsingProblem p(h, cs);
    std::vector<bool> flips(n);
    for (int k = 0; k < n; ++k) flips[k] = coin(rng);
    const auto q = spin_reversal_transform(p, flips);
    const auto gp = gibbs_probabilities(p, 1.7);
    const auto gq = gibbs_probabilities(q, 1.7);
    for (std::uint64_t k = 0; k < p.dimension(); ++k) {
      const auto kk = flip_index(k, n, flips);
      CHECK(q.energy(kk) == doctest::Approx(p.energy(k)).epsilon(1e-12));
      CHECK(gq[kk] == doctest::Approx(gp[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("fast-anneal embedding") {
  const auto fast = Schedule::fast();
  const auto one = IsingProblem::single_spin(0.25);
  const double hfb = default_flux_bias(one, fast);
  const auto e1 = embed_fast_anneal(one, hfb, fast);
  CHECK(e1.embedded.size() == 2);
  CHECK(e1.embedded.field(0) == 0.0);
  CHECK(e1.embedded.field(1) == 0.0);
  CHECK(e1.embedded.coupling(1, 0) == 0.25);
  CHECK(e1.auxiliary_of[0] == 1);

  const auto two = IsingProblem::two_spin(-0.3, 0.4, 0.5);
  const auto e2 = embed_fast_anneal(two, default_flux_bias(two, fast), fast);
  CHECK(e2.embedded.size() == 4);
  CHECK(e2.embedded.coupling(1, 0) == 0.5);
  CHECK(e2.embedded.coupling(2, 0) == -0.3);
  CHECK(e2.embedded.coupling(3, 1) == 0.4);

  const auto zero = IsingProblem::two_spin(0.0, 0.0, 0.5);
  const auto e0 = embed_fast_anneal(zero, 0.0, fast);
  CHECK(e0.embedded.size() == 2);
  CHECK(e0.auxiliary_count() == 0);

  CHECK_THROWS_AS(embed_fast_anneal(one, 0.5 * flux_bias_threshold(one, fast), fast),
                  std::invalid_argument);
}

TEST_CASE("embedded ground state with pinned auxiliaries reproduces the original argmin") {
  const auto fast = Schedule::fast();
  std::vector<IsingProblem> problems = {IsingProblem::single_spin(0.25),
                                        IsingProblem::single_spin(-0.6),
                                        named_instance("2S1"), named_instance("2S3"),
                                        named_instance("2S4"), IsingProblem::two_spin(0.7, 0.0, -0.2)};
  for (const auto& p : problems) {
    const auto e = embed_fast_anneal(p, default_flux_bias(p, fast), fast);
    const int na = e.auxiliary_count();
    const int nt = e.embedded.size();
    // Bias -h_FB sz aligns auxiliaries with +1, i.e. the low bits are all zero.
    double best = 1e300;
    std::uint64_t arg = 0;
    for (std::uint64_t k = 0; k < e.embedded.dimension(); ++k) {
      bool aligned = true;
      for (int a = p.size(); a < nt; ++a) aligned = aligned && spin_of(k, nt, a) == 1;
      if (!aligned) continue;
      if (e.embedded.energy(k) < best - 1e-12) {
        best = e.embedded.energy(k);
        arg = k >> na;
      }
    }
    const auto spec = p.spectrum();
    const auto direct = static_cast<std::uint64_t>(std::min_element(spec.begin(), spec.end()) - spec.begin());
    CHECK(arg == direct);
    CHECK(best == doctest::Approx(spec[direct]).epsilon(1e-14));
  }
}

TEST_CASE("marginals over auxiliaries") {
  const auto fast = Schedule::fast();
  const auto p = IsingProblem::two_spin(-0.3, 0.0, 0.5);
  const auto e = embed_fast_anneal(p, default_flux_bias(p, fast), fast);
  REQUIRE(e.auxiliary_count() == 1);
  std::vector<double> probs(8);
  for (int k = 0; k < 8; ++k) probs[k] = (k + 1) / 36.0;
  const auto m = e.original_marginals(probs);
  CHECK(m[0] == doctest::Approx(3.0 / 36));
  CHECK(m[3] == doctest::Approx(15.0 / 36));
}
