#include "annealdyn/extraction.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "annealdyn/errors.hpp"
#include "annealdyn/rng.hpp"

namespace annealdyn {

namespace {

void require_two_spins(const IsingProblem& p) {
  if (p.size() != 2) throw std::invalid_argument("extraction is defined for two-spin problems");
}

std::array<std::uint64_t, 4> draw_counts(std::span<const double> p, std::uint64_t count, Rng& rng) {
  std::array<double, 3> edge{};
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) edge[k] = acc += p[k];
  std::array<std::uint64_t, 4> n{};
  for (std::uint64_t s = 0; s < count; ++s) {
    const double u = rng.uniform() * (acc + p[3]);
    int k = 0;
    while (k < 3 && u >= edge[k]) ++k;
    ++n[k];
  }
  return n;
}

// Gibbs mean energy for any real beta, shifted by the dominant exponent.
double mean_energy_at(std::span<const double> e, double beta) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : e) top = std::max(top, -beta * x);
  double z = 0.0, ez = 0.0;
  for (double x : e) {
    const double w = std::exp(-beta * x - top);
    z += w;
    ez += w * x;
  }
  return ez / z;
}

}  // namespace

FrequencyTable FrequencyTable::from_counts(const std::array<std::uint64_t, 4>& counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw std::invalid_argument("frequency table needs at least one sample");
  FrequencyTable t;
  for (int k = 0; k < 4; ++k) t.f[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  t.count = total;
  return t;
}

FrequencyTable FrequencyTable::from_probabilities(std::span<const double> p, std::uint64_t count) {
  if (p.size() != 4) throw std::invalid_argument("frequency table needs four entries");
  FrequencyTable t;
  for (int k = 0; k < 4; ++k) t.f[k] = p[k];
  t.count = count;
  t.validate();
  return t;
}

void FrequencyTable::validate() const {
  double sum = 0.0;
  for (double x : f) {
    if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("frequencies must be finite and >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("frequencies must sum to 1");
}

SpinAverages spin_averages(const FrequencyTable& t) {
  t.validate();
  const auto& f = t.f;
  return {f[0] + f[1] - f[2] - f[3], f[0] - f[1] + f[2] - f[3], f[0] - f[1] - f[2] + f[3]};
}

Multipliers multipliers_from_frequencies(const FrequencyTable& t) {
  t.validate();
  for (double x : t.f)
    if (x == 0.0) throw ZeroFrequencyError("a state frequency is zero; the multipliers diverge");
  const auto& f = t.f;
  return {0.25 * std::log(f[2] * f[3] / (f[0] * f[1])), 0.25 * std::log(f[1] * f[3] / (f[0] * f[2])),
          0.25 * std::log(f[1] * f[2] / (f[0] * f[3]))};
}

Multipliers multipliers_from_averages(const SpinAverages& s) {
  const double a = s.s1, b = s.s2, c = s.s12;
  const double p = a + b - c - 1, q = a - b + c - 1, r = a - b - c + 1, u = a + b + c + 1;
  if (p == 0.0 || q == 0.0 || r == 0.0 || u == 0.0)
    throw ZeroFrequencyError("a state frequency is zero; the multipliers diverge");
  return {0.25 * std::log(p * q / (r * u)), 0.25 * std::log(r * p / (q * u)),
          0.25 * std::log(r * q / (p * u))};
}

std::array<double, 4> maxent_distribution(const Multipliers& l) {
  std::array<double, 4> w{};
  double z = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double s1 = spin_of(k, 2, 0), s2 = spin_of(k, 2, 1);
    w[k] = std::exp(-l[0] * s1 - l[1] * s2 - l[2] * s1 * s2);
    z += w[k];
  }
  for (auto& x : w) x /= z;
  return w;
}

ExtractedModel method1(const FrequencyTable& t, const IsingProblem& p) {
  require_two_spins(p);
  ExtractedModel m;
  m.lambda = multipliers_from_frequencies(t);
  const auto& l = m.lambda;
  const double num = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
  const double den = p.field(0) * l[0] + p.field(1) * l[1] + p.coupling(1, 0) * l[2];
  if (den == 0.0 || num == 0.0) throw NonIdentifiableError("multipliers carry no temperature information");
  m.beta = num / den;
  m.h1_hat = l[0] / m.beta;
  m.h2_hat = l[1] / m.beta;
  m.J_hat = l[2] / m.beta;
  return m;
}

double method2(const FrequencyTable& t, const IsingProblem& p) {
  require_two_spins(p);
  const auto s = spin_averages(t);
  const double target = p.field(0) * s.s1 + p.field(1) * s.s2 + p.coupling(1, 0) * s.s12;
  const auto energies = p.spectrum();
  const auto [lo_it, hi_it] = std::minmax_element(energies.begin(), energies.end());
  const double e_min = *lo_it, e_max = *hi_it;
  if (e_max - e_min <= 0.0) throw NonIdentifiableError("all states have the same energy");
  if (!(target > e_min && target < e_max))
    throw NoSolutionError("empirical mean energy outside the open Gibbs range");

  const auto g = [&](double beta) { return mean_energy_at(energies, beta) - target; };
  const double g0 = g(0.0);
  if (g0 == 0.0) return 0.0;
  // <E>(beta) is strictly decreasing; grow a bracket on the side the root lies.
  const double dir = g0 > 0.0 ? 1.0 : -1.0;
  double a = 0.0, b = dir;
  while (dir * g(b) > 0.0) {
    a = b;
    b *= 2.0;
    if (std::abs(b) > 1e12) throw NoSolutionError("mean energy too close to the spectrum edge");
  }
  double lo = std::min(a, b), hi = std::max(a, b);
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                   boost::math::tools::eps_tolerance<double>(34), iters);
  return 0.5 * (r.first + r.second);
}

FrequencyTable add_half_smoothing(const FrequencyTable& t) {
  t.validate();
  if (t.count == 0) throw std::invalid_argument("smoothing needs the sample count");
  FrequencyTable out = t;
  const double n = static_cast<double>(t.count);
  for (auto& x : out.f) x = (n * x + 0.5) / (n + 2.0);
  return out;
}

std::array<std::uint64_t, 4> sample_counts(std::span<const double> p, std::uint64_t count,
                                           std::uint64_t seed) {
  if (p.size() != 4) throw std::invalid_argument("sampling needs four probabilities");
  for (double x : p)
    if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("probabilities must be finite and >= 0");
  Rng rng(seed, rng_stream::multinomial);
  return draw_counts(p, count, rng);
}

BootstrapResult bootstrap_beta(const FrequencyTable& t, const IsingProblem& p, ExtractionMethod m,
                               int resamples, std::uint64_t seed) {
  t.validate();
  if (t.count == 0) throw std::invalid_argument("bootstrap needs the sample count");
  if (resamples < 2) throw std::invalid_argument("bootstrap needs at least two resamples");
  Rng rng(seed, rng_stream::bootstrap);
  BootstrapResult out;
  out.resamples = resamples;
  std::vector<double> betas;
  betas.reserve(resamples);
  for (int r = 0; r < resamples; ++r) {
    const auto table = FrequencyTable::from_counts(draw_counts(t.f, t.count, rng));
    try {
      const double beta = m == ExtractionMethod::method1 ? method1(table, p).beta : method2(table, p);
      betas.push_back(beta);
    } catch (const std::runtime_error&) {
      ++out.failures;
    }
  }
  const auto ok = static_cast<double>(betas.size());
  if (betas.size() < 2) throw NonIdentifiableError("bootstrap: method failed on almost every resample");
  out.mean = std::accumulate(betas.begin(), betas.end(), 0.0) / ok;
  double ss = 0.0;
  for (double b : betas) ss += (b - out.mean) * (b - out.mean);
  out.stddev = std::sqrt(ss / (ok - 1.0));
  return out;
}

}  // namespace annealdyn
