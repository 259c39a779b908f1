#include "annealdyn/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace annealdyn {

namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::invalid_argument("schedule parameter s=" + std::to_string(s) + " outside [0, 1]");
}

double standard_A(double s) {
  using namespace fit;
  return (1.0 - s) * std::exp(a1 + s * (a2 + s * (a3 + s * a4)));
}

double standard_B(double s) {
  using namespace fit;
  return b1 + s * (b2 + s * b3);
}

double fast_A(double s) {
  using namespace fit;
  const double f0 = 0.5 * (1.0 + std::tanh(a0 * (b0 - s)));
  const double s3 = s * s * s;
  const double first = c1 + c2 * s + c3 * s3 + c4 * s3 * s;
  const double second = c5 + c6 * s;
  return std::exp(f0 * first + (1.0 - f0) * second);
}

double fast_B(double s) {
  using namespace fit;
  return std::exp(d1 + d2 * (1.0 - s) * std::tanh(d3 * std::pow(s, 1.5)) +
                  d4 * std::tanh(d5 * s * s));
}

}  // namespace

ScheduleTable::ScheduleTable(std::vector<double> s, std::vector<double> values)
    : s_(std::move(s)), v_(std::move(values)) {
  if (s_.size() != v_.size() || s_.size() < 2)
    throw std::invalid_argument("schedule table needs at least two (s, value) rows");
  for (std::size_t k = 0; k < s_.size(); ++k) {
    if (!std::isfinite(s_[k]) || !std::isfinite(v_[k]) || v_[k] < 0.0)
      throw std::invalid_argument("schedule table has a non-finite or negative entry");
    if (k > 0 && !(s_[k] > s_[k - 1]))
      throw std::invalid_argument("schedule table abscissae must increase strictly");
  }
  if (s_.front() > 0.0 || s_.back() < 1.0)
    throw std::invalid_argument("schedule table must cover s in [0, 1]");
}

double ScheduleTable::operator()(double s) const {
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  if (it == s_.begin()) return v_.front();
  if (it == s_.end()) return v_.back();
  const auto k = static_cast<std::size_t>(it - s_.begin());
  const double u = (s - s_[k - 1]) / (s_[k] - s_[k - 1]);
  return v_[k - 1] + u * (v_[k] - v_[k - 1]);
}

Schedule Schedule::standard() { return Schedule(ScheduleKind::standard); }
Schedule Schedule::fast() { return Schedule(ScheduleKind::fast); }

Schedule Schedule::tabulated(ScheduleTable a, ScheduleTable b) {
  Schedule sch(ScheduleKind::tabulated);
  sch.tables_.push_back(std::move(a));
  sch.tables_.push_back(std::move(b));
  return sch;
}

double Schedule::A(double s) const {
  switch (kind_) {
    case ScheduleKind::standard: return standard_A(s);
    case ScheduleKind::fast: return fast_A(s);
    case ScheduleKind::tabulated: return tables_[0](s);
  }
  return 0.0;
}

double Schedule::B(double s) const {
  switch (kind_) {
    case ScheduleKind::standard: return standard_B(s);
    case ScheduleKind::fast: return fast_B(s);
    case ScheduleKind::tabulated: return tables_[1](s);
  }
  return 0.0;
}

OnsetWindow OnsetWindow::from_us(double start_us, double end_us) {
  OnsetWindow w{start_us * 1e3, end_us * 1e3};
  w.validate();
  return w;
}

void OnsetWindow::validate() const {
  if (!(start_ns >= 0.0) || !(end_ns >= start_ns) || !std::isfinite(end_ns))
    throw std::invalid_argument("onset window needs 0 <= start <= end");
}

double eval_A(const Schedule& schedule, double s) {
  check_s(s);
  return schedule.A(s);
}

double eval_B(const Schedule& schedule, double s) {
  check_s(s);
  return schedule.B(s);
}

double onset_factor(const OnsetWindow& w, double t_ns) {
  if (t_ns <= w.start_ns) return 0.0;
  if (t_ns >= w.end_ns) return 1.0;
  return std::sin(0.5 * kPi * (t_ns - w.start_ns) / (w.end_ns - w.start_ns));
}

double eval_B_prime(const Schedule& schedule, const OnsetWindow& w, double t_ns, double t_a_ns) {
  if (!(t_a_ns > 0.0)) throw std::invalid_argument("annealing time must be positive");
  if (!(t_ns >= 0.0 && t_ns <= t_a_ns * (1.0 + 1e-12)))
    throw std::invalid_argument("time outside [0, t_a]");
  const double s = std::min(t_ns / t_a_ns, 1.0);
  return onset_factor(w, t_ns) * schedule.B(s);
}

Coefficients coefficients_at(const Schedule& schedule, const OnsetWindow& w, double t_ns,
                             double t_a_ns) {
  const double s = std::clamp(t_ns / t_a_ns, 0.0, 1.0);
  const double b = schedule.B(s);
  return {kPi * schedule.A(s), kPi * onset_factor(w, t_ns) * b, kPi * b};
}

}  // namespace annealdyn
