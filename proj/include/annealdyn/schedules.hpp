#pragma once

#include <numbers>
#include <utility>
#include <vector>

namespace annealdyn {

inline constexpr double kPi = std::numbers::pi;

enum class ScheduleKind { standard, fast, tabulated };

// Piecewise-linear table over s in [0, 1]; abscissae strictly increasing.
class ScheduleTable {
 public:
  ScheduleTable(std::vector<double> s, std::vector<double> values);
  double operator()(double s) const;
  const std::vector<double>& abscissae() const { return s_; }
  const std::vector<double>& values() const { return v_; }

 private:
  std::vector<double> s_;
  std::vector<double> v_;
};

// A(s)/h and B(s)/h in GHz.
class Schedule {
 public:
  static Schedule standard();
  static Schedule fast();
  static Schedule tabulated(ScheduleTable a, ScheduleTable b);

  ScheduleKind kind() const { return kind_; }
  double A(double s) const;
  double B(double s) const;

 private:
  explicit Schedule(ScheduleKind kind) : kind_(kind) {}
  ScheduleKind kind_;
  std::vector<ScheduleTable> tables_;
};

namespace fit {
inline constexpr double a1 = 2.27, a2 = -8.22, a3 = 16.14, a4 = -27.59;
inline constexpr double b1 = 0.26, b2 = 2.46, b3 = 5.86;
inline constexpr double c1 = 2.15, c2 = -2.66, c3 = -35.29, c4 = 143.48, c5 = 8.99, c6 = -30.63;
inline constexpr double d1 = -1.21, d2 = -1.24, d3 = 4.79, d4 = 3.38, d5 = 5.87;
inline constexpr double a0 = 5.00, b0 = 0.40;
}  // namespace fit

// Window of the delayed linear-term ramp, stored in ns.
struct OnsetWindow {
  double start_ns = 0.0;
  double end_ns = 0.0;

  static OnsetWindow none() { return {}; }
  static OnsetWindow from_us(double start_us, double end_us);
  bool degenerate() const { return end_ns == start_ns; }
  void validate() const;
};

double eval_A(const Schedule& schedule, double s);
double eval_B(const Schedule& schedule, double s);

// B'/B at time t: 0 before the window, a quarter-sine ramp inside, 1 after.
double onset_factor(const OnsetWindow& w, double t_ns);
double eval_B_prime(const Schedule& schedule, const OnsetWindow& w, double t_ns, double t_a_ns);

// Hamiltonian coefficients in rad/ns at time t of an anneal of length t_a.
struct Coefficients {
  double driver;  // pi * A(s)
  double linear;  // pi * B'(s)
  double quadratic;  // pi * B(s)
};
Coefficients coefficients_at(const Schedule& schedule, const OnsetWindow& w, double t_ns,
                             double t_a_ns);

}  // namespace annealdyn
