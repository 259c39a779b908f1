#include "annealdyn/spinbath.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "annealdyn/errors.hpp"
#include "annealdyn/rng.hpp"

namespace annealdyn {

namespace {

using cplx = std::complex<double>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;

struct Gate8 {
  alignas(64) double re[8][8];
  alignas(64) double im[8][8];
};

Gate8 split(const Mat8& m) {
  Gate8 g{};
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      g.re[r][c] = m(r, c).real();
      g.im[r][c] = m(r, c).imag();
    }
  return g;
}

const Eigen::Matrix2cd& pauli(int alpha) {
  static const std::array<Eigen::Matrix2cd, 3> p = [] {
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    z << 1, 0, 0, -1;
    return std::array<Eigen::Matrix2cd, 3>{x, y, z};
  }();
  return p[static_cast<std::size_t>(alpha)];
}

template <int A, int B>
Eigen::Matrix<cplx, A * B, A * B> kron(const Eigen::Matrix<cplx, A, A>& a, const Eigen::Matrix<cplx, B, B>& b) {
  Eigen::Matrix<cplx, A * B, A * B> out;
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j) out.template block<B, B>(i * B, j * B) = a(i, j) * b;
  return out;
}

template <int N>
Eigen::Matrix<cplx, N, N> unitary_exp(const Eigen::Matrix<cplx, N, N>& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, N, N>> es(h);
  Eigen::Matrix<cplx, N, 1> phases;
  for (int k = 0; k < N; ++k) phases(k) = std::polar(1.0, -dt * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix4cd system_hamiltonian(const IsingProblem& p, const Coefficients& c) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) {
    const auto idx = static_cast<std::uint64_t>(k);
    h(k, k) = c.linear * p.field_energy(idx) + c.quadratic * p.coupling_energy(idx);
    h(k ^ 2, k) -= c.driver;
    h(k ^ 1, k) -= c.driver;
  }
  return h;
}

// Applies an 8x8 gate to the pairs of 4-amplitude groups that differ in bit `bit`.
void apply_gate8(double* __restrict re, double* __restrict im, int bit, const Gate8& gate,
                 std::size_t group_begin, std::size_t group_end) {
  double gr[64], gi[64];
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      gr[r * 8 + c] = gate.re[r][c];
      gi[r * 8 + c] = gate.im[r][c];
    }
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t low_mask = stride - 1;
  for (std::size_t q = group_begin; q < group_end; ++q) {
    const std::size_t k = q << 2;
    const std::size_t k0 = ((k & ~low_mask) << 1) | (k & low_mask);
    const std::size_t k1 = k0 | stride;
    double xr[8], xi[8];
    for (int j = 0; j < 4; ++j) {
      xr[j] = re[k0 + j];
      xi[j] = im[k0 + j];
      xr[j + 4] = re[k1 + j];
      xi[j + 4] = im[k1 + j];
    }
    double yr[8], yi[8];
    for (int r = 0; r < 8; ++r) {
      double sr = 0.0, si = 0.0;
      for (int c = 0; c < 8; ++c) {
        sr += gr[r * 8 + c] * xr[c] - gi[r * 8 + c] * xi[c];
        si += gr[r * 8 + c] * xi[c] + gi[r * 8 + c] * xr[c];
      }
      yr[r] = sr;
      yi[r] = si;
    }
    for (int j = 0; j < 4; ++j) {
      re[k0 + j] = yr[j];
      im[k0 + j] = yi[j];
      re[k1 + j] = yr[j + 4];
      im[k1 + j] = yi[j + 4];
    }
  }
}

void apply_gate4(double* __restrict re, double* __restrict im, const Eigen::Matrix4cd& u,
                 std::size_t group_begin, std::size_t group_end) {
  for (std::size_t q = group_begin; q < group_end; ++q) {
    const std::size_t k = q << 2;
    double yr[4] = {}, yi[4] = {};
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r) {
        yr[r] += u(r, c).real() * re[k + c] - u(r, c).imag() * im[k + c];
        yi[r] += u(r, c).real() * im[k + c] + u(r, c).imag() * re[k + c];
      }
    for (int r = 0; r < 4; ++r) {
      re[k + r] = yr[r];
      im[k + r] = yi[r];
    }
  }
}

// Persistent workers splitting a range into fixed contiguous slices.
class WorkerPool {
 public:
  explicit WorkerPool(int threads) : threads_(std::max(1, threads)) {
    for (int w = 1; w < threads_; ++w) workers_.emplace_back([this, w] { loop(w); });
  }
  ~WorkerPool() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
      ++generation_;
    }
    cv_.notify_all();
    for (auto& t : workers_) t.join();
  }

  template <class F>
  void run(std::size_t n, F&& f) {
    if (threads_ == 1) {
      f(std::size_t{0}, n);
      return;
    }
    {
      std::lock_guard lock(mu_);
      task_ = [&f](std::size_t b, std::size_t e) { f(b, e); };
      n_ = n;
      pending_ = threads_ - 1;
      ++generation_;
    }
    cv_.notify_all();
    f(0, n / threads_);
    std::unique_lock lock(mu_);
    done_.wait(lock, [this] { return pending_ == 0; });
  }

 private:
  void loop(int w) {
    std::size_t seen = 0;
    for (;;) {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return generation_ != seen; });
      seen = generation_;
      if (stop_) return;
      const auto task = task_;
      const std::size_t b = n_ * w / threads_, e = n_ * (w + 1) / threads_;
      lock.unlock();
      task(b, e);
      lock.lock();
      if (--pending_ == 0) done_.notify_one();
    }
  }

  int threads_;
  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_, done_;
  std::function<void(std::size_t, std::size_t)> task_;
  std::size_t n_ = 0;
  std::size_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
};

}  // namespace

void BathSpec::validate() const {
  if (bath_spins < 0 || bath_spins > kMaxBathSpins) throw std::invalid_argument("bath size must be in [0, 20]");
  if (!(g >= 0.0) || !(K >= 0.0) || !(Omega >= 0.0) || !std::isfinite(g) || !std::isfinite(K) ||
      !std::isfinite(Omega))
    throw std::invalid_argument("bath parameters g, K, Omega must be finite and >= 0");
}

BathCouplings draw_bath_couplings(const BathSpec& bath) {
  bath.validate();
  Rng rng(bath.seed, rng_stream::bath_couplings);
  BathCouplings c;
  c.K.resize(static_cast<std::size_t>(bath.bath_spins));
  c.Omega.resize(static_cast<std::size_t>(bath.bath_spins));
  for (auto& kn : c.K)
    for (auto& knm : kn)
      for (double& v : knm) v = rng.uniform(-bath.K, bath.K);
  for (auto& on : c.Omega)
    for (double& v : on) v = rng.uniform(-bath.Omega, bath.Omega);
  return c;
}

CompositeState::CompositeState(int bath_spins) : bath_spins_(bath_spins) {
  if (bath_spins < 0 || bath_spins > kMaxBathSpins) throw std::invalid_argument("bath size must be in [0, 20]");
  const std::size_t dim = std::size_t{4} << bath_spins;
  re_.assign(dim, 0.0);
  im_.assign(dim, 0.0);
}

double CompositeState::norm() const {
  constexpr std::size_t kBlock = 4096;
  double total = 0.0;
  for (std::size_t b = 0; b < re_.size(); b += kBlock) {
    double s = 0.0;
    const std::size_t e = std::min(re_.size(), b + kBlock);
    for (std::size_t k = b; k < e; ++k) s += re_[k] * re_[k] + im_[k] * im_[k];
    total += s;
  }
  return std::sqrt(total);
}

std::array<double, 4> CompositeState::system_populations() const {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < re_.size(); k += 4)
    for (int i = 0; i < 4; ++i) p[i] += re_[k + i] * re_[k + i] + im_[k + i] * im_[k + i];
  return p;
}

Eigen::Matrix4cd CompositeState::reduced_density_matrix() const {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (std::size_t k = 0; k < re_.size(); k += 4)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        rho(i, j) += cplx(re_[k + i], im_[k + i]) * cplx(re_[k + j], -im_[k + j]);
  return rho;
}

CompositeState init_state(int bath_spins, std::uint64_t seed) {
  CompositeState st(bath_spins);
  const std::size_t db = std::size_t{1} << bath_spins;
  std::vector<cplx> phi(db);
  if (bath_spins == 0) {
    phi[0] = 1.0;
  } else {
    Rng rng(seed, rng_stream::bath_state);
    double nrm = 0.0;
    for (auto& a : phi) {
      const auto [x, y] = rng.normal_pair();
      a = cplx(x, y);
      nrm += std::norm(a);
    }
    const cplx phase = std::abs(phi[0]) > 0.0 ? std::conj(phi[0]) / std::abs(phi[0]) : cplx(1.0);
    const double scale = 1.0 / std::sqrt(nrm);
    const double lead = std::abs(phi[0]) * scale;
    for (auto& a : phi) a *= phase * scale;
    phi[0] = cplx(lead, 0.0);
  }
  for (std::size_t p = 0; p < db; ++p)
    for (int i = 0; i < 4; ++i) {
      st.re()[p * 4 + static_cast<std::size_t>(i)] = 0.5 * phi[p].real();
      st.im()[p * 4 + static_cast<std::size_t>(i)] = 0.5 * phi[p].imag();
    }
  return st;
}

BathRunResult evolve_bath_tdse(const IsingProblem& p, const Schedule& schedule,
                               const OnsetWindow& w, const BathSpec& bath, double t_a_ns,
                               const BathRunOptions& options) {
  bath.validate();
  const auto couplings = draw_bath_couplings(bath);
  auto state = init_state(bath.bath_spins, bath.seed);
  return evolve_bath_tdse(p, schedule, w, bath, couplings, state, t_a_ns, options);
}

BathRunResult evolve_bath_tdse(const IsingProblem& p, const Schedule& schedule,
                               const OnsetWindow& w, const BathSpec& bath,
                               const BathCouplings& couplings, CompositeState& state,
                               double t_a_ns, const BathRunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (p.size() != 2) throw std::invalid_argument("spin-bath dynamics implemented for two system spins");
  bath.validate();
  w.validate();
  const int nb = bath.bath_spins;
  if (state.bath_spins() != nb || static_cast<int>(couplings.K.size()) != nb ||
      static_cast<int>(couplings.Omega.size()) != nb)
    throw std::invalid_argument("state, couplings and bath size disagree");
  if (!(t_a_ns > 0.0) || !(options.dt_ns > 0.0) || options.dt_ns > t_a_ns)
    throw std::invalid_argument("need 0 < dt <= t_a");

  const auto steps = static_cast<std::size_t>(std::ceil(t_a_ns / options.dt_ns - 1e-9));
  const double dt = t_a_ns / static_cast<double>(steps);

  // Constant per-bath-spin factors on (bath spin n) x (system).
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix4cd id4 = Eigen::Matrix4cd::Identity();
  std::vector<Mat8> gates(static_cast<std::size_t>(nb));
  for (int n = 0; n < nb; ++n) {
    Mat8 h = Mat8::Zero();
    for (int a = 0; a < 3; ++a) {
      h += couplings.Omega[n][a] * kron<2, 4>(pauli(a), id4);
      const Eigen::Matrix4cd s1 = kron<2, 2>(pauli(a), id2), s2 = kron<2, 2>(id2, pauli(a));
      h += bath.g * kron<2, 4>(pauli(a), (couplings.K[n][0][a] * s1 + couplings.K[n][1][a] * s2).eval());
    }
    gates[n] = unitary_exp<8>((kPi * h).eval(), dt);
  }
  std::vector<Gate8> split_gates(gates.size());
  for (std::size_t n = 0; n < gates.size(); ++n) split_gates[n] = split(gates[n]);

  WorkerPool pool(options.threads);
  double* re = state.re().data();
  double* im = state.im().data();
  const std::size_t groups8 = state.dimension() / 8;
  const std::size_t groups4 = state.dimension() / 4;
  const double norm0 = state.norm();
  double drift = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const auto c = coefficients_at(schedule, w, t + 0.5 * dt, t_a_ns);
    const Eigen::Matrix4cd us = unitary_exp<4>(system_hamiltonian(p, c), dt);
    const bool forward = (k % 2) == 0;
    if (nb == 0) {
      pool.run(groups4, [&](std::size_t b, std::size_t e) { apply_gate4(re, im, us, b, e); });
    } else {
      // Forward: U_S first, then G_0 .. G_{N-1}. Backward: reverse order, U_S last.
      Mat8 blk = Mat8::Zero();
      blk.block<4, 4>(0, 0) = us;
      blk.block<4, 4>(4, 4) = us;
      const Gate8 fused = split(forward ? (gates[0] * blk).eval() : (blk * gates[0]).eval());
      for (int j = 0; j < nb; ++j) {
        const int n = forward ? j : nb - 1 - j;
        const Gate8& g = n == 0 ? fused : split_gates[static_cast<std::size_t>(n)];
        pool.run(groups8, [&](std::size_t b, std::size_t e) { apply_gate8(re, im, n + 2, g, b, e); });
      }
    }
    if (options.observer && options.observe_every > 0 &&
        ((k + 1) % options.observe_every == 0 || k + 1 == steps))
      options.observer(t + dt, state);
    if ((k + 1) % 1000 == 0 || k + 1 == steps) {
      drift = std::max(drift, std::abs(state.norm() - norm0));
      if (drift > 1e-6) throw NumericalError("composite state norm drifted by " + std::to_string(drift));
    }
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {state.system_populations(), drift, steps, secs};
}

double system_energy(const CompositeState& state, const IsingProblem& p, const Schedule& schedule,
                     const OnsetWindow& w, double t_ns, double t_a_ns) {
  const auto h = system_hamiltonian(p, coefficients_at(schedule, w, t_ns, t_a_ns));
  return (state.reduced_density_matrix() * h).trace().real();
}

}  // namespace annealdyn
