#include "slowsound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <fftw3.h>

namespace slowsound::numerics {

Grid1D::Grid1D(double length, std::size_t points, bool periodic)
    : length_(length), points_(points), periodic_(periodic) {
  if (!(length > 0.0)) throw DomainError("Grid1D: length must be positive");
  if (points < 16 || !is_power_of_two(points)) {
    throw ShapeError("Grid1D: point count must be a power of two >= 16, got " +
                     std::to_string(points));
  }
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> xs(points_);
  for (std::size_t i = 0; i < points_; ++i) xs[i] = x(i);
  return xs;
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> ks(points_);
  const double dk = 2.0 * kPi / length_;
  const auto n = static_cast<std::ptrdiff_t>(points_);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t m = (i < n / 2) ? i : i - n;
    ks[static_cast<std::size_t>(i)] = dk * static_cast<double>(m);
  }
  return ks;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------
// Quadrature

namespace {

template <class Integrator, class F>
double run_de_rule(Integrator& rule, F&& f, double tol) {
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  double value = 0.0;
  try {
    value = rule.integrate(f, 1e-9, &err, &l1, &levels);
    if (!(err <= tol)) {
      // Tighter relative target; DE rules converge quadratically so one more
      // pass usually settles it.
      value = rule.integrate(f, 1e-14, &err, &l1, &levels);
    }
  } catch (const std::domain_error& e) {
    // Raised when the integrand does not decay at the ends of the line.
    throw ConvergenceError(std::string("integrate: ") + e.what(), err);
  }
  if (!std::isfinite(value)) throw ConvergenceError("integrate: non-finite result", err);
  if (!(err <= tol)) throw ConvergenceError("integrate: tolerance not reached", err);
  return value;
}

}  // namespace

double integrate_line(const std::function<double(double)>& f, double tol) {
  boost::math::quadrature::sinh_sinh<double> rule(12);
  auto g = [&f](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
  return run_de_rule(rule, g, tol);
}

cplx integrate_line_complex(const std::function<cplx(double)>& f, double tol) {
  const double re = integrate_line([&f](double x) { return f(x).real(); }, tol);
  const double im = integrate_line([&f](double x) { return f(x).imag(); }, tol);
  return {re, im};
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> rule(15);
  double err = 0.0;
  double l1 = 0.0;
  double value = rule.integrate(f, a, b, 1e-12, &err, &l1);
  if (!std::isfinite(value)) throw ConvergenceError("integrate_interval: non-finite", err);
  if (!(err <= tol * std::max(1.0, l1))) {
    throw ConvergenceError("integrate_interval: tolerance not reached", err);
  }
  return value;
}

// ---------------------------------------------------------------------------
// Special functions

double gamma_fn(double z) {
  if (!(z > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  return std::tgamma(z);
}

namespace {

bool is_nonpositive_integer(double c) {
  return c <= 0.0 && std::floor(c) == c;
}

// Plain Gauss series, valid for |z| < 1; fast for |z| <= 1/2.
double hyp2f1_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  constexpr int kMaxTerms = 20000;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 2) return sum;
  }
  throw ConvergenceError("hyp2f1: series did not converge", std::abs(term));
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
  if (z < -1.0 || z > 1.0) throw DomainError("hyp2f1: |z| must not exceed 1");
  if (z == 0.0) return 1.0;
  // Canonical parameter order so that F(a,b) and F(b,a) share one path.
  if (b < a) std::swap(a, b);
  if (z == 1.0) {
    if (!(c - a - b > 0.0)) throw DomainError("hyp2f1: divergent at z = 1");
    return std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
  }
  if (z < 0.0) {
    // Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)).
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
  }
  return hyp2f1_series(a, b, c, z);
}

// ---------------------------------------------------------------------------
// Root finding

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) {
    throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  std::uintmax_t max_iter = 500;
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, max_iter);
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// FFT

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftPlan::Impl {
  std::size_t n = 0;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  fftw_complex* scratch = nullptr;
};

FftPlan::FftPlan(std::size_t n) : impl_(std::make_unique<Impl>()) {
  if (!is_power_of_two(n)) {
    throw ShapeError("fft: length must be a power of two, got " + std::to_string(n));
  }
  impl_->n = n;
  std::lock_guard lock(planner_mutex());
  impl_->scratch = fftw_alloc_complex(n);
  const int ni = static_cast<int>(n);
  impl_->fwd = fftw_plan_dft_1d(ni, impl_->scratch, impl_->scratch, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_1d(ni, impl_->scratch, impl_->scratch, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
  if (!impl_) return;
  std::lock_guard lock(planner_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->inv) fftw_destroy_plan(impl_->inv);
  if (impl_->scratch) fftw_free(impl_->scratch);
}

FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

std::size_t FftPlan::size() const noexcept { return impl_->n; }

void FftPlan::forward(std::span<cplx> data) const {
  if (data.size() != impl_->n) throw ShapeError("FftPlan: length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->fwd, p, p);
}

void FftPlan::inverse(std::span<cplx> data) const {
  if (data.size() != impl_->n) throw ShapeError("FftPlan: length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->inv, p, p);
  const double scale = 1.0 / static_cast<double>(impl_->n);
  for (auto& v : data) v *= scale;
}

ComplexSeries fft(std::span<const cplx> samples) {
  FftPlan plan(samples.size());
  ComplexSeries out(samples.begin(), samples.end());
  plan.forward(out);
  return out;
}

ComplexSeries ifft(std::span<const cplx> spectrum) {
  FftPlan plan(spectrum.size());
  ComplexSeries out(spectrum.begin(), spectrum.end());
  plan.inverse(out);
  return out;
}

// ---------------------------------------------------------------------------
// Dense linear algebra

Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw ShapeError("solve_dense: shape mismatch");
  if (a.rows() == 0 || a.rows() > 16) throw ShapeError("solve_dense: size must be 1..16");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::MatrixXcd& packed = lu.matrixLU();
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double p = std::abs(packed(i, i));
    max_pivot = std::max(max_pivot, p);
    min_pivot = std::min(min_pivot, p);
  }
  if (!(max_pivot > 0.0) || min_pivot <= 1e-13 * max_pivot) {
    throw SingularMatrixError("solve_dense: matrix is numerically singular");
  }
  Eigen::VectorXcd x = lu.solve(b);
  const double residual = (a * x - b).norm();
  if (residual > 1e-10 * std::max(b.norm(), std::numeric_limits<double>::min())) {
    throw SingularMatrixError("solve_dense: residual " + std::to_string(residual) +
                              " too large (ill-conditioned)");
  }
  return x;
}

// ---------------------------------------------------------------------------
// ODE

ComplexSeries rk4_evolve(ComplexSeries y, const OdeRhs& rhs, double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw DomainError("rk4_evolve: dt must be positive");
  const double steps_real = (t1 - t0) / dt;
  const double steps_round = std::round(steps_real);
  if (steps_real < 0.0 || std::abs(steps_real - steps_round) > 1e-8 * std::max(1.0, steps_real)) {
    throw DomainError("rk4_evolve: (t1 - t0)/dt must be a non-negative integer");
  }
  const auto steps = static_cast<std::size_t>(steps_round);
  const std::size_t n = y.size();
  ComplexSeries k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = t0;
  for (std::size_t s = 0; s < steps; ++s) {
    rhs(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(t + dt, tmp, k4);
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      finite = finite && std::isfinite(y[i].real()) && std::isfinite(y[i].imag());
    }
    if (!finite) {
      throw DivergenceError("rk4_evolve: non-finite state at t = " + std::to_string(t + dt));
    }
    t = t0 + static_cast<double>(s + 1) * dt;
  }
  return y;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  if (intervals % 2 == 1) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < n; ++i) s += f[i];
    return s * h;
  }
  double s = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  return s * h / 3.0;
}

}  // namespace slowsound::numerics
