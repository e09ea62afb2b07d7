#pragma once

// Numerical kernels shared by the physics modules. Nothing in here knows
// about condensates or qutrits.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "slowsound/errors.hpp"

namespace slowsound::numerics {

using cplx = std::complex<double>;
using ComplexSeries = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

// Default tolerances inherited by every module.
inline constexpr double kQuadratureTol = 1e-10;
inline constexpr double kRootTol = 1e-12;
inline constexpr double kSteadyStateTol = 1e-10;

/// Uniform grid on [-L/2, L/2) with a power-of-two point count.
class Grid1D {
 public:
  Grid1D(double length, std::size_t points, bool periodic = true);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return points_; }
  double spacing() const noexcept { return length_ / static_cast<double>(points_); }
  bool periodic() const noexcept { return periodic_; }

  double x(std::size_t i) const noexcept {
    return -0.5 * length_ + static_cast<double>(i) * spacing();
  }
  std::vector<double> coordinates() const;
  /// Angular wavenumbers in FFT bin order (0, 1, ..., N/2-1, -N/2, ..., -1) * 2pi/L.
  std::vector<double> wavenumbers() const;

 private:
  double length_;
  std::size_t points_;
  bool periodic_;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Integral of f over the whole real line. f must decay at least
/// exponentially. Throws ConvergenceError if the absolute error estimate
/// stays above `tol`.
double integrate_line(const std::function<double(double)>& f, double tol = kQuadratureTol);
cplx integrate_line_complex(const std::function<cplx(double)>& f, double tol = kQuadratureTol);

/// Integral of f over a finite interval [a, b] (tanh-sinh rule).
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double tol = kQuadratureTol);

/// Gamma function for positive real arguments.
double gamma_fn(double z);

/// Gauss hypergeometric 2F1(a, b; c; z) for -1 <= z <= 1.
/// Negative z is mapped through the Pfaff transformation onto z/(z-1) in (0, 1/2].
double hyp2f1(double a, double b, double c, double z);

/// Root of f inside a sign-changing bracket.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = kRootTol);

/// Forward transform X_k = sum_n x_n exp(-2 pi i k n / N).
ComplexSeries fft(std::span<const cplx> samples);
/// Inverse transform including the 1/N factor.
ComplexSeries ifft(std::span<const cplx> spectrum);

/// Reusable in-place FFT of one fixed length. Not copyable.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept;
  void forward(std::span<cplx> data) const;
  /// Applies the 1/N normalisation.
  void inverse(std::span<cplx> data) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solve A x = b for a small dense complex system (n <= 16).
Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b);

/// dy/dt = rhs(t, y); writes the derivative into the third argument.
using OdeRhs = std::function<void(double, std::span<const cplx>, std::span<cplx>)>;

/// Classical fourth-order Runge-Kutta from t0 to t1 with fixed step dt.
/// (t1 - t0)/dt must be an integer.
ComplexSeries rk4_evolve(ComplexSeries state, const OdeRhs& rhs, double t0, double t1, double dt);

/// Simpson-weighted sum of uniformly spaced samples (trapezoid when the
/// interval count is odd).
double simpson(std::span<const double> samples, double h);

}  // namespace slowsound::numerics
