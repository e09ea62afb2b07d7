#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle_values.hpp"
#include "slowsound/numerics.hpp"

using namespace slowsound;
using namespace slowsound::numerics;

namespace {
double sech(double x) { return 1.0 / std::cosh(x); }

// Direct O(N^2) transform used as the reference.
ComplexSeries naive_dft(const ComplexSeries& x) {
  const std::size_t n = x.size();
  ComplexSeries out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += x[j] * std::polar(1.0, -2.0 * kPi * double(k * j % n) / double(n));
    }
    out[k] = acc;
  }
  return out;
}

ComplexSeries random_series(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexSeries x(n);
  for (auto& v : x) v = {d(gen), d(gen)};
  return x;
}
}  // namespace

TEST_CASE("grid coordinates and wavenumbers") {
  const Grid1D g(10.0, 16);
  CHECK(g.spacing() == doctest::Approx(0.625));
  CHECK(g.x(0) == doctest::Approx(-5.0));
  CHECK(g.x(15) == doctest::Approx(5.0 - 0.625));
  const auto k = g.wavenumbers();
  CHECK(k[1] == doctest::Approx(2.0 * kPi / 10.0));
  CHECK(k[8] == doctest::Approx(-8.0 * 2.0 * kPi / 10.0));
  CHECK(k[15] == doctest::Approx(-2.0 * kPi / 10.0));
  CHECK_THROWS_AS(Grid1D(10.0, 8), ShapeError);
  CHECK_THROWS_AS(Grid1D(10.0, 100), ShapeError);
  CHECK_THROWS_AS(Grid1D(0.0, 64), DomainError);
}

TEST_CASE("line integrals of sech powers") {
  CHECK(integrate_line([](double x) { return sech(x) * sech(x); }) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(integrate_line([](double x) { return sech(x) * std::tanh(x); })) < 1e-10);
  const double s4 = integrate_line([](double x) { return std::pow(sech(x), 4); });
  CHECK(std::abs(s4 - 4.0 / 3.0) < 1e-10);
}

TEST_CASE("odd integrands integrate to zero") {
  for (double a : {0.3, 1.0, 2.4}) {
    const double v = integrate_line([a](double x) { return std::tanh(a * x) * std::pow(sech(x), a); });
    CHECK(std::abs(v) < kQuadratureTol);
    const double w = integrate_line([a](double x) { return x * std::exp(-a * x * x); });
    CHECK(std::abs(w) < kQuadratureTol);
  }
}

TEST_CASE("non-decaying integrand reports non-convergence") {
  CHECK_THROWS_AS(integrate_line([](double) { return 1.0; }), ConvergenceError);
}

TEST_CASE("finite interval and complex line integrals") {
  CHECK(integrate_interval([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const cplx z = integrate_line_complex([](double x) { return cplx(sech(x), std::tanh(x) * sech(x)); });
  CHECK(z.real() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::abs(z.imag()) < 1e-10);
}

TEST_CASE("gamma function") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(gamma_fn(2.3) == doctest::Approx(oracle::gamma_2_3).epsilon(1e-12));
  CHECK(gamma_fn(3.7) == doctest::Approx(oracle::gamma_3_7).epsilon(1e-12));
  for (double z : {0.5, 0.9, 1.13, 2.3}) {
    CHECK(gamma_fn(z + 1.0) == doctest::Approx(z * gamma_fn(z)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("hypergeometric 2F1") {
  CHECK(hyp2f1(1.3, 4.6, 2.3, 0.0) == 1.0);
  CHECK(hyp2f1(1.0, 1.0, 2.0, -1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(hyp2f1(1.3, 4.6, 2.3, -1.0) == doctest::Approx(oracle::hyp_13_46_23_m1).epsilon(1e-10));
  CHECK(hyp2f1(1.5, 0.5, 2.5, 0.3) == doctest::Approx(oracle::hyp_15_05_25_03).epsilon(1e-10));
  const double a = oracle::alpha_ref;
  CHECK(hyp2f1(a, 2.0 * (1.0 + a), 1.0 + a, -1.0) ==
        doctest::Approx(oracle::hyp_alpha_b1).epsilon(1e-10));
  // z = 1 through Gauss' summation: 2F1(1/2, 1/2; 2; 1) = Gamma(2) Gamma(1) / Gamma(3/2)^2.
  CHECK(hyp2f1(0.5, 0.5, 2.0, 1.0) == doctest::Approx(4.0 / kPi).epsilon(1e-10));
  for (double z : {-1.0, -0.4, 0.3, 0.9}) {
    CHECK(std::abs(hyp2f1(1.3, 4.6, 2.3, z) - hyp2f1(4.6, 1.3, 2.3, z)) <=
          1e-12 * std::abs(hyp2f1(1.3, 4.6, 2.3, z)));
  }
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), DomainError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, -1.5), DomainError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 1.5, 1.0), DomainError);
}

TEST_CASE("root finding") {
  CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(find_root([](double x) { return std::tanh(x) - 0.5; }, 0.0, 2.0) ==
        doctest::Approx(oracle::atanh_half).epsilon(1e-12));
  CHECK(std::abs(find_root([](double x) { return x; }, -1.0, 1.0)) < 1e-12);
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
}

TEST_CASE("fft conventions") {
  const std::size_t n = 16;
  ComplexSeries ones(n, 1.0);
  auto f = fft(ones);
  CHECK(f[0].real() == doctest::Approx(16.0));
  for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(f[k]) < 1e-12);

  ComplexSeries wave(n);
  for (std::size_t j = 0; j < n; ++j) wave[j] = std::polar(1.0, 2.0 * kPi * double(j) / double(n));
  f = fft(wave);
  CHECK(f[1].real() == doctest::Approx(16.0));
  CHECK(std::abs(f[0]) < 1e-12);

  const auto x = random_series(64, 7);
  const auto ref = naive_dft(x);
  f = fft(x);
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(f[k] - ref[k]));
  CHECK(worst < 1e-11);

  CHECK_THROWS_AS(fft(ComplexSeries(12)), ShapeError);
}

TEST_CASE("fft round trip up to 2^16") {
  for (std::size_t n = 1; n <= (1u << 16); n *= 2) {
    const auto x = random_series(n, static_cast<unsigned>(n));
    const auto back = ifft(fft(x));
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(back[j] - x[j]));
    CHECK_MESSAGE(worst < 1e-12, "n = " << n);
  }
  FftPlan plan(32);
  auto x = random_series(32, 3);
  const auto orig = x;
  plan.forward(x);
  plan.inverse(x);
  for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(x[j] - orig[j]) < 1e-13);
  ComplexSeries wrong(16);
  CHECK_THROWS_AS(plan.forward(wrong), ShapeError);
}

TEST_CASE("dense solves") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(3, 3);
  Eigen::VectorXcd b(3);
  b << 1.0, cplx(0.0, 2.0), -3.0;
  CHECK((solve_dense(a, b) - b).norm() < 1e-15);

  std::mt19937 gen(11);
  std::normal_distribution<double> d;
  Eigen::MatrixXcd m(9, 9);
  Eigen::VectorXcd rhs(9);
  for (int i = 0; i < 9; ++i) {
    rhs(i) = {d(gen), d(gen)};
    for (int j = 0; j < 9; ++j) m(i, j) = {d(gen), d(gen)};
  }
  const auto sol = solve_dense(m, rhs);
  CHECK((m * sol - rhs).norm() < 1e-10);

  Eigen::MatrixXcd singular = Eigen::MatrixXcd::Zero(2, 2);
  singular(0, 0) = 1.0;
  singular(1, 0) = 2.0;
  CHECK_THROWS_AS(solve_dense(singular, Eigen::VectorXcd::Ones(2)), SingularMatrixError);
  CHECK_THROWS_AS(solve_dense(Eigen::MatrixXcd::Identity(3, 2), Eigen::VectorXcd::Ones(3)), ShapeError);
}

TEST_CASE("rk4 integration") {
  const OdeRhs zero = [](double, std::span<const cplx>, std::span<cplx> dy) {
    for (auto& v : dy) v = 0.0;
  };
  CHECK(rk4_evolve({cplx(0.3, -0.2)}, zero, 0.0, 1.0, 0.1)[0] == cplx(0.3, -0.2));

  const OdeRhs decay = [](double, std::span<const cplx> y, std::span<cplx> dy) { dy[0] = -y[0]; };
  CHECK(std::abs(rk4_evolve({1.0}, decay, 0.0, 1.0, 1e-3)[0] - std::exp(-1.0)) < 1e-8);

  // Resonant two-level system, i c' = (Omega/2) sigma_x c: full transfer after t = pi/Omega.
  const double omega = 1.7;
  const OdeRhs rabi = [omega](double, std::span<const cplx> y, std::span<cplx> dy) {
    const cplx mi(0.0, -0.5 * omega);
    dy[0] = mi * y[1];
    dy[1] = mi * y[0];
  };
  const double period = 2.0 * kPi / omega;
  auto error_at = [&](double dt) {
    const auto c = rk4_evolve({1.0, 0.0}, rabi, 0.0, period, dt);
    return std::abs(std::norm(c[0]) - 1.0) + std::norm(c[1]);
  };
  const double dt = period / 400.0;
  CHECK(error_at(dt) < 1e-6);
  const auto half = rk4_evolve({1.0, 0.0}, rabi, 0.0, 0.5 * period, dt);
  CHECK(std::norm(half[1]) == doctest::Approx(1.0).epsilon(1e-6));

  // Fourth order: halving the step cuts the amplitude error ~16x.
  auto amp_error = [&](double h) {
    const auto c = rk4_evolve({1.0, 0.0}, rabi, 0.0, 2.0, h);
    return std::abs(c[0] - std::cos(0.5 * omega * 2.0));
  };
  const double ratio = amp_error(0.1) / amp_error(0.05);
  CHECK(ratio > 13.0);
  CHECK(ratio < 19.0);

  CHECK_THROWS_AS(rk4_evolve({1.0}, decay, 0.0, 1.0, 0.3), DomainError);
  CHECK_THROWS_AS(rk4_evolve({1.0}, decay, 0.0, 1.0, 0.0), DomainError);
  const OdeRhs blowup = [](double, std::span<const cplx>, std::span<cplx> dy) {
    dy[0] = std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(rk4_evolve({1.0}, blowup, 0.0, 1.0, 0.5), DivergenceError);
}

TEST_CASE("simpson weights") {
  std::vector<double> y(11);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::pow(0.1 * double(i), 2);
  CHECK(simpson(y, 0.1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(96));
}
