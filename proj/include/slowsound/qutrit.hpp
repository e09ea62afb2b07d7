#pragma once

// Impurity bound states in the -sech^2 well of a dark soliton.

#include <array>
#include <cstdint>
#include <variant>

#include "slowsound/params.hpp"

namespace slowsound::qutrit {

/// floor(nu + 1 + sqrt(nu (1 + nu))), computed without rounding hazards:
/// the count is the largest m with nu (2m - 1) >= (m - 1)^2.
int bound_state_count(double nu);
/// Exact version for nu = num/den (den > 0).
int bound_state_count(std::int64_t num, std::int64_t den);

/// True iff 4/5 <= nu < 9/7.
bool is_qutrit(double nu);
bool is_qutrit(std::int64_t num, std::int64_t den);

struct QutritSpectrum {
  double nu = 0.0;
  int n_bound = 0;
  std::array<double, 3> energies{};  ///< E'_n = -(nu - n)^2 / (2 r_m), units of mu
  double omega0 = 0.0;               ///< |g> <-> |e1>
  double omega1 = 0.0;               ///< |e1> <-> |e2>, magnitude
};

struct NotAQutrit {
  double nu = 0.0;
  int n_bound = 0;
};

using SpectrumResult = std::variant<QutritSpectrum, NotAQutrit>;

SpectrumResult spectrum(const params::ReducedParams& p);

/// Convenience: throws DomainError when the parameters are not a qutrit.
QutritSpectrum require_spectrum(const params::ReducedParams& p);

/// The three trial wavefunctions phi_0 = A0 sech^a, phi_1 = 2 A1 tanh phi_0,
/// phi_2 = sqrt(2) A2 (1 - (1 + 3a) tanh^2) phi_0, with x in units of xi.
class ImpurityStates {
 public:
  explicit ImpurityStates(double exponent_alpha);
  static ImpurityStates from_params(const params::ReducedParams& p);

  double alpha() const noexcept { return alpha_; }
  double operator()(int l, double x) const;

  /// Normalisation constants fixed by quadrature (authoritative).
  const std::array<double, 3>& norm_quadrature() const noexcept { return a_quad_; }
  /// Closed-form gamma/2F1 expressions for the same constants.
  const std::array<double, 3>& norm_closed() const noexcept { return a_closed_; }

  /// <phi_0 | phi_2> before any correction, using the quadrature constants.
  double raw_overlap_02() const noexcept { return raw_overlap_02_; }
  /// Set when |raw_overlap_02| > 1e-3 and phi_2 was Gram-Schmidt corrected.
  bool gram_schmidt_applied() const noexcept { return gram_schmidt_; }

  double overlap(int l, int lp) const;

 private:
  double raw2(double x) const;

  double alpha_;
  std::array<double, 3> a_quad_{};
  std::array<double, 3> a_closed_{};
  double raw_overlap_02_ = 0.0;
  double phi2_scale_ = 1.0;
  bool gram_schmidt_ = false;
};

/// log(sech x), accurate for any |x|.
double log_sech(double x);

/// Closed-form constants A_0, A_1, A_2 as functions of the exponent.
std::array<double, 3> closed_form_norms(double alpha);

}  // namespace slowsound::qutrit
