#pragma once

#include <optional>
#include <span>
#include <utility>

#include "framelet/types.hpp"

namespace framelet {

/// Rate parameters: frame smoothness s, target smoothness sigma, jitter exponent alpha,
/// dimension d, dilation m and moment order kappa (sum rules / vanishing moments minus one).
struct RateParams {
  double s = 1.0;
  double sigma = 2.0;
  double alpha = 0.5;
  int d = 1;
  double m = 2.0;
  std::optional<int> kappa;

  /// d/2 < s < sigma, 0 < alpha < 2, m > 1.
  void validate() const;
  /// The perturbation theorems also need alpha < min(2s - d, 2); reported, not enforced.
  bool alpha_admissible() const;
  /// Also requires kappa + 1 > sigma.
  void validate_with_kappa() const;
};

/// min{1, sigma - s, ((4s + (alpha - 2)d)/(2s - alpha + 2) + d)/2}
double zeta(const RateParams& p);

/// Lattice tail constant Chat(s, d); requires s > d/2.
double chat_constant(double s, int d);

/// Chat(s, d) m^{-J(2s - d)}; requires J >= log_m d.
double tail_sum_bound(double s, int d, double m, double J);

struct TailOracle {
  double value = 0.0;
  /// Upper bound for the omitted part ||j|| > R.
  double remainder_bound = 0.0;
};

/// Brute force sum of ||j||^{-2s} over m^J <= ||j||_2 <= R, j in Z^d. Requires R >= m^J + 10.
TailOracle tail_sum_oracle(double s, int d, double m, double J, long R);

/// Frame-operator bound h(s, sigma) from the sup of [phi^, phi^]_sigma and max_l ||b^l||_inf.
double h_constant(const RateParams& p, double bracket_sup, double mask_sup, int L);

/// Truncation constant H(sigma, s); needs p.kappa with kappa + 1 > sigma.
double H_constant(const RateParams& p, double g1, double bracket_sup_neg);

struct RateValue {
  double value = 0.0;
  /// N >= ((2s + 2 - alpha)/(2 - alpha)) log_m d; reported, not enforced.
  bool precondition_met = true;
  double required_N = 0.0;
  bool alpha_admissible = true;
};

/// m^{-(sigma - s)N} + m^{-N zeta}(||lambda||_2^zeta + norm_max), without the unknown constant.
RateValue theorem4_rate(const RateParams& p, int N, const Vec& lambda, double norm_max_value);

/// Least-squares slope of log_m(err) against N. Needs >= 3 points, all err > 0.
double decay_fit(std::span<const std::pair<double, double>> points, double m = 2.0);

}  // namespace framelet
