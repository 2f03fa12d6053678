#include "framelet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "framelet/numerics.hpp"

namespace framelet {
namespace {

constexpr double kPi = std::numbers::pi;

// r^{-2s} from r2 = r^2, avoiding pow when 2s is a small integer.
double inverse_power(double r2, double s, int twice_s) {
  if (twice_s <= 0) return std::pow(r2, -s);
  double v = 1.0;
  for (int i = 0; i < twice_s / 2; ++i) v *= r2;
  if (twice_s % 2 == 1) v *= std::sqrt(r2);
  return 1.0 / v;
}

int integer_twice(double s) {
  const double t = 2.0 * s;
  return (t == std::floor(t) && t >= 1.0 && t <= 16.0) ? static_cast<int>(t) : 0;
}

void require_dilation(double m) {
  if (!(m > 1.0)) throw ValidationError("dilation factor m must exceed 1");
}

}  // namespace

void RateParams::validate() const {
  require_dim(d);
  require_dilation(m);
  if (!(s > 0.5 * d)) throw ValidationError("need s > d/2");
  if (!(sigma > s)) throw ValidationError("need sigma > s");
  if (!(alpha > 0.0 && alpha < 2.0)) throw ValidationError("need 0 < alpha < 2");
}

bool RateParams::alpha_admissible() const { return alpha < std::min(2.0 * s - d, 2.0); }

void RateParams::validate_with_kappa() const {
  validate();
  if (!kappa) throw ValidationError("moment order kappa is required");
  if (!(*kappa + 1.0 > sigma)) throw ValidationError("need kappa + 1 > sigma");
}

double zeta(const RateParams& p) {
  p.validate();
  const double third = ((4.0 * p.s + (p.alpha - 2.0) * p.d) / (2.0 * p.s - p.alpha + 2.0) + p.d) / 2.0;
  return std::min({1.0, p.sigma - p.s, third});
}

double chat_constant(double s, int d) {
  require_dim(d);
  if (!(s > 0.5 * d)) throw ValidationError("chat_constant needs s > d/2");
  double binomial_sum = 0.0;
  double binom = 1.0;
  double prod = 1.0;
  for (int n = 1; n <= d - 1; ++n) {
    binom = binom * (d - n) / n;
    prod /= (2.0 * s - n);
    binomial_sum += binom * prod;
  }
  return std::pow(2.0, d - 1) * std::pow(static_cast<double>(d), s - d) *
         ((1.0 / (2.0 * s - d) + 1.0) * binomial_sum + 1.0 / (2.0 * s - 1.0) + 1.0);
}

double tail_sum_bound(double s, int d, double m, double J) {
  require_dilation(m);
  if (J < std::log(static_cast<double>(d)) / std::log(m)) throw ValidationError("tail_sum_bound needs J >= log_m d");
  return chat_constant(s, d) * std::pow(m, -J * (2.0 * s - d));
}

TailOracle tail_sum_oracle(double s, int d, double m, double J, long R) {
  require_dim(d);
  require_dilation(m);
  if (!(s > 0.5 * d)) throw ValidationError("tail_sum_oracle needs s > d/2");
  const double r0 = std::pow(m, J);
  if (!(static_cast<double>(R) >= r0 + 10.0)) throw ValidationError("tail_sum_oracle needs R >= m^J + 10");
  const double r0_sq = r0 * r0;
  const int twice_s = integer_twice(s);

  TailOracle out;
  if (d == 1) {
    const long first = std::max(1L, static_cast<long>(std::ceil(r0)));
    std::vector<double> terms(static_cast<std::size_t>(R - first + 1));
    for (long j = first; j <= R; ++j) {
      const double jd = static_cast<double>(j);
      terms[static_cast<std::size_t>(j - first)] = 2.0 * inverse_power(jd * jd, s, twice_s);
    }
    out.value = pairwise_sum(terms);
  } else {
    // Octant 0 <= b <= a with multiplicities 8 (a > b > 0) or 4 (axis or diagonal).
    const long long R2 = static_cast<long long>(R) * R;
    std::vector<double> rows(static_cast<std::size_t>(R + 1), 0.0);
    parallel_for(rows.size(), [&](std::size_t ai) {
      const long long a = static_cast<long long>(ai);
      long long bmax = static_cast<long long>(std::sqrt(static_cast<double>(R2 - a * a)));
      while (bmax * bmax > R2 - a * a) --bmax;
      while ((bmax + 1) * (bmax + 1) <= R2 - a * a) ++bmax;
      bmax = std::min(bmax, a);
      std::vector<double> terms;
      terms.reserve(static_cast<std::size_t>(bmax + 1));
      for (long long b = 0; b <= bmax; ++b) {
        const double r2 = static_cast<double>(a * a + b * b);
        if (r2 == 0.0 || r2 < r0_sq) continue;
        const double weight = (b == 0 || b == a) ? 4.0 : 8.0;
        terms.push_back(weight * inverse_power(r2, s, twice_s));
      }
      rows[ai] = pairwise_sum(terms);
    });
    out.value = pairwise_sum(rows);
  }

  // Cells j + [-1/2, 1/2]^d with ||j|| > R lie in ||x|| >= R - h, and ||j||/||x|| >= 1/(1 + h/R).
  const double h = 0.5 * std::sqrt(static_cast<double>(d));
  const double omega = d == 1 ? 2.0 : 2.0 * kPi;
  const double Rd = static_cast<double>(R);
  out.remainder_bound = std::pow(1.0 + h / Rd, 2.0 * s) * omega * std::pow(Rd - h, d - 2.0 * s) / (2.0 * s - d);
  return out;
}

double h_constant(const RateParams& p, double bracket_sup, double mask_sup, int L) {
  require_dilation(p.m);
  if (!(p.sigma > p.s && p.s > 0.0)) throw ValidationError("h_constant needs sigma > s > 0");
  if (L < 1) throw ValidationError("h_constant needs L >= 1");
  if (bracket_sup < 0.0 || mask_sup < 0.0) throw ValidationError("h_constant needs nonnegative sups");
  const double m = p.m;
  const double denom = std::pow(m, 2.0 * (p.sigma - p.s)) - 1.0;
  if (!(denom > 0.0)) throw ValidationError("h_constant needs m^{2(sigma - s)} > 1");
  const double series = std::pow(m, 2.0 * (p.sigma + p.s)) * std::pow(2.0, p.s) / denom +
                        std::pow(2.0, p.s) / (1.0 - std::pow(m, -2.0 * p.s));
  const double factor = std::pow(m, p.d) / std::pow(2.0 * kPi, p.d);
  return std::sqrt(L * bracket_sup * (1.0 + factor * series * mask_sup));
}

double H_constant(const RateParams& p, double g1, double bracket_sup_neg) {
  require_dilation(p.m);
  if (!p.kappa) throw ValidationError("H_constant needs the moment order kappa");
  const double k1 = *p.kappa + 1.0;
  if (!(k1 > p.sigma && p.sigma > p.s)) throw ValidationError("H_constant needs kappa + 1 > sigma > s");
  if (g1 < 0.0 || bracket_sup_neg < 0.0) throw ValidationError("H_constant needs nonnegative inputs");
  const double m = p.m;
  const double first = g1 * g1 * std::pow(std::sqrt(static_cast<double>(p.d)) * kPi, 2.0 * (k1 - p.sigma)) /
                       (1.0 - std::pow(m, -2.0 * (k1 - p.s)));
  const double second = std::pow(2.0, p.sigma) * std::pow(m, 2.0 * p.s) / std::pow(kPi, 2.0 * p.sigma) /
                            (std::pow(m, 2.0 * p.s) - 1.0) +
                        std::pow(2.0, p.sigma + 1.0) / (1.0 - std::pow(m, -2.0 * (p.sigma - p.s)));
  return 2.0 * std::max(1.0, bracket_sup_neg) * std::max(first, second);
}

RateValue theorem4_rate(const RateParams& p, int N, const Vec& lambda, double norm_max_value) {
  if (N < 0) throw ValidationError("theorem4_rate needs N >= 0");
  if (lambda.size() != p.d) throw ValidationError("lambda has wrong dimension");
  if (!(norm_max_value >= 0.0)) throw ValidationError("norm_max must be nonnegative");
  const double z = zeta(p);
  RateValue out;
  out.required_N = (2.0 * p.s + 2.0 - p.alpha) / (2.0 - p.alpha) * std::log(static_cast<double>(p.d)) / std::log(p.m);
  out.precondition_met = N >= out.required_N;
  out.alpha_admissible = p.alpha_admissible();
  out.value = std::pow(p.m, -(p.sigma - p.s) * N) +
              std::pow(p.m, -N * z) * (std::pow(lambda.norm(), z) + norm_max_value);
  return out;
}

double decay_fit(std::span<const std::pair<double, double>> points, double m) {
  require_dilation(m);
  if (points.size() < 3) throw ValidationError("decay_fit needs at least 3 points");
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  const double log_m = std::log(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [N, err] = points[static_cast<std::size_t>(i)];
    if (!(err > 0.0)) throw ValidationError("decay_fit needs positive errors");
    A(i, 0) = N;
    A(i, 1) = 1.0;
    y(i) = std::log(err) / log_m;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 2) throw ValidationError("decay_fit needs at least two distinct scales");
  return qr.solve(y)(0);
}

}  // namespace framelet
