#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "framelet/types.hpp"

namespace framelet {

/// A finitely supported sequence a[k] on Z^d read as the 2*pi-periodic symbol
///   p(xi) = sum_k a[k] exp(i k.xi).
/// Terms are kept sorted by index with duplicates merged; exact zeros are dropped.
class TrigPolynomial {
 public:
  using IndexMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  /// The zero polynomial in dimension dim.
  explicit TrigPolynomial(int dim = 1);

  /// indices is dim x n (one column per term), coeffs has n entries.
  TrigPolynomial(IndexMatrix indices, Eigen::VectorXcd coeffs);

  static TrigPolynomial constant(int dim, Complex c);
  static TrigPolynomial monomial(const IVec& k, Complex c);

  int dim() const { return dim_; }
  Eigen::Index size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.size() == 0; }

  const IndexMatrix& indices() const { return indices_; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }

  /// Coefficient a[k], zero when k is outside the support.
  Complex coeff(const IVec& k) const;

  Complex operator()(const Vec& xi) const;

  /// Partial derivative D^order p at xi: sum_k a[k] prod_j (i k_j)^order_j exp(i k.xi).
  Complex derivative(const IVec& order, const Vec& xi) const;

  /// The polynomial whose symbol is conj(p(xi)): coefficients conj(a[-k]).
  TrigPolynomial conjugate() const;

  /// Multiply the symbol by exp(i t.xi), i.e. shift every index by t.
  TrigPolynomial translated(const IVec& t) const;

  TrigPolynomial operator-() const;
  friend TrigPolynomial operator+(const TrigPolynomial& p, const TrigPolynomial& q);
  friend TrigPolynomial operator-(const TrigPolynomial& p, const TrigPolynomial& q);
  friend TrigPolynomial operator*(const TrigPolynomial& p, const TrigPolynomial& q);
  friend TrigPolynomial operator*(Complex c, const TrigPolynomial& p);

 private:
  void normalize();

  int dim_;
  IndexMatrix indices_;
  Eigen::VectorXcd coeffs_;
};

/// Symbol of the product p(xi_1) q(xi_2) for 1D factors p, q.
TrigPolynomial tensor(const TrigPolynomial& p, const TrigPolynomial& q);

/// ((1 + e^{-i xi}) / 2)^n, the refinement mask of the cardinal B-spline B_n.
TrigPolynomial bspline_mask(int n);

/// ((1 - e^{-i xi}) / 2)^r, a highpass mask with r vanishing moments.
TrigPolynomial difference_mask(int r);

/// Representatives of [(2I)^{-1} Z^d] / Z^d scaled by 2*pi: {0, pi} for d = 1,
/// {(0,0), (pi,0), (0,pi), (pi,pi)} for d = 2. gammas[0] is the origin.
struct CosetSet {
  std::vector<Vec> gammas;

  static CosetSet dyadic(int dim);
  int dim() const { return static_cast<int>(gammas.front().size()); }
};

/// Search cap for zero_order_at.
inline constexpr int kMaxZeroOrder = 12;

/// Largest r such that every partial derivative of total order < r vanishes at xi0.
/// Derivative magnitudes are compared against tol * max(1, sum_k |a[k]| ||k||_inf^{|alpha|}).
/// Returns kMaxZeroOrder when all tested orders vanish.
int zero_order_at(const TrigPolynomial& p, const Vec& xi0, double tol = 1e-10);

/// Sum-rule order kappa + 1 of a refinement mask: the minimum zero order of a
/// over the nonzero coset shifts. Throws when |a(0) - 1| > tol.
int sum_rules(const TrigPolynomial& a, const CosetSet& cosets, double tol = 1e-10);

/// Vanishing-moment count of the wavelet built from highpass mask b (zero order at 0).
int vanishing_moments(const TrigPolynomial& b, double tol = 1e-10);

struct MepReport {
  /// sup |sum_l conj(b_l) bt_l + conj(a) at - 1|
  double identity_residual = 0.0;
  /// Per nonzero coset gamma_j: sup |sum_l conj(b_l(.+g)) bt_l(.) + conj(a(.+g)) at(.)|
  std::vector<double> coset_residuals;
  /// Same with the lowpass dual factor also shifted: conj(a(.+g)) at(.+g).
  std::vector<double> coset_residuals_as_printed;

  double max_coset_residual() const;
  bool passes(double tol) const;
};

/// Evaluates both mixed-extension-principle identities on a uniform grid of
/// (-pi, pi]^d with grid_points nodes per axis and returns the suprema.
MepReport verify_mep(const TrigPolynomial& a, const TrigPolynomial& a_dual,
                     const std::vector<TrigPolynomial>& bs,
                     const std::vector<TrigPolynomial>& bs_dual, const CosetSet& cosets,
                     int grid_points = 256);

/// Uniform grid nodes -pi + 2*pi*(i+1)/n, i = 0..n-1; contains 0 and pi when n is even.
Eigen::VectorXd torus_grid(int n);

// Mask files: one coefficient per line, "k_1 [k_2] re im", '#' starts a comment.

/// Parses a single mask. Dimension is inferred from the column count.
TrigPolynomial parse_mask(std::istream& in, const std::string& source = "<stream>");
TrigPolynomial read_mask_file(const std::string& path);
void write_mask(std::ostream& out, const TrigPolynomial& p);

/// Masks grouped by role for MEP verification.
struct MaskBundle {
  TrigPolynomial a;
  TrigPolynomial a_dual;
  std::vector<TrigPolynomial> bs;
  std::vector<TrigPolynomial> bs_dual;
};

/// Reads a bundle file whose masks are introduced by directive comments
/// "# @a", "# @a_dual", "# @b", "# @b_dual" (b and b_dual may repeat, paired in order).
MaskBundle read_mask_bundle(const std::string& path);

/// Assigns roles by position: a, a_dual, then (b, b_dual) pairs.
MaskBundle bundle_from_files(const std::vector<std::string>& paths);

}  // namespace framelet
