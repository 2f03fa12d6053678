#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "framelet/trig_polynomial.hpp"
#include "framelet/types.hpp"

namespace framelet {

/// Cardinal B-spline B_n = chi_(0,1] * ... * chi_(0,1] (n factors), supported on (0, n].
/// Cox-de Boor recursion B_n(x) = x/(n-1) B_{n-1}(x) + (n-x)/(n-1) B_{n-1}(x-1),
/// unrolled into a triangular table of size n.
template <class Scalar>
Scalar eval_bspline(int n, Scalar x) {
  if (n < 1) throw ValidationError("B-spline order must be >= 1");
  if (!(x > Scalar(0)) || x > Scalar(n)) return Scalar(0);
  // level[j] holds B_r(x - j) for the current order r.
  std::array<Scalar, 32> level{};
  if (n > static_cast<int>(level.size())) throw ValidationError("B-spline order too large");
  for (int j = 0; j < n; ++j) {
    const Scalar t = x - Scalar(j);
    level[j] = (t > Scalar(0) && t <= Scalar(1)) ? Scalar(1) : Scalar(0);
  }
  for (int r = 2; r <= n; ++r) {
    for (int j = 0; j + r <= n; ++j) {
      const Scalar t = x - Scalar(j);
      level[j] = (t * level[j] + (Scalar(r) - t) * level[j + 1]) / Scalar(r - 1);
    }
  }
  return level[0];
}

/// ((1 - e^{-i xi}) / (i xi))^n, equal to 1 at xi = 0.
Complex fourier_bspline(int n, double xi);

enum class RefinableKind { bspline, tensor_bspline };

/// A compactly supported dyadic refinable function: B_n or B_{n1} (x) B_{n2}.
class RefinableFunction {
 public:
  static RefinableFunction bspline(int n);
  static RefinableFunction tensor_bspline(int n1, int n2);

  RefinableKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(orders_.size()); }
  /// Spline order per coordinate.
  const std::vector<int>& orders() const { return orders_; }
  int order(int axis) const { return orders_[axis]; }
  const TrigPolynomial& mask() const { return mask_; }
  /// Largest mu with phi in H^mu (open bound), n - 1/2 for B_n. Metadata only.
  double smoothness_hint() const { return smoothness_hint_; }

  /// Support box (0, n_1] x ... as a closed box for intersection tests.
  Box support() const;

  double operator()(const Vec& x) const;
  Complex fourier(const Vec& xi) const;

  /// Same function paired with a different mask (used to exercise refinement checks).
  RefinableFunction with_mask(TrigPolynomial mask) const;

 private:
  RefinableFunction(RefinableKind kind, std::vector<int> orders, TrigPolynomial mask);

  RefinableKind kind_;
  std::vector<int> orders_;
  TrigPolynomial mask_;
  double smoothness_hint_;
};

/// sup over a (-pi, pi]^d grid of |phi^(2 xi) - a(xi) phi^(xi)|.
double check_refinement(const RefinableFunction& phi, int grid_points = 64);

/// sup over the samples of |sum_k phi(x - k) - 1|, k over every lattice point whose
/// shifted support contains x.
double check_partition_of_unity(const RefinableFunction& phi, std::span<const Vec> points);

}  // namespace framelet
