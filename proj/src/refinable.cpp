#include "framelet/refinable.hpp"

#include <algorithm>
#include <numbers>

namespace framelet {

Complex fourier_bspline(int n, double xi) {
  if (n < 1) throw ValidationError("B-spline order must be >= 1");
  Complex base;
  if (std::abs(xi) < 1e-4) {
    // e^{-i xi/2} sin(u)/u with u = xi/2, sinc by its Taylor series.
    const double u2 = 0.25 * xi * xi;
    double term = 1.0;
    double sinc = 1.0;
    for (int k = 1; k < 6; ++k) {
      term *= -u2 / ((2.0 * k) * (2.0 * k + 1.0));
      sinc += term;
    }
    base = std::polar(sinc, -0.5 * xi);
  } else {
    base = (1.0 - std::polar(1.0, -xi)) / Complex(0.0, xi);
  }
  Complex out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

RefinableFunction::RefinableFunction(RefinableKind kind, std::vector<int> orders, TrigPolynomial mask)
    : kind_(kind), orders_(std::move(orders)), mask_(std::move(mask)) {
  smoothness_hint_ = *std::min_element(orders_.begin(), orders_.end()) - 0.5;
}

RefinableFunction RefinableFunction::bspline(int n) {
  return RefinableFunction(RefinableKind::bspline, {n}, bspline_mask(n));
}

RefinableFunction RefinableFunction::tensor_bspline(int n1, int n2) {
  return RefinableFunction(RefinableKind::tensor_bspline, {n1, n2},
                           tensor(bspline_mask(n1), bspline_mask(n2)));
}

RefinableFunction RefinableFunction::with_mask(TrigPolynomial mask) const {
  if (mask.dim() != dim()) throw ValidationError("mask dimension does not match the function");
  RefinableFunction copy = *this;
  copy.mask_ = std::move(mask);
  return copy;
}

Box RefinableFunction::support() const {
  Box b{Vec::Zero(dim()), Vec(dim())};
  for (int a = 0; a < dim(); ++a) b.hi(a) = orders_[a];
  return b;
}

double RefinableFunction::operator()(const Vec& x) const {
  if (x.size() != dim()) throw ValidationError("refinable function evaluated at a point of wrong dimension");
  double v = 1.0;
  for (int a = 0; a < dim() && v != 0.0; ++a) v *= eval_bspline(orders_[a], x(a));
  return v;
}

Complex RefinableFunction::fourier(const Vec& xi) const {
  if (xi.size() != dim()) throw ValidationError("Fourier transform evaluated at a point of wrong dimension");
  Complex v{1.0, 0.0};
  for (int a = 0; a < dim(); ++a) v *= fourier_bspline(orders_[a], xi(a));
  return v;
}

double check_refinement(const RefinableFunction& phi, int grid_points) {
  if (grid_points < 64) throw ValidationError("check_refinement: grid_points must be >= 64");
  const Eigen::VectorXd axis = torus_grid(grid_points);
  const int d = phi.dim();
  const long total = d == 1 ? grid_points : long{grid_points} * grid_points;
  double worst = 0.0;
  for (long p = 0; p < total; ++p) {
    const Vec xi = d == 1 ? vec1(axis(p)) : vec2(axis(p / grid_points), axis(p % grid_points));
    const Complex lhs = phi.fourier(2.0 * xi);
    const Complex rhs = phi.mask()(xi) * phi.fourier(xi);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double check_partition_of_unity(const RefinableFunction& phi, std::span<const Vec> points) {
  const int d = phi.dim();
  double worst = 0.0;
  for (const Vec& x : points) {
    if (x.size() != d) throw ValidationError("partition-of-unity sample has wrong dimension");
    // phi(x - k) != 0 requires x - k in (0, n], i.e. k in [x - n, x).
    IVec lo(d), hi(d);
    for (int a = 0; a < d; ++a) {
      lo(a) = static_cast<int>(std::floor(x(a))) - phi.order(a);
      hi(a) = static_cast<int>(std::ceil(x(a)));
    }
    const LatticeBox box{lo, hi};
    double sum = 0.0;
    for (long i = 0; i < box.size(); ++i) sum += phi(x - box.at(i).cast<double>());
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace framelet
