#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace framelet {

/// Largest spatial dimension handled by the library.
inline constexpr int kMaxDim = 2;

/// A point in R^d, d <= 2. Fixed capacity, so no heap allocation.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
/// A lattice index in Z^d, d <= 2.
using IVec = Eigen::Matrix<int, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

using Complex = std::complex<double>;

/// Grid of points stored column-wise: one column per point, one row per coordinate.
using PointGrid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;

/// Raised when inputs violate an operation's preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for file-system failures (reading masks, writing reports).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec vec1(double x) {
  Vec v(1);
  v << x;
  return v;
}

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline IVec ivec1(int k) {
  IVec v(1);
  v << k;
  return v;
}

inline IVec ivec2(int k1, int k2) {
  IVec v(2);
  v << k1, k2;
  return v;
}

inline void require_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ValidationError("dimension must be 1 or 2, got " + std::to_string(dim));
  }
}

/// Inclusive axis-aligned box of lattice indices. Empty when hi < lo on any axis.
struct LatticeBox {
  IVec lo;
  IVec hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool empty() const { return lo.size() == 0 || (hi.array() < lo.array()).any(); }

  long extent(int axis) const { return empty() ? 0 : long{hi(axis)} - lo(axis) + 1; }

  long size() const {
    if (empty()) return 0;
    long n = 1;
    for (int a = 0; a < dim(); ++a) n *= extent(a);
    return n;
  }

  bool contains(const IVec& k) const {
    return !empty() && (k.array() >= lo.array()).all() && (k.array() <= hi.array()).all();
  }

  /// Row-major position of k within the box (last axis fastest).
  long linear_index(const IVec& k) const {
    long idx = 0;
    for (int a = 0; a < dim(); ++a) idx = idx * extent(a) + (k(a) - lo(a));
    return idx;
  }

  IVec at(long linear) const {
    IVec k(dim());
    for (int a = dim() - 1; a >= 0; --a) {
      const long e = extent(a);
      k(a) = static_cast<int>(lo(a) + linear % e);
      linear /= e;
    }
    return k;
  }
};

/// Axis-aligned box in R^d. Empty when hi < lo on any axis.
struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const { return lo.size() == 0 || (hi.array() < lo.array()).any(); }
};

}  // namespace framelet
