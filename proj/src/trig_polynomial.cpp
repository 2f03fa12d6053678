#include "framelet/trig_polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace framelet {
namespace {

using Key = std::array<int, kMaxDim>;

Key key_of(const IVec& k) {
  Key key{0, 0};
  for (Eigen::Index j = 0; j < k.size(); ++j) key[j] = k(j);
  return key;
}

void require_same_dim(const TrigPolynomial& p, const TrigPolynomial& q) {
  if (p.dim() != q.dim()) throw ValidationError("trigonometric polynomials differ in dimension");
}

// All multi-indices of total order r in dimension d.
std::vector<IVec> orders_of_total(int d, int r) {
  std::vector<IVec> out;
  if (d == 1) {
    out.push_back(ivec1(r));
  } else {
    for (int i = r; i >= 0; --i) out.push_back(ivec2(i, r - i));
  }
  return out;
}

}  // namespace

TrigPolynomial::TrigPolynomial(int dim) : dim_(dim), indices_(dim, 0), coeffs_(0) { require_dim(dim); }

TrigPolynomial::TrigPolynomial(IndexMatrix indices, Eigen::VectorXcd coeffs)
    : dim_(static_cast<int>(indices.rows())), indices_(std::move(indices)), coeffs_(std::move(coeffs)) {
  require_dim(dim_);
  if (indices_.cols() != coeffs_.size()) {
    throw ValidationError("index matrix and coefficient vector sizes differ");
  }
  normalize();
}

TrigPolynomial TrigPolynomial::constant(int dim, Complex c) { return monomial(IVec::Zero(dim), c); }

TrigPolynomial TrigPolynomial::monomial(const IVec& k, Complex c) {
  IndexMatrix idx(k.size(), 1);
  idx.col(0) = k;
  Eigen::VectorXcd cs(1);
  cs(0) = c;
  return TrigPolynomial(std::move(idx), std::move(cs));
}

void TrigPolynomial::normalize() {
  std::map<Key, Complex> terms;
  for (Eigen::Index t = 0; t < coeffs_.size(); ++t) {
    terms[key_of(indices_.col(t))] += coeffs_(t);
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == Complex{}; });
  indices_.resize(dim_, static_cast<Eigen::Index>(terms.size()));
  coeffs_.resize(static_cast<Eigen::Index>(terms.size()));
  Eigen::Index t = 0;
  for (const auto& [key, c] : terms) {
    for (int j = 0; j < dim_; ++j) indices_(j, t) = key[j];
    coeffs_(t) = c;
    ++t;
  }
}

Complex TrigPolynomial::coeff(const IVec& k) const {
  for (Eigen::Index t = 0; t < coeffs_.size(); ++t) {
    if (indices_.col(t) == k) return coeffs_(t);
  }
  return {};
}

Complex TrigPolynomial::operator()(const Vec& xi) const {
  if (xi.size() != dim_) throw ValidationError("evaluation point has wrong dimension");
  Complex sum{};
  for (Eigen::Index t = 0; t < coeffs_.size(); ++t) {
    const double phase = indices_.col(t).cast<double>().dot(xi);
    sum += coeffs_(t) * std::polar(1.0, phase);
  }
  return sum;
}

Complex TrigPolynomial::derivative(const IVec& order, const Vec& xi) const {
  if (xi.size() != dim_ || order.size() != dim_) {
    throw ValidationError("derivative order or point has wrong dimension");
  }
  const Complex I{0.0, 1.0};
  Complex sum{};
  for (Eigen::Index t = 0; t < coeffs_.size(); ++t) {
    Complex weight{1.0, 0.0};
    for (int j = 0; j < dim_; ++j) {
      for (int r = 0; r < order(j); ++r) weight *= I * static_cast<double>(indices_(j, t));
    }
    const double phase = indices_.col(t).cast<double>().dot(xi);
    sum += coeffs_(t) * weight * std::polar(1.0, phase);
  }
  return sum;
}

TrigPolynomial TrigPolynomial::conjugate() const {
  return TrigPolynomial(IndexMatrix(-indices_), coeffs_.conjugate());
}

TrigPolynomial TrigPolynomial::translated(const IVec& t) const {
  if (t.size() != dim_) throw ValidationError("translation has wrong dimension");
  IndexMatrix idx = indices_.colwise() + Eigen::VectorXi(t);
  return TrigPolynomial(std::move(idx), coeffs_);
}

TrigPolynomial TrigPolynomial::operator-() const { return TrigPolynomial(indices_, -coeffs_); }

TrigPolynomial operator+(const TrigPolynomial& p, const TrigPolynomial& q) {
  require_same_dim(p, q);
  TrigPolynomial::IndexMatrix idx(p.dim(), p.size() + q.size());
  idx << p.indices(), q.indices();
  Eigen::VectorXcd cs(p.size() + q.size());
  cs << p.coeffs(), q.coeffs();
  return TrigPolynomial(std::move(idx), std::move(cs));
}

TrigPolynomial operator-(const TrigPolynomial& p, const TrigPolynomial& q) { return p + (-q); }

TrigPolynomial operator*(const TrigPolynomial& p, const TrigPolynomial& q) {
  require_same_dim(p, q);
  const Eigen::Index n = p.size() * q.size();
  TrigPolynomial::IndexMatrix idx(p.dim(), n);
  Eigen::VectorXcd cs(n);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    for (Eigen::Index j = 0; j < q.size(); ++j, ++t) {
      idx.col(t) = p.indices().col(i) + q.indices().col(j);
      cs(t) = p.coeffs()(i) * q.coeffs()(j);
    }
  }
  return TrigPolynomial(std::move(idx), std::move(cs));
}

TrigPolynomial operator*(Complex c, const TrigPolynomial& p) {
  return TrigPolynomial(p.indices(), c * p.coeffs());
}

TrigPolynomial tensor(const TrigPolynomial& p, const TrigPolynomial& q) {
  if (p.dim() != 1 || q.dim() != 1) throw ValidationError("tensor expects two 1D polynomials");
  const Eigen::Index n = p.size() * q.size();
  TrigPolynomial::IndexMatrix idx(2, n);
  Eigen::VectorXcd cs(n);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    for (Eigen::Index j = 0; j < q.size(); ++j, ++t) {
      idx(0, t) = p.indices()(0, i);
      idx(1, t) = q.indices()(0, j);
      cs(t) = p.coeffs()(i) * q.coeffs()(j);
    }
  }
  return TrigPolynomial(std::move(idx), std::move(cs));
}

TrigPolynomial bspline_mask(int n) {
  if (n < 1) throw ValidationError("B-spline order must be >= 1");
  TrigPolynomial::IndexMatrix idx(1, n + 1);
  Eigen::VectorXcd cs(n + 1);
  double binom = 1.0;
  const double scale = std::ldexp(1.0, -n);
  for (int j = 0; j <= n; ++j) {
    idx(0, j) = -j;
    cs(j) = binom * scale;
    binom = binom * (n - j) / (j + 1);
  }
  return TrigPolynomial(std::move(idx), std::move(cs));
}

TrigPolynomial difference_mask(int r) {
  if (r < 0) throw ValidationError("difference order must be >= 0");
  TrigPolynomial::IndexMatrix idx(1, 2);
  idx << 0, -1;
  Eigen::VectorXcd cs(2);
  cs << 0.5, -0.5;
  const TrigPolynomial factor(idx, cs);
  TrigPolynomial out = TrigPolynomial::constant(1, 1.0);
  for (int i = 0; i < r; ++i) out = out * factor;
  return out;
}

CosetSet CosetSet::dyadic(int dim) {
  require_dim(dim);
  constexpr double pi = std::numbers::pi;
  CosetSet set;
  if (dim == 1) {
    set.gammas = {vec1(0.0), vec1(pi)};
  } else {
    set.gammas = {vec2(0.0, 0.0), vec2(pi, 0.0), vec2(0.0, pi), vec2(pi, pi)};
  }
  return set;
}

int zero_order_at(const TrigPolynomial& p, const Vec& xi0, double tol) {
  if (!(tol > 0.0)) throw ValidationError("zero_order_at: tol must be positive");
  if (xi0.size() != p.dim()) throw ValidationError("zero_order_at: point has wrong dimension");
  for (int r = 0; r < kMaxZeroOrder; ++r) {
    double scale = 0.0;
    for (Eigen::Index t = 0; t < p.size(); ++t) {
      const double kmax = p.indices().col(t).cwiseAbs().maxCoeff();
      scale += std::abs(p.coeffs()(t)) * std::pow(kmax, r);
    }
    const double threshold = tol * std::max(1.0, scale);
    for (const IVec& alpha : orders_of_total(p.dim(), r)) {
      if (std::abs(p.derivative(alpha, xi0)) > threshold) return r;
    }
  }
  return kMaxZeroOrder;
}

int sum_rules(const TrigPolynomial& a, const CosetSet& cosets, double tol) {
  if (cosets.dim() != a.dim()) throw ValidationError("sum_rules: coset set has wrong dimension");
  const Complex at_zero = a(Vec::Zero(a.dim()));
  if (std::abs(at_zero - 1.0) > tol) {
    throw ValidationError("sum_rules: mask does not satisfy a(0) = 1");
  }
  int order = kMaxZeroOrder;
  for (std::size_t j = 1; j < cosets.gammas.size(); ++j) {
    order = std::min(order, zero_order_at(a, cosets.gammas[j], tol));
  }
  return order;
}

int vanishing_moments(const TrigPolynomial& b, double tol) {
  return zero_order_at(b, Vec::Zero(b.dim()), tol);
}

double MepReport::max_coset_residual() const {
  double m = 0.0;
  for (double r : coset_residuals) m = std::max(m, r);
  return m;
}

bool MepReport::passes(double tol) const {
  return identity_residual < tol && max_coset_residual() < tol;
}

Eigen::VectorXd torus_grid(int n) {
  constexpr double pi = std::numbers::pi;
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g(i) = -pi + 2.0 * pi * (i + 1) / n;
  return g;
}

MepReport verify_mep(const TrigPolynomial& a, const TrigPolynomial& a_dual,
                     const std::vector<TrigPolynomial>& bs,
                     const std::vector<TrigPolynomial>& bs_dual, const CosetSet& cosets,
                     int grid_points) {
  if (bs.empty() || bs.size() != bs_dual.size()) {
    throw ValidationError("verify_mep: need L >= 1 highpass masks and as many duals");
  }
  if (grid_points < 16) throw ValidationError("verify_mep: grid_points must be >= 16");
  const int d = a.dim();
  if (a_dual.dim() != d || cosets.dim() != d) throw ValidationError("verify_mep: dimension mismatch");
  for (std::size_t l = 0; l < bs.size(); ++l) {
    if (bs[l].dim() != d || bs_dual[l].dim() != d) throw ValidationError("verify_mep: dimension mismatch");
  }

  const Eigen::VectorXd axis = torus_grid(grid_points);
  const std::size_t ncos = cosets.gammas.size();
  MepReport report;
  report.coset_residuals.assign(ncos - 1, 0.0);
  report.coset_residuals_as_printed.assign(ncos - 1, 0.0);

  const long total = d == 1 ? grid_points : long{grid_points} * grid_points;
  for (long p = 0; p < total; ++p) {
    const Vec xi = d == 1 ? vec1(axis(p)) : vec2(axis(p / grid_points), axis(p % grid_points));

    std::vector<Complex> bt(bs.size());
    Complex first = std::conj(a(xi)) * a_dual(xi);
    for (std::size_t l = 0; l < bs.size(); ++l) {
      bt[l] = bs_dual[l](xi);
      first += std::conj(bs[l](xi)) * bt[l];
    }
    report.identity_residual = std::max(report.identity_residual, std::abs(first - 1.0));

    const Complex at = a_dual(xi);
    for (std::size_t j = 1; j < ncos; ++j) {
      const Vec shifted = xi + cosets.gammas[j];
      Complex high{};
      for (std::size_t l = 0; l < bs.size(); ++l) high += std::conj(bs[l](shifted)) * bt[l];
      const Complex conj_a = std::conj(a(shifted));
      report.coset_residuals[j - 1] =
          std::max(report.coset_residuals[j - 1], std::abs(high + conj_a * at));
      report.coset_residuals_as_printed[j - 1] =
          std::max(report.coset_residuals_as_printed[j - 1], std::abs(high + conj_a * a_dual(shifted)));
    }
  }
  return report;
}

}  // namespace framelet
