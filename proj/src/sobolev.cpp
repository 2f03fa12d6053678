#include "framelet/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>
#include <vector>

#include "framelet/numerics.hpp"

namespace framelet {
namespace {

constexpr double kPi = std::numbers::pi;

// Surface measure of the unit sphere in R^d.
double sphere_area(int d) { return d == 1 ? 2.0 : 2.0 * kPi; }

// Empirical constant C in |f^(xi)| <= C (1 + ||xi||)^{-p}, probed on the sphere of radius r.
double decay_constant(const SpectralFunction& f, double p, double r) {
  std::vector<Vec> probes;
  if (f.dim == 1) {
    probes = {vec1(r), vec1(-r)};
  } else {
    const double c = r / std::sqrt(2.0);
    probes = {vec2(r, 0), vec2(0, r), vec2(-r, 0), vec2(0, -r), vec2(c, c), vec2(-c, c), vec2(c, -c), vec2(-c, -c)};
  }
  double C = 0.0;
  for (const Vec& xi : probes) C = std::max(C, std::abs(f(xi)) * std::pow(1.0 + r, p));
  return C;
}

// Midpoint-rule integral of integrand over [-R, R]^d. Rows are reduced in a fixed order.
template <class Integrand>
auto midpoint_integral(int dim, const QuadratureSpec& q, Integrand&& integrand) {
  using Value = decltype(integrand(Vec{}));
  if (!(q.cutoff > 0.0)) throw ValidationError("quadrature cutoff must be positive");
  if (q.points_per_unit < 1) throw ValidationError("quadrature points_per_unit must be >= 1");
  const long n = q.nodes_per_axis();
  const double h = 2.0 * q.cutoff / static_cast<double>(n);
  auto node = [&](long i) { return -q.cutoff + (static_cast<double>(i) + 0.5) * h; };

  const long rows = dim == 1 ? 1 : n;
  std::vector<Value> row_sums(static_cast<std::size_t>(rows));
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
    std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      const Vec xi = dim == 1 ? vec1(node(i)) : vec2(node(static_cast<long>(r)), node(i));
      const Complex v = Complex(integrand(xi));
      re[static_cast<std::size_t>(i)] = v.real();
      im[static_cast<std::size_t>(i)] = v.imag();
    }
    const Complex s(pairwise_sum(re), pairwise_sum(im));
    if constexpr (std::is_same_v<Value, double>) {
      row_sums[r] = s.real();
    } else {
      row_sums[r] = s;
    }
  });
  Value total{};
  for (const Value& s : row_sums) total += s;
  return total * std::pow(h, dim);
}

}  // namespace

SpectralFunction SpectralFunction::zero(int dim) {
  return SpectralFunction{dim, [](const Vec&) { return Complex{}; }, std::nullopt};
}

SpectralFunction SpectralFunction::of(const RefinableFunction& phi) {
  const auto& orders = phi.orders();
  const double p = *std::min_element(orders.begin(), orders.end());
  return SpectralFunction{phi.dim(), [phi](const Vec& xi) { return phi.fourier(xi); }, p};
}

long QuadratureSpec::nodes_per_axis() const {
  return static_cast<long>(std::ceil(2.0 * cutoff * points_per_unit));
}

QuadratureSpec QuadratureSpec::default_for(int dim) {
  return dim == 1 ? QuadratureSpec{200.0, 50} : QuadratureSpec{60.0, 20};
}

NormResult sobolev_norm(const SpectralFunction& f, double sigma, const QuadratureSpec& q) {
  require_dim(f.dim);
  const double integral = midpoint_integral(f.dim, q, [&](const Vec& xi) {
    return std::norm(f(xi)) * std::pow(1.0 + xi.squaredNorm(), sigma);
  });
  const double scale = std::pow(2.0 * kPi, -0.5 * f.dim);
  NormResult out{scale * std::sqrt(integral), std::nullopt};

  if (f.decay_hint) {
    const double p = *f.decay_hint;
    const double C = decay_constant(f, p, 0.5 * q.cutoff);
    // int_{r > R} C^2 (1 + r)^{2 max(sigma,0) - 2p} r^{d-1} dr <= C^2 (1+R)^{e+1} / -(e+1)
    const double e = 2.0 * std::max(sigma, 0.0) - 2.0 * p + f.dim - 1.0;
    if (e < -1.0) {
      const double tail = C * C * sphere_area(f.dim) * std::pow(1.0 + q.cutoff, e + 1.0) / -(e + 1.0);
      out.tail_bound = scale * std::sqrt(tail);
    } else {
      out.tail_bound = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

Complex sobolev_inner(const SpectralFunction& f, const SpectralFunction& g, double sigma,
                      const QuadratureSpec& q) {
  if (f.dim != g.dim) throw ValidationError("sobolev_inner: dimension mismatch");
  const Complex integral = midpoint_integral(f.dim, q, [&](const Vec& xi) {
    return f(xi) * std::conj(g(xi)) * std::pow(1.0 + xi.squaredNorm(), sigma);
  });
  return integral * std::pow(2.0 * kPi, -static_cast<double>(f.dim));
}

BracketResult bracket_product(const SpectralFunction& f, const SpectralFunction& g, double mu,
                              const Vec& xi, int K) {
  if (K < 1) throw ValidationError("bracket_product: K must be >= 1");
  if (f.dim != g.dim || xi.size() != f.dim) throw ValidationError("bracket_product: dimension mismatch");
  const int d = f.dim;
  const LatticeBox box{IVec::Constant(d, -K), IVec::Constant(d, K)};

  auto term = [&](const IVec& k) {
    const Vec x = xi + 2.0 * kPi * k.cast<double>();
    return f(x) * std::conj(g(x)) * std::pow(1.0 + x.squaredNorm(), mu);
  };

  Complex sum{};
  for (long i = 0; i < box.size(); ++i) sum += term(box.at(i));
  BracketResult out{sum, std::nullopt};

  if (f.decay_hint && g.decay_hint) {
    const double p = *f.decay_hint + *g.decay_hint;
    const double e = 2.0 * mu - p + d;
    if (e < 0.0) {
      // Constant fitted on the outer shell, tail approximated by the radial integral.
      double C = 0.0;
      for (long i = 0; i < box.size(); ++i) {
        const IVec k = box.at(i);
        if (k.cwiseAbs().maxCoeff() != K) continue;
        const double r = (xi + 2.0 * kPi * k.cast<double>()).norm();
        C = std::max(C, std::abs(term(k)) * std::pow(1.0 + r, p) / std::pow(1.0 + r * r, mu));
      }
      const double r0 = 2.0 * kPi * K;
      out.tail_estimate = C * sphere_area(d) * std::pow(r0, e) / (-e * std::pow(2.0 * kPi, d));
    } else {
      out.tail_estimate = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

double sup_bracket(const SpectralFunction& f, double mu, int grid_points, int K) {
  if (grid_points < 64) throw ValidationError("sup_bracket: grid_points must be >= 64");
  require_dim(f.dim);
  const Eigen::VectorXd axis = torus_grid(grid_points);
  const long total = f.dim == 1 ? grid_points : long{grid_points} * grid_points;
  std::vector<double> values(static_cast<std::size_t>(total));
  parallel_for(values.size(), [&](std::size_t p) {
    const long i = static_cast<long>(p);
    const Vec xi = f.dim == 1 ? vec1(axis(i)) : vec2(axis(i / grid_points), axis(i % grid_points));
    values[p] = std::abs(bracket_product(f, f, mu, xi, K).value);
  });
  return *std::max_element(values.begin(), values.end());
}

double g1_estimate(const SpectralFunction& psi, int kappa, int grid_points) {
  if (kappa < 0) throw ValidationError("g1_estimate: kappa must be >= 0");
  if (grid_points < 2) throw ValidationError("g1_estimate: grid_points must be >= 2");
  require_dim(psi.dim);
  const int power = kappa + 1;
  auto ratio = [&](const Vec& xi) { return std::abs(psi(xi)) / std::pow(xi.norm(), power); };

  const Eigen::VectorXd axis = torus_grid(grid_points);
  double sup = 0.0;
  const long total = psi.dim == 1 ? grid_points : long{grid_points} * grid_points;
  for (long i = 0; i < total; ++i) {
    const Vec xi = psi.dim == 1 ? vec1(axis(i)) : vec2(axis(i / grid_points), axis(i % grid_points));
    if (xi.norm() == 0.0) continue;
    sup = std::max(sup, ratio(xi));
  }

  // Probes along each axis direction towards the origin.
  for (int a = 0; a < psi.dim; ++a) {
    for (double sign : {1.0, -1.0}) {
      double previous = 0.0;
      for (int e = 1; e <= 6; ++e) {
        Vec xi = Vec::Zero(psi.dim);
        xi(a) = sign * std::pow(10.0, -e);
        const double r = ratio(xi);
        if (e == 6 && r > 5.0 * previous && r > 1e-12) {
          throw ValidationError("g1_estimate: |psi^(xi)| / ||xi||^(kappa+1) diverges at 0; "
                                "psi^ has fewer than kappa+1 vanishing moments");
        }
        previous = r;
        sup = std::max(sup, r);
      }
    }
  }
  return sup;
}

}  // namespace framelet
