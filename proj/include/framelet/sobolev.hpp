#pragma once

#include <functional>
#include <optional>

#include "framelet/refinable.hpp"
#include "framelet/types.hpp"

namespace framelet {

/// A function known through its Fourier transform.
struct SpectralFunction {
  int dim = 1;
  std::function<Complex(const Vec&)> evaluator;
  /// p such that |f^(xi)| <= C (1 + ||xi||)^{-p}; enables tail estimates.
  std::optional<double> decay_hint;

  Complex operator()(const Vec& xi) const { return evaluator(xi); }

  static SpectralFunction zero(int dim);
  /// Fourier transform of the refinable function (B_n: decay n).
  static SpectralFunction of(const RefinableFunction& phi);
};

/// Composite midpoint rule on [-R, R]^d with ceil(2 R points_per_unit) nodes per axis.
struct QuadratureSpec {
  double cutoff = 200.0;
  int points_per_unit = 50;

  long nodes_per_axis() const;
  static QuadratureSpec default_for(int dim);
};

struct NormResult {
  double value = 0.0;
  /// Bound on the norm contribution from ||xi||_inf > R, when decay_hint is set.
  std::optional<double> tail_bound;
};

/// ||f||_{H^sigma} = (2 pi)^{-d/2} (int |f^|^2 (1 + ||xi||^2)^sigma)^{1/2}, truncated to [-R, R]^d.
NormResult sobolev_norm(const SpectralFunction& f, double sigma, const QuadratureSpec& q = {});

/// <f, g>_{H^sigma} = (2 pi)^{-d} int f^ conj(g^) (1 + ||xi||^2)^sigma, truncated to [-R, R]^d.
Complex sobolev_inner(const SpectralFunction& f, const SpectralFunction& g, double sigma,
                      const QuadratureSpec& q = {});

struct BracketResult {
  Complex value;
  std::optional<double> tail_estimate;
};

/// Partial sum over ||k||_inf <= K of f^(xi + 2k pi) conj(g^(xi + 2k pi)) (1 + ||xi + 2k pi||^2)^mu.
BracketResult bracket_product(const SpectralFunction& f, const SpectralFunction& g, double mu,
                              const Vec& xi, int K);

/// max over a uniform (-pi, pi]^d grid of |[f, f]_mu|.
double sup_bracket(const SpectralFunction& f, double mu, int grid_points, int K);

/// sup over (-pi, pi]^d \ {0} of |psi^(xi)| / ||xi||^{kappa+1}. The grid is augmented
/// with axis probes approaching 0; throws if the ratio blows up there.
double g1_estimate(const SpectralFunction& psi, int kappa, int grid_points);

}  // namespace framelet
