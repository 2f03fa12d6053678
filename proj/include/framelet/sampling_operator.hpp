#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "framelet/perturbation.hpp"
#include "framelet/refinable.hpp"
#include "framelet/sobolev.hpp"
#include "framelet/types.hpp"

namespace framelet {

/// A reconstruction target: pointwise values plus optional spectral data.
struct TargetFunction {
  int dim = 1;
  std::function<double(const Vec&)> eval;
  std::optional<SpectralFunction> fourier;
  /// Declared Sobolev smoothness. Metadata only.
  double sobolev_hint = 0.0;
  std::string name;

  double operator()(const Vec& x) const { return eval(x); }
};

/// Scale N, dyadic dilation, domain box and generator phi for the operators
///   S^N f = sum_k f(2^-N k) phi(2^N . - k),
///   S^N_eps f = sum_k f(2^-N (k + eps_k)) phi(2^N . - k).
struct ReconstructionConfig {
  int N = 0;
  Box domain;
  RefinableFunction phi = RefinableFunction::bspline(3);

  static constexpr int dilation = 2;

  int dim() const { return phi.dim(); }
  void validate() const;
};

/// Every k with supp phi(2^N . - k) meeting the domain:
/// floor(2^N lo) - n <= k <= ceil(2^N hi) per axis. Empty domain gives an empty box.
LatticeBox index_box(const ReconstructionConfig& cfg);

double uniform_reconstruct(const TargetFunction& f, const ReconstructionConfig& cfg, const Vec& x);

/// Throws if eps lacks an entry for a contributing index.
double perturbed_reconstruct(const TargetFunction& f, const ReconstructionConfig& cfg,
                             const PerturbationSequence& eps, const Vec& x);

/// Reference implementation: sums f(2^-N k) phi(2^N x - k) over the whole index box.
double uniform_reconstruct_full_box(const TargetFunction& f, const ReconstructionConfig& cfg, const Vec& x);

/// Sample values f(2^-N (k + eps_k)) for every k of the sequence's box, row-major.
Eigen::VectorXd sample_values(const TargetFunction& f, int N, const PerturbationSequence& eps);
/// Sample values f(2^-N k) over a box.
Eigen::VectorXd sample_values(const TargetFunction& f, int N, const LatticeBox& box);

/// sum_k samples[k] phi(2^N x - k) at every grid column, terms in ascending k.
Eigen::VectorXd synthesize(const ReconstructionConfig& cfg, const LatticeBox& box,
                           const Eigen::VectorXd& samples, const PointGrid& grid);

/// sqrt( sum_i (f_i - r_i)^2 / sum_j f_j^2 ). Throws on a zero denominator.
double relative_error(const Eigen::VectorXd& exact, const Eigen::VectorXd& approx);
double relative_error(const TargetFunction& f, const std::function<double(const Vec&)>& reconstruction,
                      const PointGrid& grid);

Eigen::VectorXd evaluate(const TargetFunction& f, const PointGrid& grid);

struct TrialStats {
  double max = 0.0;
  double mean = 0.0;
  /// Population standard deviation.
  double stddev = 0.0;
  std::vector<double> errors;

  double median() const;
};

/// One relative error per trial; trial t draws its offsets from stream t of the model's seed.
TrialStats run_trials(const TargetFunction& f, const ReconstructionConfig& cfg,
                      const PerturbationModel& model, int trials, const PointGrid& grid);

/// Uniform tensor grid over a box with the given node count per axis (endpoints included).
PointGrid tensor_grid(const Box& box, int nodes_per_axis);

}  // namespace framelet
