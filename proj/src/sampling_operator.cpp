#include "framelet/sampling_operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "framelet/numerics.hpp"

namespace framelet {
namespace {

constexpr int kMaxOrder = 16;

// Nonzero generator weights along one axis: phi_a(y - k) for the n indices
// k = first, ..., first + n - 1 in ascending order.
struct AxisWeights {
  int first = 0;
  int count = 0;
  std::array<double, kMaxOrder> w{};
};

AxisWeights axis_weights(int order, double y) {
  AxisWeights aw;
  const int last = static_cast<int>(std::ceil(y)) - 1;
  aw.first = last - order + 1;
  aw.count = order;
  for (int j = 0; j < order; ++j) aw.w[j] = eval_bspline(order, y - static_cast<double>(aw.first + j));
  return aw;
}

// sum_k sample_at(k) phi(2^N x - k), ascending k (row-major in 2D).
template <class SampleAt>
double synthesize_point(const ReconstructionConfig& cfg, const Vec& x, SampleAt&& sample_at) {
  const int d = cfg.dim();
  if (x.size() != d) throw ValidationError("reconstruction point has wrong dimension");
  std::array<AxisWeights, kMaxDim> axes;
  for (int a = 0; a < d; ++a) axes[a] = axis_weights(cfg.phi.order(a), std::ldexp(x(a), cfg.N));

  double sum = 0.0;
  if (d == 1) {
    for (int j = 0; j < axes[0].count; ++j) sum += sample_at(ivec1(axes[0].first + j)) * axes[0].w[j];
  } else {
    for (int i = 0; i < axes[0].count; ++i) {
      for (int j = 0; j < axes[1].count; ++j) {
        const double phi = axes[0].w[i] * axes[1].w[j];
        sum += sample_at(ivec2(axes[0].first + i, axes[1].first + j)) * phi;
      }
    }
  }
  return sum;
}

Vec scaled(const IVec& k, int N) {
  Vec v(k.size());
  for (Eigen::Index a = 0; a < k.size(); ++a) v(a) = std::ldexp(static_cast<double>(k(a)), -N);
  return v;
}

}  // namespace

void ReconstructionConfig::validate() const {
  if (N < 0) throw ValidationError("scale N must be >= 0");
  if (domain.dim() != dim()) throw ValidationError("domain and generator differ in dimension");
  if (domain.empty()) throw ValidationError("reconstruction domain is empty");
  for (int a = 0; a < dim(); ++a) {
    if (phi.order(a) > kMaxOrder) throw ValidationError("generator order too large");
  }
}

LatticeBox index_box(const ReconstructionConfig& cfg) {
  const int d = cfg.dim();
  LatticeBox box{IVec::Zero(d), IVec::Constant(d, -1)};
  if (cfg.domain.dim() != d) throw ValidationError("domain and generator differ in dimension");
  if (cfg.domain.empty()) return box;
  for (int a = 0; a < d; ++a) {
    box.lo(a) = static_cast<int>(std::floor(std::ldexp(cfg.domain.lo(a), cfg.N))) - cfg.phi.order(a);
    box.hi(a) = static_cast<int>(std::ceil(std::ldexp(cfg.domain.hi(a), cfg.N)));
  }
  return box;
}

double uniform_reconstruct(const TargetFunction& f, const ReconstructionConfig& cfg, const Vec& x) {
  return synthesize_point(cfg, x, [&](const IVec& k) { return f(scaled(k, cfg.N)); });
}

double perturbed_reconstruct(const TargetFunction& f, const ReconstructionConfig& cfg,
                             const PerturbationSequence& eps, const Vec& x) {
  if (eps.dim() != cfg.dim()) throw ValidationError("perturbation sequence has wrong dimension");
  return synthesize_point(cfg, x, [&](const IVec& k) {
    if (!eps.contains(k)) {
      throw ValidationError("perturbation sequence is missing an entry for a contributing index");
    }
    const Vec shifted = k.cast<double>() + eps.offsets.col(eps.box.linear_index(k));
    Vec at(shifted.size());
    for (Eigen::Index a = 0; a < shifted.size(); ++a) at(a) = std::ldexp(shifted(a), -cfg.N);
    return f(at);
  });
}

double uniform_reconstruct_full_box(const TargetFunction& f, const ReconstructionConfig& cfg, const Vec& x) {
  const LatticeBox box = index_box(cfg);
  Vec y(x.size());
  for (Eigen::Index a = 0; a < x.size(); ++a) y(a) = std::ldexp(x(a), cfg.N);
  double sum = 0.0;
  for (long i = 0; i < box.size(); ++i) {
    const IVec k = box.at(i);
    sum += f(scaled(k, cfg.N)) * cfg.phi(y - k.cast<double>());
  }
  return sum;
}

Eigen::VectorXd sample_values(const TargetFunction& f, int N, const PerturbationSequence& eps) {
  Eigen::VectorXd out(eps.size());
  for (long i = 0; i < eps.size(); ++i) {
    const Vec shifted = eps.box.at(i).cast<double>() + eps.offsets.col(i);
    Vec at(shifted.size());
    for (Eigen::Index a = 0; a < shifted.size(); ++a) at(a) = std::ldexp(shifted(a), -N);
    out(i) = f(at);
  }
  return out;
}

Eigen::VectorXd sample_values(const TargetFunction& f, int N, const LatticeBox& box) {
  Eigen::VectorXd out(box.size());
  for (long i = 0; i < box.size(); ++i) out(i) = f(scaled(box.at(i), N));
  return out;
}

Eigen::VectorXd synthesize(const ReconstructionConfig& cfg, const LatticeBox& box,
                           const Eigen::VectorXd& samples, const PointGrid& grid) {
  if (samples.size() != box.size()) throw ValidationError("sample vector does not match the index box");
  if (grid.rows() != cfg.dim()) throw ValidationError("grid has wrong dimension");
  Eigen::VectorXd out(grid.cols());
  for (Eigen::Index p = 0; p < grid.cols(); ++p) {
    const Vec x = grid.col(p);
    out(p) = synthesize_point(cfg, x, [&](const IVec& k) {
      if (!box.contains(k)) throw ValidationError("grid point needs samples outside the index box");
      return samples(box.linear_index(k));
    });
  }
  return out;
}

double relative_error(const Eigen::VectorXd& exact, const Eigen::VectorXd& approx) {
  if (exact.size() != approx.size()) throw ValidationError("relative_error: size mismatch");
  std::vector<double> num(static_cast<std::size_t>(exact.size())), den(num.size());
  for (Eigen::Index i = 0; i < exact.size(); ++i) {
    const double diff = exact(i) - approx(i);
    num[static_cast<std::size_t>(i)] = diff * diff;
    den[static_cast<std::size_t>(i)] = exact(i) * exact(i);
  }
  const double denominator = pairwise_sum(den);
  if (!(denominator > 0.0)) throw ValidationError("relative_error: target vanishes on the whole grid");
  return std::sqrt(pairwise_sum(num) / denominator);
}

Eigen::VectorXd evaluate(const TargetFunction& f, const PointGrid& grid) {
  Eigen::VectorXd out(grid.cols());
  for (Eigen::Index p = 0; p < grid.cols(); ++p) out(p) = f(Vec(grid.col(p)));
  return out;
}

double relative_error(const TargetFunction& f, const std::function<double(const Vec&)>& reconstruction,
                      const PointGrid& grid) {
  Eigen::VectorXd approx(grid.cols());
  for (Eigen::Index p = 0; p < grid.cols(); ++p) approx(p) = reconstruction(Vec(grid.col(p)));
  return relative_error(evaluate(f, grid), approx);
}

double TrialStats::median() const {
  if (errors.empty()) throw ValidationError("median of an empty trial set");
  std::vector<double> sorted = errors;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

TrialStats run_trials(const TargetFunction& f, const ReconstructionConfig& cfg,
                      const PerturbationModel& model, int trials, const PointGrid& grid) {
  if (trials < 1) throw ValidationError("run_trials: trials must be >= 1");
  cfg.validate();
  if (model.dim() != cfg.dim() || f.dim != cfg.dim()) {
    throw ValidationError("run_trials: target, generator and perturbation model differ in dimension");
  }
  const LatticeBox box = index_box(cfg);
  const Eigen::VectorXd exact = evaluate(f, grid);

  TrialStats stats;
  stats.errors.assign(static_cast<std::size_t>(trials), 0.0);
  parallel_for(stats.errors.size(), [&](std::size_t t) {
    const PerturbationSequence eps = generate(model, box, t);
    const Eigen::VectorXd approx = synthesize(cfg, box, sample_values(f, cfg.N, eps), grid);
    stats.errors[t] = relative_error(exact, approx);
  });

  stats.max = *std::max_element(stats.errors.begin(), stats.errors.end());
  stats.mean = pairwise_sum(stats.errors) / trials;
  std::vector<double> dev(stats.errors.size());
  for (std::size_t t = 0; t < dev.size(); ++t) dev[t] = (stats.errors[t] - stats.mean) * (stats.errors[t] - stats.mean);
  stats.stddev = std::sqrt(pairwise_sum(dev) / trials);
  return stats;
}

PointGrid tensor_grid(const Box& box, int nodes_per_axis) {
  if (nodes_per_axis < 1) throw ValidationError("tensor_grid: need at least one node per axis");
  const int d = box.dim();
  require_dim(d);
  auto node = [&](int a, long i) {
    if (nodes_per_axis == 1) return box.lo(a);
    return box.lo(a) + static_cast<double>(i) * (box.hi(a) - box.lo(a)) / (nodes_per_axis - 1);
  };
  const long n = nodes_per_axis;
  PointGrid grid(d, d == 1 ? n : n * n);
  for (long p = 0; p < grid.cols(); ++p) {
    if (d == 1) {
      grid(0, p) = node(0, p);
    } else {
      grid(0, p) = node(0, p / n);
      grid(1, p) = node(1, p % n);
    }
  }
  return grid;
}

}  // namespace framelet
