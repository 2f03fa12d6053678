#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "framelet/types.hpp"

namespace framelet {

enum class JitterKind { zero, gaussian, uniform };

/// Law of the random part theta_k of each offset.
struct JitterDistribution {
  JitterKind kind = JitterKind::zero;
  /// Standard deviation for gaussian, half-width a for uniform on [-a, a].
  double scale = 0.0;

  static JitterDistribution zero() { return {}; }
  static JitterDistribution gaussian(double sigma);
  static JitterDistribution uniform(double half_width);

  /// Parses "zero", "gaussian:<sigma>" or "uniform:<a>".
  static JitterDistribution parse(const std::string& text);
  std::string to_string() const;
};

/// Sampling offsets eps_k = lambda + theta_k with theta_k i.i.d.
class PerturbationModel {
 public:
  /// Throws unless 0 < alpha < 2.
  PerturbationModel(Vec lambda, double alpha, JitterDistribution distribution, std::uint64_t seed);

  const Vec& lambda() const { return lambda_; }
  double alpha() const { return alpha_; }
  const JitterDistribution& distribution() const { return distribution_; }
  std::uint64_t seed() const { return seed_; }
  int dim() const { return static_cast<int>(lambda_.size()); }

  /// Throws if alpha >= min(2s - d, 2), the operator-level admissibility condition.
  void check_admissible(double s) const;

 private:
  Vec lambda_;
  double alpha_;
  JitterDistribution distribution_;
  std::uint64_t seed_;
};

/// Offsets for every index of a finite lattice box, stored row-major
/// (column i of offsets belongs to box.at(i)).
struct PerturbationSequence {
  LatticeBox box;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> offsets;  // dim x box.size()

  int dim() const { return box.dim(); }
  long size() const { return box.size(); }
  bool contains(const IVec& k) const { return box.contains(k); }
  /// eps_k; throws if k lies outside the box.
  Vec at(const IVec& k) const;
};

/// theta_k for one index and stream, a pure function of (seed, stream, k).
Vec draw_jitter(const JitterDistribution& dist, std::uint64_t seed, std::uint64_t stream, const IVec& k);

/// eps_k = lambda + theta_k over the box; stream separates independent trials.
PerturbationSequence generate(const PerturbationModel& model, const LatticeBox& box,
                              std::uint64_t stream = 0);

/// (sum_k ||eps_k - shift||_2^alpha)^{1/alpha}.
double lalpha_norm(const PerturbationSequence& seq, const Vec& shift, double alpha);

/// max{ ||eps - lambda||_{l^2}, ||eps - lambda||_{l^alpha}^{alpha/2} }.
double norm_max(const PerturbationSequence& seq, const Vec& lambda, double alpha);

/// CSV rows "k_1[,k_2],eps_1[,eps_2]" with a header, 17 significant digits.
void write_sequence_csv(std::ostream& out, const PerturbationSequence& seq);
PerturbationSequence read_sequence_csv(std::istream& in);

}  // namespace framelet
