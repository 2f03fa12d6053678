#include "framelet/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "framelet/numerics.hpp"
#include "framelet/philox.hpp"

namespace framelet {

JitterDistribution JitterDistribution::gaussian(double sigma) {
  if (!(sigma >= 0.0)) throw ValidationError("gaussian jitter needs sigma >= 0");
  return {JitterKind::gaussian, sigma};
}

JitterDistribution JitterDistribution::uniform(double half_width) {
  if (!(half_width >= 0.0)) throw ValidationError("uniform jitter needs a >= 0");
  return {JitterKind::uniform, half_width};
}

JitterDistribution JitterDistribution::parse(const std::string& text) {
  if (text == "zero" || text == "none") return zero();
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  double value = 0.0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const std::string arg = text.substr(colon + 1);
    value = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ValidationError("jitter spec must be 'zero', 'gaussian:<sigma>' or 'uniform:<a>', got '" + text + "'");
  }
  if (name == "gaussian") return gaussian(value);
  if (name == "uniform") return uniform(value);
  throw ValidationError("unknown jitter distribution '" + name + "'");
}

std::string JitterDistribution::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17);
  switch (kind) {
    case JitterKind::zero:
      return "zero";
    case JitterKind::gaussian:
      os << "gaussian:" << scale;
      break;
    case JitterKind::uniform:
      os << "uniform:" << scale;
      break;
  }
  return os.str();
}

PerturbationModel::PerturbationModel(Vec lambda, double alpha, JitterDistribution distribution,
                                     std::uint64_t seed)
    : lambda_(std::move(lambda)), alpha_(alpha), distribution_(distribution), seed_(seed) {
  require_dim(static_cast<int>(lambda_.size()));
  if (!(alpha_ > 0.0 && alpha_ < 2.0)) throw ValidationError("perturbation exponent alpha must lie in (0, 2)");
}

void PerturbationModel::check_admissible(double s) const {
  const double limit = std::min(2.0 * s - dim(), 2.0);
  if (!(alpha_ < limit)) {
    throw ValidationError("alpha must be below min(2s - d, 2) = " + std::to_string(limit));
  }
}

Vec PerturbationSequence::at(const IVec& k) const {
  if (!box.contains(k)) throw ValidationError("perturbation sequence has no entry for the requested index");
  return offsets.col(box.linear_index(k));
}

Vec draw_jitter(const JitterDistribution& dist, std::uint64_t seed, std::uint64_t stream, const IVec& k) {
  const int d = static_cast<int>(k.size());
  if (dist.kind == JitterKind::zero || dist.scale == 0.0) return Vec::Zero(d);

  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(k(0)),
                                d > 1 ? static_cast<std::uint32_t>(k(1)) : 0u,
                                static_cast<std::uint32_t>(stream),
                                static_cast<std::uint32_t>(stream >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto r = Philox4x32::generate(ctr, key);
  const std::uint64_t words[2] = {(std::uint64_t{r[0]} << 32) | r[1], (std::uint64_t{r[2]} << 32) | r[3]};

  static const boost::math::normal_distribution<double> standard_normal;
  Vec theta(d);
  for (int a = 0; a < d; ++a) {
    const double u = to_open_unit(words[a]);
    theta(a) = dist.kind == JitterKind::gaussian ? dist.scale * boost::math::quantile(standard_normal, u)
                                                 : dist.scale * (2.0 * u - 1.0);
  }
  return theta;
}

PerturbationSequence generate(const PerturbationModel& model, const LatticeBox& box, std::uint64_t stream) {
  if (box.dim() != model.dim()) throw ValidationError("index box and perturbation model differ in dimension");
  if (box.empty()) throw ValidationError("cannot generate a perturbation sequence on an empty box");
  PerturbationSequence seq{box, Eigen::MatrixXd(model.dim(), box.size())};
  for (long i = 0; i < box.size(); ++i) {
    seq.offsets.col(i) = model.lambda() + draw_jitter(model.distribution(), model.seed(), stream, box.at(i));
  }
  return seq;
}

double lalpha_norm(const PerturbationSequence& seq, const Vec& shift, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("lalpha_norm: alpha must be positive");
  if (shift.size() != seq.dim()) throw ValidationError("lalpha_norm: shift has wrong dimension");
  std::vector<double> terms(static_cast<std::size_t>(seq.size()));
  for (long i = 0; i < seq.size(); ++i) {
    terms[static_cast<std::size_t>(i)] = std::pow((seq.offsets.col(i) - shift).norm(), alpha);
  }
  return std::pow(pairwise_sum(terms), 1.0 / alpha);
}

double norm_max(const PerturbationSequence& seq, const Vec& lambda, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw ValidationError("norm_max: alpha must lie in (0, 2)");
  return std::max(lalpha_norm(seq, lambda, 2.0), std::pow(lalpha_norm(seq, lambda, alpha), alpha / 2.0));
}

void write_sequence_csv(std::ostream& out, const PerturbationSequence& seq) {
  const int d = seq.dim();
  out << (d == 1 ? "k1,eps1\n" : "k1,k2,eps1,eps2\n");
  out << std::setprecision(17);
  for (long i = 0; i < seq.size(); ++i) {
    const IVec k = seq.box.at(i);
    for (int a = 0; a < d; ++a) out << k(a) << ',';
    for (int a = 0; a < d; ++a) out << seq.offsets(a, i) << (a + 1 < d ? ',' : '\n');
  }
}

PerturbationSequence read_sequence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("perturbation CSV is empty");
  int d = 0;
  if (line.rfind("k1,eps1", 0) == 0) d = 1;
  if (line.rfind("k1,k2,eps1,eps2", 0) == 0) d = 2;
  if (d == 0) throw ValidationError("perturbation CSV has an unrecognized header '" + line + "'");

  std::vector<IVec> ks;
  std::vector<Vec> eps;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    IVec k(d);
    Vec e(d);
    for (int a = 0; a < d; ++a) ls >> k(a);
    for (int a = 0; a < d; ++a) ls >> e(a);
    if (!ls) throw ValidationError("malformed perturbation CSV row '" + line + "'");
    ks.push_back(k);
    eps.push_back(e);
  }
  if (ks.empty()) throw ValidationError("perturbation CSV has no rows");

  LatticeBox box{ks.front(), ks.front()};
  for (const IVec& k : ks) {
    box.lo = box.lo.cwiseMin(k);
    box.hi = box.hi.cwiseMax(k);
  }
  if (box.size() != static_cast<long>(ks.size())) {
    throw ValidationError("perturbation CSV does not cover a full index box");
  }
  PerturbationSequence seq{box, Eigen::MatrixXd(d, box.size())};
  std::vector<bool> seen(static_cast<std::size_t>(box.size()), false);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long idx = box.linear_index(ks[i]);
    if (seen[static_cast<std::size_t>(idx)]) throw ValidationError("perturbation CSV repeats an index");
    seen[static_cast<std::size_t>(idx)] = true;
    seq.offsets.col(idx) = eps[i];
  }
  return seq;
}

}  // namespace framelet
