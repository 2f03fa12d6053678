#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framelet/perturbation.hpp"
#include "framelet/refinable.hpp"
#include "framelet/sampling_operator.hpp"

namespace framelet {

/// sin x / x + (1/3) B2(x-2) - (1/6) cos((x-3)^2) B2(x-3)
///   + (1/2) cos((x-4)^2) B2(x-4) - (1/2) cos((x-5)^2) B2(x-5)
TargetFunction builtin_target_1d();

/// 1 / ((50 + x^2)(20 + y^2)) + B2(x) B2(y)
TargetFunction builtin_target_2d();

/// "paper-1d", "paper-2d", or a formula in x (and y).
TargetFunction resolve_target(const std::string& id, int dim);

/// "B3" (tensor B3 (x) B3 in 2D) or "B3xB2".
RefinableFunction parse_refinable(const std::string& text, int dim);

/// "a..b" or a comma-separated list.
std::vector<int> parse_scales(const std::string& text);

struct ExperimentSpec {
  std::string name = "experiment";
  std::string target = "paper-1d";
  std::string phi = "B3";
  int dim = 1;
  std::vector<int> scales;
  int trials = 1;

  Vec lambda = vec1(1.0);
  double alpha = 0.5;
  JitterDistribution jitter = JitterDistribution::gaussian(1.0);
  std::uint64_t seed = 20240607;

  Box domain;
  int grid_nodes = 2;

  /// Empty: no files are written.
  std::filesystem::path output_dir;
  /// Per-scale wall-clock budget; 0 disables trial reduction.
  double budget_seconds = 0.0;

  /// Scales nonempty and strictly increasing, trials >= 1, dimensions consistent.
  void validate() const;
  /// FNV-1a hash of every field except seed and output settings.
  std::uint64_t hash() const;
};

/// Scales 1..8, 50 trials, lambda = 1, theta ~ N(0, 1), grid -100 + 0.01 i, i = 0..20000.
ExperimentSpec paper_1d_spec();
/// Scales 1..6, 20 trials, lambda = (0.5, 0.5), theta ~ N(0, 1) per coordinate,
/// domain [-2, 2]^2, grid (2/250){-250..250}^2.
ExperimentSpec paper_2d_spec();

/// Reads key=value lines ('#' comments). Throws IoError if unreadable.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Keys: name target phi scales trials seed lambda alpha sigma jitter out budget grid.
/// Unknown keys throw ValidationError.
void apply_settings(ExperimentSpec& spec, const std::map<std::string, std::string>& settings);

struct ErrorRow {
  int N = 0;
  double max_err = 0.0;
  double mean_err = 0.0;
  double std_err = 0.0;
  double median_err = 0.0;
  int trials = 0;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
  /// Slope of log2(max_err) against N; empty when fewer than 3 rows or errors sit at rounding level.
  std::optional<double> slope;
  std::string slope_note;
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
  std::vector<std::string> budget_log;

  /// "N,max_err,mean_err,std_err" rows, 17 significant digits, LF endings.
  std::string csv() const;
};

/// Errors at or below this level are rounding noise; the slope is not fitted.
inline constexpr double kErrorNoiseFloor = 1e-13;

/// Runs the trials per scale and, when output_dir is set, writes <name>.csv,
/// <name>_plot.dat and <name>_meta.txt.
ErrorReport run_experiment(const ExperimentSpec& spec);

}  // namespace framelet
