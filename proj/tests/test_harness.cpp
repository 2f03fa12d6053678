#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "framelet/experiment.hpp"
#include "framelet/formula.hpp"

using namespace framelet;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("framelet_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentSpec small_1d() {
  ExperimentSpec spec = paper_1d_spec();
  spec.scales = {1, 2, 3, 4};
  spec.trials = 5;
  spec.domain = Box{vec1(-10.0), vec1(10.0)};
  spec.grid_nodes = 2001;
  return spec;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("builtin 1D target") {
    const TargetFunction f = builtin_target_1d();
    CHECK(f(vec1(0.0)) == 1.0);
    CHECK(f(vec1(2.5)) == doctest::Approx(std::sin(2.5) / 2.5 + 0.5 / 3.0).epsilon(1e-15));
    CHECK(f(vec1(2.5)) == doctest::Approx(0.406056).epsilon(1e-6));
    CHECK(f(vec1(1000.0)) == std::sin(1000.0) / 1000.0);
    // x = 4.5: sinc + (1/3)B2(2.5) - (1/6)cos(2.25)B2(1.5) + (1/2)cos(0.25)B2(0.5)
    const double expect = std::sin(4.5) / 4.5 - std::cos(2.25) * 0.5 / 6.0 + std::cos(0.25) * 0.5 / 2.0;
    CHECK(f(vec1(4.5)) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(f.sobolev_hint > 0.5);
    CHECK(f.sobolev_hint < 1.5);
  }

  TEST_CASE("builtin 2D target") {
    const TargetFunction f = builtin_target_2d();
    CHECK(f(vec2(0.0, 0.0)) == doctest::Approx(0.001).epsilon(1e-15));
    CHECK(f(vec2(1.0, 1.0)) == doctest::Approx(1.0 / (51.0 * 21.0) + 1.0).epsilon(1e-15));
    CHECK(f(vec2(10.0, 10.0)) == doctest::Approx(1.0 / (150.0 * 120.0)).epsilon(1e-15));
  }

  TEST_CASE("formula parser") {
    CHECK(Formula::parse("1 + 2 * 3", 1)(vec1(0.0)) == 7.0);
    CHECK(Formula::parse("2^3^2", 1)(vec1(0.0)) == 512.0);
    CHECK(Formula::parse("-x^2", 1)(vec1(3.0)) == -9.0);
    CHECK(Formula::parse("(1 - x) / 4", 1)(vec1(3.0)) == -0.5);
    CHECK(Formula::parse("sin(pi / 2) + cos(0) + exp(0) + log(e)", 1)(vec1(0.0)) == doctest::Approx(4.0));
    CHECK(Formula::parse("sqrt(abs(x))", 1)(vec1(-16.0)) == 4.0);
    CHECK(Formula::parse("sinc(x)", 1)(vec1(0.0)) == 1.0);
    CHECK(Formula::parse("B(3, x)", 1)(vec1(1.5)) == 0.75);
    CHECK(Formula::parse("x * y + x2", 2)(vec2(2.0, 5.0)) == 15.0);
    CHECK(Formula::parse("1.5e-1*x1", 1)(vec1(2.0)) == doctest::Approx(0.3));
    CHECK_THROWS_AS(Formula::parse("x +", 1), ValidationError);
    CHECK_THROWS_AS(Formula::parse("y", 1), ValidationError);
    CHECK_THROWS_AS(Formula::parse("foo(x)", 1), ValidationError);
    CHECK_THROWS_AS(Formula::parse("(x", 1), ValidationError);
    CHECK_THROWS_AS(Formula::parse("x x", 1), ValidationError);
    CHECK_THROWS_AS(Formula::parse("B(x)", 1), ValidationError);
  }

  TEST_CASE("target and generator resolution") {
    CHECK(resolve_target("paper-2d", 2).name == "paper-2d");
    CHECK_THROWS_AS(resolve_target("paper-2d", 1), ValidationError);
    CHECK(resolve_target("x^2", 1)(vec1(3.0)) == 9.0);
    CHECK(parse_refinable("B3", 1).order(0) == 3);
    CHECK(parse_refinable("B3", 2).orders() == std::vector<int>{3, 3});
    CHECK(parse_refinable("B2xB4", 2).orders() == std::vector<int>{2, 4});
    CHECK_THROWS_AS(parse_refinable("B2xB4", 1), ValidationError);
    CHECK_THROWS_AS(parse_refinable("C3", 1), ValidationError);
    CHECK_THROWS_AS(parse_refinable("B0", 1), ValidationError);
  }

  TEST_CASE("scale lists") {
    CHECK(parse_scales("1..4") == std::vector<int>{1, 2, 3, 4});
    CHECK(parse_scales("2,5,7") == std::vector<int>{2, 5, 7});
    CHECK_THROWS_AS(parse_scales("4..1"), ValidationError);
    CHECK_THROWS_AS(parse_scales("a..b"), ValidationError);
    ExperimentSpec spec = paper_1d_spec();
    spec.scales = {1, 3, 2};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.scales = {};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
  }

  TEST_CASE("protocol defaults") {
    const ExperimentSpec a = paper_1d_spec();
    CHECK(a.lambda(0) == 1.0);
    CHECK(a.jitter.kind == JitterKind::gaussian);
    CHECK(a.jitter.scale == 1.0);
    CHECK(a.grid_nodes == 20001);
    CHECK(a.scales.front() == 1);
    CHECK(a.scales.back() == 8);
    CHECK(a.trials == 50);
    const ExperimentSpec b = paper_2d_spec();
    CHECK(b.lambda == vec2(0.5, 0.5));
    CHECK(b.grid_nodes == 501);
    CHECK(b.scales.back() == 6);
    CHECK(b.trials == 20);
  }

  TEST_CASE("config file and settings") {
    const fs::path dir = scratch_dir("config");
    fs::create_directories(dir);
    {
      std::ofstream out(dir / "exp.cfg");
      out << "# comment\nscales = 2..4\ntrials=7  # inline\nseed=99\nlambda=0.25\nsigma=0.5\n";
    }
    ExperimentSpec spec = paper_1d_spec();
    apply_settings(spec, read_config_file(dir / "exp.cfg"));
    CHECK(spec.scales == std::vector<int>{2, 3, 4});
    CHECK(spec.trials == 7);
    CHECK(spec.seed == 99u);
    CHECK(spec.lambda(0) == 0.25);
    CHECK(spec.jitter.scale == 0.5);
    apply_settings(spec, {{"seed", "5"}});
    CHECK(spec.seed == 5u);
    CHECK_THROWS_AS(apply_settings(spec, {{"bogus", "1"}}), ValidationError);
    CHECK_THROWS_AS(apply_settings(spec, {{"trials", "many"}}), ValidationError);
    CHECK_THROWS_AS(read_config_file(dir / "missing.cfg"), IoError);
    {
      std::ofstream out(dir / "bad.cfg");
      out << "scales 1..3\n";
    }
    CHECK_THROWS_AS(read_config_file(dir / "bad.cfg"), ValidationError);
    fs::remove_all(dir);
  }

  TEST_CASE("spec hash ignores seed and output") {
    ExperimentSpec a = paper_1d_spec(), b = paper_1d_spec();
    b.seed = 1;
    b.output_dir = "/tmp/x";
    CHECK(a.hash() == b.hash());
    b.trials = 49;
    CHECK(a.hash() != b.hash());
  }

  TEST_CASE("constant target with zero jitter") {
    ExperimentSpec spec = small_1d();
    spec.target = "1";
    spec.jitter = JitterDistribution::zero();
    spec.lambda = vec1(0.0);
    const ErrorReport r = run_experiment(spec);
    REQUIRE(r.rows.size() == 4);
    for (const ErrorRow& row : r.rows) CHECK(row.max_err < 1e-12);
    CHECK_FALSE(r.slope.has_value());
  }

  TEST_CASE("report files and determinism") {
    const fs::path dir = scratch_dir("report");
    ExperimentSpec spec = small_1d();
    spec.output_dir = dir;
    const ErrorReport r1 = run_experiment(spec);
    const std::string csv1 = slurp(dir / (spec.name + ".csv"));
    const ErrorReport r2 = run_experiment(spec);
    CHECK(csv1 == slurp(dir / (spec.name + ".csv")));
    CHECK(r1.csv() == r2.csv());
    CHECK(csv1.rfind("N,max_err,mean_err,std_err\n", 0) == 0);
    CHECK(csv1.find('\r') == std::string::npos);
    CHECK(fs::exists(dir / (spec.name + "_plot.dat")));
    CHECK(slurp(dir / (spec.name + "_meta.txt")).find("seed=20240607") != std::string::npos);
    REQUIRE(r1.slope.has_value());
    for (std::size_t i = 0; i < r1.rows.size(); ++i) {
      CHECK(r1.rows[i].max_err >= r1.rows[i].mean_err);
      if (i > 0) CHECK(r1.rows[i].N > r1.rows[i - 1].N);
    }
    spec.seed += 1;
    CHECK(run_experiment(spec).csv() != csv1);
    fs::remove_all(dir);
  }

  TEST_CASE("unwritable output directory is an I/O error") {
    ExperimentSpec spec = small_1d();
    spec.scales = {1};
    spec.trials = 1;
    spec.output_dir = "/proc/framelet_cannot_write_here";
    CHECK_THROWS_AS(run_experiment(spec), IoError);
  }

  TEST_CASE("budget reduces trials and logs it") {
    ExperimentSpec spec = small_1d();
    spec.trials = 50;
    spec.budget_seconds = 1e-9;
    const ErrorReport r = run_experiment(spec);
    CHECK(r.rows.front().trials == 50);
    CHECK(r.rows.back().trials < 50);
    CHECK_FALSE(r.budget_log.empty());
  }

  TEST_CASE("jitter-free 1D errors decrease with scale") {
    ExperimentSpec spec = paper_1d_spec();
    spec.jitter = JitterDistribution::zero();
    spec.lambda = vec1(0.0);
    spec.trials = 1;
    const ErrorReport r = run_experiment(spec);
    int inversions = 0;
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      if (r.rows[i].N > 2 && r.rows[i].max_err > r.rows[i - 1].max_err) ++inversions;
    }
    CHECK(inversions <= 1);
    CHECK(r.rows.back().max_err < r.rows.front().max_err);
  }

  TEST_CASE("jittered 1D error at N = 4 is below N = 1") {
    ExperimentSpec spec = paper_1d_spec();
    spec.scales = {1, 4};
    const ErrorReport r = run_experiment(spec);
    CHECK(r.rows[1].max_err < r.rows[0].max_err);
  }
}
