#include <cmath>
#include <random>

#include "doctest.h"
#include "framelet/sampling_operator.hpp"
#include "oracles.hpp"

using namespace framelet;

namespace {

TargetFunction fn1(std::function<double(double)> g) {
  TargetFunction f;
  f.dim = 1;
  f.eval = [g](const Vec& x) { return g(x(0)); };
  return f;
}

TargetFunction fn2(std::function<double(double, double)> g) {
  TargetFunction f;
  f.dim = 2;
  f.eval = [g](const Vec& x) { return g(x(0), x(1)); };
  return f;
}

ReconstructionConfig cfg1(int N, double lo, double hi, int n = 3) {
  return {N, Box{vec1(lo), vec1(hi)}, RefinableFunction::bspline(n)};
}

PerturbationSequence constant_shift(const LatticeBox& box, const Vec& c) {
  PerturbationSequence s{box, Eigen::MatrixXd(c.size(), box.size())};
  for (long i = 0; i < box.size(); ++i) s.offsets.col(i) = c;
  return s;
}

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("index box examples") {
    const LatticeBox b = index_box(cfg1(1, -1.0, 1.0));
    CHECK(b.lo(0) == -5);
    CHECK(b.hi(0) == 2);
    const LatticeBox p = index_box(cfg1(0, 0.0, 0.0, 1));
    CHECK(p.lo(0) == -1);
    CHECK(p.hi(0) == 0);
    CHECK(index_box(cfg1(2, 1.0, 0.0)).empty());
  }

  TEST_CASE("index box covers every contributing shift") {
    // phi(2^N x - k) != 0 needs k in [2^N x - n, 2^N x).
    for (int N = 0; N <= 4; ++N) {
      const LatticeBox b = index_box(cfg1(N, -1.3, 2.7));
      for (double x = -1.3; x <= 2.7; x += 0.01) {
        const double y = std::ldexp(x, N);
        CHECK(b.lo(0) <= std::floor(y - 3.0));
        CHECK(b.hi(0) >= std::ceil(y) - 1);
      }
    }
  }

  TEST_CASE("constants are reproduced") {
    const TargetFunction one = fn1([](double) { return 1.0; });
    for (int N = 0; N <= 6; ++N) {
      for (double x = -3.0; x <= 3.0; x += 0.173) CHECK(std::abs(uniform_reconstruct(one, cfg1(N, -3, 3), vec1(x)) - 1.0) < 1e-12);
    }
    const TargetFunction one2 = fn2([](double, double) { return 1.0; });
    const ReconstructionConfig c2{3, Box{vec2(-1, -1), vec2(1, 1)}, RefinableFunction::tensor_bspline(3, 2)};
    CHECK(std::abs(uniform_reconstruct(one2, c2, vec2(0.31, -0.77)) - 1.0) < 1e-12);
  }

  TEST_CASE("linear functions are shifted by 3/2 at scale N") {
    const TargetFunction id = fn1([](double x) { return x; });
    for (int N = 0; N <= 8; ++N) {
      for (double x = 2.0; x <= 8.0; x += 0.0731) {
        // sum_k k B3(y - k) by direct lattice sum of the closed-form pieces
        const double y = std::ldexp(x, N);
        double brute = 0.0;
        for (int k = static_cast<int>(std::floor(y)) - 4; k <= static_cast<int>(std::ceil(y)) + 1; ++k) brute += k * oracle::b3(y - k);
        CHECK(std::abs(brute - (y - 1.5)) < 1e-9 * std::max(1.0, y));
        CHECK(std::abs(uniform_reconstruct(id, cfg1(N, 2, 8), vec1(x)) - (x - 1.5 * std::ldexp(1.0, -N))) < 1e-12);
      }
    }
  }

  TEST_CASE("B2 target at scale 6") {
    const TargetFunction b2 = fn1([](double x) { return oracle::b2(x); });
    CHECK(std::abs(uniform_reconstruct(b2, cfg1(6, -1, 3), vec1(0.5)) - 0.5) < 0.05);
  }

  TEST_CASE("optimized and full-box sums agree bit for bit") {
    const TargetFunction f = fn1([](double x) { return std::sin(3 * x) + x * x; });
    const ReconstructionConfig c = cfg1(1, 0.0, 2.0, 2);
    for (double x = 0.0; x <= 2.0; x += 0.01) {
      CHECK(uniform_reconstruct(f, c, vec1(x)) == uniform_reconstruct_full_box(f, c, vec1(x)));
    }
    const TargetFunction g = fn2([](double x, double y) { return std::cos(x * y) + y; });
    const ReconstructionConfig c2{2, Box{vec2(-1, 0), vec2(1, 1)}, RefinableFunction::tensor_bspline(3, 2)};
    for (double x = -1.0; x <= 1.0; x += 0.13) {
      for (double y = 0.0; y <= 1.0; y += 0.11) {
        CHECK(uniform_reconstruct(g, c2, vec2(x, y)) == uniform_reconstruct_full_box(g, c2, vec2(x, y)));
      }
    }
  }

  TEST_CASE("zero perturbation equals the uniform operator") {
    const TargetFunction f = fn1([](double x) { return std::exp(-x * x); });
    const ReconstructionConfig c = cfg1(3, -2, 2);
    const PerturbationSequence eps = constant_shift(index_box(c), vec1(0.0));
    for (double x = -2.0; x <= 2.0; x += 0.09) {
      CHECK(perturbed_reconstruct(f, c, eps, vec1(x)) == uniform_reconstruct(f, c, vec1(x)));
    }
  }

  TEST_CASE("constants are immune to jitter") {
    const TargetFunction one = fn1([](double) { return 1.0; });
    const ReconstructionConfig c = cfg1(4, -2, 2);
    const PerturbationModel m(vec1(1.0), 0.5, JitterDistribution::gaussian(3.0), 8);
    const PerturbationSequence eps = generate(m, index_box(c));
    for (double x = -2.0; x <= 2.0; x += 0.07) CHECK(std::abs(perturbed_reconstruct(one, c, eps, vec1(x)) - 1.0) < 1e-12);
  }

  TEST_CASE("constant shift of a linear target") {
    const TargetFunction id = fn1([](double x) { return x; });
    for (int N : {0, 3, 5}) {
      const ReconstructionConfig c = cfg1(N, 2, 8);
      const double lambda = 0.37;
      const PerturbationSequence eps = constant_shift(index_box(c), vec1(lambda));
      for (double x = 2.0; x <= 8.0; x += 0.31) {
        CHECK(std::abs(perturbed_reconstruct(id, c, eps, vec1(x)) -
                       (uniform_reconstruct(id, c, vec1(x)) + lambda * std::ldexp(1.0, -N))) < 1e-12);
      }
    }
  }

  TEST_CASE("shift consistency") {
    const TargetFunction f = fn1([](double x) { return std::sin(x) * std::exp(-0.1 * x * x); });
    const double c = -0.6;
    const int N = 3;
    const TargetFunction shifted = fn1([&](double x) { return f(vec1(x + std::ldexp(c, -N))); });
    const ReconstructionConfig cfg = cfg1(N, -3, 3);
    const PerturbationSequence eps = constant_shift(index_box(cfg), vec1(c));
    for (double x = -3.0; x <= 3.0; x += 0.1) {
      CHECK(std::abs(perturbed_reconstruct(f, cfg, eps, vec1(x)) - uniform_reconstruct(shifted, cfg, vec1(x))) < 1e-12);
    }
  }

  TEST_CASE("linearity") {
    const TargetFunction f = fn1([](double x) { return std::cos(2 * x); });
    const TargetFunction g = fn1([](double x) { return x * x * x; });
    const TargetFunction h = fn1([&](double x) { return 2.5 * f(vec1(x)) - 0.75 * g(vec1(x)); });
    const ReconstructionConfig c = cfg1(4, -1, 1);
    const PerturbationModel m(vec1(0.5), 0.5, JitterDistribution::gaussian(1.0), 2);
    const PerturbationSequence eps = generate(m, index_box(c));
    for (double x = -1.0; x <= 1.0; x += 0.05) {
      const double lhs = perturbed_reconstruct(h, c, eps, vec1(x));
      const double rhs = 2.5 * perturbed_reconstruct(f, c, eps, vec1(x)) - 0.75 * perturbed_reconstruct(g, c, eps, vec1(x));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("locality") {
    const int N = 3;
    const ReconstructionConfig c = cfg1(N, 0, 1);
    const PerturbationModel m(vec1(0.0), 0.5, JitterDistribution::uniform(0.4), 6);
    const PerturbationSequence eps = generate(m, index_box(c));
    const double lo = std::ldexp(eps.box.lo(0) + eps.offsets.minCoeff(), -N);
    const double hi = std::ldexp(eps.box.hi(0) + 3 + eps.offsets.maxCoeff(), -N);
    const TargetFunction f = fn1([](double x) { return std::sin(x); });
    const TargetFunction g = fn1([&](double x) { return (x < lo || x > hi) ? 1e6 : std::sin(x); });
    for (double x = 0.0; x <= 1.0; x += 0.03) {
      CHECK(perturbed_reconstruct(f, c, eps, vec1(x)) == perturbed_reconstruct(g, c, eps, vec1(x)));
    }
  }

  TEST_CASE("missing perturbation entries are reported") {
    const TargetFunction f = fn1([](double x) { return x; });
    const ReconstructionConfig c = cfg1(2, 0, 1);
    const PerturbationSequence eps = constant_shift(LatticeBox{ivec1(0), ivec1(1)}, vec1(0.0));
    CHECK_THROWS_AS(perturbed_reconstruct(f, c, eps, vec1(0.9)), ValidationError);
  }

  TEST_CASE("batch synthesis matches pointwise evaluation") {
    const TargetFunction f = fn2([](double x, double y) { return std::sin(x) + y * y; });
    const ReconstructionConfig c{3, Box{vec2(-1, -1), vec2(1, 1)}, RefinableFunction::tensor_bspline(3, 3)};
    const PerturbationModel m(vec2(0.5, 0.5), 0.5, JitterDistribution::gaussian(1.0), 12);
    const LatticeBox box = index_box(c);
    const PerturbationSequence eps = generate(m, box);
    const PointGrid grid = tensor_grid(c.domain, 9);
    const Eigen::VectorXd batch = synthesize(c, box, sample_values(f, c.N, eps), grid);
    for (Eigen::Index p = 0; p < grid.cols(); ++p) CHECK(batch(p) == perturbed_reconstruct(f, c, eps, Vec(grid.col(p))));
  }

  TEST_CASE("relative error examples") {
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(5, -1.0, 3.0);
    CHECK(relative_error(f, f) == 0.0);
    CHECK(relative_error(f, Eigen::VectorXd::Zero(5)) == 1.0);
    CHECK(relative_error(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Constant(3, 1.1)) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(relative_error(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(3)), ValidationError);
  }

  TEST_CASE("tensor grid layout") {
    const PointGrid g1 = tensor_grid(Box{vec1(-100), vec1(100)}, 20001);
    CHECK(g1(0, 0) == -100.0);
    CHECK(g1(0, 20000) == 100.0);
    CHECK(g1(0, 10000) == 0.0);
    const PointGrid g2 = tensor_grid(Box{vec2(-2, -2), vec2(2, 2)}, 501);
    CHECK(g2.cols() == 501 * 501);
    CHECK(g2(0, 501) == doctest::Approx(-2.0 + 4.0 / 500));
    CHECK(g2(1, 1) == doctest::Approx(-2.0 + 4.0 / 500));
  }

  TEST_CASE("trials with zero jitter") {
    const TargetFunction f = fn1([](double x) { return std::exp(-x * x); });
    const ReconstructionConfig c = cfg1(3, -2, 2);
    const PerturbationModel m(vec1(0.0), 0.5, JitterDistribution::zero(), 1);
    const PointGrid grid = tensor_grid(c.domain, 101);
    const TrialStats st = run_trials(f, c, m, 4, grid);
    const double uniform_err = relative_error(f, [&](const Vec& x) { return uniform_reconstruct(f, c, x); }, grid);
    CHECK(st.max == uniform_err);
    CHECK(st.mean == uniform_err);
    CHECK(st.stddev == 0.0);
  }

  TEST_CASE("single trial equals the manual pipeline") {
    const TargetFunction f = fn1([](double x) { return std::cos(x); });
    const ReconstructionConfig c = cfg1(4, -3, 3);
    const PerturbationModel m(vec1(1.0), 0.5, JitterDistribution::gaussian(1.0), 77);
    const PointGrid grid = tensor_grid(c.domain, 301);
    const TrialStats st = run_trials(f, c, m, 1, grid);
    const PerturbationSequence eps = generate(m, index_box(c), 0);
    const double manual = relative_error(f, [&](const Vec& x) { return perturbed_reconstruct(f, c, eps, x); }, grid);
    CHECK(st.max == manual);
    CHECK(st.median() == manual);
  }

  TEST_CASE("trial statistics") {
    TrialStats st;
    st.errors = {3.0, 1.0, 2.0, 10.0};
    CHECK(st.median() == 2.5);
    st.errors = {3.0, 1.0, 2.0};
    CHECK(st.median() == 2.0);
  }
}
