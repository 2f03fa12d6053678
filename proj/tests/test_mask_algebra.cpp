#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "framelet/trig_polynomial.hpp"

using namespace framelet;
using std::numbers::pi;

namespace {

TrigPolynomial haar_low() { return bspline_mask(1); }
TrigPolynomial haar_high() { return difference_mask(1); }

TrigPolynomial random_poly(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> idx(-3, 3);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  TrigPolynomial p(dim);
  for (int t = 0; t < 5; ++t) {
    const IVec k = dim == 1 ? ivec1(idx(rng)) : ivec2(idx(rng), idx(rng));
    p = p + TrigPolynomial::monomial(k, Complex(val(rng), val(rng)));
  }
  return p;
}

}  // namespace

TEST_SUITE("mask_algebra") {
  TEST_CASE("symbol evaluation of the Haar lowpass mask") {
    const TrigPolynomial a = haar_low();
    CHECK(a.coeff(ivec1(0)) == Complex(0.5, 0.0));
    CHECK(a.coeff(ivec1(-1)) == Complex(0.5, 0.0));
    CHECK(std::abs(a(vec1(0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(a(vec1(pi))) < 1e-15);
  }

  TEST_CASE("bspline masks are binomial") {
    const TrigPolynomial a3 = bspline_mask(3);
    CHECK(a3.size() == 4);
    CHECK(a3.coeff(ivec1(0)).real() == doctest::Approx(0.125));
    CHECK(a3.coeff(ivec1(-1)).real() == doctest::Approx(0.375));
    CHECK(a3.coeff(ivec1(-2)).real() == doctest::Approx(0.375));
    CHECK(a3.coeff(ivec1(-3)).real() == doctest::Approx(0.125));
    for (int n = 1; n <= 6; ++n) CHECK(bspline_mask(n)(vec1(0.0)) == Complex(1.0, 0.0));
    CHECK(std::abs(a3(vec1(pi))) < 1e-15);
  }

  TEST_CASE("zero orders") {
    CHECK(zero_order_at(bspline_mask(3), vec1(pi)) == 3);
    CHECK(zero_order_at(haar_low(), vec1(0.0)) == 0);
    CHECK(zero_order_at(haar_high(), vec1(0.0)) == 1);
    CHECK(zero_order_at(TrigPolynomial(1), vec1(0.3)) == kMaxZeroOrder);
  }

  TEST_CASE("sum rules and vanishing moments") {
    for (int n = 1; n <= 6; ++n) CHECK(sum_rules(bspline_mask(n), CosetSet::dyadic(1)) == n);
    for (int r = 1; r <= 6; ++r) CHECK(vanishing_moments(difference_mask(r)) == r);
    CHECK(vanishing_moments(TrigPolynomial::constant(1, 1.0)) == 0);
    CHECK(sum_rules(tensor(bspline_mask(3), bspline_mask(3)), CosetSet::dyadic(2)) == 3);
    CHECK(sum_rules(tensor(bspline_mask(2), bspline_mask(4)), CosetSet::dyadic(2)) == 2);
    CHECK_THROWS_AS(sum_rules(2.0 * bspline_mask(2), CosetSet::dyadic(1)), ValidationError);
  }

  TEST_CASE("difference mask closed form") {
    // ((1 - e^{-i xi})/2)^2 = 1/4 - 1/2 e^{-i xi} + 1/4 e^{-2 i xi}
    const TrigPolynomial b = difference_mask(2);
    CHECK(b.coeff(ivec1(0)).real() == doctest::Approx(0.25));
    CHECK(b.coeff(ivec1(-1)).real() == doctest::Approx(-0.5));
    CHECK(b.coeff(ivec1(-2)).real() == doctest::Approx(0.25));
  }

  TEST_CASE("evaluation is linear in coefficients") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xi(-pi, pi);
    for (int dim = 1; dim <= 2; ++dim) {
      for (int trial = 0; trial < 20; ++trial) {
        const TrigPolynomial p = random_poly(rng, dim), q = random_poly(rng, dim);
        const Vec x = dim == 1 ? vec1(xi(rng)) : vec2(xi(rng), xi(rng));
        CHECK(std::abs((p + q)(x) - (p(x) + q(x))) < 1e-14);
      }
    }
  }

  TEST_CASE("product, conjugate and translation") {
    std::mt19937 rng(11);
    const TrigPolynomial p = random_poly(rng, 1), q = random_poly(rng, 1);
    for (double x : {-2.0, -0.4, 0.9, 3.0}) {
      CHECK(std::abs((p * q)(vec1(x)) - p(vec1(x)) * q(vec1(x))) < 1e-13);
      CHECK(std::abs(p.conjugate()(vec1(x)) - std::conj(p(vec1(x)))) < 1e-14);
      CHECK(std::abs(p.translated(ivec1(3))(vec1(x)) - std::polar(1.0, 3 * x) * p(vec1(x))) < 1e-13);
    }
  }

  TEST_CASE("zero order is invariant under translation") {
    for (int n = 1; n <= 5; ++n) {
      const TrigPolynomial a = bspline_mask(n);
      for (int t : {-4, 2, 7}) {
        CHECK(zero_order_at(a.translated(ivec1(t)), vec1(pi)) == n);
        CHECK(zero_order_at(difference_mask(n).translated(ivec1(t)), vec1(0.0)) == n);
      }
    }
  }

  TEST_CASE("derivative matches a central difference") {
    const TrigPolynomial a = bspline_mask(4);
    const double x = 0.7, h = 1e-5;
    const Complex fd = (a(vec1(x + h)) - a(vec1(x - h))) / (2 * h);
    CHECK(std::abs(a.derivative(ivec1(1), vec1(x)) - fd) < 1e-8);
  }

  TEST_CASE("Haar pair satisfies the MEP at every grid size") {
    for (int grid : {16, 64, 256, 1024}) {
      const MepReport r = verify_mep(haar_low(), haar_low(), {haar_high()}, {haar_high()}, CosetSet::dyadic(1), grid);
      CHECK(r.identity_residual < 1e-12);
      CHECK(r.max_coset_residual() < 1e-12);
      CHECK(r.passes(1e-12));
    }
  }

  TEST_CASE("identity-2 as printed fails for the Haar pair") {
    // conj(a(xi+pi)) a(xi+pi) + conj(b(xi+pi)) b(xi) = 1/2 (1 - e^{-i xi}) != 0.
    const MepReport r = verify_mep(haar_low(), haar_low(), {haar_high()}, {haar_high()}, CosetSet::dyadic(1), 256);
    REQUIRE(r.coset_residuals_as_printed.size() == 1);
    CHECK(r.coset_residuals_as_printed[0] == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("tensor Haar pair satisfies the MEP in 2D") {
    const TrigPolynomial lo = haar_low(), hi = haar_high();
    const std::vector<TrigPolynomial> bs = {tensor(lo, hi), tensor(hi, lo), tensor(hi, hi)};
    const MepReport r = verify_mep(tensor(lo, lo), tensor(lo, lo), bs, bs, CosetSet::dyadic(2), 64);
    CHECK(r.coset_residuals.size() == 3);
    CHECK(r.passes(1e-12));
  }

  TEST_CASE("B3 mask without wavelets fails identity 1") {
    const TrigPolynomial a = bspline_mask(3);
    const MepReport r = verify_mep(a, a, {TrigPolynomial(1)}, {TrigPolynomial(1)}, CosetSet::dyadic(1), 256);
    CHECK(r.identity_residual > 0.9);
    CHECK_FALSE(r.passes(1e-12));
  }

  TEST_CASE("delta-dual identity") {
    // at = 1, bt = 1 and b = 1 - a gives conj(b) + conj(a) = 1.
    const TrigPolynomial a = haar_low();
    const TrigPolynomial one = TrigPolynomial::constant(1, 1.0);
    const MepReport r = verify_mep(a, one, {one - a}, {one}, CosetSet::dyadic(1), 256);
    CHECK(r.identity_residual < 1e-12);
  }

  TEST_CASE("verify_mep input checks") {
    const TrigPolynomial a = haar_low();
    CHECK_THROWS_AS(verify_mep(a, a, {}, {}, CosetSet::dyadic(1), 256), ValidationError);
    CHECK_THROWS_AS(verify_mep(a, a, {a}, {}, CosetSet::dyadic(1), 256), ValidationError);
    CHECK_THROWS_AS(verify_mep(a, a, {a}, {a}, CosetSet::dyadic(1), 8), ValidationError);
  }

  TEST_CASE("mask file round trip") {
    const TrigPolynomial p = tensor(bspline_mask(2), difference_mask(1));
    std::stringstream ss;
    write_mask(ss, p);
    const TrigPolynomial q = parse_mask(ss);
    CHECK(q.dim() == 2);
    CHECK((p - q).is_zero());
  }

  TEST_CASE("mask parse errors") {
    std::istringstream bad("0 0.5\n");
    CHECK_THROWS_AS(parse_mask(bad), ValidationError);
    std::istringstream mixed("0 0.5 0\n0 1 0.5 0\n");
    CHECK_THROWS_AS(parse_mask(mixed), ValidationError);
    std::istringstream junk("0 abc 0\n");
    CHECK_THROWS_AS(parse_mask(junk), ValidationError);
    CHECK_THROWS_AS(read_mask_file("/nonexistent/mask.txt"), IoError);
  }
}
