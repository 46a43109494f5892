#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "reslab/errors.hpp"
#include "reslab/exppoly.hpp"
#include "reslab/geometry.hpp"
#include "reslab/roots.hpp"
#include "test_util.hpp"

using namespace reslab;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Zeros of (i kappa/4pi)^2 ... the two-point condition at unit distance and
// alpha = 0, lower half plane, Re kappa > 0, ordered by real part.  Digits
// frozen from a 50-digit arbitrary-precision solve of
// (kappa/4pi)^2 + e^{2 i kappa}/(4pi)^2 = 0.
const std::vector<Complex> kSegmentResonances{
    {1.3372357014306894, -0.31813150520476414},
    {4.3751851530618984, -1.5339133197935745},
    {7.5886311784725126, -2.0622777295982839},
    {10.776299516115071, -2.4015851048680029},
    {13.949208334533214, -2.6531919740386973},
    {17.113535539412146, -2.8535817554090378},
};

// Unique eigenvalue: kappa = i t with t e^t = 1 (the omega constant).
const Complex kSegmentEigenvalue{0.0, 0.567143290409783873};

ExpPolynomial pure_polynomial(std::vector<Complex> coefficients, double alpha) {
    ExpPolynomial f;
    ExpTerm term;
    term.sigma = 0.0;
    term.coeff.coefficients = std::move(coefficients);
    f.terms.push_back(std::move(term));
    f.alpha = alpha;
    return f;
}

}  // namespace

TEST_CASE("winding of kappa^2 around the origin") {
    const ExpPolynomial f = pure_polynomial({Complex(0.0), Complex(0.0), Complex(1.0)}, 0.0);
    CHECK(winding_number_circle(f, Complex(0.0, 0.0), 1.0) == 2);
    CHECK(count_zeros_disc(f, 0.0, 1.0) == 2);
}

TEST_CASE("locating a double zero") {
    const ExpPolynomial f = pure_polynomial({Complex(0.0), Complex(0.0), Complex(1.0)}, 0.0);
    const Rect region{-0.4, 0.41, -0.37, 0.43};
    const std::vector<Zero> zeros = locate_zeros(f, 0.0, region);
    REQUIRE(zeros.size() == 1);
    CHECK(zeros[0].multiplicity == 2);
    CHECK(std::abs(zeros[0].kappa) <= 1e-8);
}

TEST_CASE("cubic free term counts inside the right disc") {
    // (1 - i kappa/4pi)^3: a triple zero at kappa = -4pi i, |kappa| = 4pi.
    const Complex u(0.0, -1.0 / kFourPi);
    const ExpPolynomial f =
        pure_polynomial({Complex(1.0), 3.0 * u, 3.0 * u * u, u * u * u}, 1.0);
    CHECK(count_zeros_disc(f, 1.0, 10.0) == 0);
    CHECK(count_zeros_disc(f, 1.0, 20.0) == 3);
}

TEST_CASE("two-point resonances match the frozen fixtures") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    const Rect region{0.5, 18.0, -3.2, -0.05};
    const std::vector<Zero> zeros = locate_zeros(f, 0.0, region, 1e-10);
    REQUIRE(zeros.size() == kSegmentResonances.size());
    for (size_t i = 0; i < zeros.size(); ++i) {
        CHECK(std::abs(zeros[i].kappa - kSegmentResonances[i]) <= 1e-8);
        CHECK(zeros[i].multiplicity == 1);
        CHECK(zeros[i].kind == ZeroKind::resonance);
        // The condition vanishes there to near roundoff.
        const double rel = std::abs(evaluate(f, zeros[i].kappa)) /
                           std::exp(log_l1_mass(f, zeros[i].kappa));
        CHECK(rel <= 1e-9);
    }
}

TEST_CASE("two-point eigenvalue sits at the omega constant") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    const Rect region{-0.3, 0.3, 0.2, 1.0};
    const std::vector<Zero> zeros = locate_zeros(f, 0.0, region, 1e-10);
    REQUIRE(zeros.size() == 1);
    CHECK(zeros[0].multiplicity == 1);
    CHECK(zeros[0].kind == ZeroKind::eigenvalue);
    CHECK(std::abs(zeros[0].kappa - kSegmentEigenvalue) <= 1e-10);
}

TEST_CASE("zeros come in the pair kappa, -conj(kappa)") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    const Rect region{-18.0, -0.5, -3.2, -0.05};
    const std::vector<Zero> zeros = locate_zeros(f, 0.0, region, 1e-10);
    REQUIRE(zeros.size() == kSegmentResonances.size());
    // Mirrored fixtures, ordered by real part: reverse of the originals.
    for (size_t i = 0; i < zeros.size(); ++i) {
        const Complex mirror = -std::conj(kSegmentResonances[zeros.size() - 1 - i]);
        CHECK(std::abs(zeros[i].kappa - mirror) <= 1e-8);
    }
}

TEST_CASE("disc counts at the frozen radii") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    CHECK(count_zeros_disc(f, 0.0, 10.0) == 7);
    CHECK(count_zeros_disc(f, 0.0, 20.0) == 13);
    CHECK(count_zeros_disc(f, 0.0, 50.0) == 33);
}

TEST_CASE("disc counts are monotone in the radius") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    int previous = 0;
    for (const double r : {5.0, 10.0, 15.0, 20.0, 25.0}) {
        const int count = count_zeros_disc(f, 0.0, r);
        CHECK(count >= previous);
        previous = count;
    }
}

TEST_CASE("winding numbers add over partitions") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    const Rect whole{-10.3, 10.3, -3.05, 1.05};
    const int w = winding_number_rect(f, whole);
    CHECK(w == 7);

    const Rect left{-10.3, 0.15, -3.05, 1.05};
    const Rect right{0.15, 10.3, -3.05, 1.05};
    const int wl = winding_number_rect(f, left);
    const int wr = winding_number_rect(f, right);
    CHECK(wl + wr == w);
    CHECK(wl == 4);

    const Rect lower_left{-10.3, 0.15, -3.05, -1.0};
    const Rect upper_left{-10.3, 0.15, -1.0, 1.05};
    CHECK(winding_number_rect(f, lower_left) + winding_number_rect(f, upper_left) == wl);
}

TEST_CASE("far upper half plane is free of zeros") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    const Rect region{-30.0, 30.0, 3.0, 8.0};
    CHECK(winding_number_rect(f, region) == 0);
    CHECK(locate_zeros(f, 0.0, region).empty());
}

TEST_CASE("eigenvalue count is stable in the radius") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    for (const double r : {5.0, 10.0, 20.0}) {
        const Rect upper{-r, r, 0.05, r};
        const std::vector<Zero> zeros = locate_zeros(f, 0.0, upper);
        REQUIRE(zeros.size() == 1);
        CHECK(zeros[0].kind == ZeroKind::eigenvalue);
    }
}

TEST_CASE("counting slope approaches W/pi") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    const double expected = 2.0 / std::numbers::pi;

    const CountingCurve coarse = counting_curve(f, 0.0, 100.0, 10);
    const double coarse_err = std::abs(coarse.slope - expected) / expected;
    CHECK(coarse_err <= 0.08);

    const CountingCurve fine = counting_curve(f, 0.0, 400.0, 20);
    const double fine_err = std::abs(fine.slope - expected) / expected;
    CHECK(fine_err <= 0.02);
    CHECK(fine_err <= std::max(coarse_err, 0.01));
}

TEST_CASE("slope ignores the interaction strength") {
    const PointConfig config = testutil::unit_segment(5.0);
    const ExpPolynomial f = from_determinant(config);
    const CountingCurve curve = counting_curve(f, 5.0, 200.0, 15);
    CHECK(std::abs(curve.slope - 2.0 / std::numbers::pi) <= 0.03 * 2.0 / std::numbers::pi);
}

TEST_CASE("mirror configuration counts with the effective size, not the size") {
    const PointConfig config = build_nonweyl4(1.0, 0.25, 0.5, 1.0);
    const ExpPolynomial f = from_determinant(config);
    const double w = effective_size(f);
    const double v = (std::sqrt(17.0) + std::sqrt(5.0)) / 2.0;
    REQUIRE(w < v);

    const CountingCurve curve = counting_curve(f, 1.0, 400.0, 20);
    const double w_slope = w / std::numbers::pi;
    const double v_slope = v / std::numbers::pi;
    CHECK(std::abs(curve.slope - w_slope) <= 0.03 * w_slope);
    CHECK(std::abs(curve.slope - v_slope) > 0.10 * v_slope);
}

TEST_CASE("argument preconditions") {
    const PointConfig config = testutil::unit_segment(0.0);
    const ExpPolynomial f = from_determinant(config);
    CHECK_THROWS_AS(locate_zeros(f, 0.0, Rect{0.0, 1.0, 0.0, 1.0}, 1e-13), ValidationError);
    CHECK_THROWS_AS(locate_zeros(f, 0.5, Rect{0.0, 1.0, 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(locate_zeros(f, 0.0, Rect{1.0, 0.0, 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(counting_curve(f, 0.0, 200.0, 9), ValidationError);
    CHECK_THROWS_AS(counting_curve(f, 0.0, 50.0, 20), ValidationError);
    CHECK_THROWS_AS(count_zeros_disc(f, 0.0, -1.0), ValidationError);
    CHECK_THROWS_AS(count_zeros_disc(f, 0.25, 10.0), ValidationError);
}

TEST_CASE("pure polynomial saturates the counting curve") {
    const Complex u(0.0, -1.0 / kFourPi);
    const ExpPolynomial f =
        pure_polynomial({Complex(1.0), 3.0 * u, 3.0 * u * u, u * u * u}, 1.0);
    const CountingCurve curve = counting_curve(f, 1.0, 200.0, 12);
    CHECK(curve.slope == 0.0);
    CHECK(curve.intercept == 3.0);
    CHECK(curve.samples.back().count == 3);
}

TEST_CASE("zero classification bands") {
    CHECK(classify_zero(Complex(1.0, 1e-7)) == ZeroKind::eigenvalue);
    CHECK(classify_zero(Complex(1.0, -1e-7)) == ZeroKind::resonance);
    CHECK(classify_zero(Complex(1.0, 5e-9)) == ZeroKind::real_axis);
    CHECK(classify_zero(Complex(1.0, -5e-9)) == ZeroKind::real_axis);
}
