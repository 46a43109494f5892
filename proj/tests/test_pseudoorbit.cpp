#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "reslab/exppoly.hpp"
#include "reslab/geometry.hpp"
#include "reslab/permutations.hpp"
#include "reslab/pseudoorbit.hpp"
#include "reslab/rng.hpp"
#include "reslab/sizecalc.hpp"
#include "test_util.hpp"

using namespace reslab;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

int inversion_parity(const std::vector<int>& pi) {
    int inversions = 0;
    for (size_t i = 0; i < pi.size(); ++i) {
        for (size_t j = i + 1; j < pi.size(); ++j) {
            if (pi[i] > pi[j]) ++inversions;
        }
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

TEST_CASE("identity maps to the empty pseudo-orbit") {
    const PseudoOrbit empty = permutation_to_pseudo_orbit({0, 1, 2, 3});
    CHECK(empty.orbit_count() == 0);
    CHECK(empty.bond_count() == 0);
    CHECK(empty.total_length() == 0.0);
    CHECK(b_gamma(empty, Complex(1.0, -2.0)) == Complex(1.0, 0.0));
}

TEST_CASE("cycle structure carries over") {
    // (1 2)(3 4): two orbits, four bonds.
    const PseudoOrbit two = permutation_to_pseudo_orbit({1, 0, 3, 2});
    REQUIRE(two.orbit_count() == 2);
    CHECK(two.bond_count() == 4);
    CHECK(two.orbits[0].bonds[0].from == 0);
    CHECK(two.orbits[0].bonds[0].to == 1);
    CHECK(two.orbits[1].bonds[0].from == 2);
    CHECK(two.orbits[1].bonds[0].to == 3);

    // One 4-cycle 0 -> 1 -> 2 -> 3 -> 0.
    const PseudoOrbit four = permutation_to_pseudo_orbit({1, 2, 3, 0});
    REQUIRE(four.orbit_count() == 1);
    REQUIRE(four.bond_count() == 4);
}

TEST_CASE("fixed points are dropped") {
    // (2 3) with 1 and 4 fixed.
    const PseudoOrbit orbit = permutation_to_pseudo_orbit({0, 2, 1, 3});
    REQUIRE(orbit.orbit_count() == 1);
    CHECK(orbit.bond_count() == 2);
    CHECK(orbit.orbits[0].bonds[0].from == 1);
    CHECK(orbit.orbits[0].bonds[0].to == 2);
}

TEST_CASE("bond lengths come from the configuration") {
    const PointConfig config = testutil::scalene_triangle(0.0);
    const DistanceMatrix dm = distance_matrix(config);
    const PseudoOrbit orbit = permutation_to_pseudo_orbit({1, 2, 0}, dm);
    REQUIRE(orbit.orbit_count() == 1);
    CHECK(orbit.total_length() == doctest::Approx(3.3).epsilon(1e-12));
}

TEST_CASE("irreducible pseudo-orbits biject with permutations") {
    for (int n = 2; n <= 6; ++n) {
        const auto buckets = enumerate_irreducible(n);
        std::uint64_t total = 0;
        for (const auto& [m, orbits] : buckets) {
            CHECK((m == 0 || m >= 2));
            CHECK(m <= n);
            for (const PseudoOrbit& orbit_set : orbits) {
                CHECK(orbit_set.bond_count() == m);
            }
            total += orbits.size();
        }
        CHECK(total == factorial(n));
    }
}

TEST_CASE("bucket counts for small n") {
    const auto two = enumerate_irreducible(2);
    REQUIRE(two.size() == 2);
    CHECK(two.at(0).size() == 1);
    CHECK(two.at(2).size() == 1);

    const auto three = enumerate_irreducible(3);
    CHECK(three.at(0).size() == 1);
    CHECK(three.at(2).size() == 3);
    CHECK(three.at(3).size() == 2);
}

TEST_CASE("weight of simple orbit sets") {
    // Single 2-cycle over a unit bond at kappa = 0: (-1/4pi)^2.
    const PointConfig segment = testutil::unit_segment(0.0);
    const DistanceMatrix dm = distance_matrix(segment);
    const PseudoOrbit swap = permutation_to_pseudo_orbit({1, 0}, dm);
    const Complex w = b_gamma(swap, Complex(0.0, 0.0));
    CHECK(std::abs(w - Complex(1.0 / (kFourPi * kFourPi), 0.0)) < 1e-18);

    // 3-cycle: -e^{i kappa (sum of sides)} / ((4pi)^3 l12 l13 l23).
    const PointConfig triangle = testutil::scalene_triangle(0.0);
    const DistanceMatrix tdm = distance_matrix(triangle);
    const PseudoOrbit cyc = permutation_to_pseudo_orbit({1, 2, 0}, tdm);
    const Complex kappa(0.8, -0.3);
    const Complex expected =
        -std::exp(Complex(0.0, 1.0) * kappa * 3.3) / std::pow(kFourPi, 3) / (1.3 * 1.1 * 0.9);
    CHECK(std::abs(b_gamma(cyc, kappa) - expected) < 1e-15 * std::abs(expected));
}

TEST_CASE("longest pseudo-orbit length equals the size") {
    Rng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + rng.below(4);
        const PointConfig config = testutil::random_config(rng, n, 0.0);
        const auto buckets = enumerate_irreducible(config);
        double longest = 0.0;
        for (const auto& [m, orbits] : buckets) {
            for (const PseudoOrbit& orbit_set : orbits) {
                longest = std::max(longest, orbit_set.total_length());
            }
        }
        CHECK(longest == doctest::Approx(size_bruteforce(config).v_x).epsilon(1e-9));
    }
}

TEST_CASE("cycle-count sign equals inversion parity") {
    for (int n = 2; n <= 7; ++n) {
        for_each_permutation(n, [&](const std::vector<int>& pi) {
            CHECK(sign_of_permutation(pi) == inversion_parity(pi));
        });
    }
}

TEST_CASE("pseudo-orbit expansion equals the exponential polynomial") {
    Rng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + rng.below(4);
        const PointConfig config = testutil::random_config(rng, n, rng.uniform(-2.0, 2.0));
        const ExpPolynomial f = from_determinant(config);
        for (int k = 0; k < 40; ++k) {
            const Complex kappa(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0));
            double mass_poly = 0.0;
            const ScaledValue a = evaluate_scaled(f, kappa, &mass_poly);
            double mass_pseudo = 0.0;
            const ScaledValue b = resonance_condition_pseudo_scaled(config, kappa, &mass_pseudo);
            const double log_mass = std::max(mass_poly, mass_pseudo);
            const double peak = std::max(a.log_scale, b.log_scale);
            const Complex va = a.value * std::exp(a.log_scale - peak);
            const Complex vb = b.value * std::exp(b.log_scale - peak);
            CHECK(std::abs(va - vb) * std::exp(peak - log_mass) < 1e-12);
        }
    }
}

TEST_CASE("plain pseudo-orbit evaluation in moderate range") {
    const PointConfig config = testutil::scalene_triangle(1.2);
    const ExpPolynomial f = from_determinant(config);
    Rng rng(43);
    for (int k = 0; k < 30; ++k) {
        const Complex kappa(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
        const Complex a = evaluate(f, kappa);
        const Complex b = resonance_condition_pseudo(config, kappa);
        CHECK(std::abs(a - b) <= 1e-12 * std::exp(log_l1_mass(f, kappa)));
    }
}
