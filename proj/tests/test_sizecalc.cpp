#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "reslab/errors.hpp"
#include "reslab/geometry.hpp"
#include "reslab/permutations.hpp"
#include "reslab/rng.hpp"
#include "reslab/sizecalc.hpp"
#include "test_util.hpp"

using namespace reslab;

TEST_CASE("two points: the swap is the unique maximizer") {
    const PointConfig config = testutil::unit_segment(1.0);
    const SizeReport report = size_bruteforce(config, true);
    CHECK(report.v_x == doctest::Approx(2.0).epsilon(1e-15));
    REQUIRE(report.maximizers.size() == 1);
    CHECK(report.maximizers[0] == std::vector<int>{1, 0});
    CHECK(weyl_necessary_condition(report));
    REQUIRE(report.per_permutation_length.size() == 2);
    CHECK(report.per_permutation_length[0] == 0.0);
    CHECK(report.per_permutation_length[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("per-permutation lengths are off by default") {
    const SizeReport report = size_bruteforce(testutil::unit_segment(1.0));
    CHECK(report.per_permutation_length.empty());
}

TEST_CASE("triangle: both 3-cycles attain the perimeter") {
    const PointConfig config = testutil::scalene_triangle(1.0);
    const SizeReport report = size_bruteforce(config);
    CHECK(report.v_x == doctest::Approx(3.3).epsilon(1e-12));
    REQUIRE(report.maximizers.size() == 2);
    CHECK(report.maximizers[0] == std::vector<int>{1, 2, 0});
    CHECK(report.maximizers[1] == std::vector<int>{2, 0, 1});
    CHECK_FALSE(weyl_necessary_condition(report));
}

TEST_CASE("four-point mirror configuration has four maximizers") {
    const PointConfig config = build_nonweyl4(1.0, 0.25, 0.5, 1.0);
    const SizeReport report = size_bruteforce(config);
    const double expected = (std::sqrt(17.0) + std::sqrt(5.0)) / 2.0;
    CHECK(report.v_x == doctest::Approx(expected).epsilon(1e-12));
    const std::vector<std::vector<int>> want{
        {1, 0, 3, 2}, {1, 3, 0, 2}, {2, 0, 3, 1}, {2, 3, 0, 1}};
    CHECK(report.maximizers == want);
    CHECK_FALSE(weyl_necessary_condition(report));
}

TEST_CASE("antipodal spheres: one maximizer of total 4m") {
    for (int m = 1; m <= 3; ++m) {
        const PointConfig config = build_antipodal_sphere_config(m, 1.0);
        const SizeReport report = size_bruteforce(config);
        CHECK(report.v_x == doctest::Approx(4.0 * m).epsilon(1e-12));
        CHECK(report.maximizers.size() == 1);
        CHECK(weyl_necessary_condition(report));
        // The unique maximizer swaps every antipodal pair.
        std::vector<int> swap_all(static_cast<size_t>(2 * m));
        for (int k = 0; k < m; ++k) {
            swap_all[static_cast<size_t>(k)] = m + k;
            swap_all[static_cast<size_t>(m + k)] = k;
        }
        CHECK(report.maximizers[0] == swap_all);
    }
}

TEST_CASE("sphere plus center: 2m+1 maximizers of total 4m") {
    for (int m = 1; m <= 3; ++m) {
        const PointConfig config = build_sphere_center_config(m, 1.0);
        const SizeReport report = size_bruteforce(config);
        CHECK(report.v_x == doctest::Approx(4.0 * m).epsilon(1e-12));
        CHECK(report.maximizers.size() == static_cast<size_t>(2 * m + 1));
        CHECK_FALSE(weyl_necessary_condition(report));
    }
}

TEST_CASE("size dominates twice the diameter") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + rng.below(5);
        const PointConfig config = testutil::random_config(rng, n, 0.0);
        const DistanceMatrix dm = distance_matrix(config);
        double diameter = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) diameter = std::max(diameter, dm(i, j));
        }
        CHECK(size_bruteforce(config).v_x >= 2.0 * diameter - 1e-12);
    }
}

TEST_CASE("assignment route agrees with brute force exactly") {
    Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + rng.below(7);
        const PointConfig config = testutil::random_config(rng, n, 0.0);
        const double brute = size_bruteforce(config).v_x;
        const double assigned = size_assignment(config);
        CHECK(brute == assigned);
        // The reported optimal permutation attains the optimum.
        const std::vector<int> pi = assignment_maximizer(config);
        const LengthAlphabet alphabet = build_length_alphabet(config);
        CHECK(alphabet.vector_total(alphabet.class_vector(pi)) == brute);
    }
}

TEST_CASE("assignment route carries past the enumeration cap") {
    Rng rng(23);
    const PointConfig config = testutil::random_config(rng, 12, 0.0);
    CHECK_THROWS_AS(size_bruteforce(config), CapacityError);
    const DistanceMatrix dm = distance_matrix(config);
    double diameter = 0.0;
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) diameter = std::max(diameter, dm(i, j));
    }
    CHECK(size_assignment(config) >= 2.0 * diameter - 1e-12);
}

TEST_CASE("assignment solver on a fixed cost matrix") {
    // Rows pick distinct columns minimizing the total: 1 + 2 + 1 = 4.
    const std::vector<double> cost{
        1.0, 5.0, 7.0,
        4.0, 2.0, 9.0,
        8.0, 6.0, 1.0,
    };
    const std::vector<int> assigned = solve_assignment_min(cost, 3);
    CHECK(assigned == std::vector<int>{0, 1, 2});
}

TEST_CASE("maximizers come back in lexicographic order") {
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const PointConfig config = testutil::random_config(rng, 5, 0.0);
        const SizeReport report = size_bruteforce(config);
        CHECK(std::is_sorted(report.maximizers.begin(), report.maximizers.end()));
        CHECK(!report.maximizers.empty());
    }
}
