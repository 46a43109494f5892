#include "reslab/sizecalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reslab/parallel.hpp"
#include "reslab/permutations.hpp"

namespace reslab {

namespace {

struct BlockScan {
    double best = -1.0;
    std::vector<double> lengths;
};

}  // namespace

SizeReport size_bruteforce(const PointConfig& config, const LengthAlphabet& alphabet,
                           bool record_per_permutation) {
    const int n = config.size();
    check_enumeration_cap(n, "size_bruteforce");

    const std::uint64_t block_size = factorial(n - 1);

    // Pass 1: the maximal total.  Every permutation's total goes through
    // vector_total on its length-class vector, so permutations sharing a
    // class vector produce bitwise-identical totals.
    std::vector<BlockScan> scans(static_cast<size_t>(n));
    parallel_blocks(n, [&](int block) {
        BlockScan& scan = scans[static_cast<size_t>(block)];
        if (record_per_permutation) scan.lengths.reserve(block_size);
        std::vector<int> counts;
        for_each_permutation_in_block(n, block, [&](const std::vector<int>& pi) {
            alphabet.class_vector_into(pi, counts);
            const double total = alphabet.vector_total(counts);
            if (total > scan.best) scan.best = total;
            if (record_per_permutation) scan.lengths.push_back(total);
        });
    });

    SizeReport report;
    for (const BlockScan& scan : scans) report.v_x = std::max(report.v_x, scan.best);
    if (record_per_permutation) {
        report.per_permutation_length.reserve(block_size * static_cast<std::uint64_t>(n));
        for (const BlockScan& scan : scans) {
            report.per_permutation_length.insert(report.per_permutation_length.end(),
                                                 scan.lengths.begin(), scan.lengths.end());
        }
    }

    // Pass 2: collect ties.  Distinct class vectors can reach the maximum
    // through different roundings (symmetric configurations), so the cut is
    // relative at the alphabet tolerance rather than exact equality.
    const double cutoff = report.v_x * (1.0 - alphabet.tolerance);
    std::vector<std::vector<std::vector<int>>> hits(static_cast<size_t>(n));
    parallel_blocks(n, [&](int block) {
        std::vector<int> counts;
        for_each_permutation_in_block(n, block, [&](const std::vector<int>& pi) {
            alphabet.class_vector_into(pi, counts);
            if (alphabet.vector_total(counts) >= cutoff) {
                hits[static_cast<size_t>(block)].push_back(pi);
            }
        });
    });
    for (auto& block_hits : hits) {
        for (auto& pi : block_hits) report.maximizers.push_back(std::move(pi));
    }
    return report;
}

SizeReport size_bruteforce(const PointConfig& config, bool record_per_permutation) {
    return size_bruteforce(config, build_length_alphabet(config), record_per_permutation);
}

std::vector<int> solve_assignment_min(const std::vector<double>& cost, int n) {
    // Shortest augmenting path formulation; O(n^3).  Rows and columns are
    // 1-based internally, with column 0 as the virtual start.
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<size_t>(n) + 1, 0.0);
    std::vector<int> match(static_cast<size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            const int i0 = match[static_cast<size_t>(j0)];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                const double cur =
                    cost[static_cast<size_t>(i0 - 1) * static_cast<size_t>(n) +
                         static_cast<size_t>(j - 1)] -
                    u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<size_t>(j0)];
            match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(static_cast<size_t>(n), -1);
    for (int j = 1; j <= n; ++j) {
        row_to_col[static_cast<size_t>(match[static_cast<size_t>(j)] - 1)] = j - 1;
    }
    return row_to_col;
}

std::vector<int> assignment_maximizer(const PointConfig& config) {
    const int n = config.size();
    const DistanceMatrix dm = distance_matrix(config);
    std::vector<double> cost(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cost[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                -dm(i, j);
        }
    }
    return solve_assignment_min(cost, n);
}

double size_assignment(const PointConfig& config) {
    const LengthAlphabet alphabet = build_length_alphabet(config);
    const std::vector<int> pi = assignment_maximizer(config);
    return alphabet.vector_total(alphabet.class_vector(pi));
}

bool weyl_necessary_condition(const SizeReport& report) {
    return report.maximizers.size() == 1;
}

}  // namespace reslab
