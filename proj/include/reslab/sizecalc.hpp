#pragma once

#include <vector>

#include "reslab/geometry.hpp"

namespace reslab {

/// Result of the exhaustive size computation over all N! permutations.
struct SizeReport {
    /// The size: maximum total length sum |x_n - x_{pi(n)}| over permutations.
    double v_x = 0.0;
    /// Every permutation attaining the maximum, as 0-based image vectors in
    /// lexicographic order.  Ties are detected through length-class vectors,
    /// so symmetry-forced ties survive floating-point noise in the inputs.
    std::vector<std::vector<int>> maximizers;
    /// Total length of each permutation, indexed by lexicographic rank.
    /// Populated only when requested; empty otherwise.
    std::vector<double> per_permutation_length;
};

/// Exact maximum over all N! permutations.  Requires N <= kEnumerationCap;
/// beyond that use size_assignment.
SizeReport size_bruteforce(const PointConfig& config, const LengthAlphabet& alphabet,
                           bool record_per_permutation = false);
SizeReport size_bruteforce(const PointConfig& config, bool record_per_permutation = false);

/// The size via an O(N^3) max-weight assignment solve; no factorial cap.
/// The returned total is computed over the same length-class representatives
/// as size_bruteforce, so the two agree as doubles whenever both run.
double size_assignment(const PointConfig& config);

/// The optimal permutation found by the assignment solver, 0-based images.
std::vector<int> assignment_maximizer(const PointConfig& config);

/// Min-cost perfect assignment on an n x n cost matrix (row-major).
/// Returns the column assigned to each row.
std::vector<int> solve_assignment_min(const std::vector<double>& cost, int n);

/// True iff the maximizer is unique.  Uniqueness is necessary for the
/// effective size to equal the size; the converse fails (a configuration can
/// have several maximizers and still be of Weyl type).
bool weyl_necessary_condition(const SizeReport& report);

}  // namespace reslab
