#pragma once

#include <map>
#include <vector>

#include "reslab/exppoly.hpp"
#include "reslab/geometry.hpp"

namespace reslab {

/// Directed edge of the complete digraph on the points, 0-based vertices.
/// length is the Euclidean distance between the endpoints; the structural
/// enumeration (no configuration at hand) leaves it 0.
struct Bond {
    int from = 0;
    int to = 0;
    double length = 0.0;
};

/// Closed chain of bonds visiting pairwise distinct vertices, k >= 2.
struct PeriodicOrbit {
    std::vector<Bond> bonds;
};

/// A set of vertex-disjoint periodic orbits (irreducible: no bond repeats).
struct PseudoOrbit {
    std::vector<PeriodicOrbit> orbits;

    int orbit_count() const { return static_cast<int>(orbits.size()); }
    int bond_count() const;
    double total_length() const;
};

/// Cycle decomposition of pi with fixed points dropped.  Each cycle
/// (v1,...,vk), written with its smallest vertex first, becomes the orbit
/// v1 -> v2 -> ... -> vk -> v1; orbits ordered by first vertex.
PseudoOrbit permutation_to_pseudo_orbit(const std::vector<int>& pi);
PseudoOrbit permutation_to_pseudo_orbit(const std::vector<int>& pi, const DistanceMatrix& dm);

/// All irreducible pseudo-orbits on n vertices, bucketed by bond count.
/// Generated from permutations, so the correspondence with Pi_n is
/// structural.  The PointConfig overload fills in bond lengths.
std::map<int, std::vector<PseudoOrbit>> enumerate_irreducible(int n);
std::map<int, std::vector<PseudoOrbit>> enumerate_irreducible(const PointConfig& config);

/// Product over bonds of -e^{i kappa |b|}/(4 pi |b|); 1 for the empty set.
Complex b_gamma(const PseudoOrbit& orbit_set, Complex kappa);

/// The resonance condition through the pseudo-orbit expansion:
///   (-1)^N sum_n sum_{gamma in O_n} (-1)^{orbit count} B_gamma(kappa)
///          (i kappa/4pi - alpha)^{N-n}.
/// Agrees with evaluate(from_determinant(config), kappa) identically.
Complex resonance_condition_pseudo(const PointConfig& config, double alpha, Complex kappa);
Complex resonance_condition_pseudo(const PointConfig& config, Complex kappa);

/// Scaled variant plus the expansion's own L1 mass, for equality tests at
/// points where both sides are astronomically large.
ScaledValue resonance_condition_pseudo_scaled(const PointConfig& config, Complex kappa,
                                              double* log_mass = nullptr);

/// (-1)^{N + m(pi)} with m(pi) the cycle count including fixed points;
/// equals the standard inversion parity.
int sign_of_permutation(const std::vector<int>& pi);

}  // namespace reslab
