#pragma once

#include <array>
#include <vector>

#include "reslab/errors.hpp"

namespace reslab {

using Vec3 = std::array<double, 3>;

/// N labeled points in R^3 plus the common interaction strength alpha.
/// Immutable after construction; validated by make_config.
struct PointConfig {
    std::vector<Vec3> points;
    double alpha = 0.0;

    int size() const { return static_cast<int>(points.size()); }
};

/// Validates N >= 2 and pairwise-distinct points; throws ValidationError.
PointConfig make_config(std::vector<Vec3> points, double alpha);

/// Same geometry, different strength.
PointConfig with_alpha(PointConfig config, double alpha);

double distance(const Vec3& a, const Vec3& b);

/// Dense symmetric matrix of pairwise distances, zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n, 0.0) {}

    double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
    double& operator()(int i, int j) { return d_[static_cast<size_t>(i) * n_ + j]; }
    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<double> d_;
};

DistanceMatrix distance_matrix(const PointConfig& config);

/// Pairwise distances clustered into equivalence classes, so that equalities
/// forced by symmetry become exact integer bookkeeping instead of
/// floating-point coincidences.
struct LengthAlphabet {
    std::vector<double> classes;  // representative lengths, ascending
    std::vector<int> pair_class;  // n*n entries, class id per pair, -1 on diagonal
    double tolerance = 1e-9;
    int n = 0;

    int class_of(int i, int j) const { return pair_class[static_cast<size_t>(i) * n + j]; }
    int class_count() const { return static_cast<int>(classes.size()); }

    /// Per-class counts of the pair lengths used by permutation pi
    /// (fixed points contribute nothing).
    std::vector<int> class_vector(const std::vector<int>& pi) const;
    void class_vector_into(const std::vector<int>& pi, std::vector<int>& counts) const;

    /// Canonical numeric total of a class-count vector: sum of
    /// count*representative in ascending class order.  Every total in the
    /// library funnels through this one summation path.
    double vector_total(const std::vector<int>& counts) const;
};

/// Deterministic greedy clustering over the sorted distance list.
/// tol is relative and must lie in (0, 1e-3].
LengthAlphabet build_length_alphabet(const PointConfig& config, double tol = 1e-9);

/// 2m points on the unit sphere, point m+k diametrically opposite point k.
PointConfig build_antipodal_sphere_config(int m, double alpha);

/// The antipodal configuration plus the sphere center, N = 2m+1.
PointConfig build_sphere_center_config(int m, double alpha);

/// Four-point configuration (0,0,0), (a,-b,0), (a,b,0), (c,0,0) with the
/// smallness constraint 2b + c < sqrt(a^2+b^2) + sqrt((a-c)^2+b^2).
PointConfig build_nonweyl4(double a, double b, double c, double alpha);

}  // namespace reslab
