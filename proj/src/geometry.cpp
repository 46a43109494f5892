#include "reslab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace reslab {

double distance(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

PointConfig make_config(std::vector<Vec3> points, double alpha) {
    if (points.size() < 2) {
        throw ValidationError("configuration needs at least 2 points, got " +
                              std::to_string(points.size()));
    }
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = i + 1; j < points.size(); ++j) {
            if (distance(points[i], points[j]) <= 0.0) {
                throw ValidationError("degenerate configuration: points " + std::to_string(i + 1) +
                                      " and " + std::to_string(j + 1) + " coincide");
            }
        }
    }
    if (!std::isfinite(alpha)) {
        throw ValidationError("alpha must be finite");
    }
    return PointConfig{std::move(points), alpha};
}

PointConfig with_alpha(PointConfig config, double alpha) {
    if (!std::isfinite(alpha)) {
        throw ValidationError("alpha must be finite");
    }
    config.alpha = alpha;
    return config;
}

DistanceMatrix distance_matrix(const PointConfig& config) {
    const int n = config.size();
    DistanceMatrix d(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double l = distance(config.points[i], config.points[j]);
            d(i, j) = l;
            d(j, i) = l;
        }
    }
    return d;
}

LengthAlphabet build_length_alphabet(const PointConfig& config, double tol) {
    if (!(tol > 0.0) || tol > 1e-3) {
        throw ValidationError("clustering tolerance must lie in (0, 1e-3]");
    }
    const int n = config.size();
    const DistanceMatrix d = distance_matrix(config);

    std::vector<double> lengths;
    lengths.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            lengths.push_back(d(i, j));
        }
    }
    std::sort(lengths.begin(), lengths.end());

    // Greedy ascending merge; a class is anchored at its smallest member so
    // chains cannot drift beyond tol.
    LengthAlphabet ab;
    ab.tolerance = tol;
    ab.n = n;
    std::vector<double> anchors;
    for (const double l : lengths) {
        if (anchors.empty() || (l - anchors.back()) / anchors.back() > tol) {
            anchors.push_back(l);
        }
    }
    ab.classes = anchors;

    ab.pair_class.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double l = d(i, j);
            // classes are >= tol apart, so the nearest anchor is the class
            const auto it = std::upper_bound(anchors.begin(), anchors.end(), l);
            int c = static_cast<int>(it - anchors.begin()) - 1;
            if (c < 0) c = 0;
            if (c + 1 < static_cast<int>(anchors.size()) &&
                std::abs(anchors[c + 1] - l) < std::abs(l - anchors[c])) {
                ++c;
            }
            ab.pair_class[static_cast<size_t>(i) * n + j] = c;
        }
    }
    return ab;
}

void LengthAlphabet::class_vector_into(const std::vector<int>& pi, std::vector<int>& counts) const {
    counts.assign(classes.size(), 0);
    for (int i = 0; i < n; ++i) {
        if (pi[i] != i) {
            ++counts[class_of(i, pi[i])];
        }
    }
}

std::vector<int> LengthAlphabet::class_vector(const std::vector<int>& pi) const {
    std::vector<int> counts;
    class_vector_into(pi, counts);
    return counts;
}

double LengthAlphabet::vector_total(const std::vector<int>& counts) const {
    double total = 0.0;
    for (size_t c = 0; c < counts.size(); ++c) {
        total += counts[c] * classes[c];
    }
    return total;
}

PointConfig build_antipodal_sphere_config(int m, double alpha) {
    if (m < 1) {
        throw ValidationError("antipodal sphere builder needs m >= 1");
    }
    // Latitudes advance by pi/(4m) from the equator, longitudes by
    // 2*pi/(2m+1); no two of the first m points are equal or antipodal.
    const double delta = std::numbers::pi / (4.0 * m);
    const double phi_step = 2.0 * std::numbers::pi / (2.0 * m + 1.0);
    std::vector<Vec3> pts(static_cast<size_t>(2) * m);
    for (int k = 0; k < m; ++k) {
        const double theta = std::numbers::pi / 2.0 + k * delta;
        const double phi = k * phi_step;
        const Vec3 x{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                     std::cos(theta)};
        pts[k] = x;
        pts[static_cast<size_t>(m) + k] = Vec3{-x[0], -x[1], -x[2]};
    }
    return make_config(std::move(pts), alpha);
}

PointConfig build_sphere_center_config(int m, double alpha) {
    PointConfig even = build_antipodal_sphere_config(m, alpha);
    even.points.push_back(Vec3{0.0, 0.0, 0.0});
    return make_config(std::move(even.points), alpha);
}

PointConfig build_nonweyl4(double a, double b, double c, double alpha) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
        throw ValidationError("nonweyl4 builder needs a, b, c > 0");
    }
    const double lhs = 2.0 * b + c;
    const double rhs = std::sqrt(a * a + b * b) + std::sqrt((a - c) * (a - c) + b * b);
    if (!(lhs < rhs)) {
        throw ValidationError("nonweyl4 smallness constraint violated: 2b + c = " +
                              std::to_string(lhs) + " must be < sqrt(a^2+b^2) + sqrt((a-c)^2+b^2) = " +
                              std::to_string(rhs));
    }
    std::vector<Vec3> pts{
        Vec3{0.0, 0.0, 0.0},
        Vec3{a, -b, 0.0},
        Vec3{a, b, 0.0},
        Vec3{c, 0.0, 0.0},
    };
    return make_config(std::move(pts), alpha);
}

}  // namespace reslab
