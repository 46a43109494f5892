#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reslab/geometry.hpp"

namespace reslab {

inline constexpr std::uint64_t kDefaultVerifySeed = 424242;

struct VerifyCheck {
    std::string name;
    bool passed = false;
    /// Worst residual seen by this check, in the check's own scale.
    double residual = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    std::uint64_t seed = 0;
    double v_x = 0.0;
    double w_x = 0.0;
    /// True when the effective size falls short of the size.
    bool non_weyl = false;

    bool all_passed() const {
        for (const VerifyCheck& c : checks) {
            if (!c.passed) return false;
        }
        return !checks.empty();
    }
};

/// Cross-checks every independent route on one configuration (N <= 7):
///   1. determinant vs exponential polynomial vs pseudo-orbit expansion at
///      100 seeded random kappa in [-50,50]^2,
///   2. symbolic W_X vs the growth-rate estimate,
///   3. disc count vs located multiplicity sum in D_20,
///   4. alpha-independence of W_X over {-1, 0, 1, 10}.
VerifyReport verify_config(const PointConfig& config, std::uint64_t seed = kDefaultVerifySeed);

}  // namespace reslab
