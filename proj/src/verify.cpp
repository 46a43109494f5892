#include "reslab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reslab/errors.hpp"
#include "reslab/exppoly.hpp"
#include "reslab/pseudoorbit.hpp"
#include "reslab/rng.hpp"
#include "reslab/roots.hpp"
#include "reslab/sizecalc.hpp"

namespace reslab {

namespace {

// |a - b| e^{-log_mass} without leaving scaled space.
double scaled_difference(const ScaledValue& a, const ScaledValue& b, double log_mass) {
    const double peak = std::max(a.log_scale, b.log_scale);
    const Complex diff =
        a.value * std::exp(a.log_scale - peak) - b.value * std::exp(b.log_scale - peak);
    const double magnitude = std::abs(diff);
    if (magnitude == 0.0) return 0.0;
    return std::exp(std::log(magnitude) + peak - log_mass);
}

}  // namespace

VerifyReport verify_config(const PointConfig& config, std::uint64_t seed) {
    if (config.size() > 7) {
        throw ValidationError("verify: N <= 7 (every oracle runs, including N! expansions)");
    }

    VerifyReport report;
    report.seed = seed;

    const LengthAlphabet alphabet = build_length_alphabet(config);
    const ExpPolynomial f = from_determinant(config, alphabet);
    const SizeReport size = size_bruteforce(config, alphabet);
    report.v_x = size.v_x;
    report.w_x = effective_size(f);
    report.non_weyl = report.w_x < report.v_x * (1.0 - alphabet.tolerance);

    {
        VerifyCheck check;
        check.name = "determinant-vs-exppoly-vs-pseudo-orbit";
        Rng rng(seed);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Complex kappa(rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0));
            double mass_poly = 0.0;
            double mass_pseudo = 0.0;
            const ScaledValue via_poly = evaluate_scaled(f, kappa, &mass_poly);
            const ScaledValue via_pseudo =
                resonance_condition_pseudo_scaled(config, kappa, &mass_pseudo);
            const ScaledValue via_det = determinant_scaled(config, kappa);
            const double log_mass = std::max(mass_poly, mass_pseudo);
            worst = std::max(worst, scaled_difference(via_poly, via_pseudo, log_mass));
            worst = std::max(worst, scaled_difference(via_poly, via_det, log_mass));
            worst = std::max(worst, scaled_difference(via_pseudo, via_det, log_mass));
        }
        check.residual = worst;
        check.passed = worst <= 1e-12;
        check.detail = "100 random kappa in [-50,50]^2, pairwise, relative to L1 mass";
        report.checks.push_back(check);
    }

    {
        VerifyCheck check;
        check.name = "symbolic-vs-growth-effective-size";
        const GrowthEstimate growth = effective_size_growth_estimate(config, config.alpha);
        check.residual = std::abs(report.w_x - growth.w_x);
        check.passed = check.residual <= 1e-3;
        check.detail = "growth estimate " + std::to_string(growth.w_x) + " at t_max " +
                       std::to_string(growth.t_max_used);
        report.checks.push_back(check);
    }

    {
        VerifyCheck check;
        check.name = "count-vs-locate-D20";
        const DiscCount dc = count_zeros_disc_detail(f, config.alpha, 20.0);
        double half = dc.radius * 1.05;
        std::vector<Zero> zeros;
        for (int attempt = 0;; ++attempt) {
            try {
                zeros = locate_zeros(f, config.alpha, Rect{-half, half, -half, half});
                break;
            } catch (const ContourError&) {
                if (attempt == 3) throw;
                half *= 1.01;
            }
        }
        int inside = 0;
        for (const Zero& z : zeros) {
            if (std::abs(z.kappa) < dc.radius) inside += z.multiplicity;
        }
        check.residual = std::abs(static_cast<double>(inside - dc.count));
        check.passed = inside == dc.count;
        check.detail = "disc count " + std::to_string(dc.count) + " at radius " +
                       std::to_string(dc.radius) + ", located " + std::to_string(inside);
        report.checks.push_back(check);
    }

    {
        VerifyCheck check;
        check.name = "alpha-independence-of-W";
        double worst = 0.0;
        bool same_class = true;
        for (const double alpha : {-1.0, 0.0, 1.0, 10.0}) {
            const ExpPolynomial g = from_determinant(with_alpha(config, alpha), alphabet);
            worst = std::max(worst, std::abs(effective_size(g) - report.w_x));
            if (g.terms.back().sigma_class != f.terms.back().sigma_class) same_class = false;
        }
        check.residual = worst;
        check.passed = worst == 0.0 && same_class;
        check.detail = "alpha in {-1, 0, 1, 10}, exact W and top sigma_class identity";
        report.checks.push_back(check);
    }

    return report;
}

}  // namespace reslab
