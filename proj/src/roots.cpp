#include "reslab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "reslab/errors.hpp"

namespace reslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// |F| this far below the L1 mass of its terms counts as "on the contour".
constexpr double kOnContourRel = 1e-13;
// Largest accepted phase step between consecutive contour samples.
constexpr double kMaxPhaseStep = 0.25 * std::numbers::pi;
constexpr int kMaxBisectDepth = 48;
// Newton residual acceptance, relative to the L1 mass at the iterate.
constexpr double kResidualRel = 1e-9;

struct Probe {
    double phase = 0.0;
    double rel = 0.0;  // |F| / (L1 mass of terms), in [0, 1]
};

Probe probe_at(const ExpPolynomial& f, Complex kappa) {
    double log_mass = 0.0;
    const ScaledValue v = evaluate_scaled(f, kappa, &log_mass);
    Probe p;
    const double magnitude = std::abs(v.value);
    if (magnitude == 0.0 || !std::isfinite(log_mass)) {
        p.rel = 0.0;
        p.phase = 0.0;
        return p;
    }
    p.rel = std::exp(std::log(magnitude) + v.log_scale - log_mass);
    p.phase = std::arg(v.value);
    return p;
}

double wrap_phase(double d) {
    while (d > std::numbers::pi) d -= kTwoPi;
    while (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

class PhaseTracker {
public:
    PhaseTracker(const ExpPolynomial& f, std::function<Complex(double)> curve)
        : f_(f), curve_(std::move(curve)) {}

    // Total continuous phase change of F along curve(t), t in [0, 1].
    double total_change(int initial_samples) {
        std::vector<double> ts(static_cast<size_t>(initial_samples) + 1);
        std::vector<Probe> probes(ts.size());
        for (size_t i = 0; i < ts.size(); ++i) {
            ts[i] = static_cast<double>(i) / static_cast<double>(initial_samples);
            probes[i] = sample(ts[i]);
        }
        double total = 0.0;
        for (size_t i = 0; i + 1 < ts.size(); ++i) {
            total += segment(ts[i], probes[i], ts[i + 1], probes[i + 1], 0);
        }
        return total;
    }

private:
    Probe sample(double t) const {
        const Probe p = probe_at(f_, curve_(t));
        if (p.rel < kOnContourRel) {
            throw ContourError("zero on integration contour (|F| / mass = " +
                               std::to_string(p.rel) + ")");
        }
        return p;
    }

    double segment(double t0, const Probe& p0, double t1, const Probe& p1, int depth) const {
        const double d = wrap_phase(p1.phase - p0.phase);
        // A near-2pi phase jump between samples wraps to a deceptively small
        // step, so small steps are only trusted after two verified halvings.
        if (depth >= 2 && std::abs(d) < kMaxPhaseStep) return d;
        if (depth >= kMaxBisectDepth) {
            throw ContourError("phase tracking did not resolve; zero hugging the contour?");
        }
        const double tm = 0.5 * (t0 + t1);
        const Probe pm = sample(tm);
        return segment(t0, p0, tm, pm, depth + 1) + segment(tm, pm, t1, p1, depth + 1);
    }

    const ExpPolynomial& f_;
    std::function<Complex(double)> curve_;
};

int coefficient_degree(const ExpPolynomial& f) {
    int degree = 0;
    for (const ExpTerm& term : f.terms) degree = std::max(degree, term.coeff.degree());
    return degree;
}

double sigma_span(const ExpPolynomial& f) {
    if (f.terms.empty()) return 0.0;
    return f.terms.back().sigma - f.terms.front().sigma;
}

int winding_from_total(double total, const char* where) {
    const double turns = total / kTwoPi;
    const int w = static_cast<int>(std::lround(turns));
    if (std::abs(total - kTwoPi * w) > 0.5) {
        throw NumericError(std::string(where) +
                           ": accumulated phase is not a whole number of turns (" +
                           std::to_string(turns) + ")");
    }
    if (w < 0) {
        throw NumericError(std::string(where) + ": negative winding number " +
                           std::to_string(w));
    }
    return w;
}

// Enough initial samples to keep typical phase steps well under pi/2:
// along a contour of extent L the exponentials contribute about
// sigma_span * L to the total phase variation.
int initial_samples_for(const ExpPolynomial& f, double extent) {
    const double variation = sigma_span(f) * extent + kTwoPi * (coefficient_degree(f) + 1);
    const int n = static_cast<int>(std::ceil(variation / (0.25 * std::numbers::pi)));
    return std::clamp(n, 64, 4000000);
}

}  // namespace

int winding_number_circle(const ExpPolynomial& f, Complex center, double radius) {
    PhaseTracker tracker(f, [center, radius](double t) {
        const double theta = kTwoPi * t;
        return center + radius * Complex(std::cos(theta), std::sin(theta));
    });
    const double total = tracker.total_change(initial_samples_for(f, 4.0 * radius));
    return winding_from_total(total, "winding_number_circle");
}

int winding_number_rect(const ExpPolynomial& f, const Rect& rect) {
    if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0)) {
        throw ValidationError("winding_number_rect: empty rectangle");
    }
    const Complex c00(rect.x0, rect.y0);
    const Complex c10(rect.x1, rect.y0);
    const Complex c11(rect.x1, rect.y1);
    const Complex c01(rect.x0, rect.y1);
    PhaseTracker tracker(f, [&](double t) {
        const double s = 4.0 * t;
        if (s < 1.0) return c00 + s * (c10 - c00);
        if (s < 2.0) return c10 + (s - 1.0) * (c11 - c10);
        if (s < 3.0) return c11 + (s - 2.0) * (c01 - c11);
        return c01 + std::min(s - 3.0, 1.0) * (c00 - c01);
    });
    const double perimeter = 2.0 * (rect.width() + rect.height());
    // Round up to a multiple of 4 so every corner is an initial sample.
    int n = initial_samples_for(f, perimeter);
    n += (4 - n % 4) % 4;
    const double total = tracker.total_change(n);
    return winding_from_total(total, "winding_number_rect");
}

DiscCount count_zeros_disc_detail(const ExpPolynomial& f, double alpha, double radius) {
    if (alpha != f.alpha) {
        throw ValidationError("count_zeros_disc: polynomial was built for alpha = " +
                              std::to_string(f.alpha));
    }
    if (!(radius > 0.0)) throw ValidationError("count_zeros_disc: radius must be positive");
    double r = radius;
    for (int attempt = 0; attempt <= 5; ++attempt) {
        try {
            return DiscCount{winding_number_circle(f, Complex(0.0, 0.0), r), r};
        } catch (const ContourError&) {
            if (attempt == 5) throw;
            r *= 1.0 + 1e-4;
        }
    }
    throw ContourError("count_zeros_disc: unreachable");
}

int count_zeros_disc(const ExpPolynomial& f, double alpha, double radius) {
    return count_zeros_disc_detail(f, alpha, radius).count;
}

namespace {

struct NewtonResult {
    Complex kappa{0.0, 0.0};
    bool converged = false;
};

double relative_residual(const ScaledValue& v, double log_mass) {
    const double magnitude = std::abs(v.value);
    if (magnitude == 0.0 || !std::isfinite(log_mass)) return 0.0;
    return magnitude * std::exp(v.log_scale - log_mass);
}

// Once the residual threshold is met the iterate can still sit a few
// residual-widths from the zero, wider than the multiplicity circle.  A few
// undamped corrections tighten it to roundoff at negligible cost.
NewtonResult accept_refined(const ExpPolynomial& f, Complex kappa) {
    double prev_step = std::numeric_limits<double>::infinity();
    for (int extra = 0; extra < 4; ++extra) {
        const ScaledValue v = evaluate_scaled(f, kappa);
        if (std::abs(v.value) == 0.0) break;
        const ScaledValue d = evaluate_derivative_scaled(f, kappa);
        if (d.value == Complex(0.0, 0.0)) break;
        const Complex step = (v.value / d.value) * std::exp(v.log_scale - d.log_scale);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        const double len = std::abs(step);
        if (!(len < prev_step)) break;
        kappa -= step;
        prev_step = len;
    }
    NewtonResult result;
    result.kappa = kappa;
    result.converged = true;
    return result;
}

NewtonResult newton_polish(const ExpPolynomial& f, Complex start, double tol) {
    NewtonResult result;
    Complex kappa = start;
    double log_mass = 0.0;
    ScaledValue v = evaluate_scaled(f, kappa, &log_mass);
    double rel = relative_residual(v, log_mass);
    for (int iter = 0; iter < 60; ++iter) {
        if (rel <= kResidualRel) {
            return accept_refined(f, kappa);
        }
        const ScaledValue d = evaluate_derivative_scaled(f, kappa);
        if (d.value == Complex(0.0, 0.0)) return result;
        const Complex step = (v.value / d.value) * std::exp(v.log_scale - d.log_scale);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return result;

        double lambda = 1.0;
        Complex next = kappa;
        double next_rel = rel;
        double next_mass = log_mass;
        ScaledValue next_v = v;
        bool improved = false;
        for (int halving = 0; halving < 9; ++halving) {
            const Complex candidate = kappa - lambda * step;
            double candidate_mass = 0.0;
            const ScaledValue cv = evaluate_scaled(f, candidate, &candidate_mass);
            const double candidate_rel = relative_residual(cv, candidate_mass);
            if (candidate_rel < rel) {
                next = candidate;
                next_v = cv;
                next_rel = candidate_rel;
                next_mass = candidate_mass;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) return result;

        const bool small_step =
            std::abs(lambda * step) <= tol * std::max(1.0, std::abs(next));
        kappa = next;
        v = next_v;
        rel = next_rel;
        log_mass = next_mass;
        if (small_step && rel <= std::sqrt(kResidualRel)) {
            // Step stagnated at roundoff scale; the residual test alone can
            // be unreachable when cancellation floors above 1e-9 * mass.
            result.kappa = kappa;
            result.converged = true;
            return result;
        }
    }
    if (rel <= kResidualRel) {
        return accept_refined(f, kappa);
    }
    return result;
}

int circle_multiplicity(const ExpPolynomial& f, Complex center, double radius) {
    double r = radius;
    for (int attempt = 0; attempt < 5; ++attempt) {
        try {
            return winding_number_circle(f, center, r);
        } catch (const ContourError&) {
            r *= 1.5;
        }
    }
    return -1;
}

class ZeroLocator {
public:
    ZeroLocator(const ExpPolynomial& f, double tol) : f_(f), tol_(tol) {}

    std::vector<Zero> run(const Rect& region) {
        const int top = winding_number_rect(f_, region);
        if (top > 0) subdivide(region, top, 0);
        std::sort(zeros_.begin(), zeros_.end(), [](const Zero& a, const Zero& b) {
            if (a.kappa.real() != b.kappa.real()) return a.kappa.real() < b.kappa.real();
            return a.kappa.imag() < b.kappa.imag();
        });
        int located = 0;
        for (const Zero& z : zeros_) located += z.multiplicity;
        if (located != top) {
            throw NumericError("locate_zeros: located multiplicity " + std::to_string(located) +
                               " does not match the region winding number " +
                               std::to_string(top));
        }
        return zeros_;
    }

private:
    static double diameter(const Rect& r) { return std::hypot(r.width(), r.height()); }

    void emit(Complex kappa, int multiplicity, bool polished, double uncertainty) {
        Zero z;
        z.kappa = kappa;
        z.multiplicity = multiplicity;
        z.kind = classify_zero(kappa);
        z.polished = polished;
        z.uncertainty = uncertainty;
        zeros_.push_back(z);
    }

    void subdivide(const Rect& rect, int w, int depth) {
        if (w == 0) return;
        // Cuts halve one side at a time, so reaching a floor of tol from a
        // unit box takes about 2*log2(1/tol) levels.
        if (depth > 160) {
            throw NumericError("locate_zeros: subdivision depth exceeded");
        }
        const double diam = diameter(rect);

        if (diam <= 2.0) {
            const NewtonResult polished = newton_polish(f_, rect.center(), tol_);
            if (polished.converged && contains(rect, polished.kappa, 0.05 * diam)) {
                const double circle_r = 10.0 * tol_;
                const int mult = circle_multiplicity(f_, polished.kappa, circle_r);
                if (mult == w) {
                    emit(polished.kappa, w, true, std::max(tol_, circle_r));
                    return;
                }
                // mult < w: the box holds zeros beyond the polished cluster;
                // keep splitting.  Persistent mismatch bottoms out at the
                // floor below.
            }
            const double floor =
                std::max(tol_ * std::max(1.0, std::abs(rect.center())), 1e-14);
            if (diam <= floor) {
                emit(rect.center(), w, false, 0.5 * diam);
                return;
            }
        }

        static constexpr double kCutFractions[] = {0.5, 0.55, 0.45, 0.6, 0.4};
        const bool split_horizontal = rect.width() >= rect.height();
        for (const double fraction : kCutFractions) {
            Rect a = rect;
            Rect b = rect;
            if (split_horizontal) {
                const double cut = rect.x0 + fraction * rect.width();
                a.x1 = cut;
                b.x0 = cut;
            } else {
                const double cut = rect.y0 + fraction * rect.height();
                a.y1 = cut;
                b.y0 = cut;
            }
            int wa = 0;
            int wb = 0;
            try {
                wa = winding_number_rect(f_, a);
                wb = winding_number_rect(f_, b);
            } catch (const ContourError&) {
                continue;  // zero on the cut; try the next fraction
            }
            if (wa + wb != w) continue;
            subdivide(a, wa, depth + 1);
            subdivide(b, wb, depth + 1);
            return;
        }
        throw NumericError("locate_zeros: every candidate cut hits a zero near (" +
                           std::to_string(rect.center().real()) + ", " +
                           std::to_string(rect.center().imag()) + ")");
    }

    static bool contains(const Rect& r, Complex z, double margin) {
        return z.real() >= r.x0 - margin && z.real() <= r.x1 + margin &&
               z.imag() >= r.y0 - margin && z.imag() <= r.y1 + margin;
    }

    const ExpPolynomial& f_;
    double tol_;
    std::vector<Zero> zeros_;
};

}  // namespace

std::vector<Zero> locate_zeros(const ExpPolynomial& f, double alpha, const Rect& region,
                               double tol) {
    if (alpha != f.alpha) {
        throw ValidationError("locate_zeros: polynomial was built for alpha = " +
                              std::to_string(f.alpha));
    }
    if (!(tol >= 1e-12)) throw ValidationError("locate_zeros: tol must be at least 1e-12");
    if (!(region.x1 > region.x0) || !(region.y1 > region.y0)) {
        throw ValidationError("locate_zeros: region is empty");
    }
    ZeroLocator locator(f, tol);
    return locator.run(region);
}

CountingCurve counting_curve(const ExpPolynomial& f, double alpha, double r_max, int steps) {
    if (alpha != f.alpha) {
        throw ValidationError("counting_curve: polynomial was built for alpha = " +
                              std::to_string(f.alpha));
    }
    if (steps < 10) throw ValidationError("counting_curve: steps must be at least 10");
    if (!(r_max > 0.0)) throw ValidationError("counting_curve: R_max must be positive");
    const double w_x = effective_size(f);
    if (w_x > 0.0 && r_max < 20.0 * (kTwoPi / w_x)) {
        throw ValidationError("counting_curve: R_max below 20*(2pi/W_X) = " +
                              std::to_string(20.0 * kTwoPi / w_x) +
                              "; too few zeros for a stable fit");
    }

    CountingCurve curve;
    curve.samples.reserve(static_cast<size_t>(steps));
    for (int i = 1; i <= steps; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(steps);
        const DiscCount dc = count_zeros_disc_detail(f, alpha, r);
        curve.samples.push_back(CurveSample{dc.radius, dc.count});
    }

    if (w_x == 0.0) {
        // A pure polynomial: counts saturate at the polynomial degree.
        curve.slope = 0.0;
        curve.intercept = static_cast<double>(curve.samples.back().count);
        curve.fit_residual = 0.0;
        return curve;
    }

    const size_t first = static_cast<size_t>(steps) / 2;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const double n = static_cast<double>(curve.samples.size() - first);
    for (size_t i = first; i < curve.samples.size(); ++i) {
        const double x = curve.samples[i].radius;
        const double y = static_cast<double>(curve.samples[i].count);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    curve.slope = (n * sxy - sx * sy) / denom;
    curve.intercept = (sy - curve.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = first; i < curve.samples.size(); ++i) {
        const double err = static_cast<double>(curve.samples[i].count) -
                           (curve.slope * curve.samples[i].radius + curve.intercept);
        ss += err * err;
    }
    curve.fit_residual = std::sqrt(ss / n);
    return curve;
}

ZeroKind classify_zero(Complex kappa, double eps) {
    if (kappa.imag() > eps) return ZeroKind::eigenvalue;
    if (kappa.imag() < -eps) return ZeroKind::resonance;
    return ZeroKind::real_axis;
}

ZeroKind classify_zero(const Zero& z, double eps) { return classify_zero(z.kappa, eps); }

}  // namespace reslab
