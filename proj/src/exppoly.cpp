#include "reslab/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "reslab/errors.hpp"
#include "reslab/parallel.hpp"
#include "reslab/permutations.hpp"

namespace reslab {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
// Coefficient survives pruning only above this fraction of the L1 mass of
// the contributions that formed it; exact algebraic cancellation lands at
// ~1e-16 and stays clearly below.
constexpr double kCancelThreshold = 1e-10;

struct TermAccum {
    std::vector<Complex> coeff;  // per power of kappa
    std::vector<double> mass;    // accumulated |contribution| per power
};

using AccumMap = std::map<std::vector<int>, TermAccum>;

int cycle_count(const std::vector<int>& pi, std::vector<char>& visited) {
    const int n = static_cast<int>(pi.size());
    visited.assign(static_cast<size_t>(n), 0);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (visited[static_cast<size_t>(i)]) continue;
        ++cycles;
        int j = i;
        while (!visited[static_cast<size_t>(j)]) {
            visited[static_cast<size_t>(j)] = 1;
            j = pi[static_cast<size_t>(j)];
        }
    }
    return cycles;
}

std::vector<std::vector<double>> binomial_table(int n) {
    std::vector<std::vector<double>> binom(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        binom[static_cast<size_t>(k)].assign(static_cast<size_t>(k) + 1, 1.0);
        for (int j = 1; j < k; ++j) {
            binom[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                binom[static_cast<size_t>(k) - 1][static_cast<size_t>(j) - 1] +
                binom[static_cast<size_t>(k) - 1][static_cast<size_t>(j)];
        }
    }
    return binom;
}

// e^{i x} without going through a complex exponential.
Complex cis(double x) { return Complex(std::cos(x), std::sin(x)); }

}  // namespace

Complex CoeffPolynomial::eval(Complex kappa) const {
    Complex acc(0.0, 0.0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * kappa + *it;
    }
    return acc;
}

CoeffPolynomial CoeffPolynomial::derivative() const {
    CoeffPolynomial d;
    for (size_t j = 1; j < coefficients.size(); ++j) {
        d.coefficients.push_back(static_cast<double>(j) * coefficients[j]);
    }
    return d;
}

Complex matrix_entry(const PointConfig& config, int n, int nprime, Complex kappa) {
    if (n == nprime) {
        return Complex(config.alpha, 0.0) - Complex(0.0, 1.0) * kappa / kFourPi;
    }
    const double l = distance(config.points[static_cast<size_t>(n)],
                              config.points[static_cast<size_t>(nprime)]);
    return -std::exp(Complex(0.0, l) * kappa) / (kFourPi * l);
}

namespace {

// Extended precision inside the determinant oracle keeps its own roundoff
// well below the comparison tolerance of the series evaluators.
using LComplex = std::complex<long double>;

// Partial-pivot LU; returns the diagonal product in scaled form.
ScaledValue lu_determinant(std::vector<LComplex>& a, int n) {
    long double sign = 1.0L;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        long double best = std::abs(a[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const long double cand = std::abs(a[static_cast<size_t>(i) * n + k]);
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best == 0.0L) return ScaledValue{Complex(0.0, 0.0), 0.0};
        if (pivot != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(pivot) * n + j]);
            }
            sign = -sign;
        }
        const LComplex inv_pivot = 1.0L / a[static_cast<size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const LComplex factor = a[static_cast<size_t>(i) * n + k] * inv_pivot;
            if (factor == LComplex(0.0L, 0.0L)) continue;
            for (int j = k + 1; j < n; ++j) {
                a[static_cast<size_t>(i) * n + j] -= factor * a[static_cast<size_t>(k) * n + j];
            }
        }
    }
    LComplex phase{sign, 0.0L};
    long double log_scale = 0.0L;
    for (int k = 0; k < n; ++k) {
        const LComplex d = a[static_cast<size_t>(k) * n + k];
        const long double m = std::abs(d);
        phase *= d / m;
        log_scale += std::log(m);
    }
    ScaledValue det;
    det.value = Complex(static_cast<double>(phase.real()), static_cast<double>(phase.imag()));
    det.log_scale = static_cast<double>(log_scale);
    return det;
}

LComplex matrix_entry_ld(const PointConfig& config, int n, int nprime, LComplex kappa) {
    constexpr long double four_pi = 4.0L * std::numbers::pi_v<long double>;
    if (n == nprime) {
        return LComplex(static_cast<long double>(config.alpha), 0.0L) -
               LComplex(0.0L, 1.0L) * kappa / four_pi;
    }
    const long double l = static_cast<long double>(
        distance(config.points[static_cast<size_t>(n)], config.points[static_cast<size_t>(nprime)]));
    return -std::exp(LComplex(0.0L, l) * kappa) / (four_pi * l);
}

}  // namespace

ScaledValue determinant_scaled(const PointConfig& config, Complex kappa) {
    const int n = config.size();
    const LComplex kappa_ld(static_cast<long double>(kappa.real()),
                            static_cast<long double>(kappa.imag()));
    std::vector<LComplex> a(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(i) * n + j] = matrix_entry_ld(config, i, j, kappa_ld);
        }
    }
    return lu_determinant(a, n);
}

Complex determinant_value(const PointConfig& config, Complex kappa) {
    return determinant_scaled(config, kappa).collapse();
}

ExpPolynomial from_determinant(const PointConfig& config, const LengthAlphabet& alphabet) {
    const int n = config.size();
    check_enumeration_cap(n, "from_determinant");

    const double alpha = config.alpha;
    const auto binom = binomial_table(n);
    std::vector<double> alpha_pow(static_cast<size_t>(n) + 1, 1.0);
    std::vector<Complex> mi4pi_pow(static_cast<size_t>(n) + 1, Complex(1.0, 0.0));
    for (int j = 1; j <= n; ++j) {
        alpha_pow[static_cast<size_t>(j)] = alpha_pow[static_cast<size_t>(j) - 1] * alpha;
        mi4pi_pow[static_cast<size_t>(j)] =
            mi4pi_pow[static_cast<size_t>(j) - 1] * Complex(0.0, -1.0 / kFourPi);
    }

    std::vector<AccumMap> block_maps(static_cast<size_t>(n));
    parallel_blocks(n, [&](int block) {
        AccumMap& acc_map = block_maps[static_cast<size_t>(block)];
        std::vector<int> counts;
        std::vector<int> bond_classes;
        std::vector<char> visited;
        for_each_permutation_in_block(n, block, [&](const std::vector<int>& pi) {
            alphabet.class_vector_into(pi, counts);

            // Denominator over length-class representatives, in sorted class
            // order: permutations sharing a class vector get the identical
            // product, which is what makes symmetric cancellations exact.
            bond_classes.clear();
            int moved = 0;
            for (int i = 0; i < n; ++i) {
                if (pi[static_cast<size_t>(i)] != i) {
                    bond_classes.push_back(alphabet.class_of(i, pi[static_cast<size_t>(i)]));
                    ++moved;
                }
            }
            std::sort(bond_classes.begin(), bond_classes.end());
            double denom = 1.0;
            for (const int c : bond_classes) {
                denom *= kFourPi * alphabet.classes[static_cast<size_t>(c)];
            }

            const int k = n - moved;  // fixed points
            const int m = cycle_count(pi, visited);
            // sign(pi) * (-1)^{N - k}, with sign(pi) = (-1)^{N + m}.
            const double s = (((m + k) & 1) ? -1.0 : 1.0) / denom;

            TermAccum& acc = acc_map[counts];
            if (acc.coeff.empty()) {
                acc.coeff.assign(static_cast<size_t>(k) + 1, Complex(0.0, 0.0));
                acc.mass.assign(static_cast<size_t>(k) + 1, 0.0);
            }
            for (int j = 0; j <= k; ++j) {
                const Complex c = s * binom[static_cast<size_t>(k)][static_cast<size_t>(j)] *
                                  alpha_pow[static_cast<size_t>(k - j)] *
                                  mi4pi_pow[static_cast<size_t>(j)];
                acc.coeff[static_cast<size_t>(j)] += c;
                acc.mass[static_cast<size_t>(j)] += std::abs(c);
            }
        });
    });

    AccumMap merged;
    for (const AccumMap& block_map : block_maps) {
        for (const auto& [vec, acc] : block_map) {
            TermAccum& into = merged[vec];
            if (into.coeff.empty()) {
                into.coeff.assign(acc.coeff.size(), Complex(0.0, 0.0));
                into.mass.assign(acc.mass.size(), 0.0);
            }
            for (size_t j = 0; j < acc.coeff.size(); ++j) {
                into.coeff[j] += acc.coeff[j];
                into.mass[j] += acc.mass[j];
            }
        }
    }

    ExpPolynomial f;
    f.alphabet = alphabet;
    f.alpha = alpha;
    f.point_count = n;
    for (auto& [vec, acc] : merged) {
        const double sigma = alphabet.vector_total(vec);
        double residual = 0.0;
        bool any_alive = false;
        for (size_t j = 0; j < acc.coeff.size(); ++j) {
            const double magnitude = std::abs(acc.coeff[j]);
            if (magnitude <= kCancelThreshold * acc.mass[j]) {
                if (acc.mass[j] > 0.0) residual = std::max(residual, magnitude / acc.mass[j]);
                acc.coeff[j] = Complex(0.0, 0.0);
            } else {
                any_alive = true;
            }
        }
        if (!any_alive) {
            f.cancelled.push_back(CancelledTerm{sigma, vec, residual});
            continue;
        }
        while (!acc.coeff.empty() && acc.coeff.back() == Complex(0.0, 0.0)) acc.coeff.pop_back();
        f.terms.push_back(ExpTerm{sigma, vec, CoeffPolynomial{std::move(acc.coeff)}});
    }

    auto term_order = [](const auto& a, const auto& b) {
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.sigma_class < b.sigma_class;
    };
    std::sort(f.terms.begin(), f.terms.end(), term_order);
    std::sort(f.cancelled.begin(), f.cancelled.end(), term_order);
    return f;
}

ExpPolynomial from_determinant(const PointConfig& config) {
    return from_determinant(config, build_length_alphabet(config));
}

Complex evaluate(const ExpPolynomial& f, Complex kappa) {
    Complex total(0.0, 0.0);
    for (const ExpTerm& term : f.terms) {
        total += term.coeff.eval(kappa) *
                 std::exp(Complex(-kappa.imag() * term.sigma, kappa.real() * term.sigma));
    }
    return total;
}

Complex evaluate(const ExpPolynomial& f, double alpha, Complex kappa) {
    if (alpha != f.alpha) {
        throw ValidationError("evaluate: polynomial was built for alpha = " +
                              std::to_string(f.alpha));
    }
    return evaluate(f, kappa);
}

Complex evaluate_derivative(const ExpPolynomial& f, Complex kappa) {
    Complex total(0.0, 0.0);
    for (const ExpTerm& term : f.terms) {
        const Complex q = term.coeff.derivative().eval(kappa) +
                          Complex(0.0, term.sigma) * term.coeff.eval(kappa);
        total += q * std::exp(Complex(-kappa.imag() * term.sigma, kappa.real() * term.sigma));
    }
    return total;
}

Complex evaluate_derivative(const ExpPolynomial& f, double alpha, Complex kappa) {
    if (alpha != f.alpha) {
        throw ValidationError("evaluate_derivative: polynomial was built for alpha = " +
                              std::to_string(f.alpha));
    }
    return evaluate_derivative(f, kappa);
}

namespace {

// L1 amplitude of the coefficient polynomial at radius r: the roundoff
// scale of evaluating it, which its value understates under cancellation.
double coeff_l1(const CoeffPolynomial& p, double r) {
    double amp = 0.0;
    for (size_t j = p.coefficients.size(); j-- > 0;) {
        amp = amp * r + std::abs(p.coefficients[j]);
    }
    return amp;
}

// Shared scaled accumulation: each entry is w_m * e^{i kappa sigma_m} with
// w_m the already-evaluated polynomial factor.  amp, when given, carries the
// L1 amplitude of each polynomial factor and defines the reported mass.
ScaledValue scaled_sum(const std::vector<Complex>& w, const std::vector<double>& sigma,
                       Complex kappa, const std::vector<double>* amp = nullptr,
                       double* log_mass = nullptr) {
    const size_t m = w.size();
    std::vector<double> log_mag(m, -std::numeric_limits<double>::infinity());
    double peak = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < m; ++i) {
        const double a = std::abs(w[i]);
        if (a == 0.0) continue;
        log_mag[i] = std::log(a) - sigma[i] * kappa.imag();
        peak = std::max(peak, log_mag[i]);
    }
    if (log_mass != nullptr) {
        double mass_peak = -std::numeric_limits<double>::infinity();
        std::vector<double> mass_mag;
        mass_mag.reserve(m);
        for (size_t i = 0; i < m; ++i) {
            const double a = amp != nullptr ? (*amp)[i] : std::abs(w[i]);
            if (a == 0.0) continue;
            mass_mag.push_back(std::log(a) - sigma[i] * kappa.imag());
            mass_peak = std::max(mass_peak, mass_mag.back());
        }
        if (!std::isfinite(mass_peak)) {
            *log_mass = -std::numeric_limits<double>::infinity();
        } else {
            double mass = 0.0;
            for (const double lm : mass_mag) mass += std::exp(lm - mass_peak);
            *log_mass = mass_peak + std::log(mass);
        }
    }
    if (!std::isfinite(peak)) {
        return ScaledValue{Complex(0.0, 0.0), 0.0};
    }
    Complex total(0.0, 0.0);
    for (size_t i = 0; i < m; ++i) {
        if (!std::isfinite(log_mag[i])) continue;
        const Complex phase = w[i] / std::abs(w[i]);
        total += phase * std::exp(log_mag[i] - peak) * cis(sigma[i] * kappa.real());
    }
    return ScaledValue{total, peak};
}

}  // namespace

ScaledValue evaluate_scaled(const ExpPolynomial& f, Complex kappa) {
    return evaluate_scaled(f, kappa, nullptr);
}

ScaledValue evaluate_scaled(const ExpPolynomial& f, Complex kappa, double* log_mass) {
    std::vector<Complex> w;
    std::vector<double> sigma;
    std::vector<double> amp;
    const double r = std::abs(kappa);
    w.reserve(f.terms.size());
    sigma.reserve(f.terms.size());
    amp.reserve(f.terms.size());
    for (const ExpTerm& term : f.terms) {
        w.push_back(term.coeff.eval(kappa));
        sigma.push_back(term.sigma);
        amp.push_back(coeff_l1(term.coeff, r));
    }
    return scaled_sum(w, sigma, kappa, &amp, log_mass);
}

ScaledValue evaluate_derivative_scaled(const ExpPolynomial& f, Complex kappa) {
    std::vector<Complex> w;
    std::vector<double> sigma;
    w.reserve(f.terms.size());
    sigma.reserve(f.terms.size());
    for (const ExpTerm& term : f.terms) {
        w.push_back(term.coeff.derivative().eval(kappa) +
                    Complex(0.0, term.sigma) * term.coeff.eval(kappa));
        sigma.push_back(term.sigma);
    }
    return scaled_sum(w, sigma, kappa);
}

double log_l1_mass(const ExpPolynomial& f, Complex kappa) {
    std::vector<double> log_mag;
    log_mag.reserve(f.terms.size());
    double peak = -std::numeric_limits<double>::infinity();
    const double r = std::abs(kappa);
    for (const ExpTerm& term : f.terms) {
        const double a = coeff_l1(term.coeff, r);
        if (a == 0.0) continue;
        log_mag.push_back(std::log(a) - term.sigma * kappa.imag());
        peak = std::max(peak, log_mag.back());
    }
    if (!std::isfinite(peak)) return -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const double lm : log_mag) sum += std::exp(lm - peak);
    return peak + std::log(sum);
}

double effective_size(const ExpPolynomial& f) {
    if (f.terms.empty()) {
        throw NumericError("effective_size: polynomial has no surviving terms");
    }
    return f.terms.back().sigma - f.terms.front().sigma;
}

namespace {

// Least squares of y against (t, log t, 1); returns the slope in t and the
// RMS residual.  The log t regressor absorbs polynomial coefficient growth.
void growth_fit(const std::vector<double>& t, const std::vector<double>& y, double& slope,
                double& rms) {
    double a[3][4] = {};
    const size_t n = t.size();
    for (size_t i = 0; i < n; ++i) {
        const double x[3] = {t[i], std::log(t[i]), 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[r][c] += x[r] * x[c];
            a[r][3] += x[r] * y[i];
        }
    }
    for (int k = 0; k < 3; ++k) {
        int pivot = k;
        for (int r = k + 1; r < 3; ++r) {
            if (std::abs(a[r][k]) > std::abs(a[pivot][k])) pivot = r;
        }
        for (int c = 0; c < 4; ++c) std::swap(a[k][c], a[pivot][c]);
        if (a[k][k] == 0.0) throw NumericError("growth fit: singular normal equations");
        for (int r = 0; r < 3; ++r) {
            if (r == k) continue;
            const double factor = a[r][k] / a[k][k];
            for (int c = k; c < 4; ++c) a[r][c] -= factor * a[k][c];
        }
    }
    const double beta[3] = {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
    slope = beta[0];
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double fit = beta[0] * t[i] + beta[1] * std::log(t[i]) + beta[2];
        ss += (y[i] - fit) * (y[i] - fit);
    }
    rms = std::sqrt(ss / static_cast<double>(n));
}

double growth_slope(const ExpPolynomial& f, double t0, double t_max, int samples, double& rms) {
    std::vector<double> t_fit;
    std::vector<double> y_fit;
    const double log_t0 = std::log(t0);
    const double log_t1 = std::log(t_max);
    for (int i = samples / 2; i < samples; ++i) {
        const double t =
            std::exp(log_t0 + (log_t1 - log_t0) * static_cast<double>(i) /
                                  static_cast<double>(samples - 1));
        const ScaledValue v = evaluate_scaled(f, Complex(0.0, -t));
        const double magnitude = std::abs(v.value);
        if (magnitude == 0.0) continue;
        t_fit.push_back(t);
        y_fit.push_back(std::log(magnitude) + v.log_scale);
    }
    if (t_fit.size() < 4) {
        throw NumericError("growth fit: too few usable samples in [" + std::to_string(t0) +
                           ", " + std::to_string(t_max) + "]");
    }
    double slope = 0.0;
    growth_fit(t_fit, y_fit, slope, rms);
    return slope;
}

}  // namespace

GrowthEstimate effective_size_growth_estimate(const PointConfig& config, double alpha,
                                              double t_max, int samples) {
    if (samples < 8) throw ValidationError("growth estimate: samples must be at least 8");
    const double t0 = 20.0;
    if (t_max != 0.0 && t_max <= t0) {
        throw ValidationError("growth estimate: t_max must exceed " + std::to_string(t0));
    }
    const ExpPolynomial f = from_determinant(with_alpha(config, alpha));

    constexpr double kResidualThreshold = 0.05;
    if (t_max > 0.0) {
        GrowthEstimate est;
        est.w_x = growth_slope(f, t0, t_max, samples, est.fit_residual);
        est.t_max_used = t_max;
        if (est.fit_residual > kResidualThreshold) {
            throw NumericError("growth estimate did not converge: fit residual " +
                               std::to_string(est.fit_residual) + " at t_max " +
                               std::to_string(t_max) + " (slope " + std::to_string(est.w_x) +
                               "); raise t_max");
        }
        return est;
    }

    // Adaptive schedule: double t_max until two consecutive slopes agree.
    // Near-ties among exponents (non-Weyl neighborhoods) decay like
    // e^{-t delta sigma} and can need a long tail.
    double previous = std::numeric_limits<double>::quiet_NaN();
    std::string history;
    for (double tm = 200.0; tm <= 25600.0; tm *= 2.0) {
        GrowthEstimate est;
        est.w_x = growth_slope(f, t0, tm, samples, est.fit_residual);
        est.t_max_used = tm;
        history += (history.empty() ? "" : ", ") + std::to_string(est.w_x);
        if (std::isfinite(previous) &&
            std::abs(est.w_x - previous) <= 5e-5 * std::max(1.0, std::abs(est.w_x)) &&
            est.fit_residual <= kResidualThreshold) {
            return est;
        }
        previous = est.w_x;
    }
    throw NumericError("growth estimate did not stabilize up to t_max 25600; slopes: " + history);
}

}  // namespace reslab
