#include "reslab/pseudoorbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "reslab/errors.hpp"
#include "reslab/permutations.hpp"

namespace reslab {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

Complex cis(double x) { return Complex(std::cos(x), std::sin(x)); }

PseudoOrbit decompose(const std::vector<int>& pi, const DistanceMatrix* dm) {
    const int n = static_cast<int>(pi.size());
    PseudoOrbit result;
    std::vector<char> visited(static_cast<size_t>(n), 0);
    for (int start = 0; start < n; ++start) {
        if (visited[static_cast<size_t>(start)] || pi[static_cast<size_t>(start)] == start) {
            visited[static_cast<size_t>(start)] = 1;
            continue;
        }
        PeriodicOrbit orbit;
        int v = start;
        do {
            visited[static_cast<size_t>(v)] = 1;
            const int next = pi[static_cast<size_t>(v)];
            Bond bond;
            bond.from = v;
            bond.to = next;
            bond.length = dm != nullptr ? (*dm)(v, next) : 0.0;
            orbit.bonds.push_back(bond);
            v = next;
        } while (v != start);
        result.orbits.push_back(std::move(orbit));
    }
    return result;
}

}  // namespace

int PseudoOrbit::bond_count() const {
    int count = 0;
    for (const PeriodicOrbit& orbit : orbits) count += static_cast<int>(orbit.bonds.size());
    return count;
}

double PseudoOrbit::total_length() const {
    double total = 0.0;
    for (const PeriodicOrbit& orbit : orbits) {
        for (const Bond& bond : orbit.bonds) total += bond.length;
    }
    return total;
}

PseudoOrbit permutation_to_pseudo_orbit(const std::vector<int>& pi) {
    return decompose(pi, nullptr);
}

PseudoOrbit permutation_to_pseudo_orbit(const std::vector<int>& pi, const DistanceMatrix& dm) {
    return decompose(pi, &dm);
}

namespace {

std::map<int, std::vector<PseudoOrbit>> enumerate_impl(int n, const DistanceMatrix* dm) {
    check_enumeration_cap(n, "enumerate_irreducible");
    std::map<int, std::vector<PseudoOrbit>> buckets;
    for_each_permutation(n, [&](const std::vector<int>& pi) {
        PseudoOrbit orbit_set = decompose(pi, dm);
        buckets[orbit_set.bond_count()].push_back(std::move(orbit_set));
    });
    return buckets;
}

}  // namespace

std::map<int, std::vector<PseudoOrbit>> enumerate_irreducible(int n) {
    return enumerate_impl(n, nullptr);
}

std::map<int, std::vector<PseudoOrbit>> enumerate_irreducible(const PointConfig& config) {
    const DistanceMatrix dm = distance_matrix(config);
    return enumerate_impl(config.size(), &dm);
}

Complex b_gamma(const PseudoOrbit& orbit_set, Complex kappa) {
    Complex product(1.0, 0.0);
    for (const PeriodicOrbit& orbit : orbit_set.orbits) {
        for (const Bond& bond : orbit.bonds) {
            product *= -std::exp(Complex(0.0, bond.length) * kappa) / (kFourPi * bond.length);
        }
    }
    return product;
}

int sign_of_permutation(const std::vector<int>& pi) {
    const int n = static_cast<int>(pi.size());
    std::vector<char> visited(static_cast<size_t>(n), 0);
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
    return ((n + cycles) & 1) ? -1 : 1;
}

ScaledValue resonance_condition_pseudo_scaled(const PointConfig& config, Complex kappa,
                                              double* log_mass) {
    const int n = config.size();
    check_enumeration_cap(n, "resonance_condition_pseudo");
    const DistanceMatrix dm = distance_matrix(config);
    const Complex base = Complex(0.0, 1.0) * kappa / kFourPi - config.alpha;

    // One addend per pseudo-orbit, kept in scaled form: exponent lengths can
    // push e^{i kappa sigma} far past double range.
    std::vector<Complex> values;
    std::vector<double> log_mags;
    for_each_permutation(n, [&](const std::vector<int>& pi) {
        double sigma = 0.0;
        double log_denom = 0.0;
        int bonds = 0;
        int orbit_count = 0;
        std::vector<char> visited(static_cast<size_t>(n), 0);
        for (int start = 0; start < n; ++start) {
            if (visited[static_cast<size_t>(start)]) continue;
            if (pi[static_cast<size_t>(start)] == start) {
                visited[static_cast<size_t>(start)] = 1;
                continue;
            }
            ++orbit_count;
            int v = start;
            do {
                visited[static_cast<size_t>(v)] = 1;
                const int next = pi[static_cast<size_t>(v)];
                const double l = dm(v, next);
                sigma += l;
                log_denom += std::log(kFourPi * l);
                ++bonds;
                v = next;
            } while (v != start);
        }
        // B_gamma = (-1)^{bonds} e^{i kappa sigma} / prod(4 pi l); the
        // (-1)^{orbit_count} and (i kappa/4pi - alpha)^{N - bonds} factors
        // complete the addend.
        const int fixed = n - bonds;
        Complex factor(1.0, 0.0);
        for (int j = 0; j < fixed; ++j) factor *= base;
        const double sign = (((bonds + orbit_count) & 1) ? -1.0 : 1.0);
        const Complex w = sign * factor * cis(sigma * kappa.real());
        const double log_mag = -sigma * kappa.imag() - log_denom;
        values.push_back(w);
        log_mags.push_back(log_mag);
    });

    double peak = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < values.size(); ++i) {
        const double a = std::abs(values[i]);
        if (a == 0.0) continue;
        peak = std::max(peak, log_mags[i] + std::log(a));
    }
    if (!std::isfinite(peak)) {
        if (log_mass != nullptr) *log_mass = -std::numeric_limits<double>::infinity();
        return ScaledValue{Complex(0.0, 0.0), 0.0};
    }

    Complex total(0.0, 0.0);
    double mass = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        const double a = std::abs(values[i]);
        if (a == 0.0) continue;
        const double scale = std::exp(log_mags[i] + std::log(a) - peak);
        total += (values[i] / a) * scale;
        mass += scale;
    }
    const double parity = (n & 1) ? -1.0 : 1.0;
    if (log_mass != nullptr) *log_mass = peak + std::log(mass);
    return ScaledValue{parity * total, peak};
}

Complex resonance_condition_pseudo(const PointConfig& config, Complex kappa) {
    return resonance_condition_pseudo_scaled(config, kappa, nullptr).collapse();
}

Complex resonance_condition_pseudo(const PointConfig& config, double alpha, Complex kappa) {
    if (alpha != config.alpha) {
        return resonance_condition_pseudo(with_alpha(config, alpha), kappa);
    }
    return resonance_condition_pseudo(config, kappa);
}

}  // namespace reslab
