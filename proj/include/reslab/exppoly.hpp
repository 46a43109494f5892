#pragma once

#include <complex>
#include <vector>

#include "reslab/geometry.hpp"

namespace reslab {

using Complex = std::complex<double>;

/// Univariate polynomial in kappa, coefficient index = power.
/// Trailing coefficient nonzero after pruning, or the list is empty.
struct CoeffPolynomial {
    std::vector<Complex> coefficients;

    bool is_zero() const { return coefficients.empty(); }
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    Complex eval(Complex kappa) const;
    CoeffPolynomial derivative() const;
};

/// One exponential term coeff(kappa) * e^{i kappa sigma}.
struct ExpTerm {
    double sigma = 0.0;
    std::vector<int> sigma_class;  // length-class counts defining sigma
    CoeffPolynomial coeff;
};

/// A class vector whose entire polynomial coefficient cancelled during
/// construction; kept for diagnostics (non-Weyl detection).
struct CancelledTerm {
    double sigma = 0.0;
    std::vector<int> sigma_class;
    /// max over powers of |residual sum| / (L1 mass of contributions).
    double residual = 0.0;
};

/// The resonance condition as an exponential polynomial
///   F(kappa) = sum_m coeff_m(kappa) e^{i kappa sigma_m},
/// terms keyed by sigma_class and sorted by (sigma, sigma_class).
struct ExpPolynomial {
    std::vector<ExpTerm> terms;
    std::vector<CancelledTerm> cancelled;
    LengthAlphabet alphabet;
    double alpha = 0.0;
    int point_count = 0;
};

/// Value together with a log-magnitude scale: the represented number is
/// value * e^{log_scale}.  Keeps contour work finite where e^{sigma R}
/// exceeds double range.
struct ScaledValue {
    Complex value{0.0, 0.0};
    double log_scale = 0.0;

    Complex collapse() const { return value * std::exp(log_scale); }
};

/// Matrix of the resonance condition: (alpha - i kappa/4pi) delta_{nn'}
/// minus e^{i kappa l}/(4 pi l) off the diagonal.
Complex matrix_entry(const PointConfig& config, int n, int nprime, Complex kappa);

/// Direct numerical determinant of the resonance matrix (partial-pivot LU).
Complex determinant_value(const PointConfig& config, Complex kappa);
ScaledValue determinant_scaled(const PointConfig& config, Complex kappa);

/// Exact construction by permutation expansion of the determinant.
/// Requires N <= kEnumerationCap.
ExpPolynomial from_determinant(const PointConfig& config, const LengthAlphabet& alphabet);
ExpPolynomial from_determinant(const PointConfig& config);

/// Sum of the term list at kappa.  The alpha argument must match the one the
/// polynomial was built for; it exists so call sites state their intent.
Complex evaluate(const ExpPolynomial& f, double alpha, Complex kappa);
Complex evaluate(const ExpPolynomial& f, Complex kappa);
Complex evaluate_derivative(const ExpPolynomial& f, double alpha, Complex kappa);
Complex evaluate_derivative(const ExpPolynomial& f, Complex kappa);

/// Overflow-safe evaluation; exact wherever collapse() is finite.  The
/// two-argument form also reports the L1 mass of the terms at kappa
/// (log scale), saving the contour walker a second pass.
ScaledValue evaluate_scaled(const ExpPolynomial& f, Complex kappa);
ScaledValue evaluate_scaled(const ExpPolynomial& f, Complex kappa, double* log_mass);
ScaledValue evaluate_derivative_scaled(const ExpPolynomial& f, Complex kappa);

/// log of sum_m |coeff_m(kappa)| e^{-sigma_m Im kappa}: the L1 mass of the
/// term list, the magnitude scale for residual thresholds.
double log_l1_mass(const ExpPolynomial& f, Complex kappa);

/// W_X: largest surviving exponent (sigma_min is always 0).
double effective_size(const ExpPolynomial& f);

struct GrowthEstimate {
    double w_x = 0.0;
    double t_max_used = 0.0;
    double fit_residual = 0.0;
};

/// Estimates W_X from the growth of log|F(-it)| along the negative imaginary
/// axis.  t_max = 0 selects the adaptive schedule: fit on [20, 200], then
/// keep doubling t_max until two consecutive slopes agree to 5e-5.
GrowthEstimate effective_size_growth_estimate(const PointConfig& config, double alpha,
                                              double t_max = 0.0, int samples = 64);
inline GrowthEstimate effective_size_growth_estimate(const PointConfig& config) {
    return effective_size_growth_estimate(config, config.alpha);
}

}  // namespace reslab
