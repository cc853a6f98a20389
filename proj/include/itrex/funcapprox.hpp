#pragma once

#include <functional>
#include <utility>

#include "itrex/laurent.hpp"

namespace itrex {

// A constructed Laurent polynomial together with its certification data:
// the x-intervals it was checked on, the measured sup error there, and the
// sup norm over the unit circle (admissibility requires <= 1 + 1e-9).
struct ApproximationReport {
    LaurentPolynomial polynomial;
    std::vector<std::pair<double, double>> target_domain;
    double measured_sup_error = 0.0;
    double circle_sup_norm = 0.0;
    // Requested parameters, as applicable to the construction.
    double delta = 0.0, eps = 0.0;
    double mu = 0.0, kappa = 0.0, beta = 0.0, t = 0.0;
    double scale_b = 1.0;  // B in targets of the form 1/(B x)
};

inline constexpr int kDegreeCap = 4096;

// Odd approximant of sgn(x) on [-pi+dp, -dp] U [dp, pi-dp]:
// mollified square-wave Fourier series, degree certified a posteriori.
ApproximationReport sign_approx(double delta_prime, double eps_prime);

// Step approximant: 1 on [-1, mu - delta/2], 0 on [mu + delta/2, 1].
ApproximationReport shifted_sign(double mu, double delta, double eps);

// Indicator of [-t, t]: 1 on [-t+delta, t-delta], 0 outside [-t-delta, t+delta].
ApproximationReport rectangle(double t, double delta, double eps);

// Eigenstate filter: ~1 at x=0, |P| <= eps/2 on delta <= |x| <= pi.
ApproximationReport filter(double delta, double eps);

// P(e^{i pi x / 3}) ~= 1/(B x) on 1/kappa <= |x| <= 1; returns the measured B.
std::pair<ApproximationReport, double> inverse(double kappa, double eps);

// P(e^{i pi x / (2(1+1/beta))}) ~= e^{beta(x-1) - 1} on [-1, 1].
ApproximationReport exponential(double beta, double eps);

// Map a real polynomial q (|q| <= 1 on [-1-delta, 1+delta]) to a Laurent
// polynomial with |P(e^{i pi x/(2(1+delta))}) - q(x)| <= eps on [-1, 1].
ApproximationReport poly_to_laurent(const std::vector<double>& coeffs, double delta, double eps);

// Same, with q given as an evaluator (stable for high-degree bases);
// q_degree is the polynomial degree of the evaluated function.
ApproximationReport poly_to_laurent_fn(const std::function<double(double)>& q, int q_degree,
                                       double delta, double eps);

}  // namespace itrex
