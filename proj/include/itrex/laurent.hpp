#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace itrex {

// P(z) = sum_{j=-d}^{d} a_j z^j on the unit circle.
struct LaurentPolynomial {
    std::vector<std::complex<double>> coeffs;  // index j + degree, j in [-d, d]
    int degree = 0;

    LaurentPolynomial() = default;
    LaurentPolynomial(int d, std::vector<std::complex<double>> c);
    static LaurentPolynomial constant(std::complex<double> a0);

    std::complex<double> coeff(int j) const;          // a_j, 0 outside [-d, d]
    void set_coeff(int j, std::complex<double> v);
    // Drop leading/trailing zero coefficients (below tol) and shrink d.
    LaurentPolynomial trimmed(double tol = 0.0) const;
    LaurentPolynomial scaled(double factor) const;
    // a_j -> a_j * e^{-i j mu}, i.e. P(e^{ix}) -> P(e^{i(x - mu)}).
    LaurentPolynomial shifted_arg(double mu) const;
    // P(1/z): a_j -> a_{-j}.
    LaurentPolynomial reflected() const;
    // P*(z) = sum conj(a_j) z^{-j} (complex conjugate on the circle).
    LaurentPolynomial conj_reflected() const;

    // Max |P| over a uniform circle grid.
    double sup_circle(int grid = 4096) const;
    bool admissible(double slack = 1e-9, int grid = 4096) const;

    // P(U) for a unitary U (via powers of U).
    Eigen::MatrixXcd eval_matrix(const Eigen::MatrixXcd& u) const;
};

std::complex<double> eval_circle(const LaurentPolynomial& p, std::complex<double> z);

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);

}  // namespace itrex
