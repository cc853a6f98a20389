#include "itrex/laurent.hpp"

#include <cmath>
#include <stdexcept>

namespace itrex {

using cd = std::complex<double>;

LaurentPolynomial::LaurentPolynomial(int d, std::vector<cd> c) : coeffs(std::move(c)), degree(d) {
    if (static_cast<int>(coeffs.size()) != 2 * d + 1)
        throw std::invalid_argument("LaurentPolynomial: coefficient count must be 2d+1");
}

LaurentPolynomial LaurentPolynomial::constant(cd a0) {
    return LaurentPolynomial(0, {a0});
}

cd LaurentPolynomial::coeff(int j) const {
    if (j < -degree || j > degree) return 0.0;
    return coeffs[j + degree];
}

void LaurentPolynomial::set_coeff(int j, cd v) {
    if (j < -degree || j > degree)
        throw std::out_of_range("LaurentPolynomial: coefficient index out of range");
    coeffs[j + degree] = v;
}

LaurentPolynomial LaurentPolynomial::trimmed(double tol) const {
    int d = degree;
    while (d > 0 && std::abs(coeff(d)) <= tol && std::abs(coeff(-d)) <= tol) --d;
    std::vector<cd> c(2 * d + 1);
    for (int j = -d; j <= d; ++j) c[j + d] = coeff(j);
    return LaurentPolynomial(d, std::move(c));
}

LaurentPolynomial LaurentPolynomial::scaled(double factor) const {
    LaurentPolynomial p = *this;
    for (auto& c : p.coeffs) c *= factor;
    return p;
}

LaurentPolynomial LaurentPolynomial::shifted_arg(double mu) const {
    LaurentPolynomial p = *this;
    const cd i1(0.0, 1.0);
    for (int j = -degree; j <= degree; ++j)
        p.coeffs[j + degree] *= std::exp(-i1 * double(j) * mu);
    return p;
}

LaurentPolynomial LaurentPolynomial::reflected() const {
    LaurentPolynomial p = *this;
    std::reverse(p.coeffs.begin(), p.coeffs.end());
    return p;
}

LaurentPolynomial LaurentPolynomial::conj_reflected() const {
    LaurentPolynomial p = reflected();
    for (auto& c : p.coeffs) c = std::conj(c);
    return p;
}

double LaurentPolynomial::sup_circle(int grid) const {
    double best = 0.0;
    for (int g = 0; g < grid; ++g) {
        const double x = 2.0 * M_PI * g / grid;
        best = std::max(best, std::abs(eval_circle(*this, std::polar(1.0, x))));
    }
    return best;
}

bool LaurentPolynomial::admissible(double slack, int grid) const {
    return sup_circle(grid) <= 1.0 + slack;
}

Eigen::MatrixXcd LaurentPolynomial::eval_matrix(const Eigen::MatrixXcd& u) const {
    const Eigen::Index dim = u.rows();
    Eigen::MatrixXcd out = coeff(0) * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd fwd = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd bwd = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd uin = u.adjoint();
    for (int j = 1; j <= degree; ++j) {
        fwd = fwd * u;
        bwd = bwd * uin;
        out += coeff(j) * fwd + coeff(-j) * bwd;
    }
    return out;
}

cd eval_circle(const LaurentPolynomial& p, cd z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw std::invalid_argument("eval_circle: input must lie on the unit circle");
    // Horner on z for the polynomial z^d P(z), then strip the z^d factor.
    cd acc = 0.0;
    for (int idx = 2 * p.degree; idx >= 0; --idx) acc = acc * z + p.coeffs[idx];
    return acc * std::pow(z, -p.degree);
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    const int d = std::max(a.degree, b.degree);
    std::vector<cd> c(2 * d + 1, 0.0);
    for (int j = -d; j <= d; ++j) c[j + d] = a.coeff(j) + b.coeff(j);
    return LaurentPolynomial(d, std::move(c));
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    const int d = a.degree + b.degree;
    std::vector<cd> c(2 * d + 1, 0.0);
    for (int i = -a.degree; i <= a.degree; ++i)
        for (int j = -b.degree; j <= b.degree; ++j) c[i + j + d] += a.coeff(i) * b.coeff(j);
    return LaurentPolynomial(d, std::move(c));
}

}  // namespace itrex
