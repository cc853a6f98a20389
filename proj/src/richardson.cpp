#include "itrex/richardson.hpp"

#include <cmath>
#include <stdexcept>

namespace itrex {

namespace {

#if defined(__SIZEOF_FLOAT128__) && !defined(_MSC_VER)
using wide_t = __float128;
#else
using wide_t = long double;
#endif

bool is_reciprocal_integer(double s0) {
    if (s0 <= 0.0 || s0 > 1.0) return false;
    const double inv = 1.0 / s0;
    return std::abs(inv - std::round(inv)) < 1e-9;
}

// Error-series abscissa for a node: 1/r (general) or 1/r^2 (even).
wide_t abscissa(long long r, SchemeVariant v) {
    const wide_t x = wide_t(1) / wide_t(r);
    return v == SchemeVariant::even ? x * x : x;
}

}  // namespace

ExtrapolationScheme build_scheme(int m, double s0, SchemeVariant variant) {
    if (m < 1) throw std::invalid_argument("build_scheme: m >= 1 required");
    if (!is_reciprocal_integer(s0))
        throw std::invalid_argument("build_scheme: 1/s0 must be a positive integer");
    ExtrapolationScheme sch;
    sch.m = m;
    sch.s0 = s0;
    sch.variant = variant;
    sch.nodes.resize(m);
    for (int i = 1; i <= m; ++i) {
        const double base =
            std::sqrt(8.0) * m / (M_PI * std::sin(M_PI * (2.0 * i - 1.0) / (8.0 * m)));
        long long r = static_cast<long long>(std::ceil(base - 1e-12));
        if (variant == SchemeVariant::general) r *= r;
        sch.nodes[i - 1] = r;
    }
    for (int i = 1; i < m; ++i)
        if (sch.nodes[i] >= sch.nodes[i - 1])
            throw std::runtime_error("build_scheme: duplicate or non-decreasing nodes after ceiling");
    // Closed-form weights are Lagrange cardinal values at 0 over the error
    // abscissas; accumulate in extended precision.
    sch.weights.resize(m);
    wide_t norm1 = 0;
    for (int i = 0; i < m; ++i) {
        const wide_t xi = abscissa(sch.nodes[i], variant);
        wide_t w = 1;
        for (int l = 0; l < m; ++l) {
            if (l == i) continue;
            const wide_t xl = abscissa(sch.nodes[l], variant);
            w /= wide_t(1) - xi / xl;
        }
        sch.weights[i] = double(w);
        norm1 += w < 0 ? -w : w;
    }
    sch.b_norm1 = double(norm1);
    return sch;
}

double extrapolate(const ExtrapolationScheme& scheme,
                   const std::vector<std::pair<double, double>>& samples) {
    if (static_cast<int>(samples.size()) != scheme.m)
        throw std::invalid_argument("extrapolate: sample count does not match scheme");
    wide_t acc = 0;
    std::vector<bool> used(samples.size(), false);
    for (int i = 0; i < scheme.m; ++i) {
        const double si = scheme.step(i);
        bool found = false;
        for (size_t j = 0; j < samples.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(samples[j].first - si) <= 1e-9 * std::max(1.0, std::abs(si))) {
                acc += wide_t(scheme.weights[i]) * wide_t(samples[j].second);
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("extrapolate: missing sample for a scheme node");
    }
    return double(acc);
}

std::vector<double> b_norm_profile(const std::vector<int>& m_list, SchemeVariant variant) {
    std::vector<double> out;
    out.reserve(m_list.size());
    for (int m : m_list) out.push_back(build_scheme(m, 1.0, variant).b_norm1);
    return out;
}

std::vector<double> vandermonde_weights(const ExtrapolationScheme& scheme) {
    // Solve sum_i b_i x_i^q = delta_{q0}, q = 0..m-1, by Gaussian elimination
    // with partial pivoting in extended precision.
    const int m = scheme.m;
    std::vector<std::vector<wide_t>> a(m, std::vector<wide_t>(m + 1, 0));
    for (int i = 0; i < m; ++i) {
        const wide_t xi = abscissa(scheme.nodes[i], scheme.variant);
        wide_t p = 1;
        for (int q = 0; q < m; ++q) {
            a[q][i] = p;
            p *= xi;
        }
    }
    a[0][m] = 1;
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r) {
            const wide_t lhs = a[r][col] < 0 ? -a[r][col] : a[r][col];
            const wide_t best = a[piv][col] < 0 ? -a[piv][col] : a[piv][col];
            if (lhs > best) piv = r;
        }
        std::swap(a[col], a[piv]);
        if (a[col][col] == wide_t(0))
            throw std::runtime_error("vandermonde_weights: singular system");
        for (int r = col + 1; r < m; ++r) {
            const wide_t f = a[r][col] / a[col][col];
            for (int c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<wide_t> b(m, 0);
    for (int r = m - 1; r >= 0; --r) {
        wide_t s = a[r][m];
        for (int c = r + 1; c < m; ++c) s -= a[r][c] * b[c];
        b[r] = s / a[r][r];
    }
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) out[i] = double(b[i]);
    return out;
}

}  // namespace itrex
