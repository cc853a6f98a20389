#include "itrex/funcapprox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace itrex {

using cd = std::complex<double>;

namespace {

// Chebyshev-Lobatto points on [a, b] (endpoints included).
std::vector<double> cheb_pts(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(M_PI * i / (n - 1));
    return x;
}

// sup over the listed x-intervals of |P(e^{i theta_scale x}) - target(x)|.
double domain_error(const LaurentPolynomial& p, double theta_scale,
                    const std::vector<std::pair<double, double>>& intervals,
                    const std::function<double(double)>& target, int n = 2048) {
    double worst = 0.0;
    for (const auto& [a, b] : intervals) {
        if (b < a) continue;
        const int pts = (b == a) ? 1 : n;
        for (double x : cheb_pts(a, b, std::max(pts, 2))) {
            if (x < a || x > b) continue;
            const cd v = eval_circle(p, std::polar(1.0, theta_scale * x));
            worst = std::max(worst, std::abs(v - target(x)));
        }
        if (pts == 1) {
            const cd v = eval_circle(p, std::polar(1.0, theta_scale * a));
            worst = std::max(worst, std::abs(v - target(a)));
        }
    }
    return worst;
}

}  // namespace

ApproximationReport sign_approx(double delta_prime, double eps_prime) {
    if (!(delta_prime > 0.0 && delta_prime < M_PI) || !(eps_prime > 0.0 && eps_prime < 1.0))
        throw std::invalid_argument("sign_approx: parameters out of range");
    const std::vector<std::pair<double, double>> dom_pos = {{delta_prime, M_PI - delta_prime}};
    const std::vector<std::pair<double, double>> dom_neg = {
        {-M_PI + delta_prime, -delta_prime}};

    double sigma = delta_prime / std::sqrt(2.0 * std::log(8.0 / eps_prime));
    for (int attempt = 0; attempt < 4; ++attempt) {
        int d = static_cast<int>(std::ceil(4.0 / sigma));
        while (d <= kDegreeCap) {
            std::vector<cd> c(2 * d + 1, 0.0);
            for (int k = 1; k <= d; k += 2) {
                const double a = (4.0 / (M_PI * k)) * std::exp(-0.5 * k * k * sigma * sigma);
                c[k + d] = cd(0.0, -0.5 * a);
                c[-k + d] = cd(0.0, 0.5 * a);
            }
            LaurentPolynomial p(d, std::move(c));
            const double s = p.sup_circle();
            if (s > 1.0) p = p.scaled(1.0 / s);
            const double err = std::max(
                domain_error(p, 1.0, dom_pos, [](double) { return 1.0; }),
                domain_error(p, 1.0, dom_neg, [](double) { return -1.0; }));
            if (err <= eps_prime) {
                ApproximationReport rep;
                rep.polynomial = std::move(p);
                rep.target_domain = {dom_neg[0], dom_pos[0]};
                rep.measured_sup_error = err;
                rep.circle_sup_norm = rep.polynomial.sup_circle();
                rep.delta = delta_prime;
                rep.eps = eps_prime;
                return rep;
            }
            d = std::max(d + 2, (3 * d) / 2);
        }
        sigma *= 0.8;  // tighten the mollifier and retry
    }
    throw std::runtime_error("sign_approx: degree cap exceeded");
}

ApproximationReport shifted_sign(double mu, double delta, double eps) {
    if (!(mu >= -1.0 && mu <= 1.0)) throw std::invalid_argument("shifted_sign: mu not in [-1,1]");
    if (!(delta > 0.0 && delta < 2.0) || !(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("shifted_sign: delta/eps out of range");
    if (delta > 2.0 * std::min(std::abs(mu - 1.0), std::abs(mu + 1.0)) + 1e-12)
        throw std::invalid_argument("shifted_sign: delta too large for this mu");

    const double dp = std::min(M_PI - 2.0, 0.5 * delta);
    ApproximationReport base = sign_approx(dp, 2.0 * eps);
    // Step down through mu: (P1(e^{-i(x-mu)}) + 1)/2.
    LaurentPolynomial p =
        (base.polynomial.reflected().shifted_arg(mu) + LaurentPolynomial::constant(1.0))
            .scaled(0.5);
    const double s = p.sup_circle();
    if (s > 1.0 + 1e-9) p = p.scaled(1.0 / s);

    ApproximationReport rep;
    rep.target_domain = {{-1.0, mu - 0.5 * delta}, {mu + 0.5 * delta, 1.0}};
    rep.measured_sup_error =
        std::max(domain_error(p, 1.0, {rep.target_domain[0]}, [](double) { return 1.0; }),
                 domain_error(p, 1.0, {rep.target_domain[1]}, [](double) { return 0.0; }));
    rep.circle_sup_norm = p.sup_circle();
    rep.polynomial = std::move(p);
    rep.delta = delta;
    rep.eps = eps;
    rep.mu = mu;
    return rep;
}

ApproximationReport rectangle(double t, double delta, double eps) {
    if (!(delta > 0.0 && delta < 0.5) || !(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("rectangle: delta/eps out of range");
    if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("rectangle: t not in [-1,1]");

    ApproximationReport base = sign_approx(std::min(M_PI - 2.0, delta), eps);
    // (P1(e^{i(x+t)}) - P1(e^{i(x-t)})) / 2.
    LaurentPolynomial p =
        (base.polynomial.shifted_arg(-t) + base.polynomial.shifted_arg(t).scaled(-1.0))
            .scaled(0.5);
    const double s = p.sup_circle();
    if (s > 1.0 + 1e-9) p = p.scaled(1.0 / s);

    ApproximationReport rep;
    rep.target_domain = {{-1.0, -t - delta}, {-t + delta, t - delta}, {t + delta, 1.0}};
    double err = 0.0;
    err = std::max(err, domain_error(p, 1.0, {rep.target_domain[0]}, [](double) { return 0.0; }));
    err = std::max(err, domain_error(p, 1.0, {rep.target_domain[1]}, [](double) { return 1.0; }));
    err = std::max(err, domain_error(p, 1.0, {rep.target_domain[2]}, [](double) { return 0.0; }));
    rep.measured_sup_error = err;
    rep.circle_sup_norm = p.sup_circle();
    rep.polynomial = std::move(p);
    rep.delta = delta;
    rep.eps = eps;
    rep.t = t;
    return rep;
}

ApproximationReport filter(double delta, double eps) {
    if (!(delta > 0.0 && delta < 1.0) || !(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("filter: delta/eps out of range");

    ApproximationReport base = sign_approx(std::min(M_PI - 2.0, 0.5 * delta), 0.5 * eps);
    // (P1(e^{i(x+delta/2)}) + P1(e^{-i(x-delta/2)})) / 2: a width-delta window at 0.
    LaurentPolynomial p = (base.polynomial.shifted_arg(-0.5 * delta) +
                           base.polynomial.reflected().shifted_arg(0.5 * delta))
                              .scaled(0.5);
    const double s = p.sup_circle();
    if (s > 1.0 + 1e-9) p = p.scaled(1.0 / s);

    // Both shifted square waves sit at -1 within delta/2 of +-pi, so the
    // certified stop band ends at pi - delta.
    ApproximationReport rep;
    rep.target_domain = {{0.0, 0.0}, {delta, M_PI - delta}};
    rep.measured_sup_error =
        std::max(domain_error(p, 1.0, {{0.0, 0.0}}, [](double) { return 1.0; }),
                 domain_error(p, 1.0, {{delta, M_PI - delta}}, [](double) { return 0.0; }));
    rep.circle_sup_norm = p.sup_circle();
    rep.polynomial = std::move(p);
    rep.delta = delta;
    rep.eps = eps;
    return rep;
}

ApproximationReport poly_to_laurent_fn(const std::function<double(double)>& q, int q_degree,
                                       double delta, double eps) {
    if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("poly_to_laurent: delta not in (0, 1/2]");
    if (!(eps > 0.0)) throw std::invalid_argument("poly_to_laurent: eps must be positive");
    q_degree = std::max(q_degree, 0);

    double qsup_base = 0.0, qsup_ext = 0.0;
    for (double x : cheb_pts(-1.0 - delta, 1.0 + delta, 2048)) {
        const double v = std::abs(q(x));
        qsup_ext = std::max(qsup_ext, v);
        if (std::abs(x) <= 1.0) qsup_base = std::max(qsup_base, v);
    }
    if (qsup_base > 1.0 + 1e-6)
        throw std::invalid_argument("poly_to_laurent: q exceeds 1 on [-1, 1]");
    // A unit-circle bound on P needs |q| <= 1 on the full overshoot range
    // [-1-delta, 1+delta]; if q only honors the base interval we keep P
    // unscaled (the grid error still certifies) and report the circle sup.
    const bool admissible = qsup_ext <= 1.0 + 1e-6;
    const double qscale = (admissible && qsup_ext > 1.0) ? 1.0 / qsup_ext : 1.0;

    const double c = 2.0 * (1.0 + delta) / M_PI;
    // Taylor coefficients of arcsin: s^{2m+1} terms, all positive, so the
    // truncation is bounded by arcsin itself and |c * arcsin_M| <= 1 + delta.
    const int m_cap = 256;
    std::vector<double> ac(m_cap + 1);
    ac[0] = 1.0;
    for (int m = 1; m <= m_cap; ++m)
        ac[m] = ac[m - 1] * (2.0 * m - 1.0) / (2.0 * m) * (2.0 * m - 1.0) / (2.0 * m + 1.0);

    Eigen::FFT<double> fft;
    for (int m_terms = 8; m_terms <= m_cap; m_terms *= 2) {
        auto arcsin_m = [&](double s) {
            const double s2 = s * s;
            double acc = 0.0;
            for (int m = m_terms; m >= 0; --m) acc = acc * s2 + ac[m];
            return acc * s;
        };
        const long long trig_deg = static_cast<long long>(q_degree) * (2 * m_terms + 1) + 1;
        int n = 8;
        while (n < 2 * trig_deg + 4 && n < (1 << 18)) n *= 2;

        std::vector<cd> in(n), out;
        for (int j = 0; j < n; ++j) {
            const double theta = 2.0 * M_PI * j / n;
            in[j] = qscale * q(c * arcsin_m(std::sin(theta)));
        }
        fft.fwd(out, in);

        const double thr = eps / (8.0 * n);
        int d_eff = 0;
        for (int k = 1; k <= n / 2 - 1; ++k)
            if (std::abs(out[k]) / n > thr || std::abs(out[n - k]) / n > thr) d_eff = k;
        if (d_eff > kDegreeCap) continue;

        std::vector<cd> coeffs(2 * d_eff + 1, 0.0);
        coeffs[d_eff] = out[0] / double(n);
        for (int k = 1; k <= d_eff; ++k) {
            coeffs[d_eff + k] = out[k] / double(n);
            coeffs[d_eff - k] = out[n - k] / double(n);
        }
        LaurentPolynomial p(d_eff, std::move(coeffs));
        if (admissible) {
            const double s = p.sup_circle();
            if (s > 1.0 + 1e-9) p = p.scaled(1.0 / s);
        }

        ApproximationReport rep;
        rep.target_domain = {{-1.0, 1.0}};
        rep.measured_sup_error = domain_error(p, M_PI / (2.0 * (1.0 + delta)),
                                              {{-1.0, 1.0}}, q);
        if (rep.measured_sup_error > eps) continue;
        rep.circle_sup_norm = p.sup_circle();
        rep.polynomial = std::move(p);
        rep.delta = delta;
        rep.eps = eps;
        return rep;
    }
    throw std::runtime_error("poly_to_laurent: failed to certify within the degree cap");
}

ApproximationReport poly_to_laurent(const std::vector<double>& coeffs, double delta,
                                    double eps) {
    int deg = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (std::abs(coeffs[i]) > 0.0) deg = static_cast<int>(i);
    auto q = [coeffs](double x) {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    };
    return poly_to_laurent_fn(q, deg, delta, eps);
}

std::pair<ApproximationReport, double> inverse(double kappa, double eps) {
    if (!(kappa > 1.0)) throw std::invalid_argument("inverse: kappa must exceed 1");
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("inverse: eps not in (0, 1/2)");

    const double eps0 = 0.25 * eps;
    const double kg = 2.0 * kappa;  // the substitution x -> x/2 halves the gap
    long long b = static_cast<long long>(std::ceil(kg * kg * std::log(kg / eps0)));

    for (int attempt = 0; attempt < 4; ++attempt, b *= 2) {
        const long long j_max = static_cast<long long>(
            std::ceil(std::sqrt(double(b) * std::log(4.0 * double(b) / eps0))));
        // beta_j = 2^{-2b} sum_{i=j+1}^{b} C(2b, b+i), via log-gamma.
        std::vector<double> beta_c(j_max + 1, 0.0);
        {
            std::vector<double> tail(b + 2, 0.0);
            for (long long i = b; i >= 1; --i) {
                const double lg = std::lgamma(2.0 * b + 1.0) - std::lgamma(double(b + i) + 1.0) -
                                  std::lgamma(double(b - i) + 1.0) - 2.0 * b * std::log(2.0);
                tail[i] = tail[i + 1] + std::exp(lg);
            }
            for (long long j = 0; j <= j_max; ++j) beta_c[j] = j + 1 <= b ? tail[j + 1] : 0.0;
        }
        auto g = [&](double y) {
            // 4 sum_j (-1)^j beta_j T_{2j+1}(y) by the Chebyshev recurrence.
            double tkm = 1.0, tk = y, acc = 0.0;
            for (long long j = 0; j <= j_max; ++j) {
                acc += (j % 2 == 0 ? 4.0 : -4.0) * beta_c[j] * tk;
                for (int step = 0; step < 2; ++step) {
                    const double tn = 2.0 * y * tk - tkm;
                    tkm = tk;
                    tk = tn;
                }
            }
            return acc;
        };

        double err_g = 0.0;
        for (double y : cheb_pts(1.0 / kg, 0.78, 2048))
            err_g = std::max(err_g, std::abs(g(y) - 1.0 / y));
        if (err_g > 0.5 * eps && attempt + 1 < 4) continue;

        double bmax = 0.0;
        for (double y : cheb_pts(0.0, 0.76, 4096)) bmax = std::max(bmax, std::abs(g(y)));
        bmax *= 1.0 + 1e-8;
        const double bconst = 0.5 * bmax;

        auto q = [&, bmax](double x) { return g(0.5 * x) / bmax; };
        ApproximationReport rep = poly_to_laurent_fn(q, int(2 * j_max + 1), 0.5, 0.5 * eps);

        rep.target_domain = {{-1.0, -1.0 / kappa}, {1.0 / kappa, 1.0}};
        rep.measured_sup_error = 0.0;
        for (const auto& iv : rep.target_domain)
            rep.measured_sup_error = std::max(
                rep.measured_sup_error,
                domain_error(rep.polynomial, M_PI / 3.0, {iv},
                             [&](double x) { return 1.0 / (bconst * x); }));
        rep.kappa = kappa;
        rep.eps = eps;
        rep.delta = 0.5;
        rep.scale_b = bconst;
        if (rep.measured_sup_error <= eps || attempt + 1 == 4) return {rep, bconst};
    }
    throw std::runtime_error("inverse: failed to certify");
}

ApproximationReport exponential(double beta, double eps) {
    if (!(beta > 1.0)) throw std::invalid_argument("exponential: beta must exceed 1");
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("exponential: eps not in (0, 1/2)");

    const double delta = 1.0 / beta;
    const double radius = 2.0 + delta;  // |x - 1| over the extended interval
    int deg = 1;
    {
        double term = std::exp(-1.0) * beta * radius;  // j = 1 term magnitude
        int j = 1;
        while (!(j > 2 * beta * radius && 2.0 * term <= eps / 8.0) && j < 4000) {
            ++j;
            term *= beta * radius / j;
        }
        deg = j;
    }
    std::vector<double> tc(deg + 1);
    tc[0] = std::exp(-1.0);
    for (int j = 1; j <= deg; ++j) tc[j] = tc[j - 1] * beta / j;

    auto q_raw = [&](double x) {
        const double u = x - 1.0;
        double acc = 0.0;
        for (int j = deg; j >= 0; --j) acc = acc * u + tc[j];
        return acc;
    };
    double s = 0.0;
    for (double x : cheb_pts(-1.0 - delta, 1.0 + delta, 2048)) s = std::max(s, std::abs(q_raw(x)));
    const double sc = s > 1.0 ? 1.0 / s : 1.0;
    auto q = [&](double x) { return sc * q_raw(x); };

    ApproximationReport rep = poly_to_laurent_fn(q, deg, delta, 0.5 * eps);
    rep.target_domain = {{-1.0, 1.0}};
    rep.measured_sup_error = domain_error(
        rep.polynomial, M_PI / (2.0 * (1.0 + delta)), {{-1.0, 1.0}},
        [&](double x) { return std::exp(beta * (x - 1.0) - 1.0); });
    if (rep.measured_sup_error > eps)
        throw std::runtime_error("exponential: failed to certify");
    rep.beta = beta;
    rep.eps = eps;
    rep.delta = delta;
    rep.scale_b = 1.0;
    return rep;
}

}  // namespace itrex
