#include "itrex/gqsp.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

namespace itrex {

using cd = std::complex<double>;

namespace {

double completion_defect(const LaurentPolynomial& p, const LaurentPolynomial& q, int grid = 1024) {
    double worst = 0.0;
    for (int g = 0; g < grid; ++g) {
        const cd z = std::polar(1.0, 2.0 * M_PI * g / grid);
        const double v = std::norm(eval_circle(p, z)) + std::norm(eval_circle(q, z));
        worst = std::max(worst, std::abs(v - 1.0));
    }
    return worst;
}

}  // namespace

LaurentPolynomial complete(const LaurentPolynomial& p) {
    if (!p.admissible())
        throw std::invalid_argument("complete: polynomial exceeds 1 on the circle");
    const int d = p.degree;
    // g = 1 - |p|^2 as a Laurent polynomial.
    LaurentPolynomial g =
        LaurentPolynomial::constant(1.0) + (p * p.conj_reflected()).scaled(-1.0);
    g = g.trimmed(1e-14);
    double gmax = 0.0, gmin = 1e300;
    for (int i = 0; i < 2048; ++i) {
        const double v = eval_circle(g, std::polar(1.0, 2.0 * M_PI * i / 2048.0)).real();
        gmax = std::max(gmax, std::abs(v));
        gmin = std::min(gmin, v);
    }
    if (gmax <= 1e-12) return LaurentPolynomial::constant(0.0);  // |p| = 1 on the circle
    // Zeros of g on the circle (|p| touching 1) break the spectral
    // factorization; push them just off the circle with a tiny constant.
    // The completion identity then holds up to 1e-17, far below the defect
    // budget.
    if (gmin < 1e-13) g.set_coeff(0, g.coeff(0) + 1e-17 - std::min(gmin, 0.0));
    const int dg = g.degree;
    // For moderate degrees, factor g directly from the roots of its causal
    // representative z^dg g(z).  Roots pair up as (r, 1/conj(r)); keeping one
    // root per pair (zeros on the circle are even-order and get snapped onto
    // it) gives the spectral factor exactly, including circle zeros that the
    // iterative path below cannot pin down.
    if (dg <= 32) {
        const int deg2 = 2 * dg;
        const cd lead = g.coeff(dg);
        if (std::abs(lead) > 1e-13) {
            Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg2, deg2);
            for (int i = 1; i < deg2; ++i) comp(i, i - 1) = 1.0;
            for (int i = 0; i < deg2; ++i) comp(i, deg2 - 1) = -g.coeff(i - dg) / lead;
            const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
            std::vector<cd> roots(es.eigenvalues().data(),
                                  es.eigenvalues().data() + deg2);
            std::sort(roots.begin(), roots.end(),
                      [](cd a, cd b) { return std::abs(a) < std::abs(b); });
            roots.resize(dg);
            // First derivative of x -> g(e^{ix}), for polishing circle zeros.
            auto g_deriv = [&g](double x, int order) {
                cd acc = 0.0;
                for (int m = -g.degree; m <= g.degree; ++m)
                    acc += std::pow(cd(0, m), order) * g.coeff(m) *
                           std::polar(1.0, m * x);
                return acc.real();
            };
            std::vector<cd> qc(dg + 1, 0.0);
            qc[0] = 1.0;
            int used = 0;
            for (cd r : roots) {
                if (std::abs(std::abs(r) - 1.0) < 1e-7) {
                    // Even-order zero of g on the circle: Newton on g' in the
                    // angle pins it to machine precision.
                    double x = std::arg(r);
                    for (int it = 0; it < 3; ++it) {
                        const double d2 = g_deriv(x, 2);
                        if (std::abs(d2) < 1e-14) break;
                        x -= g_deriv(x, 1) / d2;
                    }
                    r = std::polar(1.0, x);
                }
                ++used;
                for (int i = used; i >= 1; --i) qc[i] = qc[i - 1] - r * qc[i];
                qc[0] *= -r;
            }
            // Normalize |q|^2 = g at the circle point where g is largest.
            double best_th = 0.0, best_g = -1.0;
            for (int i = 0; i < 1024; ++i) {
                const double th = 2.0 * M_PI * i / 1024.0;
                const double v = eval_circle(g, std::polar(1.0, th)).real();
                if (v > best_g) best_g = v, best_th = th;
            }
            cd qv = 0.0;
            for (int m = 0; m <= dg; ++m) qv += qc[m] * std::polar(1.0, best_th * m);
            if (std::abs(qv) > 1e-13) {
                const double c = std::sqrt(best_g) / std::abs(qv);
                const int shift = std::max(0, dg - d);
                LaurentPolynomial q(d, std::vector<cd>(2 * d + 1, 0.0));
                bool in_window = true;
                for (int i = 0; i <= dg; ++i) {
                    const int power = i - shift;
                    if (power < -d || power > d) {
                        in_window = false;
                        break;
                    }
                    q.set_coeff(power, c * qc[i]);
                }
                if (in_window && completion_defect(p, q) <= 1e-13) return q;
            }
        }
    }
    if (dg == 0) {
        const double g0 = g.coeff(0).real();
        if (g0 < 0) throw std::runtime_error("complete: negative remainder");
        return LaurentPolynomial::constant(std::sqrt(g0));
    }
    // Cepstral seed for the minimum-phase factor: with g > 0 on the circle,
    // q = exp([log g]_+ / 2) where [.]_+ keeps the analytic half of the
    // Fourier series (constant term halved).  Evaluated on a dense grid and
    // read back as coefficients; near-circle zeros of g make the truncation
    // imperfect, which the Wilson-Burg polish below cleans up.
    std::vector<cd> q0;
    int n_fft = 4096;
    while (n_fft < 16 * (dg + 1)) n_fft *= 2;
    Eigen::FFT<double> fft;
    {
        std::vector<cd> logg(n_fft);
        for (int i = 0; i < n_fft; ++i) {
            const double v = std::max(
                1e-18, eval_circle(g, std::polar(1.0, -2.0 * M_PI * i / n_fft)).real());
            logg[i] = std::log(v);
        }
        std::vector<cd> lam;
        fft.inv(lam, logg);
        std::vector<cd> half(n_fft, 0.0);
        half[0] = 0.5 * lam[0];
        for (int m = 1; m < n_fft / 2; ++m) half[m] = lam[m];
        std::vector<cd> hv;
        fft.fwd(hv, half);
        std::vector<cd> qv(n_fft);
        for (int i = 0; i < n_fft; ++i) qv[i] = std::exp(hv[i]);
        std::vector<cd> qcoef;
        fft.inv(qcoef, qv);
        q0.assign(qcoef.begin(), qcoef.begin() + dg + 1);
    }
    // Wilson-Burg refinement: q <- q * [ (g / |q|^2 + 1) / 2 ]_+ converges
    // quadratically to the minimum-phase factor and cleans up the seed's
    // truncation error.
    {
        int n_fft = 1024;
        while (n_fft < 8 * (dg + 1)) n_fft *= 2;
        Eigen::FFT<double> fft;
        std::vector<double> gv(n_fft);
        for (int i = 0; i < n_fft; ++i)
            gv[i] = std::max(
                0.0, eval_circle(g, std::polar(1.0, -2.0 * M_PI * i / n_fft)).real());
        std::vector<cd> q_best = q0;
        double best_worst = 1e300;
        for (int iter = 0; iter < 400; ++iter) {
            std::vector<cd> qpad(n_fft, 0.0), qv;
            std::copy(q0.begin(), q0.end(), qpad.begin());
            fft.fwd(qv, qpad);
            double worst = 0.0;
            std::vector<cd> s(n_fft);
            for (int i = 0; i < n_fft; ++i) {
                const double denom = std::norm(qv[i]);
                const double r = denom > 1e-18 ? gv[i] / denom : 1.0;
                worst = std::max(worst, std::abs(denom - gv[i]));
                s[i] = 0.5 * (1.0 + r);
            }
            if (worst < best_worst) {
                best_worst = worst;
                q_best = q0;
            }
            if (worst < 1e-13) break;
            std::vector<cd> sc;
            fft.inv(sc, s);
            // Causal part: f_0 = s_0, f_m = 2 s_m for m >= 1 (up to degree dg).
            std::vector<cd> f(dg + 1, 0.0);
            f[0] = sc[0];
            for (int m = 1; m <= dg; ++m) f[m] = 2.0 * sc[m];
            std::vector<cd> qn(dg + 1, 0.0);
            for (int i = 0; i <= dg; ++i)
                for (int j = 0; i + j <= dg && j <= dg; ++j) qn[i + j] += q0[i] * f[j];
            q0 = std::move(qn);
        }
        q0 = q_best;  // the iteration can drift on near-circle zeros
        // Final polish in extended precision.  The layer-stripping pass can
        // amplify the pairing defect by the reciprocal of the smallest edge
        // coefficient of p, so a ~1e-14 double-precision defect is not always
        // good enough; a few long-double iterations push it to ~1e-18.
        {
            using ld = long double;
            using lcd = std::complex<ld>;
            const ld two_pi = 6.283185307179586476925286766559L;
            std::vector<lcd> ql(q0.begin(), q0.end());
            std::vector<lcd> ql_best = ql;
            ld lbest = 1e300L;
            std::vector<ld> gl(n_fft);
            for (int i = 0; i < n_fft; ++i) {
                const ld th = -two_pi * i / n_fft;
                lcd acc = 0.0L;
                for (int m = g.degree; m >= -g.degree; --m)
                    acc = acc * std::polar<ld>(1.0L, th) +
                          lcd(g.coeff(m).real(), g.coeff(m).imag());
                acc *= std::polar<ld>(1.0L, -th * g.degree);
                gl[i] = std::max<ld>(0.0L, acc.real());
            }
            for (int iter = 0; iter < 80; ++iter) {
                std::vector<lcd> qv(n_fft, 0.0L);
                for (int k = 0; k < n_fft; ++k) {
                    const lcd w = std::polar<ld>(1.0L, -two_pi * k / n_fft);
                    lcd acc = 0.0L;
                    for (int m = dg; m >= 0; --m) acc = acc * w + ql[m];
                    qv[k] = acc;
                }
                ld worst = 0.0L;
                std::vector<lcd> s(n_fft);
                for (int k = 0; k < n_fft; ++k) {
                    const ld denom = std::norm(qv[k]);
                    const ld r = denom > 1e-30L ? gl[k] / denom : 1.0L;
                    worst = std::max(worst, std::abs(denom - gl[k]));
                    s[k] = 0.5L * (1.0L + r);
                }
                if (worst < lbest) {
                    lbest = worst;
                    ql_best = ql;
                }
                if (worst < 1e-19L) break;
                std::vector<lcd> f(dg + 1, 0.0L);
                for (int m = 0; m <= dg; ++m) {
                    lcd acc = 0.0L;
                    for (int k = 0; k < n_fft; ++k)
                        acc += s[k] * std::polar<ld>(1.0L, two_pi * ld(k) * m / n_fft);
                    acc /= ld(n_fft);
                    f[m] = (m == 0) ? acc : 2.0L * acc;
                }
                std::vector<lcd> qn(dg + 1, 0.0L);
                for (int i = 0; i <= dg; ++i)
                    for (int j = 0; i + j <= dg && j <= dg; ++j) qn[i + j] += ql[i] * f[j];
                ql = std::move(qn);
            }
            ql = ql_best;
            for (int i = 0; i <= dg; ++i)
                q0[i] = cd(double(ql[i].real()), double(ql[i].imag()));
        }
    }
    // Center the factor as a Laurent polynomial within [-d, d].
    const int shift = std::max(0, dg - d);
    LaurentPolynomial q(d, std::vector<cd>(2 * d + 1, 0.0));
    for (size_t i = 0; i < q0.size(); ++i) {
        const int power = static_cast<int>(i) - shift;
        if (power < -d || power > d)
            throw std::runtime_error("complete: factor exceeds Laurent degree window");
        q.set_coeff(power, q0[i]);
    }
    const double defect = completion_defect(p, q);
    if (defect > 1e-6)
        throw std::runtime_error("complete: factorization defect " + std::to_string(defect));
    return q;
}

GQSPAngles synthesize_angles(const LaurentPolynomial& p_in) {
    LaurentPolynomial p = p_in;
    const double sup = p.sup_circle();
    if (sup > 1.0 + 1e-9)
        throw std::invalid_argument("synthesize_angles: polynomial is not admissible");
    GQSPAngles out;
    LaurentPolynomial q;
    try {
        q = complete(p);
    } catch (const std::runtime_error&) {
        // Fallback for polynomials hugging the unit bound: shrink slightly so
        // 1 - |p|^2 is strictly positive, folding the factor into the target.
        if (sup <= 1.0 - 1e-6) throw;
        out.scale_applied = (1.0 - 1e-6) / sup;
        p = p.scaled(out.scale_applied);
        q = complete(p);
    }
    const int d = p.degree;
    const int n_layers = 2 * d;
    // The pairing defect gets amplified by the reciprocal of the smallest
    // edge coefficient of p as layers are stripped, so run the whole
    // recursion in extended precision.
    using ld = long double;
    using lcd = std::complex<ld>;
    // Polynomial pair (z^d p, z^d q), coefficients indexed 0..2d.
    std::vector<lcd> pc(2 * d + 1), qc(2 * d + 1);
    for (int i = 0; i <= 2 * d; ++i) {
        pc[i] = lcd(p.coeff(i - d).real(), p.coeff(i - d).imag());
        qc[i] = lcd(q.coeff(i - d).real(), q.coeff(i - d).imag());
    }
    out.degree = d;
    out.thetas.assign(n_layers + 1, 0.0);
    out.phis.assign(n_layers + 1, 0.0);
    ld residual = 0.0L;
    for (int layer = n_layers; layer >= 1; --layer) {
        const lcd ptop = pc[layer], qtop = qc[layer];
        const lcd pbot = pc[0], qbot = qc[0];
        ld theta, phi;
        // Solve for the rotation from whichever end of the pair carries the
        // larger coefficients; the other end is then consistent by the
        // para-unitarity relation p0 conj(pL) + q0 conj(qL) = 0.  Trusting a
        // noise-level end produces garbage angles and O(1) residuals.
        const ld top_mag = std::abs(ptop) + std::abs(qtop);
        const ld bot_mag = std::abs(pbot) + std::abs(qbot);
        if (top_mag >= bot_mag && top_mag > 1e-15L) {
            if (std::abs(ptop) > 1e-15L * top_mag) {
                const lcd ratio = qtop / ptop;  // tan(theta) e^{-i phi} = ratio
                theta = std::atan(std::abs(ratio));
                phi = -std::arg(ratio);
            } else {
                theta = ld(M_PI) / 2.0L;
                phi = 0.0L;
            }
        } else if (bot_mag > 1e-15L) {
            if (std::abs(pbot) > 1e-15L * bot_mag) {
                const lcd ratio = -qbot / pbot;  // cot(theta) e^{-i phi} = ratio
                theta = std::atan2(1.0L, std::abs(ratio));
                phi = -std::arg(ratio);
            } else {
                theta = 0.0L;
                phi = 0.0L;
            }
        } else {
            theta = 0.0L;
            phi = 0.0L;
        }
        out.thetas[layer] = double(theta);
        out.phis[layer] = double(phi);
        const lcd eiphi = std::polar<ld>(1.0L, -phi);
        const ld ct = std::cos(theta), st = std::sin(theta);
        std::vector<lcd> pnew(layer + 1, 0.0L), qnew(layer, 0.0L);
        // First row divided by z; second row truncated at degree layer-1.
        const lcd stripped_low = eiphi * ct * pc[0] + st * qc[0];
        const lcd stripped_high = eiphi * st * pc[layer] - ct * qc[layer];
        residual = std::max({residual, std::abs(stripped_low), std::abs(stripped_high)});
        // Polynomials whose |p| hugs 1 on an arc have noise-dominated edge
        // coefficients and strip with a small unavoidable leak; only abort on
        // a genuine blowup.  verify_block reports the realized accuracy.
        if (residual > 1e-3L)
            throw std::runtime_error("synthesize_angles: layer stripping residual blowup at layer " +
                                     std::to_string(layer));
        out.strip_residual = std::max(out.strip_residual, double(residual));
        for (int i = 1; i <= layer; ++i) pnew[i - 1] = eiphi * ct * pc[i] + st * qc[i];
        for (int i = 0; i <= layer - 1; ++i) qnew[i] = eiphi * st * pc[i] - ct * qc[i];
        pnew.resize(layer);
        pc = std::move(pnew);
        qc = std::move(qnew);
    }
    const lcd p0 = pc[0], q0 = qc[0];
    out.thetas[0] = double(std::atan2(std::abs(q0), std::abs(p0)));
    if (std::abs(q0) > 1e-13L) {
        out.gamma_phase = double(std::arg(q0));
        out.phis[0] = std::abs(p0) > 1e-13L ? double(std::arg(p0)) - out.gamma_phase : 0.0;
    } else {
        out.gamma_phase = 0.0;
        out.phis[0] = double(std::arg(p0));
    }
    return out;
}

Eigen::MatrixXcd gqsp_dense(const GQSPAngles& angles, const Eigen::MatrixXcd& u) {
    const Eigen::Index dim = u.rows();
    const Eigen::Index full = 2 * dim;
    auto rot_full = [&](int j, double gamma) {
        U2Rotation r{angles.thetas[j], angles.phis[j], gamma};
        return kron(r.matrix(), Eigen::MatrixXcd::Identity(dim, dim));
    };
    Eigen::MatrixXcd c0u = Eigen::MatrixXcd::Zero(full, full);
    c0u.topLeftCorner(dim, dim) = u;
    c0u.bottomRightCorner(dim, dim) = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd c1ud = Eigen::MatrixXcd::Zero(full, full);
    c1ud.topLeftCorner(dim, dim) = Eigen::MatrixXcd::Identity(dim, dim);
    c1ud.bottomRightCorner(dim, dim) = u.adjoint();
    Eigen::MatrixXcd acc = rot_full(0, angles.gamma_phase);
    const int d = angles.degree;
    for (int j = 1; j <= d; ++j) acc = rot_full(j, 0.0) * (c0u * acc);
    for (int j = d + 1; j <= 2 * d; ++j) acc = rot_full(j, 0.0) * (c1ud * acc);
    return acc;
}

double verify_block(const GQSPAngles& angles, const Eigen::MatrixXcd& u,
                    const LaurentPolynomial& p) {
    const Eigen::Index dim = u.rows();
    Eigen::MatrixXcd w = gqsp_dense(angles, u);
    return spectral_norm(w.topLeftCorner(dim, dim) - p.eval_matrix(u));
}

namespace {

// |b><b| (x) term, as a dense block over {term support qubits, ancilla}.
HermitianTerm controlled_term(const HermitianTerm& t, int ancilla, int bvalue, double outer_sign,
                              int n) {
    std::vector<int> sup;
    Eigen::MatrixXcd body;
    if (t.is_pauli()) {
        if (t.pauli->size() != n)
            throw std::invalid_argument("build_circuit: term does not fit qubit count");
        sup = t.pauli->support();
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
        for (int q : sup) m = kron(pauli_letter_matrix(t.pauli->word[q]), m);
        body = t.coeff * m;
    } else {
        sup = t.support;
        body = t.block;
    }
    Eigen::Matrix2cd proj = Eigen::Matrix2cd::Zero();
    proj(bvalue, bvalue) = outer_sign;
    sup.push_back(ancilla);  // ancilla is the high bit of the block
    return HermitianTerm::make_block(std::move(sup), kron(proj, body));
}

}  // namespace

InterleavedCircuit build_circuit(const GQSPAngles& angles, const HamiltonianSum& h) {
    const int n = h.qubit_count;
    const int anc = n;
    CircuitBuilder b(n + 1);
    b.add_gate(GateOp::u2(anc, {angles.thetas[0], angles.phis[0], angles.gamma_phase}));
    const int d = angles.degree;
    HamiltonianSum h0, h1;
    h0.qubit_count = h1.qubit_count = n + 1;
    for (const auto& t : h.terms) {
        h0.terms.push_back(controlled_term(t, anc, 0, +1.0, n));
        h1.terms.push_back(controlled_term(t, anc, 1, -1.0, n));
    }
    for (int j = 1; j <= d; ++j) {
        b.add_segment(h0, +1);
        b.add_gate(GateOp::u2(anc, {angles.thetas[j], angles.phis[j], 0.0}));
    }
    for (int j = d + 1; j <= 2 * d; ++j) {
        b.add_segment(h1, +1);
        b.add_gate(GateOp::u2(anc, {angles.thetas[j], angles.phis[j], 0.0}));
    }
    return b.build(1);
}

}  // namespace itrex
