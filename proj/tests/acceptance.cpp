// Acceptance harness: one pass/fail line per criterion, exit code = number
// of failures.
#include <cstdio>
#include <random>
#include <vector>

#include "itrex/config.hpp"
#include "itrex/estimation.hpp"
#include "itrex/funcapprox.hpp"
#include "itrex/gqsp.hpp"
#include "itrex/groundstate.hpp"
#include "itrex/qls.hpp"

using namespace itrex;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("%s %2d %-28s %s\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

HamiltonianSum random_pauli_sum(int n, int terms, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> letter(0, 3);
    HamiltonianSum h;
    h.qubit_count = n;
    const char* alphabet = "IXYZ";
    for (int t = 0; t < terms; ++t) {
        std::string w;
        for (int q = 0; q < n; ++q) w.push_back(alphabet[letter(rng)]);
        h.terms.push_back(HermitianTerm::make_pauli(PauliString(w), coeff(rng)));
    }
    return h;
}

HamiltonianSum random_noncommuting_sum(int n, int terms, unsigned seed,
                                       double min_comm = 0.05) {
    for (unsigned s = seed;; ++s) {
        HamiltonianSum h = random_pauli_sum(n, terms, s);
        if (nested_commutator_norm(h, 2) > min_comm) return h;
    }
}

InterleavedCircuit random_circuit(int qubits, int segments, int terms_per_segment,
                                  unsigned seed) {
    CircuitBuilder b(qubits);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    for (int l = 0; l < segments; ++l) {
        GateProgram prog;
        for (int q = 0; q < qubits; ++q)
            prog.ops.push_back(GateOp::u2(q, U2Rotation{angle(rng), angle(rng), 0.0}));
        b.add_gates(std::move(prog));
        b.add_segment(random_noncommuting_sum(qubits, terms_per_segment, seed * 101 + l),
                      l % 2 ? -1 : +1);
    }
    return b.build(0);
}

// Shared pipeline results, reused by the resource-accounting criterion.
struct {
    int qls_ancillas = -1;
    int gse_ancillas_incoherent = -1;
    int gse_ancillas_coherent = -1;
    bool steps_match = true;
} g_shared;

// --- 1: product-formula order -------------------------------------------------
void criterion_1() {
    bool pass = true;
    char detail[128] = "";
    for (int k = 1; k <= 2 && pass; ++k) {
        for (unsigned seed : {44u, 52u}) {
            // A visible commutator keeps the smallest-t errors above the
            // floating-point floor so the fit sees the asymptotic regime.
            const HamiltonianSum h = random_noncommuting_sum(3, 3, seed, 0.5);
            const StagedProductFormula pf = suzuki(k, 3);
            std::vector<double> lx, ly;
            for (int j = 0; j <= 5; ++j) {
                const double t = 0.2 * std::pow(2.0, -j);
                lx.push_back(std::log(t));
                ly.push_back(std::log(formula_error(h, pf, t)));
            }
            const double slope = fit_slope(lx, ly);
            if (std::abs(slope - (2 * k + 1)) > 0.3) {
                pass = false;
                std::snprintf(detail, sizeof detail, "(k=%d seed=%u slope=%.2f)", k, seed,
                              slope);
                break;
            }
            if (k == 2 && seed == 52u)
                std::snprintf(detail, sizeof detail, "(slopes within 2k+1 +/- 0.3)");
        }
    }
    report(1, "trotter-order-scaling", pass, detail);
}

// --- 2: even error series -----------------------------------------------------
void criterion_2() {
    const InterleavedCircuit c = random_circuit(3, 4, 3, 71);
    const StateVector psi = StateVector::zero(3);
    const Observable obs = Observable::from_dense(PauliString("ZIX").to_dense());
    const double exact = exact_expectation(c, psi, obs);
    auto [est, rep] = extrapolated_estimate(c, psi, obs, 1, 1e-3, EvalMode::exact_read());
    // Leading exponent of |f(s) - f(0)| from the coarsest nodes.
    std::vector<double> lx, ly;
    for (size_t i = rep.nodes.size() - 4; i < rep.nodes.size(); ++i) {
        lx.push_back(std::log(rep.nodes[i].s));
        ly.push_back(std::log(std::abs(rep.nodes[i].values[0] - exact) + 1e-300));
    }
    const double slope = fit_slope(lx, ly);
    const bool pass = slope >= 1.8 && rep.residual_even < 10.0 * rep.residual_odd;
    char detail[160];
    std::snprintf(detail, sizeof detail, "(exponent=%.2f residual even=%.1e odd=%.1e)",
                  slope, rep.residual_even, rep.residual_odd);
    report(2, "even-error-series", pass, detail);
}

// --- 3: extrapolation exactness ----------------------------------------------
void criterion_3() {
    bool pass = true;
    char detail[128] = "(exact to 1e-9, weights consistent)";
    for (int m = 1; m <= 6 && pass; ++m) {
        const ExtrapolationScheme s = build_scheme(m, 1.0, SchemeVariant::even);
        double wsum = 0.0;
        for (double w : s.weights) wsum += w;
        if (std::abs(wsum - 1.0) > 1e-12) pass = false;
        const std::vector<double> vw = vandermonde_weights(s);
        for (int i = 0; i < m; ++i)
            if (std::abs(vw[i] - s.weights[i]) > 1e-9) pass = false;
        for (int deg2 = 0; deg2 < m && pass; ++deg2) {
            std::vector<std::pair<double, double>> samples;
            for (int i = 0; i < m; ++i) {
                const double x = s.step(i);
                double v = -0.3;
                for (int j = 1; j <= deg2; ++j) v += (j % 2 ? 0.8 : -1.1) * std::pow(x, 2 * j);
                samples.push_back({x, v});
            }
            if (std::abs(extrapolate(s, samples) + 0.3) > 1e-9) {
                pass = false;
                std::snprintf(detail, sizeof detail, "(m=%d deg=%d off)", m, 2 * deg2);
            }
        }
    }
    report(3, "extrapolation-exactness", pass, detail);
}

// --- 4: step-filter estimation end to end ------------------------------------
void criterion_4() {
    const ApproximationReport sr = shifted_sign(0.0, 1.0, 0.01);
    const GQSPAngles angles = synthesize_angles(sr.polynomial);
    const Eigen::MatrixXcd od = PauliString("ZXIZ").to_dense();
    Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
    p0(0, 0) = 1.0;
    const Observable obs = Observable::from_dense(kron(p0, od));
    int ok = 0;
    double worst = 0.0;
    for (unsigned seed = 0; seed < 10; ++seed) {
        std::mt19937 rng(500 + seed);
        std::uniform_real_distribution<double> angle(-1.5, 1.5);
        HamiltonianSum h = random_noncommuting_sum(4, 4, 700 + seed * 13);
        const double lam = lambda_one(h);
        for (auto& t : h.terms) t.coeff /= lam;  // eigenphases within [-1, 1]
        GateProgram prep;
        for (int q = 0; q < 4; ++q)
            prep.ops.push_back(GateOp::u2(q, U2Rotation{angle(rng), angle(rng), 0.0}));
        CircuitBuilder cb(5);
        cb.add_gates(prep);
        cb.add_circuit(build_circuit(angles, h));
        const InterleavedCircuit full = cb.build(1);

        const Eigen::MatrixXcd u =
            operator_function_oracle(h, [](double x) { return std::polar(1.0, x); });
        const Eigen::MatrixXcd fu = sr.polynomial.eval_matrix(u);
        StateVector ps = StateVector::zero(4);
        apply_program(ps, prep);
        const Eigen::VectorXcd fv = fu * ps.amps;
        const double ref = (fv.adjoint() * od * fv)(0).real();

        auto [est, rep] = extrapolated_estimate(full, StateVector::zero(5), obs, 1, 1e-3,
                                                EvalMode::exact_read());
        const double err = std::abs(est - ref);
        worst = std::max(worst, err);
        if (err <= 1e-3 * obs.norm) ++ok;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "(%d/10 within 1e-3, worst=%.1e)", ok, worst);
    report(4, "step-filter-pipeline", ok == 10, detail);
}

// --- 5: polynomial block synthesis -------------------------------------------
void criterion_5() {
    const HamiltonianSum h = random_noncommuting_sum(3, 3, 15);
    const Eigen::MatrixXcd u =
        operator_function_oracle(h, [](double x) { return std::polar(1.0, x); });
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::uniform_int_distribution<int> degd(1, 8);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int d = degd(rng);
        std::vector<cplx> coeffs(2 * d + 1);
        for (auto& a : coeffs) a = cplx(c(rng), c(rng));
        LaurentPolynomial p(d, coeffs);
        p = p.scaled(0.85 / p.sup_circle());
        worst = std::max(worst, verify_block(synthesize_angles(p), u, p));
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "(20 trials, worst residual=%.1e)", worst);
    report(5, "block-synthesis-residual", worst <= 1e-8, detail);
}

// --- 6: approximation library grids ------------------------------------------
void criterion_6() {
    bool pass = true;
    char detail[160] = "";
    int count = 0;
    auto certify = [&](const ApproximationReport& r, double eps, const char* tag) {
        ++count;
        if (!(r.measured_sup_error <= eps && r.circle_sup_norm <= 1.0 + 1e-9)) {
            pass = false;
            if (!detail[0])
                std::snprintf(detail, sizeof detail, "(%s: err=%.1e sup=%.6f)", tag,
                              r.measured_sup_error, r.circle_sup_norm);
        }
    };
    for (double dp : {0.2, 0.4, 0.6, 0.8})
        for (double ep : {1e-1, 1e-2, 1e-3}) certify(sign_approx(dp, ep), ep, "sign");
    for (double mu : {-0.5, 0.0, 0.5})
        for (double dl : {0.3, 0.6})
            for (double ep : {1e-2, 1e-3}) certify(shifted_sign(mu, dl, ep), ep, "step");
    for (double t : {0.3, 0.6, 0.9})
        for (double dl : {0.1, 0.2})
            for (double ep : {1e-2, 1e-3}) certify(rectangle(t, dl, ep), ep, "rect");
    for (double dl : {0.1, 0.25, 0.5})
        for (double ep : {1e-2, 1e-3, 1e-4, 1e-5}) certify(filter(dl, ep), ep, "filter");
    for (double kp : {1.5, 2.0, 4.0, 8.0})
        for (double ep : {1e-2, 1e-3, 1e-4}) certify(inverse(kp, ep).first, ep, "inverse");
    for (double bt : {2.0, 3.0, 4.0, 8.0})
        for (double ep : {1e-2, 1e-3, 1e-4}) certify(exponential(bt, ep), ep, "exp");
    {
        // Each pair keeps |q| <= 1 on the full overshoot interval [-1-d, 1+d].
        const std::vector<std::pair<std::vector<double>, double>> combos = {
            {{0.0, 0.7}, 0.3},
            {{0.0, 0.7}, 0.4},
            {{0.9, 0.0}, 0.1},
            {{0.5}, 0.3},
            {{0.5}, 0.5},
            {{0.0, -3.0 / 9.5, 0.0, 4.0 / 9.5}, 0.3},
            {{0.0, -3.0 / 9.5, 0.0, 4.0 / 9.5}, 0.5},
            {{0.0, 0.0, 0.6}, 0.2},
            {{0.0, 0.0, 0.6}, 0.25},
            {{0.0, 0.0, 0.0, 0.3}, 0.3},
            {{0.0, 0.0, 0.0, 0.3}, 0.4},
            {{0.4, 0.0, 0.4}, 0.2}};
        for (const auto& [q, de] : combos)
            certify(poly_to_laurent(q, de, 1e-3), 1e-3, "transfer");
    }
    // Degree scaling of the filter between eps and eps^2.
    const int da = filter(0.25, 1e-2).polynomial.degree;
    const int db = filter(0.25, 1e-4).polynomial.degree;
    if (double(db) / double(da) > 2.5) {
        pass = false;
        std::snprintf(detail, sizeof detail, "(filter degree ratio %.2f)",
                      double(db) / double(da));
    }
    if (pass)
        std::snprintf(detail, sizeof detail,
                      "(%d grid points certified, filter ratio %.2f)", count,
                      double(db) / double(da));
    report(6, "approximation-certificates", pass, detail);
}

// Shared QLS instances for criteria 7 and 8.
LinearSystemInstance qls_reference_instance() {
    LinearSystemInstance inst;
    inst.qubit_count = 1;
    inst.a_terms = {{PauliString("I"), 0.75}, {PauliString("Z"), 0.25}};
    inst.kappa = 2.0;
    Eigen::Matrix2cd had;
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    inst.b_prep.ops.push_back(GateOp::dense({0}, had));
    inst.observable = Observable::from_dense(PauliString("Z").to_dense());
    return inst;
}

LinearSystemInstance random_qls_instance(std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-0.5, 0.5);
    LinearSystemInstance inst;
    inst.qubit_count = 2;
    for (;;) {
        inst.a_terms = {{PauliString("II"), 1.0},
                        {PauliString("ZI"), coeff(rng)},
                        {PauliString("XZ"), coeff(rng)},
                        {PauliString("IX"), coeff(rng)}};
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
        for (const auto& [p, lam] : inst.a_terms) a += lam * p.to_dense();
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        const double smax = svd.singularValues().maxCoeff();
        const double smin = svd.singularValues().minCoeff();
        if (smin / smax < 0.25) continue;
        for (auto& [p, lam] : inst.a_terms) lam /= smax;
        inst.kappa = smax / smin;
        break;
    }
    Eigen::VectorXcd b4(4);
    b4 << 0.5, 0.5, 0.5, 0.5;
    inst.b_prep.ops.push_back(GateOp::state_prep({0, 1}, b4));
    inst.observable = Observable::from_dense(PauliString("ZI").to_dense());
    return inst;
}

// --- 7: linear-system pipeline -------------------------------------------------
void criterion_7() {
    auto [est0, rep0] =
        solve_and_estimate(qls_reference_instance(), 1e-2, 1, EvalMode::exact_read());
    g_shared.qls_ancillas = rep0.ancilla_count;
    const bool base_ok = std::abs(est0 + 0.6) <= 1e-2;

    std::mt19937 rng(7);
    int ok = 0;
    for (int seed = 0; seed < 10; ++seed) {
        const LinearSystemInstance inst = random_qls_instance(rng);
        auto [est, rep] = solve_and_estimate(inst, 1e-2, 1, EvalMode::exact_read());
        if (std::abs(est - rep.classical_reference) <= 1e-2) ++ok;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "(reference est=%.4f, random %d/10 within 1e-2)",
                  est0, ok);
    report(7, "linear-system-pipeline", base_ok && ok >= 9, detail);
}

// --- 8: adiabatic overlap ------------------------------------------------------
void criterion_8() {
    std::mt19937 rng(7);
    std::vector<LinearSystemInstance> instances = {qls_reference_instance()};
    for (int i = 0; i < 3; ++i) instances.push_back(random_qls_instance(rng));
    bool pass = true;
    double worst8 = 1.0;
    for (const auto& inst : instances) {
        const int n = inst.qubit_count;
        auto overlap_at = [&](int t_steps) {
            StateVector st = StateVector::zero(n + 2);
            st.amps.head(Eigen::Index(1) << n) = inst.b_vector();
            apply_circuit_exact(adiabatic_evolve(inst, t_steps), st);
            Eigen::VectorXcd target =
                Eigen::VectorXcd::Zero(Eigen::Index(1) << (n + 2));
            target.segment(Eigen::Index(1) << n, Eigen::Index(1) << n) = inst.solution();
            return std::abs(target.dot(st.amps));
        };
        double prev = 0.0;
        for (double mult : {2.0, 4.0, 8.0, 16.0}) {
            const int t = int(std::ceil(mult * inst.kappa));
            const double cur = overlap_at(t);
            if (cur < prev - 1e-6) pass = false;
            if (mult == 8.0) {
                worst8 = std::min(worst8, cur);
                if (cur < 0.5) pass = false;
            }
            prev = cur;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "(min overlap at T=8k: %.3f, nondecreasing)",
                  worst8);
    report(8, "adiabatic-overlap", pass, detail);
}

// --- 9: ground-state pipeline --------------------------------------------------
void criterion_9() {
    bool pass = true;
    char detail[160] = "";
    // Single-qubit task.
    GroundStateTask t1;
    t1.h.qubit_count = 1;
    t1.h.terms.push_back(HermitianTerm::make_pauli(PauliString("Z"), -0.5));
    t1.mu = 0.0;
    t1.delta = 1.0;
    t1.gamma = 0.85;
    Eigen::Matrix2cd ry;
    const double th = M_PI / 6.0;
    ry << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    t1.guess_prep.ops.push_back(GateOp::dense({0}, ry));
    t1.observable = Observable::from_dense(PauliString("Z").to_dense());
    auto [e1, r1] = estimate_property(t1, 1e-2, 1, EvalMode::exact_read());
    g_shared.gse_ancillas_incoherent = r1.ancilla_count;
    if (std::abs(e1 - r1.dense_reference) > 1e-2 || r1.post_filter_overlap < 1.0 - 1e-2)
        pass = false;

    // Coherent read of the same task (extra ancilla for the interference test).
    auto [e1c, r1c] = estimate_property(
        t1, 1e-2, 1, EvalMode::coherent(Eigen::MatrixXcd(), 1.0, 1e-2, 0.05, 11));
    g_shared.gse_ancillas_coherent = r1c.ancilla_count;
    if (std::abs(e1c - r1c.dense_reference) > 5e-2) pass = false;

    // Gapped 3-qubit ferromagnetic chain in a transverse field.
    GroundStateTask t3;
    t3.h.qubit_count = 3;
    t3.h.terms.push_back(HermitianTerm::make_pauli(PauliString("ZZI"), -0.05));
    t3.h.terms.push_back(HermitianTerm::make_pauli(PauliString("IZZ"), -0.05));
    for (const char* w : {"XII", "IXI", "IIX"})
        t3.h.terms.push_back(HermitianTerm::make_pauli(PauliString(w), -0.25));
    // Dense spectrum: E0 = -0.755, E1 = -0.323 (gap 0.43).
    t3.mu = -0.54;
    t3.delta = 0.4;
    t3.gamma = 0.9;
    Eigen::Matrix2cd had;
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    for (int q = 0; q < 3; ++q) t3.guess_prep.ops.push_back(GateOp::dense({q}, had));
    t3.observable = Observable::from_dense(PauliString("IXI").to_dense());
    auto [e3, r3] = estimate_property(t3, 1e-2, 1, EvalMode::exact_read());
    if (std::abs(e3 - r3.dense_reference) > 1e-2 || r3.post_filter_overlap < 1.0 - 1e-2)
        pass = false;

    std::snprintf(detail, sizeof detail,
                  "(1q err=%.1e, 3q err=%.1e, post-filter %.4f/%.4f)",
                  std::abs(e1 - r1.dense_reference), std::abs(e3 - r3.dense_reference),
                  r1.post_filter_overlap, r3.post_filter_overlap);
    report(9, "ground-state-pipeline", pass, detail);
}

// --- 10: statistical estimation paths -----------------------------------------
void criterion_10() {
    // Incoherent sampling with automatic Hoeffding allocation.
    const InterleavedCircuit c = random_circuit(2, 2, 2, 33);
    const StateVector psi = StateVector::zero(2);
    const Observable obs = Observable::from_dense(PauliString("ZI").to_dense());
    const double exact = exact_expectation(c, psi, obs);
    int ok_shots = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        auto [est, rep] =
            extrapolated_estimate(c, psi, obs, 1, 0.05, EvalMode::shots(0, 9000 + seed));
        if (std::abs(est - exact) <= 0.05 * obs.norm) ++ok_shots;
    }

    int ok_iqae = 0;
    long long qmax = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        const IqaeResult r = iqae_from_amplitude(0.25, 1e-2, 0.05, 2000 + seed);
        if (std::abs(r.estimate - 0.25) <= 1e-2) ++ok_iqae;
        qmax = std::max(qmax, r.oracle_queries);
    }
    const double envelope = 25.0 * 100.0 * std::log(std::log(100.0) / 0.05);
    char detail[128];
    std::snprintf(detail, sizeof detail, "(shots %d/100, iqae %d/100, qmax=%lld)",
                  ok_shots, ok_iqae, qmax);
    report(10, "statistical-paths",
           ok_shots >= 90 && ok_iqae >= 95 && double(qmax) <= envelope, detail);
}

// --- 11: perturbation bound -----------------------------------------------------
void criterion_11() {
    std::mt19937 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int dim = 8;
    auto random_matrix = [&] {
        Eigen::MatrixXcd m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
        return m;
    };
    bool pass = true;
    double tightest = 1e300;
    for (int trial = 0; trial < 200 && pass; ++trial) {
        Eigen::MatrixXcd p = random_matrix();
        p /= spectral_norm(p) / std::uniform_real_distribution<double>(0.1, 1.0)(rng);
        Eigen::MatrixXcd q =
            p + std::pow(10.0, -std::uniform_real_distribution<double>(0.0, 6.0)(rng)) *
                    random_matrix();
        const double qs = spectral_norm(q);
        if (qs > 1.0) q /= qs;  // both contractions
        Eigen::MatrixXcd rho = random_matrix();
        rho = rho * rho.adjoint();
        rho /= rho.trace().real();
        Eigen::MatrixXcd o = random_matrix();
        o = (o + o.adjoint()) / 2.0;
        const double lhs = std::abs(((o * p * rho * p.adjoint()).trace() -
                                     (o * q * rho * q.adjoint()).trace())
                                        .real());
        const double rhs = 3.0 * spectral_norm(o) * spectral_norm(p - q);
        if (lhs > rhs) pass = false;
        if (rhs > 1e-300) tightest = std::min(tightest, rhs / std::max(lhs, 1e-300));
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "(200 trials, tightest margin %.2f)", tightest);
    report(11, "perturbation-bound", pass, detail);
}

// --- 12: resource accounting ----------------------------------------------------
void criterion_12() {
    bool pass = true;
    // Per-node steps r_i / s0 for a direct schedule.
    const InterleavedCircuit c = random_circuit(2, 3, 2, 3);
    const ExtrapolationScheme s = build_scheme(3, 0.5, SchemeVariant::even);
    const ResourceReport rr = resource_report(c, s, 1);
    for (int i = 0; i < 3; ++i)
        if (rr.per_node_steps[i] != 2 * s.nodes[i]) pass = false;

    // Ancilla accounting across the pipelines exercised above.
    LaurentPolynomial z(1, {cplx(0, 0), cplx(0, 0), cplx(0.9, 0)});
    const InterleavedCircuit g = build_circuit(synthesize_angles(z), random_pauli_sum(2, 2, 8));
    const bool anc_ok = g.ancilla_count == 1 && g_shared.qls_ancillas == 4 &&
                        g_shared.gse_ancillas_incoherent == 2 &&
                        g_shared.gse_ancillas_coherent == 3;
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "(steps exact, ancillas gqsp=%d qls=%d gse=%d/%d)", g.ancilla_count,
                  g_shared.qls_ancillas, g_shared.gse_ancillas_incoherent,
                  g_shared.gse_ancillas_coherent);
    report(12, "resource-accounting", pass && anc_ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d/12 criteria passed\n", 12 - g_failures);
    return g_failures;
}
