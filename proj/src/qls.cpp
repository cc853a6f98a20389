#include "itrex/qls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itrex {

Eigen::MatrixXcd LinearSystemInstance::a_dense() const {
    const Eigen::Index dim = Eigen::Index(1) << qubit_count;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, lam] : a_terms) a += lam * p.to_dense();
    return a;
}

Eigen::VectorXcd LinearSystemInstance::b_vector() const {
    StateVector st = StateVector::zero(qubit_count);
    apply_program(st, b_prep);
    return st.amps;
}

Eigen::VectorXcd LinearSystemInstance::solution() const {
    const Eigen::VectorXcd x = a_dense().fullPivLu().solve(b_vector());
    return x / x.norm();
}

void LinearSystemInstance::validate() const {
    if (kappa < 1.0) throw std::invalid_argument("qls: kappa must be at least 1");
    for (const auto& [p, lam] : a_terms)
        if (p.size() != qubit_count)
            throw std::invalid_argument("qls: Pauli word length does not match qubit count");
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a_dense());
    const double smax = svd.singularValues().maxCoeff();
    const double smin = svd.singularValues().minCoeff();
    if (std::abs(smax - 1.0) > 0.02)
        throw std::invalid_argument("qls: ||A|| must be 1 within 2%");
    if (smin < 1.0 / kappa - 1e-9)
        throw std::invalid_argument("qls: singular values fall below 1/kappa");
}

double schedule_f(double s, double kappa) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("schedule_f: s not in [0,1]");
    if (kappa < 1.0) throw std::invalid_argument("schedule_f: kappa must be at least 1");
    if (kappa - 1.0 < 1e-12) return s;  // limit of the closed form
    const double u = 1.0 + s * (std::sqrt(kappa) - 1.0);
    return kappa / (kappa - 1.0) * (1.0 - 1.0 / (u * u));
}

namespace {

// Dense A(f) on n+1 qubits (qubit n = embedding ancilla, high bit).
Eigen::MatrixXcd af_dense(const LinearSystemInstance& inst, double f) {
    const int n = inst.qubit_count;
    const Eigen::Index dim = Eigen::Index(1) << (n + 1);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim / 2, dim / 2);
    a += (1.0 - f) * kron(pauli_letter_matrix('Z'), eye);
    for (const auto& [p, lam] : inst.a_terms) {
        if (std::abs(lam) < 1e-15) continue;
        const Eigen::Matrix2cd qj = (lam.real() * pauli_letter_matrix('X') -
                                     lam.imag() * pauli_letter_matrix('Y'));
        a += f * kron(qj, p.to_dense());
    }
    return a;
}

PauliString extended_word(const PauliString& base, int n, char at_n, char at_n1) {
    std::string w = base.word.empty() ? std::string(n, 'I') : base.word;
    w.push_back(at_n);
    w.push_back(at_n1);
    return PauliString(w);
}

}  // namespace

HamiltonianSum build_H(const LinearSystemInstance& inst, double s) {
    const int n = inst.qubit_count;
    const double f = schedule_f(s, inst.kappa);
    HamiltonianSum h;
    h.qubit_count = n + 2;

    const PauliString id_sys(std::string(n, 'I'));
    if (std::abs(1.0 - f) > 1e-15)
        h.terms.push_back(
            HermitianTerm::make_pauli(extended_word(id_sys, n, 'Z', 'X'), 1.0 - f));
    for (const auto& [p, lam] : inst.a_terms) {
        if (std::abs(f * lam.real()) > 1e-15)
            h.terms.push_back(
                HermitianTerm::make_pauli(extended_word(p, n, 'X', 'X'), f * lam.real()));
        if (std::abs(f * lam.imag()) > 1e-15)
            h.terms.push_back(
                HermitianTerm::make_pauli(extended_word(p, n, 'Y', 'X'), -f * lam.imag()));
    }

    // Rank-2 correction -[[0, A(f)|0,b><0,b|], [h.c., 0]] restoring Q_b.
    const Eigen::Index half = Eigen::Index(1) << (n + 1);
    Eigen::VectorXcd e0b = Eigen::VectorXcd::Zero(half);
    e0b.head(Eigen::Index(1) << n) = inst.b_vector();  // qubit n = 0
    const Eigen::VectorXcd w = af_dense(inst, f) * e0b;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(2 * half, 2 * half);
    r.topRightCorner(half, half) = w * e0b.adjoint();
    r.bottomLeftCorner(half, half) = e0b * w.adjoint();
    std::vector<int> all_q(n + 2);
    for (int q = 0; q < n + 2; ++q) all_q[q] = q;
    h.terms.push_back(HermitianTerm::make_block(all_q, -r));
    return h;
}

InterleavedCircuit adiabatic_evolve(const LinearSystemInstance& inst, int t_steps) {
    if (t_steps < 1) throw std::invalid_argument("adiabatic_evolve: T must be at least 1");
    CircuitBuilder b(inst.qubit_count + 2);
    for (int m = 0; m < t_steps; ++m)
        b.add_segment(build_H(inst, double(m) / t_steps), +1);
    return b.build(2);
}

std::pair<double, QlsReport> solve_and_estimate(const LinearSystemInstance& inst, double eps,
                                                int k, const EvalMode& mode, int workers) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("qls: eps not in (0, 1/2)");
    inst.validate();
    const int n = inst.qubit_count;
    QlsReport rep;
    rep.t_steps = static_cast<int>(std::ceil(8.0 * inst.kappa));

    // Classical reference and the adiabatic-stage overlap diagnostic.
    const Eigen::VectorXcd x = inst.solution();
    rep.classical_reference = x.dot(inst.observable.matrix * x).real();
    {
        const Eigen::Index half = Eigen::Index(1) << (n + 1);
        StateVector st = StateVector::zero(n + 2);
        st.amps.head(Eigen::Index(1) << n) = inst.b_vector();
        InterleavedCircuit adia = adiabatic_evolve(inst, rep.t_steps);
        apply_circuit_exact(adia, st);
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(2 * half);
        target.segment(Eigen::Index(1) << n, Eigen::Index(1) << n) = x;  // |0,1,x>
        rep.overlap_after_adiabatic = std::abs(target.dot(st.amps));
    }

    // Eigenstate filter on H(1) via GQSP.
    const double gap = std::min(1.0 / inst.kappa, 0.99);
    ApproximationReport filt = filter(gap, eps);
    rep.filter_degree = filt.polynomial.degree;
    GQSPAngles angles = synthesize_angles(filt.polynomial);
    HamiltonianSum h1 = build_H(inst, 1.0);
    InterleavedCircuit gqsp_circ = build_circuit(angles, h1);  // n+3 qubits

    // Compose: prepare |0,0,b>, evolve adiabatically, then filter.
    CircuitBuilder cb(n + 3);
    cb.add_gates(inst.b_prep);
    for (int m = 0; m < rep.t_steps; ++m) {
        HamiltonianSum hm = build_H(inst, double(m) / rep.t_steps);
        hm.qubit_count = n + 3;  // GQSP ancilla stays untouched
        for (auto& t : hm.terms)
            if (t.is_pauli()) t.pauli->word.push_back('I');
        cb.add_segment(std::move(hm), +1);
    }
    cb.add_circuit(gqsp_circ);
    InterleavedCircuit full = cb.build(4);

    // Success pattern: GQSP ancilla 0, block ancilla 0, embedding ancilla 1.
    const Eigen::Index dim_sys = Eigen::Index(1) << n;
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero(), p1 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const Eigen::MatrixXcd flag_obs =
        kron(p0, kron(p0, kron(p1, Eigen::MatrixXcd::Identity(dim_sys, dim_sys))));
    const Eigen::MatrixXcd num_obs = kron(p0, kron(p0, kron(p1, inst.observable.matrix)));

    std::vector<Observable> obs = {Observable::from_dense(num_obs),
                                   Observable::from_dense(flag_obs)};
    rep.extrapolation = extrapolated_estimate_multi(full, StateVector::zero(n + 3), obs, k,
                                                    eps, mode, workers);
    rep.filter_acceptance = rep.extrapolation.estimates[1];
    rep.low_acceptance = rep.filter_acceptance < 0.05;
    rep.estimate = rep.extrapolation.estimates[0] /
                   std::max(rep.filter_acceptance, 1e-12);
    rep.ancilla_count = 4;
    return {rep.estimate, rep};
}

}  // namespace itrex
