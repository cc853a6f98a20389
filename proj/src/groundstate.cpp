#include "itrex/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itrex {

Eigen::VectorXcd GroundStateTask::ground_state() const {
    const SpectralDecomposition sd = spectral_decomposition(h.to_dense());
    Eigen::Index i0 = 0;
    sd.eigenvalues.minCoeff(&i0);
    return sd.eigenvectors.col(i0);
}

void GroundStateTask::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("groundstate: gamma not in (0,1]");
    if (!(delta > 0.0)) throw std::invalid_argument("groundstate: delta must be positive");
    const Eigen::MatrixXcd hd = h.to_dense();
    if (spectral_norm(hd) > 1.0 + 1e-9)
        throw std::invalid_argument("groundstate: spectrum must lie in [-1, 1]");
    const SpectralDecomposition sd = spectral_decomposition(hd);
    std::vector<double> ev(sd.eigenvalues.data(), sd.eigenvalues.data() + sd.eigenvalues.size());
    std::sort(ev.begin(), ev.end());
    const double xi0 = ev[0];
    double xi1 = ev.back();
    for (double e : ev)
        if (e > xi0 + 1e-9) { xi1 = e; break; }
    if (!(xi0 <= mu - 0.5 * delta + 1e-9 && mu + 0.5 * delta <= xi1 + 1e-9))
        throw std::invalid_argument("groundstate: mu/delta do not sandwich the gap");

    StateVector guess = StateVector::zero(h.qubit_count);
    apply_program(guess, guess_prep);
    Eigen::Index i0 = 0;
    sd.eigenvalues.minCoeff(&i0);
    if (std::abs(sd.eigenvectors.col(i0).dot(guess.amps)) < gamma - 1e-9)
        throw std::invalid_argument("groundstate: guess overlap below the declared gamma");
}

InterleavedCircuit build_filter_circuit(const GroundStateTask& task, double eps) {
    task.validate();
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("groundstate: eps not in (0,1)");
    const int n = task.h.qubit_count;

    const double filt_eps = std::min(task.gamma * eps / 12.0, 0.1);
    ApproximationReport rep = shifted_sign(task.mu, task.delta, filt_eps);
    GQSPAngles angles = synthesize_angles(rep.polynomial);
    InterleavedCircuit gqsp_circ = build_circuit(angles, task.h);  // n+1 qubits

    GateProgram prep = task.guess_prep;  // ancilla stays |0>
    InterleavedCircuit amplified = fixed_point_amplify(
        gqsp_circ, prep, {n}, 0.9 * task.gamma, std::min(0.5 * eps, 0.05));
    amplified.ancilla_count = 2;
    return amplified;
}

std::pair<double, GroundStateReport> estimate_property(const GroundStateTask& task, double eps,
                                                       int k, const EvalMode& mode,
                                                       int workers) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("groundstate: eps not in (0, 1/2)");
    const int n = task.h.qubit_count;
    GroundStateReport rep;

    const Eigen::VectorXcd v0 = task.ground_state();
    rep.dense_reference = v0.dot(task.observable.matrix * v0).real();

    InterleavedCircuit circ = build_filter_circuit(task, eps);
    rep.filter_degree = circ.segment_count();

    {
        StateVector st = StateVector::zero(n + 1);
        apply_circuit_exact(circ, st);
        double flagged = 0.0;
        const Eigen::Index dim_sys = Eigen::Index(1) << n;
        for (Eigen::Index b = 0; b < dim_sys; ++b) flagged += std::norm(st.amps[b]);
        rep.post_filter_overlap = std::sqrt(flagged);
        rep.overlap_low = rep.post_filter_overlap < 0.5 * task.gamma;
    }

    const Eigen::Index dim_sys = Eigen::Index(1) << n;
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    const Eigen::MatrixXcd num_obs = kron(p0, task.observable.matrix);
    const Eigen::MatrixXcd flag_obs = kron(p0, Eigen::MatrixXcd::Identity(dim_sys, dim_sys));

    if (mode.kind == EvalMode::Kind::coherent) {
        rep.ancilla_count = 3;  // Hadamard-test ancilla on top of the two above
        EvalMode em = mode;
        if (em.obs_unitary.size() == 0) {
            // The amplified state is (close to) |0>|v0>, so the Hadamard test
            // against I (x) O/||O|| reads out <v0|O|v0>/||O|| directly.  This
            // needs O/||O|| unitary; refuse otherwise.
            const double g = std::max(task.observable.norm, 1e-12);
            const Eigen::MatrixXcd u = task.observable.matrix / g;
            if ((u.adjoint() * u -
                 Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm() > 1e-8)
                throw std::invalid_argument(
                    "groundstate: coherent mode needs the observable as a unitary block");
            em.obs_unitary =
                kron(Eigen::MatrixXcd::Identity(2, 2), u);
            em.gamma = g;
        }
        auto [est, er] = extrapolated_estimate(circ, StateVector::zero(n + 1),
                                               Observable::from_dense(num_obs), k, eps, em,
                                               workers);
        rep.extrapolation = std::move(er);
        rep.estimate = est;
    } else {
        rep.ancilla_count = 2;
        std::vector<Observable> obs = {Observable::from_dense(num_obs),
                                       Observable::from_dense(flag_obs)};
        rep.extrapolation = extrapolated_estimate_multi(circ, StateVector::zero(n + 1), obs, k,
                                                        eps, mode, workers);
        rep.estimate = rep.extrapolation.estimates[0] /
                       std::max(rep.extrapolation.estimates[1], 1e-12);
    }
    rep.extrapolation.ancilla_count = rep.ancilla_count;
    return {rep.estimate, rep};
}

}  // namespace itrex
