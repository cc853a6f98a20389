#pragma once

#include "itrex/estimation.hpp"
#include "itrex/funcapprox.hpp"
#include "itrex/gqsp.hpp"

namespace itrex {

// A x = b with A = sum_j lambda_j P_j given in the Pauli basis, ||A|| = 1,
// singular values in [1/kappa, 1].  b is given as a preparation program on
// the system qubits; the observable is measured on the normalized solution.
struct LinearSystemInstance {
    int qubit_count = 0;
    std::vector<std::pair<PauliString, cplx>> a_terms;
    double kappa = 1.0;
    GateProgram b_prep;
    Observable observable;

    Eigen::MatrixXcd a_dense() const;
    Eigen::VectorXcd b_vector() const;
    // Normalized classical solution A^{-1} b / ||.||.
    Eigen::VectorXcd solution() const;
    void validate() const;
};

// Adiabatic schedule f(s) = kappa/(kappa-1) (1 - 1/(1 + s(sqrt(kappa)-1))^2).
double schedule_f(double s, double kappa);

// H(s) = [[0, A(f) Q_b], [Q_b A(f), 0]] on n+2 qubits (embedding ancilla =
// qubit n, block ancilla = qubit n+1), decomposed into Pauli terms plus one
// rank-2 dense projector-sandwich term.
HamiltonianSum build_H(const LinearSystemInstance& inst, double s);

// T segments e^{iH(m/T)}, m = 0..T-1, applied in that order.
InterleavedCircuit adiabatic_evolve(const LinearSystemInstance& inst, int t_steps);

struct QlsReport {
    double estimate = 0.0;
    double classical_reference = 0.0;
    double overlap_after_adiabatic = 0.0;
    double filter_acceptance = 0.0;
    bool low_acceptance = false;  // acceptance < 0.05: declared kappa suspect
    int t_steps = 0;
    int filter_degree = 0;
    int ancilla_count = 4;
    ExtrapolationReport extrapolation;
};

// Full pipeline: adiabatic evolution, GQSP eigenstate filter on H(1), and
// post-selected estimation of <x|O|x> via the ratio of two extrapolated
// expectation values (flagged observable over flagged identity).
std::pair<double, QlsReport> solve_and_estimate(const LinearSystemInstance& inst, double eps,
                                                int k, const EvalMode& mode, int workers = 1);

}  // namespace itrex
