#pragma once

#include "itrex/estimation.hpp"
#include "itrex/funcapprox.hpp"
#include "itrex/gqsp.hpp"

namespace itrex {

// Ground-state property estimation task: H with spectrum in [-1, 1], a
// threshold mu separating the ground energy from the rest by the gap delta,
// an initial guess with overlap at least gamma, and the observable.
struct GroundStateTask {
    HamiltonianSum h;
    double mu = 0.0;
    double delta = 0.0;
    double gamma = 0.0;  // asserted lower bound on |<phi0|v0>|
    GateProgram guess_prep;
    Observable observable;

    // Dense ground state (lowest eigenvalue).
    Eigen::VectorXcd ground_state() const;
    void validate() const;
};

// Shifted-sign GQSP filter at accuracy gamma*eps/12, composed with
// fixed-point amplification of the flagged (GQSP ancilla = 0) branch.
// Input is |0...0> on n+1 simulated qubits (the amplification workspace is
// accounted for but realized as rank-structured segments); ancilla_count = 2.
InterleavedCircuit build_filter_circuit(const GroundStateTask& task, double eps);

struct GroundStateReport {
    double estimate = 0.0;
    double dense_reference = 0.0;
    double post_filter_overlap = 0.0;  // flagged amplitude after amplification
    bool overlap_low = false;          // below gamma/2: declared gamma suspect
    int filter_degree = 0;
    int ancilla_count = 2;
    ExtrapolationReport extrapolation;
};

std::pair<double, GroundStateReport> estimate_property(const GroundStateTask& task, double eps,
                                                       int k, const EvalMode& mode,
                                                       int workers = 1);

}  // namespace itrex
