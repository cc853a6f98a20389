#pragma once

#include "itrex/interleaved.hpp"

namespace itrex {

// Shot budget per extrapolation node so that the weighted sum of m node
// estimates lands within eps * obs_norm of its mean with probability
// >= 1 - delta_total/3 (two-sided Hoeffding, half the budget spent here).
long long hoeffding_shots(double eps, double b_norm1, double obs_norm, int m, double delta_total);

// Fixed-point amplitude amplification.  Given a circuit c that maps
// prep|0...0> to a state whose component with all `flag_qubits` equal to
// |0> has amplitude >= eta, returns the augmented circuit (input |0...0>)
// whose flagged amplitude is >= 1 - eps.  The two reflections per round are
// rank-one / projector phase exponentials expressed as Hamiltonian segments,
// so the result is again an interleaved circuit.
InterleavedCircuit fixed_point_amplify(const InterleavedCircuit& c, const GateProgram& prep,
                                       const std::vector<int>& flag_qubits, double eta,
                                       double eps);

struct IqaeResult {
    double estimate = 0.0;
    long long oracle_queries = 0;  // sum over rounds of N_i * (2 k_i + 1)
    int rounds = 0;
    bool ci_retry = false;  // a confidence-interval inversion was retried
    std::vector<long long> round_ks;
    std::vector<long long> round_shots;
};

// Iterative amplitude estimation of a known amplitude a = sin^2(theta):
// Grover powers are simulated exactly (outcome probability sin^2((2k+1)theta))
// and sampled with the seeded deterministic stream.
IqaeResult iqae_from_amplitude(double a, double eps, double delta, std::uint64_t seed);

// A circuit together with the measurement pattern defining the "good"
// subspace: the listed qubits must read the paired bit values.
struct AmplitudeCircuit {
    InterleavedCircuit circuit;
    StateVector psi0;
    std::vector<std::pair<int, int>> flags;  // (qubit, required bit)

    // Exact flagged probability of circuit(psi0).
    double amplitude() const;
};

IqaeResult iqae(const AmplitudeCircuit& ac, double eps, double delta, std::uint64_t seed);

}  // namespace itrex
