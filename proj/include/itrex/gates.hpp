#pragma once

#include "itrex/statevector.hpp"

namespace itrex {

// One small unitary acting on an ordered qubit subset (qubits[0] = low bit).
struct GateOp {
    std::vector<int> qubits;
    Eigen::MatrixXcd u;

    static GateOp u2(int qubit, const U2Rotation& r);
    static GateOp dense(std::vector<int> qubits, Eigen::MatrixXcd u);
    // Unitary on `qubits` whose first column is `column` (completed by
    // Householder); maps |0...0> of the subset to the given state.
    static GateOp state_prep(std::vector<int> qubits, const Eigen::VectorXcd& column);
};

// A straight-line sequence of gates; ops[0] acts on the state first.
struct GateProgram {
    std::vector<GateOp> ops;

    bool empty() const { return ops.empty(); }
    GateProgram inverse() const;
};

void apply_gate(StateVector& state, const GateOp& g);
void apply_program(StateVector& state, const GateProgram& prog);
// Dense n-qubit matrix of the program.
Eigen::MatrixXcd program_dense(const GateProgram& prog, int qubit_count);

}  // namespace itrex
