#include "itrex/gates.hpp"

namespace itrex {

GateOp GateOp::u2(int qubit, const U2Rotation& r) {
    return {{qubit}, r.matrix()};
}

GateOp GateOp::dense(std::vector<int> qubits, Eigen::MatrixXcd u) {
    const Eigen::Index dim = Eigen::Index(1) << qubits.size();
    if (u.rows() != dim || u.cols() != dim)
        throw std::invalid_argument("GateOp: matrix dimension does not match qubit list");
    if ((u * u.adjoint() - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("GateOp: matrix is not unitary to 1e-10");
    return {std::move(qubits), std::move(u)};
}

GateOp GateOp::state_prep(std::vector<int> qubits, const Eigen::VectorXcd& column) {
    const Eigen::Index dim = Eigen::Index(1) << qubits.size();
    if (column.size() != dim) throw std::invalid_argument("state_prep: dimension mismatch");
    Eigen::VectorXcd v = column / column.norm();
    // Householder reflector taking e_0 to v (up to phase), then fix the phase.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::VectorXcd w = v;
    const cplx v0 = w(0);
    const double v0abs = std::abs(v0);
    const cplx phase = v0abs > 1e-14 ? v0 / v0abs : cplx(1.0, 0.0);
    w(0) += phase;
    const double wn2 = w.squaredNorm();
    if (wn2 > 1e-28) u -= (2.0 / wn2) * (w * w.adjoint());
    u *= -phase;  // now u * e_0 = v exactly (up to rounding)
    return dense(std::move(qubits), std::move(u));
}

GateProgram GateProgram::inverse() const {
    GateProgram out;
    out.ops.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        out.ops.push_back({it->qubits, it->u.adjoint()});
    return out;
}

void apply_gate(StateVector& state, const GateOp& g) {
    apply_dense(state, g.qubits, g.u);
}

void apply_program(StateVector& state, const GateProgram& prog) {
    for (const auto& g : prog.ops) apply_gate(state, g);
}

Eigen::MatrixXcd program_dense(const GateProgram& prog, int qubit_count) {
    const Eigen::Index dim = Eigen::Index(1) << qubit_count;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& g : prog.ops) {
        // Apply the gate to each column.
        for (Eigen::Index c = 0; c < dim; ++c) {
            StateVector col(qubit_count, m.col(c));
            apply_gate(col, g);
            m.col(c) = col.amps;
        }
    }
    return m;
}

}  // namespace itrex
