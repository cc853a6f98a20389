#pragma once

#include "itrex/interleaved.hpp"
#include "itrex/laurent.hpp"

namespace itrex {

// Rotation angles realizing the block encoding of P(U):
//   W = R_2d c1-U^dag R_{2d-1} ... R_{d+1} c1-U^dag R_d c0-U ... R_1 c0-U R_0
// with R_j = R(thetas[j], phis[j], 0) for j >= 1 and
// R_0 = R(thetas[0], phis[0], gamma_phase).
struct GQSPAngles {
    std::vector<double> thetas, phis;  // length 2d+1
    double gamma_phase = 0.0;
    int degree = 0;
    double scale_applied = 1.0;   // rescale folded into the target polynomial
    double strip_residual = 0.0;  // worst dropped coefficient during synthesis
};

// Completion partner: |p|^2 + |q|^2 = 1 on the circle.
LaurentPolynomial complete(const LaurentPolynomial& p);

GQSPAngles synthesize_angles(const LaurentPolynomial& p);

// Dense (2*dim x 2*dim) matrix of the rotation/controlled-evolution sequence;
// the ancilla is the high bit, so the top-left block is P(u).
Eigen::MatrixXcd gqsp_dense(const GQSPAngles& angles, const Eigen::MatrixXcd& u);

// || top-left block - P(u) ||.
double verify_block(const GQSPAngles& angles, const Eigen::MatrixXcd& u,
                    const LaurentPolynomial& p);

// Interleaved circuit on n+1 qubits (ancilla = qubit n) with segment
// Hamiltonians |0><0| (x) H and -|1><1| (x) H, decomposed term-wise.
InterleavedCircuit build_circuit(const GQSPAngles& angles, const HamiltonianSum& h);

}  // namespace itrex
