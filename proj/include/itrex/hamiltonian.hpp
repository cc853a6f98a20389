#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "itrex/pauli.hpp"

namespace itrex {

// One weighted Hermitian term: either a real-weighted Pauli string or a
// dense Hermitian block over an ordered support subset of the qubits.
struct HermitianTerm {
    // Pauli form
    std::optional<PauliString> pauli;
    double coeff = 0.0;
    // Dense form
    std::vector<int> support;    // qubit indices, support[0] = least significant
    Eigen::MatrixXcd block;      // dimension 2^{|support|}

    static HermitianTerm make_pauli(PauliString p, double c);
    static HermitianTerm make_block(std::vector<int> support, Eigen::MatrixXcd b);

    bool is_pauli() const { return pauli.has_value(); }
    // Spectral norm of the term (|coeff| for Pauli terms).
    double norm() const;
    // Dense embedding into an n-qubit space.
    Eigen::MatrixXcd to_dense(int n) const;
};

struct HamiltonianSum {
    std::vector<HermitianTerm> terms;
    int qubit_count = 0;

    Eigen::MatrixXcd to_dense() const;
    // Throws if the dense total is not Hermitian to 1e-12.
    void check_hermitian() const;
};

// lambda = sum_j ||H_j||.
double lambda_one(const HamiltonianSum& h);

// Sum over all ordered j-tuples of term indices of the spectral norm of the
// right-nested commutator [H_{g1}, [H_{g2}, [...]]].  Dense; n <= 12, j <= 6.
double nested_commutator_norm(const HamiltonianSum& h, int j);

// Generic upper bound on the commutator prefactor: 4 * max_l sum_g ||H_g^(l)||.
double lambda_comm_bound(const std::vector<HamiltonianSum>& circuit_hamiltonians);

// Spectral norm of a general (possibly non-Hermitian) dense matrix.
double spectral_norm(const Eigen::MatrixXcd& m);

// Kronecker product helper (a on the high bits).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace itrex
