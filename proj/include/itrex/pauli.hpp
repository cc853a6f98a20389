#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace itrex {

using cplx = std::complex<double>;

// A word over {I, X, Y, Z}, one letter per qubit.  Index 0 is qubit 0
// (the least significant bit of a basis-state index).
struct PauliString {
    std::string word;

    PauliString() = default;
    explicit PauliString(std::string w);

    int size() const { return static_cast<int>(word.size()); }
    bool is_identity() const;
    // Qubits with a non-identity letter.
    std::vector<int> support() const;
    // Dense 2^n x 2^n matrix (n = word length).
    Eigen::MatrixXcd to_dense() const;
};

// phase * r == matrix product p * q.  Phase is one of {1, -1, i, -i}.
std::pair<cplx, PauliString> pauli_product(const PauliString& p, const PauliString& q);

// Single-qubit Pauli matrix for a letter in {I, X, Y, Z}.
Eigen::Matrix2cd pauli_letter_matrix(char letter);

}  // namespace itrex
