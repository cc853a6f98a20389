#include "itrex/pauli.hpp"

namespace itrex {

namespace {

int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: throw std::invalid_argument(std::string("invalid Pauli letter: ") + c);
    }
}

const char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Single-qubit products: letter_table[a][b] = (phase index, letter index)
// with phases indexed into {1, i, -1, -i}.
struct Prod {
    int phase;  // power of i
    int letter;
};

Prod single_product(int a, int b) {
    if (a == 0) return {0, b};
    if (b == 0) return {0, a};
    if (a == b) return {0, 0};
    // XY=iZ, YZ=iX, ZX=iY (cyclic); reversed order picks up -i.
    static const int third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    bool forward = (b - a + 3) % 3 == 1;  // (X,Y),(Y,Z),(Z,X)
    return {forward ? 1 : 3, third[a][b]};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

PauliString::PauliString(std::string w) : word(std::move(w)) {
    for (char c : word) letter_index(c);  // validate
}

bool PauliString::is_identity() const {
    return word.find_first_not_of('I') == std::string::npos;
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (word[i] != 'I') out.push_back(i);
    return out;
}

Eigen::Matrix2cd pauli_letter_matrix(char letter) {
    Eigen::Matrix2cd m;
    const cplx i1(0.0, 1.0);
    switch (letter_index(letter)) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i1, i1, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::MatrixXcd PauliString::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
    for (int i = 0; i < size(); ++i) m = kron(pauli_letter_matrix(word[i]), m);
    return m;
}

std::pair<cplx, PauliString> pauli_product(const PauliString& p, const PauliString& q) {
    if (p.size() != q.size()) throw std::invalid_argument("pauli_product: length mismatch");
    int phase = 0;
    std::string out(p.size(), 'I');
    for (int i = 0; i < p.size(); ++i) {
        Prod r = single_product(letter_index(p.word[i]), letter_index(q.word[i]));
        phase = (phase + r.phase) % 4;
        out[i] = kLetters[r.letter];
    }
    static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {powers[phase], PauliString(out)};
}

}  // namespace itrex
