#include "itrex/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace itrex {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0) return 0.0;
    if (m.rows() <= 64) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

HermitianTerm HermitianTerm::make_pauli(PauliString p, double c) {
    HermitianTerm t;
    t.pauli = std::move(p);
    t.coeff = c;
    return t;
}

HermitianTerm HermitianTerm::make_block(std::vector<int> support, Eigen::MatrixXcd b) {
    if ((Eigen::Index(1) << support.size()) != b.rows() || b.rows() != b.cols())
        throw std::invalid_argument("HermitianTerm: block dimension does not match support size");
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("HermitianTerm: block is not Hermitian to 1e-12");
    HermitianTerm t;
    t.support = std::move(support);
    t.block = std::move(b);
    return t;
}

double HermitianTerm::norm() const {
    if (is_pauli()) return std::abs(coeff);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd HermitianTerm::to_dense(int n) const {
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (is_pauli()) {
        if (pauli->size() != n) throw std::invalid_argument("term does not fit qubit count");
        return coeff * pauli->to_dense();
    }
    for (int q : support)
        if (q < 0 || q >= n) throw std::invalid_argument("term support exceeds qubit count");
    const int s = static_cast<int>(support.size());
    const Eigen::Index sdim = Eigen::Index(1) << s;
    // Bit masks for the complement of the support.
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
        if (std::find(support.begin(), support.end(), q) == support.end()) rest.push_back(q);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::Index rdim = Eigen::Index(1) << rest.size();
    for (Eigen::Index r = 0; r < rdim; ++r) {
        Eigen::Index base = 0;
        for (size_t b = 0; b < rest.size(); ++b)
            if (r & (Eigen::Index(1) << b)) base |= Eigen::Index(1) << rest[b];
        for (Eigen::Index i = 0; i < sdim; ++i) {
            Eigen::Index row = base;
            for (int b = 0; b < s; ++b)
                if (i & (Eigen::Index(1) << b)) row |= Eigen::Index(1) << support[b];
            for (Eigen::Index j = 0; j < sdim; ++j) {
                Eigen::Index col = base;
                for (int b = 0; b < s; ++b)
                    if (j & (Eigen::Index(1) << b)) col |= Eigen::Index(1) << support[b];
                out(row, col) = block(i, j);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd HamiltonianSum::to_dense() const {
    const Eigen::Index dim = Eigen::Index(1) << qubit_count;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms) out += t.to_dense(qubit_count);
    return out;
}

void HamiltonianSum::check_hermitian() const {
    Eigen::MatrixXcd m = to_dense();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("HamiltonianSum: dense total is not Hermitian to 1e-12");
}

double lambda_one(const HamiltonianSum& h) {
    double sum = 0.0;
    for (const auto& t : h.terms) sum += t.norm();
    return sum;
}

double nested_commutator_norm(const HamiltonianSum& h, int j) {
    if (j < 1) throw std::invalid_argument("nested_commutator_norm: j must be >= 1");
    if (h.qubit_count > 12 || j > 6)
        throw std::invalid_argument("nested_commutator_norm: dense budget exceeded (n <= 12, j <= 6)");
    const int gamma = static_cast<int>(h.terms.size());
    if (gamma == 0) return 0.0;
    if (std::pow(double(gamma), j) > 2e6)
        throw std::invalid_argument("nested_commutator_norm: Gamma^j budget exceeded");
    std::vector<Eigen::MatrixXcd> dense;
    dense.reserve(gamma);
    for (const auto& t : h.terms) dense.push_back(t.to_dense(h.qubit_count));
    double total = 0.0;
    // Build right-nested commutators outward from the innermost term.
    std::function<void(int, const Eigen::MatrixXcd&)> recurse =
        [&](int depth, const Eigen::MatrixXcd& acc) {
            if (depth == j) {
                total += spectral_norm(acc);
                return;
            }
            for (int g = 0; g < gamma; ++g)
                recurse(depth + 1, dense[g] * acc - acc * dense[g]);
        };
    for (int g = 0; g < gamma; ++g) recurse(1, dense[g]);
    return total;
}

double lambda_comm_bound(const std::vector<HamiltonianSum>& circuit_hamiltonians) {
    if (circuit_hamiltonians.empty())
        throw std::invalid_argument("lambda_comm_bound: empty list");
    double best = 0.0;
    for (const auto& h : circuit_hamiltonians) best = std::max(best, lambda_one(h));
    return 4.0 * best;
}

}  // namespace itrex
