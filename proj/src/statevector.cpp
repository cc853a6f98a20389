#include "itrex/statevector.hpp"

#include <algorithm>
#include <cmath>

namespace itrex {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double uniform01(std::uint64_t& rng_state) {
    rng_state = splitmix64(rng_state);
    return double(rng_state >> 11) * 0x1.0p-53;
}

StateVector StateVector::zero(int n) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    a(0) = 1.0;
    return StateVector(n, std::move(a));
}

StateVector StateVector::basis(const std::string& bits) {
    const int n = static_cast<int>(bits.size());
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i) {
        if (bits[i] == '1')
            idx |= Eigen::Index(1) << i;
        else if (bits[i] != '0')
            throw std::invalid_argument("basis string must contain only 0/1");
    }
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    a(idx) = 1.0;
    return StateVector(n, std::move(a));
}

Observable Observable::from_dense(Eigen::MatrixXcd m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Observable: matrix is not Hermitian to 1e-12");
    Observable o;
    o.matrix = std::move(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(o.matrix, Eigen::EigenvaluesOnly);
    o.norm = es.eigenvalues().cwiseAbs().maxCoeff();
    return o;
}

Observable Observable::from_hamiltonian(const HamiltonianSum& h) {
    return from_dense(h.to_dense());
}

void Observable::ensure_decomposition() const {
    if (decomposed_) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix);
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
    decomposed_ = true;
}

const Eigen::VectorXd& Observable::eigenvalues() const {
    ensure_decomposition();
    return evals_;
}

const Eigen::MatrixXcd& Observable::eigenvectors() const {
    ensure_decomposition();
    return evecs_;
}

Eigen::Matrix2cd U2Rotation::matrix() const {
    const cplx i1(0.0, 1.0);
    Eigen::Matrix2cd m;
    m << std::exp(i1 * (gamma_phase + phi)) * std::cos(theta), std::exp(i1 * phi) * std::sin(theta),
        std::exp(i1 * gamma_phase) * std::sin(theta), -std::cos(theta);
    return m;
}

SpectralDecomposition spectral_decomposition(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
    SpectralDecomposition d;
    d.eigenvalues = es.eigenvalues();
    d.eigenvectors = es.eigenvectors();
    return d;
}

void apply_pauli_exp(StateVector& state, const PauliString& p, double angle) {
    if (p.size() != state.qubit_count)
        throw std::invalid_argument("apply_pauli_exp: dimension mismatch");
    const Eigen::Index dim = state.amps.size();
    Eigen::Index xmask = 0, ymask = 0, zmask = 0;
    int ycount = 0;
    for (int i = 0; i < p.size(); ++i) {
        const Eigen::Index bit = Eigen::Index(1) << i;
        switch (p.word[i]) {
            case 'X': xmask |= bit; break;
            case 'Y': xmask |= bit; ymask |= bit; ++ycount; break;
            case 'Z': zmask |= bit; break;
            default: break;
        }
    }
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx yphase = ipow[ycount % 4];
    const cplx c = std::cos(angle);
    const cplx is = cplx(0.0, 1.0) * std::sin(angle);
    Eigen::VectorXcd out(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const Eigen::Index b2 = b ^ xmask;
        // sign from Z letters on set bits and Y letters on set bits
        const int parity = (__builtin_popcountll((b & zmask)) + __builtin_popcountll((b & ymask))) & 1;
        const cplx phase = parity ? -yphase : yphase;
        out(b2) = c * state.amps(b2) + is * phase * state.amps(b);
    }
    state.amps.swap(out);
}

void apply_dense(StateVector& state, const std::vector<int>& qubits, const Eigen::MatrixXcd& u) {
    const int s = static_cast<int>(qubits.size());
    const Eigen::Index sdim = Eigen::Index(1) << s;
    if (u.rows() != sdim || u.cols() != sdim)
        throw std::invalid_argument("apply_dense: matrix dimension does not match qubit list");
    for (int q : qubits)
        if (q < 0 || q >= state.qubit_count)
            throw std::invalid_argument("apply_dense: qubit index out of range");
    std::vector<int> rest;
    for (int q = 0; q < state.qubit_count; ++q)
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
    const Eigen::Index rdim = Eigen::Index(1) << rest.size();
    Eigen::VectorXcd sub(sdim);
    std::vector<Eigen::Index> addr(sdim);
    for (Eigen::Index r = 0; r < rdim; ++r) {
        Eigen::Index base = 0;
        for (size_t b = 0; b < rest.size(); ++b)
            if (r & (Eigen::Index(1) << b)) base |= Eigen::Index(1) << rest[b];
        for (Eigen::Index i = 0; i < sdim; ++i) {
            Eigen::Index idx = base;
            for (int b = 0; b < s; ++b)
                if (i & (Eigen::Index(1) << b)) idx |= Eigen::Index(1) << qubits[b];
            addr[i] = idx;
            sub(i) = state.amps(idx);
        }
        Eigen::VectorXcd mapped = u * sub;
        for (Eigen::Index i = 0; i < sdim; ++i) state.amps(addr[i]) = mapped(i);
    }
}

void apply_local_exp(StateVector& state, const HermitianTerm& term, double angle) {
    if (term.is_pauli()) {
        apply_pauli_exp(state, *term.pauli, angle * term.coeff);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(term.block);
    const cplx i1(0.0, 1.0);
    Eigen::VectorXcd phases =
        (i1 * angle * es.eigenvalues().cast<cplx>().array()).exp().matrix();
    Eigen::MatrixXcd u =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    apply_dense(state, term.support, u);
}

void apply_u2(StateVector& state, int qubit, const U2Rotation& r) {
    apply_dense(state, {qubit}, r.matrix());
}

double expectation(const StateVector& state, const Observable& obs) {
    if (obs.matrix.rows() != state.amps.size())
        throw std::invalid_argument("expectation: dimension mismatch");
    const cplx v = state.amps.dot(obs.matrix * state.amps);
    return v.real();
}

std::vector<double> sample_observable(const StateVector& state, const Observable& obs,
                                      std::int64_t shots, std::uint64_t seed) {
    const Eigen::VectorXd& evals = obs.eigenvalues();
    const Eigen::MatrixXcd& evecs = obs.eigenvectors();
    Eigen::VectorXcd proj = evecs.adjoint() * state.amps;
    Eigen::VectorXd probs = proj.cwiseAbs2();
    const double total = probs.sum();
    probs /= total;
    // Cumulative distribution for inverse-CDF sampling.
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        acc += probs(i);
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    std::uint64_t rng = split_seed(seed, 0);
    std::vector<double> out;
    out.reserve(shots);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        out.push_back(evals(it - cdf.begin()));
    }
    return out;
}

Eigen::MatrixXcd operator_function_oracle(const Eigen::MatrixXcd& hermitian,
                                          const std::function<cplx(double)>& f) {
    SpectralDecomposition d = spectral_decomposition(hermitian);
    Eigen::VectorXcd fx(d.eigenvalues.size());
    for (Eigen::Index i = 0; i < fx.size(); ++i) fx(i) = f(d.eigenvalues(i));
    return d.eigenvectors * fx.asDiagonal() * d.eigenvectors.adjoint();
}

Eigen::MatrixXcd operator_function_oracle(const HamiltonianSum& h,
                                          const std::function<cplx(double)>& f) {
    return operator_function_oracle(h.to_dense(), f);
}

}  // namespace itrex
