#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "itrex/hamiltonian.hpp"

namespace itrex {

struct StateVector {
    Eigen::VectorXcd amps;
    int qubit_count = 0;

    StateVector() = default;
    StateVector(int n, Eigen::VectorXcd a) : amps(std::move(a)), qubit_count(n) {}

    // |00...0>
    static StateVector zero(int n);
    // Basis string "01..." where character i sets qubit i.
    static StateVector basis(const std::string& bits);
    double norm() const { return amps.norm(); }
};

// Observable with a cached spectral decomposition for sampling and oracles.
struct Observable {
    Eigen::MatrixXcd matrix;
    double norm = 0.0;

    static Observable from_dense(Eigen::MatrixXcd m);
    static Observable from_hamiltonian(const HamiltonianSum& h);

    const Eigen::VectorXd& eigenvalues() const;
    const Eigen::MatrixXcd& eigenvectors() const;

   private:
    mutable bool decomposed_ = false;
    mutable Eigen::VectorXd evals_;
    mutable Eigen::MatrixXcd evecs_;
    void ensure_decomposition() const;
};

// Ancilla rotation R(theta, phi, gamma) =
//   [[e^{i(gamma+phi)} cos t, e^{i phi} sin t], [e^{i gamma} sin t, -cos t]].
struct U2Rotation {
    double theta = 0.0, phi = 0.0, gamma_phase = 0.0;
    Eigen::Matrix2cd matrix() const;
};

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;  // columns
};

SpectralDecomposition spectral_decomposition(const Eigen::MatrixXcd& hermitian);

// state *= exp(i * angle * P)
void apply_pauli_exp(StateVector& state, const PauliString& p, double angle);
// state *= exp(i * angle * term), acting on the term's support.
void apply_local_exp(StateVector& state, const HermitianTerm& term, double angle);
// Apply a dense unitary to an ordered subset of qubits (qubits[0] = low bit).
void apply_dense(StateVector& state, const std::vector<int>& qubits, const Eigen::MatrixXcd& u);
void apply_u2(StateVector& state, int qubit, const U2Rotation& r);

double expectation(const StateVector& state, const Observable& obs);

// Born-rule eigenvalue draws; deterministic under fixed seed.
std::vector<double> sample_observable(const StateVector& state, const Observable& obs,
                                      std::int64_t shots, std::uint64_t seed);

// f(H) = V diag(f(xi)) V^dagger via dense eigensolve.
Eigen::MatrixXcd operator_function_oracle(const HamiltonianSum& h,
                                          const std::function<cplx(double)>& f);
Eigen::MatrixXcd operator_function_oracle(const Eigen::MatrixXcd& hermitian,
                                          const std::function<cplx(double)>& f);

// Counter-based seed splitting so parallel tasks get independent streams.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);
// Deterministic uniform double in [0,1) from a 64-bit generator state step.
double uniform01(std::uint64_t& rng_state);

}  // namespace itrex
