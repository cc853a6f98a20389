#pragma once

#include <map>
#include <variant>

#include "itrex/gates.hpp"
#include "itrex/product_formula.hpp"
#include "itrex/richardson.hpp"

namespace itrex {

// One Hamiltonian-evolution segment e^{i * sign * H}.
struct HamiltonianSegment {
    HamiltonianSum h;
    int sign = +1;
};

// W = V_0 e^{i sign_1 H^(1)} V_1 ... e^{i sign_M H^(M)} V_M.
// unitaries[l] = V_l (M+1 entries), segments[l-1] = H^(l).  Application to a
// state runs right-to-left: V_M first, V_0 last.  M = 0 is a pure gate program.
struct InterleavedCircuit {
    int qubit_count = 0;
    std::vector<GateProgram> unitaries;
    std::vector<HamiltonianSegment> segments;
    int ancilla_count = 0;  // accounting metadata for resource reports

    int segment_count() const { return static_cast<int>(segments.size()); }
    void validate() const;
};

// Assemble a circuit in application order (first item acts on the state first).
struct CircuitBuilder {
    explicit CircuitBuilder(int qubits) : qubit_count(qubits) {}
    int qubit_count;
    std::vector<std::variant<GateProgram, HamiltonianSegment>> items;

    void add_gates(GateProgram prog);
    void add_gate(GateOp op);
    void add_segment(HamiltonianSum h, int sign);
    void add_circuit(const InterleavedCircuit& c);
    void add_circuit_inverse(const InterleavedCircuit& c);
    InterleavedCircuit build(int ancilla_count = 0) const;
};

// Trotter configuration for one step size: every segment is replaced by
// 1/(sM) applications of the order-2k formula at step sM.
struct TrotterRun {
    int k = 1;
    double s = 1.0;
    int steps_per_segment = 1;

    const StagedProductFormula& formula(int gamma) const;

   private:
    mutable std::map<int, StagedProductFormula> cache_;
};

TrotterRun make_trotter_run(int k, double s, int segment_count);

// Exact segment evolutions (dense eigensolves).
void apply_circuit_exact(const InterleavedCircuit& c, StateVector& state);
// Trotterized segment evolutions.
void apply_circuit_trotter(const InterleavedCircuit& c, StateVector& state, const TrotterRun& run);

double exact_expectation(const InterleavedCircuit& c, const StateVector& psi0,
                         const Observable& obs);

struct EvalMode {
    enum class Kind { exact_read, shots, coherent } kind = Kind::exact_read;
    long long shot_count = 0;  // 0 = auto (Hoeffding allocation)
    std::uint64_t seed = 0;
    // Coherent path: the observable as a unitary block O = gamma * U.
    Eigen::MatrixXcd obs_unitary;
    double gamma = 1.0;
    double iqae_eps = 1e-2;
    double iqae_delta = 0.05;

    static EvalMode exact_read() { return {}; }
    static EvalMode shots(long long count, std::uint64_t seed);
    static EvalMode coherent(Eigen::MatrixXcd obs_unitary, double gamma, double eps, double delta,
                             std::uint64_t seed);
};

double trotterized_expectation(const InterleavedCircuit& c, const StateVector& psi0,
                               const Observable& obs, const TrotterRun& run,
                               const EvalMode& mode);

struct NodeReport {
    long long r = 0;
    double s = 0.0;
    long long trotter_steps = 0;  // 1/s_i = r_i / s0
    long long shots = 0;
    std::vector<double> values;   // one per requested observable
};

struct ExtrapolationReport {
    ExtrapolationScheme scheme;
    std::vector<NodeReport> nodes;
    std::vector<double> estimates;
    double lambda_comm = 0.0;
    double a_max = 0.0;
    int upsilon = 0;
    int s0_shrinks = 0;
    double residual_even = 0.0;
    double residual_odd = 0.0;
    long long total_exponentials = 0;
    int ancilla_count = 0;
};

// Algorithm: pick the even-variant scheme and base step from the commutator
// bound, evaluate f(s_i) per node, and fold with the Richardson weights.
// Evaluates all observables on the shared per-node state.
ExtrapolationReport extrapolated_estimate_multi(const InterleavedCircuit& c,
                                                const StateVector& psi0,
                                                const std::vector<Observable>& obs, int k,
                                                double eps, const EvalMode& mode,
                                                int workers = 1);

std::pair<double, ExtrapolationReport> extrapolated_estimate(const InterleavedCircuit& c,
                                                             const StateVector& psi0,
                                                             const Observable& obs, int k,
                                                             double eps, const EvalMode& mode,
                                                             int workers = 1);

struct ResourceReport {
    std::vector<long long> per_node_steps;  // r_i / s0
    long long total_exponentials = 0;       // sum_i (r_i/s0) * Upsilon * Gamma_sum
    int ancilla_count = 0;
    int segment_count = 0;
};

ResourceReport resource_report(const InterleavedCircuit& c, const ExtrapolationScheme& scheme,
                               int k, long long shots_per_node = 1);

}  // namespace itrex
