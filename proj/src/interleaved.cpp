#include "itrex/interleaved.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "itrex/estimation.hpp"

namespace itrex {

namespace {

Eigen::MatrixXcd segment_exp_dense(const HamiltonianSegment& seg) {
    const cplx i1(0.0, 1.0);
    const double sign = seg.sign;
    return operator_function_oracle(seg.h, [&](double x) { return std::exp(i1 * sign * x); });
}

Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, long long e) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
    while (e > 0) {
        if (e & 1) out = base * out;
        base = base * base;
        e >>= 1;
    }
    return out;
}

}  // namespace

void InterleavedCircuit::validate() const {
    if (unitaries.size() != segments.size() + 1)
        throw std::invalid_argument("InterleavedCircuit: alternation structure broken");
    for (const auto& seg : segments) {
        if (seg.h.qubit_count != qubit_count)
            throw std::invalid_argument("InterleavedCircuit: segment qubit count mismatch");
        if (seg.sign != 1 && seg.sign != -1)
            throw std::invalid_argument("InterleavedCircuit: segment sign must be +-1");
    }
}

EvalMode EvalMode::shots(long long count, std::uint64_t seed) {
    EvalMode m;
    m.kind = Kind::shots;
    m.shot_count = count;
    m.seed = seed;
    return m;
}

EvalMode EvalMode::coherent(Eigen::MatrixXcd obs_unitary, double gamma, double eps, double delta,
                            std::uint64_t seed) {
    EvalMode m;
    m.kind = Kind::coherent;
    m.obs_unitary = std::move(obs_unitary);
    m.gamma = gamma;
    m.iqae_eps = eps;
    m.iqae_delta = delta;
    m.seed = seed;
    return m;
}

void CircuitBuilder::add_gates(GateProgram prog) {
    if (prog.empty()) return;
    items.emplace_back(std::move(prog));
}

void CircuitBuilder::add_gate(GateOp op) {
    GateProgram p;
    p.ops.push_back(std::move(op));
    add_gates(std::move(p));
}

void CircuitBuilder::add_segment(HamiltonianSum h, int sign) {
    items.emplace_back(HamiltonianSegment{std::move(h), sign});
}

void CircuitBuilder::add_circuit(const InterleavedCircuit& c) {
    const int m = c.segment_count();
    for (int l = m; l >= 1; --l) {
        add_gates(c.unitaries[l]);
        items.emplace_back(c.segments[l - 1]);
    }
    add_gates(c.unitaries[0]);
}

void CircuitBuilder::add_circuit_inverse(const InterleavedCircuit& c) {
    const int m = c.segment_count();
    add_gates(c.unitaries[0].inverse());
    for (int l = 1; l <= m; ++l) {
        HamiltonianSegment seg = c.segments[l - 1];
        seg.sign = -seg.sign;
        items.emplace_back(std::move(seg));
        add_gates(c.unitaries[l].inverse());
    }
}

InterleavedCircuit CircuitBuilder::build(int ancilla_count) const {
    // Walk in application order, merging adjacent gate programs.
    std::vector<GateProgram> app_programs;
    std::vector<HamiltonianSegment> app_segments;
    app_programs.emplace_back();
    for (const auto& item : items) {
        if (std::holds_alternative<GateProgram>(item)) {
            const auto& p = std::get<GateProgram>(item);
            auto& cur = app_programs.back();
            cur.ops.insert(cur.ops.end(), p.ops.begin(), p.ops.end());
        } else {
            app_segments.push_back(std::get<HamiltonianSegment>(item));
            app_programs.emplace_back();
        }
    }
    InterleavedCircuit c;
    c.qubit_count = qubit_count;
    c.ancilla_count = ancilla_count;
    c.segments.assign(app_segments.rbegin(), app_segments.rend());
    c.unitaries.assign(app_programs.rbegin(), app_programs.rend());
    c.validate();
    return c;
}

const StagedProductFormula& TrotterRun::formula(int gamma) const {
    auto it = cache_.find(gamma);
    if (it == cache_.end()) it = cache_.emplace(gamma, suzuki(k, gamma)).first;
    return it->second;
}

TrotterRun make_trotter_run(int k, double s, int segment_count) {
    if (segment_count < 1) throw std::invalid_argument("make_trotter_run: need M >= 1");
    const double inv = 1.0 / (s * segment_count);
    const long long steps = std::llround(inv);
    if (steps < 1 || std::abs(inv - double(steps)) > 1e-6)
        throw std::invalid_argument("make_trotter_run: 1/(s*M) must be a positive integer");
    TrotterRun run;
    run.k = k;
    run.s = s;
    run.steps_per_segment = static_cast<int>(steps);
    return run;
}

void apply_circuit_exact(const InterleavedCircuit& c, StateVector& state) {
    c.validate();
    const int m = c.segment_count();
    for (int l = m; l >= 1; --l) {
        apply_program(state, c.unitaries[l]);
        const Eigen::MatrixXcd u = segment_exp_dense(c.segments[l - 1]);
        state.amps = u * state.amps;
    }
    apply_program(state, c.unitaries[0]);
}

void apply_circuit_trotter(const InterleavedCircuit& c, StateVector& state,
                           const TrotterRun& run) {
    c.validate();
    const int m = c.segment_count();
    const bool dense_path = state.amps.size() <= 128;
    for (int l = m; l >= 1; --l) {
        apply_program(state, c.unitaries[l]);
        const auto& seg = c.segments[l - 1];
        const int gamma = static_cast<int>(seg.h.terms.size());
        if (gamma == 0) continue;
        const auto& pf = run.formula(gamma);
        const double t = -double(seg.sign);  // formulas realize e^{-iHt}
        if (dense_path) {
            Eigen::MatrixXcd step = formula_dense(seg.h, pf, t / run.steps_per_segment);
            state.amps = matrix_power(std::move(step), run.steps_per_segment) * state.amps;
        } else {
            apply_formula(state, seg.h, pf, t, run.steps_per_segment);
        }
    }
    apply_program(state, c.unitaries[0]);
}

double exact_expectation(const InterleavedCircuit& c, const StateVector& psi0,
                         const Observable& obs) {
    StateVector state = psi0;
    apply_circuit_exact(c, state);
    return expectation(state, obs);
}

namespace {

double evaluate_state(const StateVector& state, const Observable& obs, const EvalMode& mode,
                      std::uint64_t node_seed, long long shots) {
    switch (mode.kind) {
        case EvalMode::Kind::exact_read:
            return expectation(state, obs);
        case EvalMode::Kind::shots: {
            auto draws = sample_observable(state, obs, shots, node_seed);
            double sum = 0.0;
            for (double d : draws) sum += d;
            return sum / double(draws.size());
        }
        case EvalMode::Kind::coherent: {
            if (mode.obs_unitary.rows() != state.amps.size())
                throw std::invalid_argument(
                    "coherent mode requires the observable as a unitary block of matching "
                    "dimension");
            const cplx val = state.amps.dot(mode.obs_unitary * state.amps);
            const double p = std::clamp(0.5 * (1.0 + val.real()), 0.0, 1.0);
            IqaeResult r = iqae_from_amplitude(p, mode.iqae_eps, mode.iqae_delta, node_seed);
            return mode.gamma * (2.0 * r.estimate - 1.0);
        }
    }
    throw std::logic_error("unreachable");
}

// Least-squares residual of fitting values against a power basis in s.
double fit_residual(const std::vector<double>& s, const std::vector<double>& f,
                    const std::vector<int>& powers) {
    const int n = static_cast<int>(s.size());
    const int c = static_cast<int>(powers.size());
    Eigen::MatrixXd a(n, c);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        y(i) = f[i];
        for (int j = 0; j < c; ++j) a(i, j) = std::pow(s[i], powers[j]);
    }
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(y);
    return (a * x - y).norm();
}

}  // namespace

ExtrapolationReport extrapolated_estimate_multi(const InterleavedCircuit& c,
                                                const StateVector& psi0,
                                                const std::vector<Observable>& obs, int k,
                                                double eps, const EvalMode& mode, int workers) {
    c.validate();
    if (obs.empty()) throw std::invalid_argument("extrapolated_estimate: no observables");
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("extrapolated_estimate: eps in (0,1)");
    if (mode.kind == EvalMode::Kind::coherent && obs.size() != 1)
        throw std::invalid_argument("coherent mode supports a single observable");
    ExtrapolationReport rep;
    rep.ancilla_count = c.ancilla_count;
    const int m_count = c.segment_count();
    if (m_count == 0) {
        // Pure gate program: no Trotter error, nothing to extrapolate.
        StateVector state = psi0;
        apply_circuit_exact(c, state);
        NodeReport node;
        node.r = 1;
        node.s = 0.0;
        for (const auto& o : obs)
            node.values.push_back(evaluate_state(state, o, mode, split_seed(mode.seed, 0),
                                                 std::max<long long>(1, mode.shot_count)));
        rep.nodes.push_back(node);
        rep.estimates = rep.nodes[0].values;
        return rep;
    }

    std::vector<HamiltonianSum> hams;
    int max_gamma = 1;
    long long gamma_sum = 0;
    for (const auto& seg : c.segments) {
        hams.push_back(seg.h);
        max_gamma = std::max<int>(max_gamma, static_cast<int>(seg.h.terms.size()));
        gamma_sum += static_cast<long long>(seg.h.terms.size());
    }
    rep.lambda_comm = lambda_comm_bound(hams);
    const StagedProductFormula pf_probe = suzuki(k, max_gamma);
    rep.a_max = pf_probe.a_max;
    rep.upsilon = pf_probe.stage_count();

    const int m = std::min(8, std::max(1, 2 * k * int(std::ceil(std::log2(1.0 / eps)))));
    long long cfac = std::llround(
        std::ceil(std::max(1.0, rep.a_max * rep.upsilon * rep.lambda_comm) * 2.0 - 1e-9));

    for (int attempt = 0;; ++attempt) {
        const double s0 = 1.0 / double(m_count * cfac);
        rep.scheme = build_scheme(m, s0, SchemeVariant::even);
        long long shots_per_node = 0;
        if (mode.kind == EvalMode::Kind::shots) {
            shots_per_node = mode.shot_count > 0
                                 ? mode.shot_count
                                 : hoeffding_shots(eps, rep.scheme.b_norm1, obs[0].norm, m,
                                                   1.0 / 3.0);
        }
        rep.nodes.assign(m, {});
        auto eval_node = [&](int i) {
            NodeReport node;
            node.r = rep.scheme.nodes[i];
            node.s = rep.scheme.step(i);
            node.trotter_steps = node.r * cfac * m_count;  // r_i / s0
            node.shots = shots_per_node;
            TrotterRun run = make_trotter_run(k, node.s, m_count);
            StateVector state = psi0;
            apply_circuit_trotter(c, state, run);
            for (const auto& o : obs)
                node.values.push_back(
                    evaluate_state(state, o, mode, split_seed(mode.seed, i), shots_per_node));
            rep.nodes[i] = std::move(node);
        };
        if (workers > 1) {
            std::vector<std::future<void>> futs;
            for (int i = 0; i < m; ++i) futs.push_back(std::async(std::launch::async, eval_node, i));
            for (auto& f : futs) f.get();
        } else {
            for (int i = 0; i < m; ++i) eval_node(i);
        }

        // Even-series consistency: the node values must look like an even
        // function of s; otherwise shrink the base step and retry.
        bool pass = true;
        if (m >= 4 && mode.kind == EvalMode::Kind::exact_read) {
            std::vector<double> ss(m), ff(m);
            double scale = 0.0;
            for (int i = 0; i < m; ++i) {
                ss[i] = rep.nodes[i].s;
                ff[i] = rep.nodes[i].values[0];
                scale = std::max(scale, std::abs(ff[i]));
            }
            std::vector<int> even_pows{0}, odd_pows{0};
            for (int j = 1; static_cast<int>(even_pows.size()) < std::max(2, m / 2); ++j) {
                even_pows.push_back(2 * j);
                odd_pows.push_back(2 * j - 1);
            }
            rep.residual_even = fit_residual(ss, ff, even_pows);
            rep.residual_odd = fit_residual(ss, ff, odd_pows);
            pass = rep.residual_even <= std::max(rep.residual_odd, 1e-11 * std::max(1.0, scale));
        }
        if (pass || attempt >= 3) {
            if (!pass) rep.s0_shrinks = -attempt;  // flag: accepted without passing
            break;
        }
        cfac *= 2;
        rep.s0_shrinks = attempt + 1;
    }

    rep.total_exponentials = 0;
    for (const auto& node : rep.nodes)
        rep.total_exponentials += (node.trotter_steps / m_count) * rep.upsilon * gamma_sum *
                                  std::max<long long>(1, node.shots);
    rep.estimates.clear();
    for (size_t o = 0; o < obs.size(); ++o) {
        std::vector<std::pair<double, double>> samples;
        for (const auto& node : rep.nodes) samples.emplace_back(node.s, node.values[o]);
        rep.estimates.push_back(extrapolate(rep.scheme, samples));
    }
    return rep;
}

std::pair<double, ExtrapolationReport> extrapolated_estimate(const InterleavedCircuit& c,
                                                             const StateVector& psi0,
                                                             const Observable& obs, int k,
                                                             double eps, const EvalMode& mode,
                                                             int workers) {
    ExtrapolationReport rep = extrapolated_estimate_multi(c, psi0, {obs}, k, eps, mode, workers);
    return {rep.estimates[0], rep};
}

double trotterized_expectation(const InterleavedCircuit& c, const StateVector& psi0,
                               const Observable& obs, const TrotterRun& run,
                               const EvalMode& mode) {
    StateVector state = psi0;
    apply_circuit_trotter(c, state, run);
    return evaluate_state(state, obs, mode, split_seed(mode.seed, 0),
                          std::max<long long>(1, mode.shot_count));
}

ResourceReport resource_report(const InterleavedCircuit& c, const ExtrapolationScheme& scheme,
                               int k, long long shots_per_node) {
    ResourceReport rr;
    rr.ancilla_count = c.ancilla_count;
    rr.segment_count = c.segment_count();
    const long long inv_s0 = std::llround(1.0 / scheme.s0);
    long long gamma_sum = 0;
    int max_gamma = 1;
    for (const auto& seg : c.segments) {
        gamma_sum += static_cast<long long>(seg.h.terms.size());
        max_gamma = std::max<int>(max_gamma, static_cast<int>(seg.h.terms.size()));
    }
    const int upsilon = suzuki(k, max_gamma).stage_count();
    const int m_count = std::max(1, rr.segment_count);
    for (long long r : scheme.nodes) {
        const long long steps = r * inv_s0;
        rr.per_node_steps.push_back(steps);
        rr.total_exponentials += (steps / m_count) * upsilon * gamma_sum * shots_per_node;
    }
    return rr;
}

}  // namespace itrex
