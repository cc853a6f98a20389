#include "itrex/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace itrex {

namespace {

const json& require(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError("missing required field: " + field);
    return j.at(field);
}

cplx parse_complex(const json& v) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx(v[0].get<double>(), v[1].get<double>());
    throw ConfigError("complex entries must be a number or [re, im]");
}

Eigen::MatrixXcd parse_matrix(const json& m) {
    if (!m.is_array() || m.empty()) throw ConfigError("matrix must be a non-empty array of rows");
    const Eigen::Index rows = Eigen::Index(m.size());
    const Eigen::Index cols = Eigen::Index(m[0].size());
    Eigen::MatrixXcd out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (Eigen::Index(m[i].size()) != cols) throw ConfigError("matrix rows have unequal length");
        for (Eigen::Index jx = 0; jx < cols; ++jx) out(i, jx) = parse_complex(m[i][jx]);
    }
    return out;
}

Eigen::VectorXcd parse_vector(const json& v) {
    if (!v.is_array()) throw ConfigError("vector must be an array");
    Eigen::VectorXcd out(Eigen::Index(v.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = parse_complex(v[i]);
    return out;
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index jx = 0; jx < m.cols(); ++jx) row.push_back(complex_json(m(i, jx)));
        rows.push_back(row);
    }
    return rows;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (std::abs(den) < 1e-30) return 0.0;
    return (n * sxy - sx * sy) / den;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const json& j) {
    ExperimentConfig cfg;
    cfg.raw = j;
    if (!j.is_object()) throw ConfigError("config root must be an object");
    if (!j.contains("schema") || j.at("schema") != kConfigSchema)
        throw ConfigError(std::string("schema must be \"") + kConfigSchema + "\"");
    cfg.task = require(j, "task").get<std::string>();
    static const std::vector<std::string> kinds = {"interleaved", "qls",       "gse",
                                                   "approx",      "resources", "sweep"};
    if (std::find(kinds.begin(), kinds.end(), cfg.task) == kinds.end())
        throw ConfigError("unknown task kind: " + cfg.task);
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse(j);
}

HamiltonianSum ExperimentConfig::hamiltonian(const std::string& name) const {
    const json& all = require(raw, "hamiltonians");
    if (!all.contains(name)) throw ConfigError("unresolved hamiltonian reference: " + name);
    const json& spec = all.at(name);
    HamiltonianSum h;
    h.qubit_count = require(spec, "qubits").get<int>();
    for (const json& t : require(spec, "terms")) {
        if (t.contains("pauli")) {
            PauliString p(t.at("pauli").get<std::string>());
            if (p.size() != h.qubit_count)
                throw ConfigError("pauli word length mismatch in hamiltonian " + name);
            h.terms.push_back(HermitianTerm::make_pauli(p, require(t, "coeff").get<double>()));
        } else if (t.contains("matrix")) {
            std::vector<int> support;
            for (const json& q : require(t, "qubits")) support.push_back(q.get<int>());
            h.terms.push_back(HermitianTerm::make_block(support, parse_matrix(t.at("matrix"))));
        } else {
            throw ConfigError("hamiltonian term needs \"pauli\" or \"matrix\"");
        }
    }
    h.check_hermitian();
    return h;
}

GateProgram ExperimentConfig::program(const json& spec) const {
    if (!spec.is_array()) throw ConfigError("gate program must be an array of gates");
    GateProgram prog;
    for (const json& g : spec) {
        if (g.contains("matrix")) {
            std::vector<int> qubits;
            for (const json& q : require(g, "qubits")) qubits.push_back(q.get<int>());
            prog.ops.push_back(GateOp::dense(qubits, parse_matrix(g.at("matrix"))));
        } else if (g.contains("theta")) {
            U2Rotation r;
            r.theta = g.at("theta").get<double>();
            r.phi = g.value("phi", 0.0);
            r.gamma_phase = g.value("gamma", 0.0);
            prog.ops.push_back(GateOp::u2(require(g, "qubit").get<int>(), r));
        } else if (g.contains("prepare")) {
            std::vector<int> qubits;
            for (const json& q : require(g, "qubits")) qubits.push_back(q.get<int>());
            prog.ops.push_back(GateOp::state_prep(qubits, parse_vector(g.at("prepare"))));
        } else {
            throw ConfigError("gate needs \"matrix\", \"theta\", or \"prepare\"");
        }
    }
    return prog;
}

StateVector ExperimentConfig::state(const std::string& name) const {
    const json& all = require(raw, "states");
    if (!all.contains(name)) throw ConfigError("unresolved state reference: " + name);
    const json& spec = all.at(name);
    if (spec.contains("basis")) return StateVector::basis(spec.at("basis").get<std::string>());
    if (spec.contains("amplitudes")) {
        const Eigen::VectorXcd a = parse_vector(spec.at("amplitudes"));
        int n = 0;
        while ((Eigen::Index(1) << n) < a.size()) ++n;
        if ((Eigen::Index(1) << n) != a.size())
            throw ConfigError("state amplitude count must be a power of two");
        if (std::abs(a.norm() - 1.0) > 1e-9) throw ConfigError("state must be normalized");
        return StateVector(n, a);
    }
    if (spec.contains("prep")) {
        StateVector st = StateVector::zero(require(spec, "qubits").get<int>());
        apply_program(st, program(spec.at("prep")));
        return st;
    }
    throw ConfigError("state needs \"basis\", \"amplitudes\", or \"prep\"");
}

InterleavedCircuit ExperimentConfig::circuit(const std::string& name) const {
    const json& all = require(raw, "circuits");
    if (!all.contains(name)) throw ConfigError("unresolved circuit reference: " + name);
    const json& spec = all.at(name);
    CircuitBuilder b(require(spec, "qubits").get<int>());
    for (const json& item : require(spec, "items")) {
        if (item.contains("segment")) {
            const int sign = item.value("sign", 1);
            if (sign != 1 && sign != -1) throw ConfigError("segment sign must be +1 or -1");
            b.add_segment(hamiltonian(item.at("segment").get<std::string>()), sign);
        } else if (item.contains("gates")) {
            b.add_gates(program(item.at("gates")));
        } else {
            throw ConfigError("circuit item needs \"segment\" or \"gates\"");
        }
    }
    InterleavedCircuit c = b.build(spec.value("ancillas", 0));
    c.validate();
    return c;
}

Observable ExperimentConfig::observable(const std::string& name) const {
    const json& all = require(raw, "observables");
    if (!all.contains(name)) throw ConfigError("unresolved observable reference: " + name);
    const json& spec = all.at(name);
    if (spec.contains("pauli"))
        return Observable::from_dense(PauliString(spec.at("pauli").get<std::string>()).to_dense());
    if (spec.contains("matrix")) return Observable::from_dense(parse_matrix(spec.at("matrix")));
    if (spec.contains("hamiltonian"))
        return Observable::from_hamiltonian(hamiltonian(spec.at("hamiltonian").get<std::string>()));
    throw ConfigError("observable needs \"pauli\", \"matrix\", or \"hamiltonian\"");
}

EvalMode ExperimentConfig::mode() const {
    const std::string m = raw.value("mode", "exact-read");
    if (m == "exact-read") return EvalMode::exact_read();
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            const std::size_t next = s.find(':', pos);
            parts.push_back(s.substr(pos, next - pos));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return parts;
    };
    const auto parts = split(m);
    try {
        if (parts[0] == "shots" && parts.size() == 3)
            return EvalMode::shots(std::stoll(parts[1]), std::stoull(parts[2]));
        if (parts[0] == "coherent" && parts.size() == 4) {
            // The observable's unitary block is attached by the task runner.
            return EvalMode::coherent(Eigen::MatrixXcd(), 1.0, std::stod(parts[1]),
                                      std::stod(parts[2]), std::stoull(parts[3]));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("malformed mode string: " + m);
    }
    throw ConfigError("mode must be exact-read, shots:N:seed, or coherent:eps:delta:seed");
}

double ExperimentConfig::eps() const { return raw.value("eps", 1e-3); }
int ExperimentConfig::order() const { return raw.value("order", 1); }

namespace {

json scheme_json(const ExtrapolationScheme& s) {
    json out;
    out["m"] = s.m;
    out["s0"] = s.s0;
    out["variant"] = s.variant == SchemeVariant::even ? "even" : "general";
    out["nodes"] = s.nodes;
    out["weights"] = s.weights;
    out["b_norm1"] = s.b_norm1;
    return out;
}

json extrapolation_json(const ExtrapolationReport& r) {
    json out;
    out["scheme"] = scheme_json(r.scheme);
    out["lambda_comm"] = r.lambda_comm;
    out["a_max"] = r.a_max;
    out["upsilon"] = r.upsilon;
    out["s0_shrinks"] = r.s0_shrinks;
    out["residual_even"] = r.residual_even;
    out["residual_odd"] = r.residual_odd;
    out["total_exponentials"] = r.total_exponentials;
    out["ancilla_count"] = r.ancilla_count;
    json nodes = json::array();
    for (const NodeReport& n : r.nodes) {
        json nj;
        nj["r"] = n.r;
        nj["s"] = n.s;
        nj["trotter_steps"] = n.trotter_steps;
        nj["shots"] = n.shots;
        nj["values"] = n.values;
        nodes.push_back(nj);
    }
    out["nodes"] = nodes;
    out["estimates"] = r.estimates;
    return out;
}

json mode_echo(const ExperimentConfig& cfg, const EvalMode& em) {
    json out;
    out["mode"] = cfg.raw.value("mode", "exact-read");
    out["shots"] = em.shot_count;
    out["seed"] = em.seed;
    if (em.kind == EvalMode::Kind::coherent) {
        out["iqae_eps"] = em.iqae_eps;
        out["iqae_delta"] = em.iqae_delta;
    }
    return out;
}

double check_tolerance(const ExperimentConfig& cfg, double obs_norm) {
    return cfg.raw.value("check_tol", 3.0 * cfg.eps() * std::max(obs_norm, 1e-12));
}

json run_interleaved(const ExperimentConfig& cfg, bool check, int workers) {
    const json& t = require(cfg.raw, "interleaved");
    InterleavedCircuit c = cfg.circuit(require(t, "circuit").get<std::string>());
    StateVector psi = cfg.state(require(t, "state").get<std::string>());
    Observable obs = cfg.observable(require(t, "observable").get<std::string>());
    EvalMode em = cfg.mode();
    em.seed = cfg.raw.value("seed", std::uint64_t(em.seed));
    if (em.kind == EvalMode::Kind::coherent) {
        em.gamma = obs.norm;
        em.obs_unitary = obs.matrix / obs.norm;
        const Eigen::MatrixXcd dev = em.obs_unitary.adjoint() * em.obs_unitary -
                                     Eigen::MatrixXcd::Identity(obs.matrix.rows(),
                                                                obs.matrix.cols());
        if (dev.norm() > 1e-8)
            throw ConfigError("coherent mode requires O/||O|| to be unitary");
    }
    auto [est, rep] = extrapolated_estimate(c, psi, obs, cfg.order(), cfg.eps(), em, workers);
    json out;
    out["estimate"] = est;
    out["extrapolation"] = extrapolation_json(rep);
    out["plan"] = mode_echo(cfg, em);
    if (c.qubit_count <= 12) {
        const double ref = exact_expectation(c, psi, obs);
        out["reference"] = ref;
        if (check && std::abs(est - ref) > check_tolerance(cfg, obs.norm))
            throw CheckFailure("estimate deviates from the dense oracle by " +
                               fmt(std::abs(est - ref)));
    }
    return out;
}

LinearSystemInstance parse_qls(const ExperimentConfig& cfg, const json& t) {
    LinearSystemInstance inst;
    inst.qubit_count = require(t, "qubits").get<int>();
    for (const json& term : require(t, "a_terms"))
        inst.a_terms.emplace_back(PauliString(require(term, "pauli").get<std::string>()),
                                  parse_complex(require(term, "coeff")));
    inst.kappa = require(t, "kappa").get<double>();
    inst.b_prep = cfg.program(require(t, "b_prep"));
    inst.observable = cfg.observable(require(t, "observable").get<std::string>());
    inst.validate();
    return inst;
}

json run_qls(const ExperimentConfig& cfg, bool check, int workers) {
    const json& t = require(cfg.raw, "qls");
    LinearSystemInstance inst = parse_qls(cfg, t);
    EvalMode em = cfg.mode();
    em.seed = cfg.raw.value("seed", std::uint64_t(em.seed));
    auto [est, rep] = solve_and_estimate(inst, cfg.eps(), cfg.order(), em, workers);
    json out;
    out["estimate"] = est;
    out["classical_reference"] = rep.classical_reference;
    out["overlap_after_adiabatic"] = rep.overlap_after_adiabatic;
    out["filter_acceptance"] = rep.filter_acceptance;
    out["low_acceptance"] = rep.low_acceptance;
    out["t_steps"] = rep.t_steps;
    out["filter_degree"] = rep.filter_degree;
    out["ancilla_count"] = rep.ancilla_count;
    out["extrapolation"] = extrapolation_json(rep.extrapolation);
    out["plan"] = mode_echo(cfg, em);
    if (check && std::abs(est - rep.classical_reference) >
                     check_tolerance(cfg, inst.observable.norm))
        throw CheckFailure("qls estimate deviates from the classical solve by " +
                           fmt(std::abs(est - rep.classical_reference)));
    return out;
}

GroundStateTask parse_gse(const ExperimentConfig& cfg, const json& t) {
    GroundStateTask task;
    task.h = cfg.hamiltonian(require(t, "hamiltonian").get<std::string>());
    task.mu = require(t, "mu").get<double>();
    task.delta = require(t, "delta").get<double>();
    task.gamma = require(t, "gamma").get<double>();
    task.guess_prep = cfg.program(require(t, "guess_prep"));
    task.observable = cfg.observable(require(t, "observable").get<std::string>());
    return task;
}

json run_gse(const ExperimentConfig& cfg, bool check, int workers) {
    const json& t = require(cfg.raw, "gse");
    GroundStateTask task = parse_gse(cfg, t);
    EvalMode em = cfg.mode();
    em.seed = cfg.raw.value("seed", std::uint64_t(em.seed));
    auto [est, rep] = estimate_property(task, cfg.eps(), cfg.order(), em, workers);
    json out;
    out["estimate"] = est;
    out["dense_reference"] = rep.dense_reference;
    out["post_filter_overlap"] = rep.post_filter_overlap;
    out["overlap_low"] = rep.overlap_low;
    out["filter_segments"] = rep.filter_degree;
    out["ancilla_count"] = rep.ancilla_count;
    out["extrapolation"] = extrapolation_json(rep.extrapolation);
    out["plan"] = mode_echo(cfg, em);
    if (check && std::abs(est - rep.dense_reference) >
                     check_tolerance(cfg, task.observable.norm))
        throw CheckFailure("gse estimate deviates from the dense oracle by " +
                           fmt(std::abs(est - rep.dense_reference)));
    return out;
}

json report_json(const ApproximationReport& rep) {
    json out;
    out["degree"] = rep.polynomial.degree;
    out["measured_sup_error"] = rep.measured_sup_error;
    out["circle_sup_norm"] = rep.circle_sup_norm;
    out["scale_b"] = rep.scale_b;
    json dom = json::array();
    for (const auto& [a, b] : rep.target_domain) dom.push_back(json::array({a, b}));
    out["target_domain"] = dom;
    json coeffs = json::array();
    for (const cplx& c : rep.polynomial.coeffs) coeffs.push_back(complex_json(c));
    out["coefficients"] = coeffs;
    return out;
}

ApproximationReport run_approx_function(const json& t) {
    const std::string fn = require(t, "function").get<std::string>();
    if (fn == "sign")
        return sign_approx(require(t, "delta").get<double>(), require(t, "eps").get<double>());
    if (fn == "shifted-sign")
        return shifted_sign(require(t, "mu").get<double>(), require(t, "delta").get<double>(),
                            require(t, "eps").get<double>());
    if (fn == "rectangle")
        return rectangle(require(t, "t").get<double>(), require(t, "delta").get<double>(),
                         require(t, "eps").get<double>());
    if (fn == "filter")
        return filter(require(t, "delta").get<double>(), require(t, "eps").get<double>());
    if (fn == "inverse")
        return inverse(require(t, "kappa").get<double>(), require(t, "eps").get<double>()).first;
    if (fn == "exp")
        return exponential(require(t, "beta").get<double>(), require(t, "eps").get<double>());
    if (fn == "poly2laurent") {
        std::vector<double> coeffs;
        for (const json& c : require(t, "coefficients")) coeffs.push_back(c.get<double>());
        return poly_to_laurent(coeffs, require(t, "delta").get<double>(),
                               require(t, "eps").get<double>());
    }
    throw ConfigError("unknown approx function: " + fn);
}

json run_approx(const ExperimentConfig& cfg) {
    return report_json(run_approx_function(require(cfg.raw, "approx")));
}

json run_resources(const ExperimentConfig& cfg) {
    const json& t = require(cfg.raw, "resources");
    InterleavedCircuit c = cfg.circuit(require(t, "circuit").get<std::string>());
    const int m = require(t, "m").get<int>();
    const double s0 = require(t, "s0").get<double>();
    const SchemeVariant variant =
        t.value("variant", std::string("even")) == "general" ? SchemeVariant::general
                                                             : SchemeVariant::even;
    ExtrapolationScheme scheme = build_scheme(m, s0, variant);
    ResourceReport rep = resource_report(c, scheme, cfg.order(), t.value("shots", 1LL));
    json out;
    out["scheme"] = scheme_json(scheme);
    out["per_node_steps"] = rep.per_node_steps;
    out["total_exponentials"] = rep.total_exponentials;
    out["ancilla_count"] = rep.ancilla_count;
    out["segment_count"] = rep.segment_count;
    return out;
}

}  // namespace

std::string sweep_config(const ExperimentConfig& cfg, int workers) {
    (void)workers;
    const json& t = require(cfg.raw, "sweep");
    const std::string axis = require(t, "axis").get<std::string>();
    std::vector<double> values;
    for (const json& v : require(t, "values")) values.push_back(v.get<double>());
    if (values.empty()) throw ConfigError("sweep values must be non-empty");

    std::string csv = "param,value\n";
    std::vector<double> xs, ys;
    auto emit = [&](double p, double v) {
        csv += fmt(p) + "," + fmt(v) + "\n";
    };

    if (axis == "t") {
        HamiltonianSum h = cfg.hamiltonian(require(t, "hamiltonian").get<std::string>());
        const StagedProductFormula pf = suzuki(cfg.order(), int(h.terms.size()));
        for (double tv : values) {
            const double err = formula_error(h, pf, tv);
            emit(tv, err);
            xs.push_back(std::log(tv));
            ys.push_back(std::log(std::max(err, 1e-300)));
        }
    } else if (axis == "s") {
        InterleavedCircuit c = cfg.circuit(require(t, "circuit").get<std::string>());
        StateVector psi = cfg.state(require(t, "state").get<std::string>());
        Observable obs = cfg.observable(require(t, "observable").get<std::string>());
        const double f0 = exact_expectation(c, psi, obs);
        for (double s : values) {
            const TrotterRun run = make_trotter_run(cfg.order(), s, c.segment_count());
            const double err =
                std::abs(trotterized_expectation(c, psi, obs, run, EvalMode::exact_read()) - f0);
            emit(s, err);
            xs.push_back(std::log(s));
            ys.push_back(std::log(std::max(err, 1e-300)));
        }
    } else if (axis == "m") {
        InterleavedCircuit c = cfg.circuit(require(t, "circuit").get<std::string>());
        StateVector psi = cfg.state(require(t, "state").get<std::string>());
        Observable obs = cfg.observable(require(t, "observable").get<std::string>());
        const double s0 = require(t, "s0").get<double>();
        const double f0 = exact_expectation(c, psi, obs);
        for (double mv : values) {
            const ExtrapolationScheme scheme = build_scheme(int(mv), s0, SchemeVariant::even);
            std::vector<std::pair<double, double>> samples;
            for (int i = 0; i < scheme.m; ++i) {
                const double s = scheme.step(i);
                const TrotterRun run = make_trotter_run(cfg.order(), s, c.segment_count());
                samples.emplace_back(
                    s, trotterized_expectation(c, psi, obs, run, EvalMode::exact_read()));
            }
            const double err = std::abs(extrapolate(scheme, samples) - f0);
            emit(mv, err);
            xs.push_back(mv);
            ys.push_back(std::log10(std::max(err, 1e-300)));
        }
    } else if (axis == "T") {
        LinearSystemInstance inst = parse_qls(cfg, require(t, "qls"));
        const int n = inst.qubit_count;
        const Eigen::VectorXcd x = inst.solution();
        for (double tv : values) {
            StateVector st = StateVector::zero(n + 2);
            st.amps.head(Eigen::Index(1) << n) = inst.b_vector();
            apply_circuit_exact(adiabatic_evolve(inst, int(tv)), st);
            Eigen::VectorXcd target = Eigen::VectorXcd::Zero(st.amps.size());
            target.segment(Eigen::Index(1) << n, Eigen::Index(1) << n) = x;
            const double ov = std::abs(target.dot(st.amps));
            emit(tv, ov);
            xs.push_back(std::log2(tv));
            ys.push_back(ov);
        }
    } else if (axis == "delta" || axis == "eps") {
        json spec = require(t, "approx");
        for (double v : values) {
            spec[axis] = v;
            const ApproximationReport rep = run_approx_function(spec);
            emit(v, double(rep.polynomial.degree));
            xs.push_back(std::log(1.0 / v));
            ys.push_back(std::log(double(std::max(rep.polynomial.degree, 1))));
        }
    } else {
        throw ConfigError("unsupported sweep axis: " + axis);
    }
    csv += "fit," + fmt(fit_slope(xs, ys)) + "\n";
    return csv;
}

json run_config(const ExperimentConfig& cfg, bool check, int workers) {
    json out;
    out["schema"] = kResultSchema;
    out["task"] = cfg.task;
    out["config_echo"] = cfg.raw;
    if (cfg.task == "interleaved")
        out["result"] = run_interleaved(cfg, check, workers);
    else if (cfg.task == "qls")
        out["result"] = run_qls(cfg, check, workers);
    else if (cfg.task == "gse")
        out["result"] = run_gse(cfg, check, workers);
    else if (cfg.task == "approx")
        out["result"] = run_approx(cfg);
    else if (cfg.task == "resources")
        out["result"] = run_resources(cfg);
    else if (cfg.task == "sweep")
        out["result"] = json{{"csv", sweep_config(cfg, workers)}};
    return out;
}

}  // namespace itrex
