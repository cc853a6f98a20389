#include <doctest.h>

#include "itrex/config.hpp"

using namespace itrex;

namespace {

json minimal_interleaved_config() {
    return json::parse(R"({
      "schema": "itrex-config-v1",
      "task": "interleaved",
      "eps": 1e-3,
      "order": 1,
      "mode": "exact-read",
      "hamiltonians": {
        "h1": {"qubits": 1, "terms": [{"pauli": "X", "coeff": 0.5},
                                      {"pauli": "Z", "coeff": 0.3}]}
      },
      "states": {"psi": {"basis": "0"}},
      "observables": {"obs": {"pauli": "Z"}},
      "circuits": {"c": {"qubits": 1, "items": [{"segment": "h1", "sign": 1}]}},
      "interleaved": {"circuit": "c", "state": "psi", "observable": "obs"}
    })");
}

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig cfg = ExperimentConfig::parse(minimal_interleaved_config());
    CHECK(cfg.task == "interleaved");
    CHECK(cfg.eps() == doctest::Approx(1e-3));
    CHECK(cfg.order() == 1);
    const HamiltonianSum h = cfg.hamiltonian("h1");
    CHECK(h.qubit_count == 1);
    CHECK(h.terms.size() == 2);
    CHECK(cfg.circuit("c").segment_count() == 1);
    CHECK(cfg.observable("obs").norm == doctest::Approx(1.0));
}

TEST_CASE("schema and reference errors") {
    json j = minimal_interleaved_config();
    j["schema"] = "something-else";
    CHECK_THROWS_AS(ExperimentConfig::parse(j), ConfigError);

    j = minimal_interleaved_config();
    j["task"] = "unknown-task";
    CHECK_THROWS_AS(ExperimentConfig::parse(j), ConfigError);

    j = minimal_interleaved_config();
    j["circuits"]["c"]["items"][0]["segment"] = "missing";
    CHECK_THROWS_AS(run_config(ExperimentConfig::parse(j), false, 1), ConfigError);

    j = minimal_interleaved_config();
    j["hamiltonians"]["h1"]["terms"][0].erase("coeff");
    CHECK_THROWS_AS(run_config(ExperimentConfig::parse(j), false, 1), ConfigError);
}

TEST_CASE("end-to-end run with oracle check") {
    const ExperimentConfig cfg = ExperimentConfig::parse(minimal_interleaved_config());
    const json out = run_config(cfg, true, 1);
    CHECK(out.at("schema") == kResultSchema);
    const double est = out.at("result").at("estimate").get<double>();
    const double ref = out.at("result").at("reference").get<double>();
    CHECK(std::abs(est - ref) <= 3e-3);
}

TEST_CASE("determinism under a fixed seed") {
    json j = minimal_interleaved_config();
    j["mode"] = "shots:2000:7";
    const ExperimentConfig cfg = ExperimentConfig::parse(j);
    const json a = run_config(cfg, false, 1);
    const json b = run_config(cfg, false, 1);
    CHECK(a.dump() == b.dump());
}

TEST_CASE("approx task emits certified coefficients") {
    json j = json::parse(R"({
      "schema": "itrex-config-v1",
      "task": "approx",
      "approx": {"function": "filter", "delta": 0.3, "eps": 1e-2}
    })");
    const json out = run_config(ExperimentConfig::parse(j), false, 1);
    CHECK(out.at("result").at("degree").get<int>() > 0);
    CHECK(out.at("result").at("circle_sup_norm").get<double>() <= 1.0 + 1e-9);
    CHECK(out.at("result").at("measured_sup_error").get<double>() <= 1e-2);
}

TEST_CASE("resources task tabulates the node schedule") {
    json j = minimal_interleaved_config();
    j["task"] = "resources";
    j["resources"] = {{"circuit", "c"}, {"m", 2}, {"s0", 1.0}};
    const json out = run_config(ExperimentConfig::parse(j), false, 1);
    const auto steps = out.at("result").at("per_node_steps");
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].get<long long>() == 10);
    CHECK(steps[1].get<long long>() == 4);
}

TEST_CASE("sweeps reject an empty axis") {
    json j = minimal_interleaved_config();
    j["task"] = "sweep";
    j["sweep"] = {{"axis", "trotter-order"}, {"values", json::array()}};
    CHECK_THROWS_AS(sweep_config(ExperimentConfig::parse(j), 1), ConfigError);
}
