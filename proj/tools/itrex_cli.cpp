#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "itrex/config.hpp"

namespace {

struct CommonFlags {
    double eps = -1.0;
    int order = 0;
    std::string mode;
    long long seed = -1;
    int workers = 1;
    bool check = false;
    std::string out;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--eps", f.eps, "Target accuracy (overrides the config)");
    app->add_option("--order", f.order, "Suzuki half-order k (overrides the config)");
    app->add_option("--mode", f.mode,
                    "exact-read | shots:N:seed | coherent:eps:delta:seed");
    app->add_option("--seed", f.seed, "Base seed (overrides the config)");
    app->add_option("--workers", f.workers, "Worker pool size for per-node evaluation");
    app->add_flag("--check", f.check, "Compare against dense oracles (n <= 12)");
    app->add_option("--out", f.out, "Write the result to this file instead of stdout");
}

void apply_overrides(itrex::json& raw, const CommonFlags& f) {
    if (f.eps > 0.0) raw["eps"] = f.eps;
    if (f.order > 0) raw["order"] = f.order;
    if (!f.mode.empty()) raw["mode"] = f.mode;
    if (f.seed >= 0) raw["seed"] = std::uint64_t(f.seed);
}

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out);
        os << text << "\n";
    }
}

int execute(const std::string& path, const CommonFlags& f, const std::string& forced_task,
            bool csv_output) {
    try {
        itrex::ExperimentConfig cfg = [&] {
            std::ifstream in(path);
            if (!in) throw itrex::ConfigError("cannot open config file: " + path);
            itrex::json j;
            try {
                j = itrex::json::parse(in);
            } catch (const std::exception& e) {
                throw itrex::ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            if (!forced_task.empty() && j.is_object() && !j.contains("task"))
                j["task"] = forced_task;
            if (j.is_object() && !j.contains("schema")) j["schema"] = itrex::kConfigSchema;
            return itrex::ExperimentConfig::parse(j);
        }();
        apply_overrides(cfg.raw, f);
        if (csv_output) {
            write_output(itrex::sweep_config(cfg, f.workers), f.out);
        } else {
            write_output(itrex::run_config(cfg, f.check, f.workers).dump(2), f.out);
        }
        return 0;
    } catch (const itrex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const itrex::CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interleaved-circuit simulation toolkit"};
    app.require_subcommand(1);

    std::string run_path, sweep_path, qls_path, gse_path;
    CommonFlags run_f, sweep_f, qls_f, gse_f, approx_f;

    CLI::App* run = app.add_subcommand("run", "Execute a config task and emit result JSON");
    run->add_option("config", run_path, "Config JSON path")->required();
    add_common(run, run_f);

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV");
    sweep->add_option("config", sweep_path, "Config JSON path")->required();
    add_common(sweep, sweep_f);

    CLI::App* qls = app.add_subcommand("qls", "Quantum linear system pipeline");
    qls->add_option("--instance", qls_path, "Instance/config JSON path")->required();
    add_common(qls, qls_f);

    CLI::App* gse = app.add_subcommand("gse", "Ground-state property estimation pipeline");
    gse->add_option("--task", gse_path, "Task/config JSON path")->required();
    add_common(gse, gse_f);

    CLI::App* approx = app.add_subcommand("approx", "Construct a certified Laurent approximant");
    std::string fn;
    double a_delta = 0.1, a_eps = 1e-2, a_mu = 0.0, a_kappa = 2.0, a_beta = 2.0, a_t = 0.5;
    std::vector<double> a_coeffs;
    approx->add_option("function", fn,
                       "sign|shifted-sign|rectangle|filter|inverse|exp|poly2laurent")
        ->required();
    approx->add_option("--delta", a_delta, "Transition width / argument margin");
    approx->add_option("--approx-eps", a_eps, "Approximation accuracy");
    approx->add_option("--mu", a_mu, "Step location (shifted-sign)");
    approx->add_option("--kappa", a_kappa, "Condition number (inverse)");
    approx->add_option("--beta", a_beta, "Gibbs exponent (exp)");
    approx->add_option("--t", a_t, "Window half-width (rectangle)");
    approx->add_option("--coeffs", a_coeffs, "Monomial coefficients (poly2laurent)");
    approx->add_option("--out", approx_f.out, "Write the result to this file");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return execute(run_path, run_f, "", false);
    if (sweep->parsed()) return execute(sweep_path, sweep_f, "sweep", true);
    if (qls->parsed()) return execute(qls_path, qls_f, "qls", false);
    if (gse->parsed()) return execute(gse_path, gse_f, "gse", false);
    if (approx->parsed()) {
        itrex::json cfg_json;
        cfg_json["schema"] = itrex::kConfigSchema;
        cfg_json["task"] = "approx";
        itrex::json spec;
        spec["function"] = fn;
        spec["delta"] = a_delta;
        spec["eps"] = a_eps;
        spec["mu"] = a_mu;
        spec["kappa"] = a_kappa;
        spec["beta"] = a_beta;
        spec["t"] = a_t;
        if (!a_coeffs.empty()) spec["coefficients"] = a_coeffs;
        cfg_json["approx"] = spec;
        try {
            itrex::ExperimentConfig cfg = itrex::ExperimentConfig::parse(cfg_json);
            write_output(itrex::run_config(cfg, false, 1).dump(2), approx_f.out);
            return 0;
        } catch (const itrex::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "simulation error: " << e.what() << "\n";
            return 3;
        }
    }
    return 0;
}
