#include "itrex/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace itrex {

long long hoeffding_shots(double eps, double b_norm1, double obs_norm, int m,
                          double delta_total) {
    if (eps <= 0.0) throw std::invalid_argument("hoeffding_shots: eps must be positive");
    if (obs_norm <= 0.0) obs_norm = 1.0;
    const double ratio = 2.0 * b_norm1 * obs_norm / (eps * obs_norm);
    const double n = 2.0 * ratio * ratio * std::log(2.0 * m / (delta_total / 3.0));
    return static_cast<long long>(std::ceil(n - 1e-12));
}

InterleavedCircuit fixed_point_amplify(const InterleavedCircuit& c, const GateProgram& prep,
                                       const std::vector<int>& flag_qubits, double eta,
                                       double eps) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("fixed_point_amplify: eta not in (0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("fixed_point_amplify: eps not in (0,1)");
    if (flag_qubits.empty())
        throw std::invalid_argument("fixed_point_amplify: empty flag set");
    const int n = c.qubit_count;

    long long k_rounds = static_cast<long long>(std::ceil((2.0 / eta) * std::log(2.0 / eps)));
    if (k_rounds % 2 != 0) ++k_rounds;
    const long long half = k_rounds / 2;
    const long long seq_len = k_rounds + 1;  // odd Chebyshev degree

    const double delta = std::sqrt(eps);
    const double gamma = 1.0 / std::cosh(std::acosh(1.0 / delta) / double(seq_len));
    const double w = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));

    // acot with range (0, pi) so the phase stays continuous across tan's pole.
    auto acot = [](double x) { return M_PI / 2.0 - std::atan(x); };
    std::vector<double> alpha(half + 1, 0.0), beta(half + 1, 0.0);
    for (long long j = 1; j <= half; ++j)
        alpha[j] = 2.0 * acot(std::tan(2.0 * M_PI * double(j) / double(seq_len)) * w);
    for (long long j = 1; j <= half; ++j) beta[j] = -alpha[half - j + 1];

    // Reflection generators: the flagged projector on the flag qubits, and the
    // rank-one projector onto the full prepared input state.
    Eigen::MatrixXcd proj_flag = Eigen::MatrixXcd::Ones(1, 1);
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    std::vector<int> flags_sorted = flag_qubits;
    std::sort(flags_sorted.begin(), flags_sorted.end());
    for (std::size_t i = 0; i < flags_sorted.size(); ++i) proj_flag = kron(p0, proj_flag);

    StateVector init = StateVector::zero(n);
    apply_program(init, prep);
    const Eigen::MatrixXcd proj_init = init.amps * init.amps.adjoint();
    std::vector<int> all_qubits(n);
    for (int q = 0; q < n; ++q) all_qubits[q] = q;

    CircuitBuilder b(n);
    b.add_gates(prep);
    b.add_circuit(c);
    for (long long j = 1; j <= half; ++j) {
        // One round: e^{i beta_j P_flag}, W^dag, e^{-i alpha_j |init><init|}, W.
        HamiltonianSum hf;
        hf.qubit_count = n;
        hf.terms.push_back(HermitianTerm::make_block(flags_sorted, beta[j] * proj_flag));
        b.add_segment(std::move(hf), +1);
        b.add_circuit_inverse(c);
        HamiltonianSum hs;
        hs.qubit_count = n;
        hs.terms.push_back(HermitianTerm::make_block(all_qubits, -alpha[j] * proj_init));
        b.add_segment(std::move(hs), +1);
        b.add_circuit(c);
    }
    return b.build(c.ancilla_count);
}

namespace {

// Largest amplification factor K' = 4k'+2 <= pi / width such that the scaled
// interval lies in a single half of the circle; falls back to the current one.
std::pair<long long, bool> find_next_k(long long k, bool up, double theta_l, double theta_u) {
    const double width = theta_u - theta_l;
    if (width <= 0.0) return {k, up};
    const long long cur = 4 * k + 2;
    long long kmax = static_cast<long long>(std::floor(M_PI / width));
    long long next = kmax - ((kmax - 2) % 4 + 4) % 4;
    const double tiny = 1e-12;
    while (next >= 2 * cur) {
        const double wraps = std::floor(double(next) * theta_l / (2.0 * M_PI) + tiny);
        const double phi_l = double(next) * theta_l - 2.0 * M_PI * wraps;
        const double phi_u = phi_l + double(next) * width;
        if (phi_u <= M_PI + tiny) return {(next - 2) / 4, true};
        if (phi_l >= M_PI - tiny && phi_u <= 2.0 * M_PI + tiny) return {(next - 2) / 4, false};
        next -= 4;
    }
    return {k, up};
}

}  // namespace

IqaeResult iqae_from_amplitude(double a, double eps, double delta, std::uint64_t seed) {
    if (!(eps > 0.0)) throw std::invalid_argument("iqae: eps must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("iqae: delta not in (0,1)");
    a = std::clamp(a, 0.0, 1.0);
    const double theta_true = std::asin(std::sqrt(a));

    IqaeResult res;
    double theta_l = 0.0, theta_u = M_PI / 2.0;
    long long k = 0;
    bool up = true;
    const int max_rounds = 200;
    const long long base_shots = 100;
    const double t_max = std::max(1.0, std::ceil(std::log2(M_PI / (4.0 * eps)))) + 2.0;

    // Accumulated (shots, successes) per amplification factor.
    std::map<long long, std::pair<long long, long long>> acc;
    std::uint64_t rng = split_seed(seed, 17);

    for (int round = 0; round < max_rounds; ++round) {
        const double a_lo = std::sin(theta_l) * std::sin(theta_l);
        const double a_hi = std::sin(theta_u) * std::sin(theta_u);
        if (a_hi - a_lo <= 2.0 * eps) break;
        std::tie(k, up) = find_next_k(k, up, theta_l, theta_u);
        const long long bigk = 4 * k + 2;
        const double p_true =
            std::pow(std::sin(double(2 * k + 1) * theta_true), 2.0);

        long long shots = base_shots;
        bool round_ok = false;
        for (int attempt = 0; attempt < 2 && !round_ok; ++attempt) {
            long long ones = 0;
            for (long long s = 0; s < shots; ++s)
                if (uniform01(rng) < p_true) ++ones;
            auto& slot = acc[k];
            slot.first += shots;
            slot.second += ones;
            res.oracle_queries += shots * (2 * k + 1);

            const double phat = double(slot.second) / double(slot.first);
            const double eps_p =
                std::sqrt(std::log(2.0 * t_max / delta) / (2.0 * double(slot.first)));
            const double p_min = std::clamp(phat - eps_p, 0.0, 1.0);
            const double p_max = std::clamp(phat + eps_p, 0.0, 1.0);
            double phi_min, phi_max;
            if (up) {
                phi_min = std::acos(std::clamp(1.0 - 2.0 * p_min, -1.0, 1.0));
                phi_max = std::acos(std::clamp(1.0 - 2.0 * p_max, -1.0, 1.0));
            } else {
                phi_min = 2.0 * M_PI - std::acos(std::clamp(1.0 - 2.0 * p_max, -1.0, 1.0));
                phi_max = 2.0 * M_PI - std::acos(std::clamp(1.0 - 2.0 * p_min, -1.0, 1.0));
            }
            const double wraps =
                std::floor(double(bigk) * theta_l / (2.0 * M_PI) + 1e-12);
            const double tl_new = (2.0 * M_PI * wraps + phi_min) / double(bigk);
            const double tu_new = (2.0 * M_PI * wraps + phi_max) / double(bigk);
            const double tl2 = std::max(theta_l, tl_new);
            const double tu2 = std::min(theta_u, tu_new);
            if (tl2 <= tu2 + 1e-15) {
                theta_l = tl2;
                theta_u = std::max(tl2, tu2);
                round_ok = true;
            } else if (attempt == 0) {
                res.ci_retry = true;  // inconsistent inversion: double the shots once
                shots *= 2;
            }
        }
        res.round_ks.push_back(k);
        res.round_shots.push_back(acc[k].first);
        ++res.rounds;
    }
    const double a_lo = std::sin(theta_l) * std::sin(theta_l);
    const double a_hi = std::sin(theta_u) * std::sin(theta_u);
    res.estimate = 0.5 * (a_lo + a_hi);
    return res;
}

double AmplitudeCircuit::amplitude() const {
    StateVector st = psi0;
    apply_circuit_exact(circuit, st);
    double a = 0.0;
    for (Eigen::Index b = 0; b < st.amps.size(); ++b) {
        bool good = true;
        for (const auto& [q, v] : flags)
            if (((b >> q) & 1) != v) { good = false; break; }
        if (good) a += std::norm(st.amps[b]);
    }
    return a;
}

IqaeResult iqae(const AmplitudeCircuit& ac, double eps, double delta, std::uint64_t seed) {
    return iqae_from_amplitude(ac.amplitude(), eps, delta, seed);
}

}  // namespace itrex
