#include "itrex/product_formula.hpp"

#include <cmath>
#include <numeric>

namespace itrex {

namespace {

// Stage list in application order (stages[0] acts first).
std::vector<StagedProductFormula::Stage> suzuki_stages(int k, int gamma) {
    if (k == 1) {
        StagedProductFormula::Stage forward, backward;
        forward.permutation.resize(gamma);
        std::iota(forward.permutation.begin(), forward.permutation.end(), 0);
        forward.coeffs.assign(gamma, -0.5);
        backward.permutation.assign(forward.permutation.rbegin(), forward.permutation.rend());
        backward.coeffs.assign(gamma, -0.5);
        return {forward, backward};
    }
    const double uk = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
    auto inner = suzuki_stages(k - 1, gamma);
    auto scaled = [&](double c) {
        auto copy = inner;
        for (auto& st : copy)
            for (auto& a : st.coeffs) a *= c;
        return copy;
    };
    std::vector<StagedProductFormula::Stage> out;
    for (double c : {uk, uk, 1.0 - 4.0 * uk, uk, uk}) {
        auto block = scaled(c);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

}  // namespace

StagedProductFormula suzuki(int k, int term_count) {
    if (k < 1 || term_count < 1)
        throw std::invalid_argument("suzuki: k >= 1 and term_count >= 1 required");
    StagedProductFormula pf;
    pf.stages = suzuki_stages(k, term_count);
    pf.order = 2 * k;
    pf.symmetric = true;
    pf.term_count = term_count;
    for (const auto& st : pf.stages)
        for (double a : st.coeffs) pf.a_max = std::max(pf.a_max, std::abs(a));
    // Flatten, merging adjacent exponentials of the same term across stage
    // boundaries.
    for (const auto& st : pf.stages) {
        for (size_t i = 0; i < st.permutation.size(); ++i) {
            const int term = st.permutation[i];
            const double a = st.coeffs[i];
            if (!pf.factors.empty() && pf.factors.back().first == term)
                pf.factors.back().second += a;
            else
                pf.factors.emplace_back(term, a);
        }
    }
    return pf;
}

void apply_formula(StateVector& state, const HamiltonianSum& h, const StagedProductFormula& pf,
                   double t, int steps) {
    if (steps < 1) throw std::invalid_argument("apply_formula: steps >= 1 required");
    if (static_cast<int>(h.terms.size()) != pf.term_count)
        throw std::invalid_argument("apply_formula: term count mismatch");
    const double dt = t / steps;
    for (int r = 0; r < steps; ++r)
        for (const auto& [term, a] : pf.factors)
            apply_local_exp(state, h.terms[term], dt * a);
}

Eigen::MatrixXcd formula_dense(const HamiltonianSum& h, const StagedProductFormula& pf, double t) {
    const Eigen::Index dim = Eigen::Index(1) << h.qubit_count;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    const cplx i1(0.0, 1.0);
    for (const auto& [term, a] : pf.factors) {
        Eigen::MatrixXcd ht = h.terms[term].to_dense(h.qubit_count);
        Eigen::MatrixXcd e = operator_function_oracle(
            ht, [&](double x) { return std::exp(i1 * t * a * x); });
        m = e * m;
    }
    return m;
}

double formula_error(const HamiltonianSum& h, const StagedProductFormula& pf, double t) {
    const cplx i1(0.0, 1.0);
    Eigen::MatrixXcd exact =
        operator_function_oracle(h, [&](double x) { return std::exp(-i1 * t * x); });
    return spectral_norm(exact - formula_dense(h, pf, t));
}

}  // namespace itrex
