#pragma once

#include "itrex/statevector.hpp"

namespace itrex {

// Staged symmetric product formula approximating e^{-iHt}:
//   P(t) = prod_{nu=1}^{Upsilon} prod_{gamma=1}^{Gamma} e^{i t a_(nu,gamma) H_{pi_nu(gamma)}}
// Factors are applied right-to-left in the order stored in `factors`
// (first entry acts on the state first).
struct StagedProductFormula {
    struct Stage {
        std::vector<int> permutation;   // term visit order within the stage
        std::vector<double> coeffs;     // a_(nu, gamma) matching the permutation
    };
    std::vector<Stage> stages;          // Upsilon entries
    int order = 0;                      // p = 2k
    bool symmetric = true;
    double a_max = 0.0;
    int term_count = 0;

    // Flattened factor list (term index, coefficient) with adjacent factors on
    // the same term merged at stage boundaries.
    std::vector<std::pair<int, double>> factors;

    int stage_count() const { return static_cast<int>(stages.size()); }
};

// 2k-th order Suzuki formula over Gamma terms.
StagedProductFormula suzuki(int k, int term_count);

// Apply P(t/r) r times.  Total exponential count r * Upsilon * Gamma.
void apply_formula(StateVector& state, const HamiltonianSum& h, const StagedProductFormula& pf,
                   double t, int steps);

// Dense matrix of one application of P(t).
Eigen::MatrixXcd formula_dense(const HamiltonianSum& h, const StagedProductFormula& pf, double t);

// || e^{-iHt} - P(t) ||
double formula_error(const HamiltonianSum& h, const StagedProductFormula& pf, double t);

}  // namespace itrex
