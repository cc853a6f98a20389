#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "itrex/product_formula.hpp"
#include "test_util.hpp"

using namespace itrex;

namespace {

HamiltonianSum x_plus_z() {
    HamiltonianSum h;
    h.qubit_count = 1;
    h.terms.push_back(HermitianTerm::make_pauli(PauliString("X"), 1.0));
    h.terms.push_back(HermitianTerm::make_pauli(PauliString("Z"), 1.0));
    return h;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m, double s) {
    return (cplx(0, -1) * s * m).exp();
}

}  // namespace

TEST_CASE("second-order layout") {
    const StagedProductFormula pf = suzuki(1, 3);
    CHECK(pf.order == 2);
    CHECK(pf.stage_count() == 2);
    CHECK(pf.symmetric);
    CHECK(pf.a_max == doctest::Approx(0.5));
    // Palindromic factor list with the middle term merged.
    const std::vector<std::pair<int, double>> want = {
        {0, -0.5}, {1, -0.5}, {2, -1.0}, {1, -0.5}, {0, -0.5}};
    REQUIRE(pf.factors.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) {
        CHECK(pf.factors[i].first == want[i].first);
        CHECK(pf.factors[i].second == doctest::Approx(want[i].second));
    }
}

TEST_CASE("fourth-order parameters") {
    const StagedProductFormula pf = suzuki(2, 2);
    CHECK(pf.order == 4);
    CHECK(pf.stage_count() == 10);
    const double u2 = 1.0 / (4.0 - std::pow(4.0, 1.0 / 3.0));
    CHECK(u2 == doctest::Approx(0.414490).epsilon(1e-5));
    CHECK(pf.a_max <= 4.0 / 9.0 + 1e-12);
    // First-order consistency: coefficients for each term sum to -1.
    std::vector<double> sums(2, 0.0);
    for (const auto& [idx, a] : pf.factors) sums[idx] += a;
    CHECK(sums[0] == doctest::Approx(-1.0));
    CHECK(sums[1] == doctest::Approx(-1.0));
    // The central stage carries the closed-form coefficient 1 - 4 u_2.
    bool found = false;
    for (const auto& stage : pf.stages)
        for (double a : stage.coeffs)
            if (std::abs(std::abs(a) - std::abs(1.0 - 4.0 * u2) / 2.0) < 1e-12) found = true;
    CHECK(found);
}

TEST_CASE("formula application") {
    SUBCASE("commuting terms are exact") {
        HamiltonianSum h;
        h.qubit_count = 2;
        h.terms.push_back(HermitianTerm::make_pauli(PauliString("ZI"), 0.7));
        h.terms.push_back(HermitianTerm::make_pauli(PauliString("IZ"), -0.4));
        const StagedProductFormula pf = suzuki(1, 2);
        StateVector st(2, Eigen::VectorXcd::Constant(4, 0.5));
        apply_formula(st, h, pf, 0.9, 3);
        const Eigen::VectorXcd want =
            expm(h.to_dense(), 0.9) * Eigen::VectorXcd::Constant(4, 0.5);
        CHECK((st.amps - want).norm() < 1e-10);
    }
    SUBCASE("t = 0 is the identity") {
        const HamiltonianSum h = random_pauli_sum(2, 3, 6);
        StateVector st = StateVector::basis("10");
        apply_formula(st, h, suzuki(1, 3), 0.0, 2);
        CHECK(std::abs(st.amps(1) - 1.0) < 1e-13);
    }
    SUBCASE("X + Z strang step matches the dense three-factor product") {
        const HamiltonianSum h = x_plus_z();
        const double t = 0.1;
        const Eigen::MatrixXcd want = expm(PauliString("X").to_dense(), t / 2) *
                                      expm(PauliString("Z").to_dense(), t) *
                                      expm(PauliString("X").to_dense(), t / 2);
        CHECK((formula_dense(h, suzuki(1, 2), t) - want).norm() < 1e-12);
    }
    SUBCASE("apply_formula agrees with formula_dense") {
        const HamiltonianSum h = random_pauli_sum(2, 3, 17);
        const StagedProductFormula pf = suzuki(2, 3);
        StateVector st = StateVector::basis("01");
        apply_formula(st, h, pf, 0.3, 1);
        const Eigen::VectorXcd want =
            formula_dense(h, pf, 0.3) * StateVector::basis("01").amps;
        CHECK((st.amps - want).norm() < 1e-12);
    }
}

TEST_CASE("error scaling") {
    SUBCASE("commuting terms have zero error") {
        HamiltonianSum h;
        h.qubit_count = 2;
        h.terms.push_back(HermitianTerm::make_pauli(PauliString("ZI"), 1.0));
        h.terms.push_back(HermitianTerm::make_pauli(PauliString("IZ"), 1.0));
        CHECK(formula_error(h, suzuki(1, 2), 0.5) < 1e-12);
    }
    SUBCASE("order 2k+1 slopes on X + Z") {
        const HamiltonianSum h = x_plus_z();
        for (int k = 1; k <= 2; ++k) {
            const StagedProductFormula pf = suzuki(k, 2);
            std::vector<double> lx, ly;
            for (int j = 0; j <= 5; ++j) {
                const double t = 0.2 * std::pow(2.0, -j);
                lx.push_back(std::log(t));
                ly.push_back(std::log(formula_error(h, pf, t)));
            }
            CHECK(std::abs(fit_slope(lx, ly) - (2 * k + 1)) < 0.3);
        }
    }
}
