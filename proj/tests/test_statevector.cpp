#include <doctest.h>

#include <random>

#include "itrex/gates.hpp"
#include "test_util.hpp"

using namespace itrex;

namespace {

StateVector plus_state() {
    StateVector st = StateVector::zero(1);
    st.amps << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return st;
}

}  // namespace

TEST_CASE("basis states") {
    const StateVector z = StateVector::zero(2);
    CHECK(z.amps(0) == cplx(1, 0));
    CHECK(z.norm() == doctest::Approx(1.0));
    // "01": qubit 0 reads 0, qubit 1 reads 1 -> index 2.
    const StateVector b = StateVector::basis("01");
    CHECK(b.amps(2) == cplx(1, 0));
}

TEST_CASE("pauli exponentials") {
    SUBCASE("Z eigenstate picks up a phase") {
        StateVector st = StateVector::zero(1);
        apply_pauli_exp(st, PauliString("Z"), 0.7);
        CHECK(std::abs(st.amps(0) - std::polar(1.0, 0.7)) < 1e-14);
    }
    SUBCASE("exp(i pi/2 X)|0> = i|1>") {
        StateVector st = StateVector::zero(1);
        apply_pauli_exp(st, PauliString("X"), M_PI / 2.0);
        CHECK(std::abs(st.amps(0)) < 1e-14);
        CHECK(std::abs(st.amps(1) - cplx(0, 1)) < 1e-14);
    }
    SUBCASE("zero angle is the identity") {
        StateVector st = plus_state();
        const Eigen::VectorXcd before = st.amps;
        apply_pauli_exp(st, PauliString("Y"), 0.0);
        CHECK((st.amps - before).norm() < 1e-15);
    }
}

TEST_CASE("local exponentials of dense terms") {
    SUBCASE("identity block gives a global phase") {
        const HermitianTerm t =
            HermitianTerm::make_block({0}, Eigen::Matrix2cd::Identity());
        StateVector st = plus_state();
        apply_local_exp(st, t, 0.9);
        CHECK((st.amps - std::polar(1.0, 0.9) * plus_state().amps).norm() < 1e-13);
    }
    SUBCASE("pauli terms match apply_pauli_exp") {
        const HamiltonianSum h = random_pauli_sum(3, 4, 21);
        for (const auto& term : h.terms) {
            StateVector a = StateVector::basis("010");
            StateVector b = StateVector::basis("010");
            apply_local_exp(a, term, 0.37);
            apply_pauli_exp(b, *term.pauli, 0.37 * term.coeff);
            CHECK((a.amps - b.amps).norm() < 1e-12);
        }
    }
}

TEST_CASE("ancilla rotation") {
    SUBCASE("R(0,0,0) fixes |0>") {
        StateVector st = StateVector::zero(1);
        apply_u2(st, 0, U2Rotation{});
        CHECK(std::abs(st.amps(0) - 1.0) < 1e-14);
    }
    SUBCASE("R(pi/2,0,0)|0> = |1>") {
        StateVector st = StateVector::zero(1);
        apply_u2(st, 0, U2Rotation{M_PI / 2.0, 0.0, 0.0});
        CHECK(std::abs(st.amps(1) - 1.0) < 1e-12);
    }
    SUBCASE("unitary for random angles") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> a(-3.0, 3.0);
        for (int trial = 0; trial < 20; ++trial) {
            const U2Rotation r{a(rng), a(rng), a(rng)};
            CHECK((r.matrix() * r.matrix().adjoint() - Eigen::Matrix2cd::Identity())
                      .norm() < 1e-14);
            StateVector st = plus_state();
            apply_u2(st, 0, r);
            CHECK(st.norm() == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("expectations") {
    const Observable z = Observable::from_dense(PauliString("Z").to_dense());
    CHECK(expectation(plus_state(), z) == doctest::Approx(0.0));
    CHECK(expectation(StateVector::zero(1), z) == doctest::Approx(1.0));

    // <+| e^{-iZ} X e^{iZ} |+> = cos 2.
    StateVector st = plus_state();
    apply_pauli_exp(st, PauliString("Z"), 1.0);
    const Observable x = Observable::from_dense(PauliString("X").to_dense());
    CHECK(expectation(st, x) == doctest::Approx(std::cos(2.0)).epsilon(1e-10));
}

TEST_CASE("observable sampling") {
    const Observable z = Observable::from_dense(PauliString("Z").to_dense());
    SUBCASE("eigenstates give constant outcomes") {
        const auto outcomes = sample_observable(StateVector::zero(1), z, 100, 7);
        for (double v : outcomes) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("sample mean concentrates") {
        const auto outcomes = sample_observable(plus_state(), z, 100000, 11);
        double mean = 0.0;
        for (double v : outcomes) mean += v;
        mean /= double(outcomes.size());
        CHECK(std::abs(mean) < 0.02);
    }
    SUBCASE("deterministic under a fixed seed") {
        const auto a = sample_observable(plus_state(), z, 1000, 42);
        const auto b = sample_observable(plus_state(), z, 1000, 42);
        CHECK(a == b);
    }
}

TEST_CASE("operator functions via eigensolve") {
    const HamiltonianSum h = random_pauli_sum(2, 3, 3);
    SUBCASE("identity function returns H") {
        const Eigen::MatrixXcd m =
            operator_function_oracle(h, [](double x) { return cplx(x, 0); });
        CHECK((m - h.to_dense()).norm() < 1e-10);
    }
    SUBCASE("phase function of Z is diagonal") {
        HamiltonianSum hz;
        hz.qubit_count = 1;
        hz.terms.push_back(HermitianTerm::make_pauli(PauliString("Z"), 1.0));
        const Eigen::MatrixXcd m = operator_function_oracle(
            hz, [](double x) { return std::polar(1.0, x); });
        CHECK(std::abs(m(0, 0) - std::polar(1.0, 1.0)) < 1e-12);
        CHECK(std::abs(m(1, 1) - std::polar(1.0, -1.0)) < 1e-12);
        CHECK(std::abs(m(0, 1)) < 1e-13);
    }
    SUBCASE("step function yields a projector") {
        const Eigen::MatrixXcd p = operator_function_oracle(
            h, [](double x) { return cplx(x < 0.0 ? 1.0 : 0.0, 0.0); });
        CHECK((p * p - p).norm() < 1e-10);
        CHECK((p - p.adjoint()).norm() < 1e-10);
    }
}

TEST_CASE("gate helpers") {
    SUBCASE("state_prep maps |0...0> to the requested column") {
        Eigen::VectorXcd target(4);
        target << 0.5, cplx(0, 0.5), -0.5, 0.5;
        const GateOp g = GateOp::state_prep({0, 1}, target);
        StateVector st = StateVector::zero(2);
        apply_gate(st, g);
        CHECK((st.amps - target).norm() < 1e-12);
        CHECK((g.u * g.u.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
    }
    SUBCASE("program inverse undoes the program") {
        GateProgram prog;
        prog.ops.push_back(GateOp::u2(0, U2Rotation{0.3, 0.4, 0.5}));
        prog.ops.push_back(GateOp::u2(1, U2Rotation{1.1, -0.2, 0.0}));
        StateVector st = StateVector::basis("10");
        apply_program(st, prog);
        apply_program(st, prog.inverse());
        CHECK(std::abs(st.amps(1) - 1.0) < 1e-12);
    }
}

TEST_CASE("seed splitting") {
    CHECK(split_seed(1, 0) != split_seed(1, 1));
    CHECK(split_seed(1, 0) != split_seed(2, 0));
    std::uint64_t state = split_seed(9, 3);
    for (int i = 0; i < 100; ++i) {
        const double u = uniform01(state);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
