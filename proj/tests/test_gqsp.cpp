#include <doctest.h>

#include <random>

#include "itrex/gqsp.hpp"
#include "test_util.hpp"

using namespace itrex;

namespace {

LaurentPolynomial random_admissible(int d, double sup, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<cplx> coeffs(2 * d + 1);
    for (auto& a : coeffs) a = cplx(c(rng), c(rng));
    LaurentPolynomial p(d, coeffs);
    return p.scaled(sup / p.sup_circle());
}

Eigen::MatrixXcd evolution_unitary(const HamiltonianSum& h) {
    return operator_function_oracle(h, [](double x) { return std::polar(1.0, x); });
}

}  // namespace

TEST_CASE("circle evaluation") {
    LaurentPolynomial z(1, {cplx(0, 0), cplx(0, 0), cplx(1, 0)});
    CHECK(std::abs(eval_circle(z, cplx(0, 1)) - cplx(0, 1)) < 1e-15);

    LaurentPolynomial cosp(1, {cplx(0.5, 0), cplx(0, 0), cplx(0.5, 0)});
    for (double x : {0.0, 0.4, 2.0, -1.1})
        CHECK(std::abs(eval_circle(cosp, std::polar(1.0, x)) - std::cos(x)) < 1e-14);

    // Two evaluation orders: eval_circle vs explicit power sum.
    const LaurentPolynomial p = random_admissible(5, 0.8, 4);
    for (double x : {0.3, 1.9, -2.6}) {
        const cplx zc = std::polar(1.0, x);
        cplx direct = 0.0;
        for (int j = -p.degree; j <= p.degree; ++j)
            direct += p.coeff(j) * std::pow(zc, j);
        CHECK(std::abs(eval_circle(p, zc) - direct) < 1e-12);
    }
}

TEST_CASE("laurent algebra") {
    const LaurentPolynomial p = random_admissible(3, 0.7, 9);
    SUBCASE("shifted argument") {
        const LaurentPolynomial q = p.shifted_arg(0.6);
        CHECK(std::abs(eval_circle(q, std::polar(1.0, 1.0)) -
                       eval_circle(p, std::polar(1.0, 0.4))) < 1e-13);
    }
    SUBCASE("reflection") {
        const LaurentPolynomial q = p.reflected();
        CHECK(std::abs(eval_circle(q, std::polar(1.0, 0.8)) -
                       eval_circle(p, std::polar(1.0, -0.8))) < 1e-13);
    }
    SUBCASE("conjugate reflection conjugates values on the circle") {
        const LaurentPolynomial q = p.conj_reflected();
        const cplx z = std::polar(1.0, 1.3);
        CHECK(std::abs(eval_circle(q, z) - std::conj(eval_circle(p, z))) < 1e-13);
    }
    SUBCASE("product multiplies values") {
        const LaurentPolynomial q = random_admissible(2, 0.5, 10);
        const cplx z = std::polar(1.0, -0.9);
        CHECK(std::abs(eval_circle(p * q, z) - eval_circle(p, z) * eval_circle(q, z)) <
              1e-13);
    }
    SUBCASE("matrix evaluation matches the scalar function") {
        HamiltonianSum h = random_pauli_sum(2, 2, 6);
        const Eigen::MatrixXcd u = evolution_unitary(h);
        const Eigen::MatrixXcd want = operator_function_oracle(
            h, [&](double x) { return eval_circle(p, std::polar(1.0, x)); });
        CHECK((p.eval_matrix(u) - want).norm() < 1e-11);
    }
}

TEST_CASE("completion partner") {
    SUBCASE("unimodular input completes to zero") {
        const LaurentPolynomial q = complete(LaurentPolynomial::constant(1.0));
        CHECK(q.sup_circle() < 1e-9);
    }
    SUBCASE("cosine completes to |sin|") {
        LaurentPolynomial cosp(1, {cplx(0.5, 0), cplx(0, 0), cplx(0.5, 0)});
        const LaurentPolynomial q = complete(cosp);
        for (int i = 0; i < 64; ++i) {
            const double x = 2.0 * M_PI * i / 64.0;
            CHECK(std::abs(std::abs(eval_circle(q, std::polar(1.0, x))) -
                           std::abs(std::sin(x))) < 1e-8);
        }
    }
    SUBCASE("norm budget on a sup-0.5 polynomial") {
        const LaurentPolynomial p = random_admissible(4, 0.5, 12);
        const LaurentPolynomial q = complete(p);
        for (int i = 0; i < 256; ++i) {
            const double mag =
                std::abs(eval_circle(q, std::polar(1.0, 2.0 * M_PI * i / 256.0)));
            CHECK(mag >= std::sqrt(0.75) - 1e-6);
            CHECK(mag <= 1.0 + 1e-9);
        }
    }
    SUBCASE("unit modulus identity on the circle") {
        const LaurentPolynomial p = random_admissible(6, 0.9, 13);
        const LaurentPolynomial q = complete(p);
        for (int i = 0; i < 128; ++i) {
            const cplx z = std::polar(1.0, 2.0 * M_PI * i / 128.0);
            CHECK(std::abs(std::norm(eval_circle(p, z)) + std::norm(eval_circle(q, z)) -
                           1.0) < 1e-8);
        }
    }
}

TEST_CASE("angle synthesis") {
    const HamiltonianSum h2 = random_pauli_sum(2, 2, 7);
    const Eigen::MatrixXcd u2m = evolution_unitary(h2);
    SUBCASE("constant one is realized with zero rotations") {
        const GQSPAngles a = synthesize_angles(LaurentPolynomial::constant(1.0));
        CHECK(verify_block(a, u2m, LaurentPolynomial::constant(1.0)) < 1e-10);
        for (double th : a.thetas) CHECK(std::abs(std::sin(th)) < 1e-9);
    }
    SUBCASE("monomial z reproduces U") {
        LaurentPolynomial z(1, {cplx(0, 0), cplx(0, 0), cplx(1, 0)});
        CHECK(verify_block(synthesize_angles(z), u2m, z) < 1e-8);
    }
    SUBCASE("cosine polynomial gives cos(H)") {
        const HamiltonianSum h3 = random_pauli_sum(3, 3, 8);
        LaurentPolynomial cosp(1, {cplx(0.5, 0), cplx(0, 0), cplx(0.5, 0)});
        const GQSPAngles a = synthesize_angles(cosp);
        const Eigen::MatrixXcd u3 = evolution_unitary(h3);
        const Eigen::MatrixXcd block =
            gqsp_dense(a, u3).topLeftCorner(u3.rows(), u3.cols());
        const Eigen::MatrixXcd want =
            operator_function_oracle(h3, [](double x) { return cplx(std::cos(x), 0); });
        CHECK((block - want).norm() < 1e-8);
    }
    SUBCASE("random degree-8 polynomials round-trip") {
        const HamiltonianSum h3 = random_pauli_sum(3, 3, 15);
        const Eigen::MatrixXcd u3 = evolution_unitary(h3);
        for (unsigned seed = 30; seed < 35; ++seed) {
            const LaurentPolynomial p = random_admissible(8, 0.85, seed);
            CHECK(verify_block(synthesize_angles(p), u3, p) <= 1e-8);
        }
    }
    SUBCASE("perturbing one angle is detected") {
        const LaurentPolynomial p = random_admissible(4, 0.8, 40);
        GQSPAngles a = synthesize_angles(p);
        a.thetas[a.thetas.size() / 2] += 1e-3;
        CHECK(verify_block(a, u2m, p) > 1e-5);
    }
}

TEST_CASE("circuit construction") {
    const HamiltonianSum h = random_pauli_sum(2, 2, 22);
    SUBCASE("degree 0 is a pure gate program") {
        const GQSPAngles a = synthesize_angles(LaurentPolynomial::constant(0.5));
        const InterleavedCircuit c = build_circuit(a, h);
        CHECK(c.segment_count() == 0);
        CHECK(c.qubit_count == 3);
        CHECK(c.ancilla_count == 1);
    }
    SUBCASE("degree 1 has two controlled segments") {
        LaurentPolynomial z(1, {cplx(0, 0), cplx(0, 0), cplx(0.9, 0)});
        const InterleavedCircuit c = build_circuit(synthesize_angles(z), h);
        CHECK(c.segment_count() == 2);
    }
    SUBCASE("exact simulation reproduces the verified block") {
        const LaurentPolynomial p = random_admissible(3, 0.8, 23);
        const GQSPAngles a = synthesize_angles(p);
        const InterleavedCircuit c = build_circuit(a, h);
        // Assemble the dense circuit action column by column.
        const Eigen::Index dim = Eigen::Index(1) << c.qubit_count;
        Eigen::MatrixXcd w(dim, dim);
        for (Eigen::Index col = 0; col < dim; ++col) {
            StateVector st(c.qubit_count, Eigen::VectorXcd::Unit(dim, col));
            apply_circuit_exact(c, st);
            w.col(col) = st.amps;
        }
        const Eigen::MatrixXcd u = evolution_unitary(h);
        const Eigen::MatrixXcd block = w.topLeftCorner(u.rows(), u.cols());
        CHECK((block - p.eval_matrix(u)).norm() < 1e-8);
    }
}
