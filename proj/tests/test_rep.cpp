#include "doctest.h"

#include <cmath>

#include "cohlim/error.hpp"
#include "cohlim/hamiltonian.hpp"
#include "cohlim/rep.hpp"
#include "test_support.hpp"

using namespace cohlim;
using cohlim::testing::block_diff;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("K0 is diagonal with k + n/N") {
    const RepParams rep{1, 1.0, 4};
    const Matrix k0 = build_generator(rep, Generator::K0).entries();
    for (int n = 0; n <= 4; ++n) CHECK(k0(n, n).real() == doctest::Approx(n + 1.0));
    CHECK((k0 - Matrix(k0.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    const Matrix k0n = build_generator({4, 0.75, 6}, Generator::K0).entries();
    CHECK(k0n(3, 3).real() == doctest::Approx(0.75 + 3.0 / 4.0));
}

TEST_CASE("Kplus ladder coefficient") {
    const Matrix kp = build_generator({1, 1.0, 4}, Generator::Kplus).entries();
    CHECK(kp(1, 0).real() == doctest::Approx(std::sqrt(2.0)));
    // (1/N) sqrt((J+n)(J+n+1) - J(J-1)) at N=3, k=0.5, n=2
    const RepParams rep{3, 0.5, 5};
    const double J = rep.J();
    const double expected = std::sqrt((J + 2) * (J + 3) - J * (J - 1)) / 3.0;
    CHECK(build_generator(rep, Generator::Kplus).entries()(3, 2).real() == doctest::Approx(expected));
    // the lowering coefficient uses the same formula with the minus sign
    const double down = std::sqrt((J + 3) * (J + 2) - J * (J - 1)) / 3.0;
    CHECK(build_generator(rep, Generator::Kminus).entries()(2, 3).real() == doctest::Approx(down));
}

TEST_CASE("Casimir is k(k - 1/N) away from the truncation edge") {
    for (auto [n, k] : {std::pair{1, 1.0}, {3, 1.0}, {5, 0.3}, {16, 2.5}}) {
        const RepParams rep{n, k, 12};
        const Matrix cas = build_generator(rep, Generator::Casimir).entries();
        const double expected = k * (k - 1.0 / n);
        const Matrix interior = cas.topLeftCorner(12, 12);
        CHECK((interior - expected * Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-12 * (1 + k * k));
        // the last row feels the cutoff
        CHECK(std::abs(cas(12, 12) - expected) > 1e-6);
    }
}

TEST_CASE("su(1,1) commutation rules on the interior block") {
    for (int n : {1, 2, 4, 7, 32}) {
        for (double k : {0.25, 1.0, 3.5}) {
            const RepParams rep{n, k, 20};
            const auto a = build_generator(rep, Generator::A);
            const auto b = build_generator(rep, Generator::B);
            const auto c = build_generator(rep, Generator::C);
            const int inner = rep.dim() - 2;
            const double tol = 1e-12 * (1.0 + a.entries().cwiseAbs().maxCoeff());
            CHECK(block_diff(commutator(a, b).entries(), (2.0 * I / double(n)) * a.entries(), inner) < tol);
            CHECK(block_diff(commutator(a, c).entries(), (I / double(n)) * b.entries(), inner) < tol);
            CHECK(block_diff(commutator(b, c).entries(), (2.0 * I / double(n)) * c.entries(), inner) < tol);

            const auto k0 = build_generator(rep, Generator::K0);
            const auto kp = build_generator(rep, Generator::Kplus);
            const auto km = build_generator(rep, Generator::Kminus);
            CHECK(block_diff(commutator(km, kp).entries(), (2.0 / n) * k0.entries(), inner) < tol);
            CHECK(block_diff(commutator(k0, kp).entries(), (1.0 / n) * kp.entries(), inner) < tol);
            CHECK(block_diff(commutator(k0, km).entries(), (-1.0 / n) * km.entries(), inner) < tol);
        }
    }
}

TEST_CASE("commutator examples") {
    const RepParams rep{2, 1.0, 10};
    const auto km = build_generator(rep, Generator::Kminus);
    const auto kp = build_generator(rep, Generator::Kplus);
    const auto k0 = build_generator(rep, Generator::K0);
    CHECK(block_diff(commutator(km, kp).entries(), k0.entries(), 10) < 1e-12);  // (2/N) K0 at N = 2

    const auto x = build_generator(rep, Generator::B);
    CHECK(commutator(x, x).entries().cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(commutator(x, x).hermitian());

    const auto other = build_generator({3, 1.0, 10}, Generator::B);
    CHECK_THROWS_AS(commutator(x, other), DomainError);
}

TEST_CASE("generator matrices are Hermitian and K+ is the adjoint of K-") {
    const RepParams rep{3, 0.8, 15};
    for (auto g : {Generator::K0, Generator::K1, Generator::K2, Generator::A, Generator::B, Generator::C,
                   Generator::Casimir}) {
        const auto op = build_generator(rep, g);
        CHECK(op.hermitian());
        CHECK(is_hermitian(op.entries()));
    }
    const Matrix kp = build_generator(rep, Generator::Kplus).entries();
    const Matrix km = build_generator(rep, Generator::Kminus).entries();
    CHECK((kp - km.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cutoff 0 gives zero shift operators") {
    const RepParams rep{1, 1.0, 0};
    CHECK(build_generator(rep, Generator::Kplus).entries()(0, 0) == cplx(0.0));
    CHECK(build_generator(rep, Generator::K0).entries()(0, 0).real() == 1.0);
}

TEST_CASE("generator names") {
    CHECK(parse_generator("Kplus") == Generator::Kplus);
    CHECK(generator_name(Generator::Casimir) == "Casimir");
    CHECK_THROWS_AS(parse_generator("K3"), DomainError);
}

TEST_CASE("invalid representations are rejected") {
    CHECK_THROWS_AS(build_generator({0, 1.0, 3}, Generator::K0), DomainError);
    CHECK_THROWS_AS(build_generator({1, 0.0, 3}, Generator::K0), DomainError);
    CHECK_THROWS_AS(build_generator({1, 1.0, -1}, Generator::K0), DomainError);
    CHECK_THROWS_AS((RepParams{1, 0.5, 3}.validate_normalizable()), DomainError);
    CHECK_NOTHROW((RepParams{2, 0.5, 3}.validate_normalizable()));
}

TEST_CASE("hamiltonian_matrix for linear polynomials") {
    const RepParams rep{3, 1.0, 12};
    const Matrix k0 = build_generator(rep, Generator::K0).entries();
    const Matrix k2 = build_generator(rep, Generator::K2).entries();
    const auto free = hamiltonian_matrix(rep, HamiltonianPolynomial::parse("C"));
    CHECK((free.entries() - 3.0 * (k0 - k2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(free.hermitian());

    const auto a = hamiltonian_matrix(rep, HamiltonianPolynomial::parse("A"));
    CHECK((a.entries() - 3.0 * (k0 + k2)).cwiseAbs().maxCoeff() < 1e-12);

    const auto zero = hamiltonian_matrix(rep, HamiltonianPolynomial{});
    CHECK(zero.entries().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("polynomial monomials agree with truncated products on the interior and are exact at the edge") {
    const RepParams rep{2, 1.0, 10};
    const Matrix a = build_generator(rep, Generator::A).entries();
    const Matrix b = build_generator(rep, Generator::B).entries();
    const auto a2 = polynomial_matrix(rep, HamiltonianPolynomial::parse("A^2"));
    CHECK(block_diff(a2.entries(), a * a, 10) < 1e-12);
    // padded construction: the edge entry matches a larger basis
    const RepParams big{2, 1.0, 20};
    const Matrix ab = build_generator(big, Generator::A).entries();
    CHECK(block_diff(a2.entries(), ab * ab, 11) < 1e-12);

    const auto lit = polynomial_matrix(rep, HamiltonianPolynomial::parse("A*B"));
    const auto sym = polynomial_matrix(rep, HamiltonianPolynomial::parse("A*B"), Ordering::Symmetrized);
    CHECK_FALSE(lit.hermitian());
    CHECK(sym.hermitian());
    CHECK(block_diff(sym.entries(), 0.5 * (a * b + b * a), 10) < 1e-12);
    CHECK(block_diff(lit.entries(), a * b, 10) < 1e-12);
}

TEST_CASE("polynomial parser") {
    const auto h = HamiltonianPolynomial::parse("C + A^2/2");
    CHECK(h.terms().at({0, 0, 1}) == 1.0);
    CHECK(h.terms().at({2, 0, 0}) == 0.5);
    CHECK(h.degree() == 2);

    const auto g = HamiltonianPolynomial::parse("-0.5*A*B - 2 C + 3");
    CHECK(g.terms().at({1, 1, 0}) == -0.5);
    CHECK(g.terms().at({0, 0, 1}) == -2.0);
    CHECK(g.terms().at({0, 0, 0}) == 3.0);

    CHECK(HamiltonianPolynomial::parse("0").empty());
    CHECK(HamiltonianPolynomial::parse("A - A").empty());
    CHECK(HamiltonianPolynomial::parse("A*A") == HamiltonianPolynomial::parse("A^2"));
    CHECK(HamiltonianPolynomial::parse(HamiltonianPolynomial::parse("C + A^2/2 - 0.25*B").to_string()) ==
          HamiltonianPolynomial::parse("C + A^2/2 - 0.25*B"));

    CHECK_THROWS_AS(HamiltonianPolynomial::parse(""), DomainError);
    CHECK_THROWS_AS(HamiltonianPolynomial::parse("D"), DomainError);
    CHECK_THROWS_AS(HamiltonianPolynomial::parse("A^-1"), DomainError);
    CHECK_THROWS_AS(HamiltonianPolynomial::parse("1/A"), DomainError);
    CHECK_THROWS_AS(HamiltonianPolynomial::parse("A +"), DomainError);
}
