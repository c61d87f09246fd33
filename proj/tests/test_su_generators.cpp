#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ebr/random_states.hpp"
#include "ebr/su_generators.hpp"

using namespace ebr;

namespace {

std::vector<Ket> standard_basis(Eigen::Index dim, int n) {
    std::vector<Ket> kets;
    for (int i = 0; i < n; ++i) {
        kets.emplace_back(CVector::Unit(dim, i));
    }
    return kets;
}

// The three Pauli matrices.
std::vector<CMatrix> pauli() {
    CMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    return {x, y, z};
}

// The eight Gell-Mann matrices in their standard order.
std::vector<CMatrix> gellmann() {
    std::vector<CMatrix> g(8, CMatrix::Zero(3, 3));
    g[0] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
    g[1] << 0, Complex(0, -1), 0, Complex(0, 1), 0, 0, 0, 0, 0;
    g[2] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
    g[3] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
    g[4] << 0, 0, Complex(0, -1), 0, 0, 0, Complex(0, 1), 0, 0;
    g[5] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
    g[6] << 0, 0, 0, 0, 0, Complex(0, -1), 0, Complex(0, 1), 0;
    const double s = 1.0 / std::sqrt(3.0);
    g[7] << s, 0, 0, 0, s, 0, 0, 0, -2 * s;
    return g;
}

} // namespace

TEST_CASE("N=2 standard basis gives the Pauli matrices") {
    const GeneratorBasis gb = build_generators(standard_basis(2, 2));
    REQUIRE(gb.generators.size() == 3);
    const auto expected = pauli();
    for (int i = 0; i < 3; ++i) {
        CHECK((gb.generators[i] - expected[i]).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("N=3 standard basis gives the Gell-Mann matrices") {
    const GeneratorBasis gb = build_generators(standard_basis(3, 3));
    REQUIRE(gb.generators.size() == 8);
    const auto expected = gellmann();
    for (int i = 0; i < 8; ++i) {
        CHECK((gb.generators[i] - expected[i]).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("N=2 embedded in dim 8 acts as Pauli on the span, zero elsewhere") {
    const GeneratorBasis gb = build_generators(standard_basis(8, 2));
    const auto expected = pauli();
    for (int g = 0; g < 3; ++g) {
        CHECK((gb.generators[g].topLeftCorner(2, 2) - expected[g]).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(gb.generators[g].bottomRows(6).cwiseAbs().maxCoeff() == 0.0);
        CHECK(gb.generators[g].rightCols(6).cwiseAbs().maxCoeff() == 0.0);
    }
    // direct trace computation over all pairs
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const Complex t = (gb.generators[i] * gb.generators[j]).trace();
            CHECK(std::abs(t - (i == j ? Complex(2, 0) : Complex(0, 0))) < 1e-14);
        }
    }
}

TEST_CASE("generator_gram is 2I for the explicit bases") {
    for (int n : {2, 3}) {
        const GeneratorBasis gb = build_generators(standard_basis(n, n));
        const RMatrix gram = generator_gram(gb);
        const auto m = static_cast<Eigen::Index>(gb.generators.size());
        CHECK((gram - 2.0 * RMatrix::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("random orthonormal outcome kets: hermitian, traceless, gram 2I, commute with I_N") {
    SplitMix64 rng(101);
    for (int n = 2; n <= 8; ++n) {
        const Eigen::Index ambient = n + static_cast<Eigen::Index>(rng.next_u64() % (65 - n));
        const GeneratorBasis gb = build_generators(random_orthonormal_kets(rng, ambient, n));
        REQUIRE(static_cast<int>(gb.generators.size()) == n * n - 1);

        for (const CMatrix& g : gb.generators) {
            CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
            CHECK(std::abs(g.trace()) < 1e-10);
            CHECK((g * gb.sub_identity - gb.sub_identity * g).cwiseAbs().maxCoeff() < 1e-10);
        }
        const RMatrix gram = generator_gram(gb);
        const auto m = static_cast<Eigen::Index>(gb.generators.size());
        CHECK((gram - 2.0 * RMatrix::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-10);

        // sub-identity: idempotent with trace N
        const CMatrix& id = gb.sub_identity;
        CHECK((id * id - id).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(id.trace() - Complex(n, 0)) < 1e-10);

        // W_l normalization at the top level l = N-1
        const CMatrix& w_top = gb.generators.back();
        CHECK(std::abs((w_top * w_top).trace() - Complex(2, 0)) < 1e-10);
    }
}

TEST_CASE("non-orthonormal kets are rejected") {
    std::vector<Ket> kets;
    kets.push_back(ket_from_amplitudes({Complex(1, 0), Complex(0, 0), Complex(0, 0)}));
    kets.push_back(ket_from_amplitudes({Complex(1, 0), Complex(1, 0), Complex(0, 0)}));
    CHECK_THROWS_AS(build_generators(kets), NotOrthonormalError);
}

TEST_CASE("fewer than two outcome kets is an error") {
    CHECK_THROWS_AS(build_generators(standard_basis(4, 1)), Error);
}
