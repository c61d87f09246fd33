#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ebr/operator_core.hpp"
#include "ebr/random_states.hpp"

using namespace ebr;

TEST_CASE("ket_from_amplitudes normalizes") {
    const Ket k1 = ket_from_amplitudes({Complex(1, 0), Complex(0, 0)});
    CHECK(k1.amplitude(0) == Complex(1, 0));
    CHECK(k1.amplitude(1) == Complex(0, 0));

    const Ket k2 = ket_from_amplitudes({Complex(1, 0), Complex(1, 0)});
    CHECK(std::abs(k2.amplitude(0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(k2.amplitude(1) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(k2.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ket_from_amplitudes rejects the zero vector") {
    CHECK_THROWS_AS(ket_from_amplitudes({Complex(0, 0), Complex(0, 0)}), ZeroVectorError);
    CHECK_THROWS_AS(ket_from_amplitudes(std::vector<Complex>{}), ZeroVectorError);
}

TEST_CASE("projector on basis and superposition kets") {
    const DensityOperator p0 = projector(ket_from_amplitudes({Complex(1, 0), Complex(0, 0)}));
    CHECK(p0.entries()(0, 0) == Complex(1, 0));
    CHECK(p0.entries()(0, 1) == Complex(0, 0));
    CHECK(p0.entries()(1, 0) == Complex(0, 0));
    CHECK(p0.entries()(1, 1) == Complex(0, 0));

    const DensityOperator pp = projector(ket_from_amplitudes({Complex(1, 0), Complex(1, 0)}));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(pp.entries()(i, j) - Complex(0.5, 0)) < 1e-15);
        }
    }

    // (1/sqrt2, i/sqrt2): diagonal 1/2, off-diagonal -i/2 and +i/2
    const DensityOperator pc = projector(ket_from_amplitudes({Complex(1, 0), Complex(0, 1)}));
    CHECK(std::abs(pc.entries()(0, 0) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(pc.entries()(1, 1) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(pc.entries()(0, 1) - Complex(0, -0.5)) < 1e-15);
    CHECK(std::abs(pc.entries()(1, 0) - Complex(0, 0.5)) < 1e-15);
}

TEST_CASE("projector is idempotent, rank 1, trace 1") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityOperator p = projector(random_ket(rng, 5));
        const CMatrix& m = p.entries();
        CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(m.trace() - Complex(1, 0)) < 1e-12);
        Eigen::JacobiSVD<CMatrix> svd(m);
        CHECK(svd.singularValues()(0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(svd.singularValues()(1) < 1e-12);
    }
}

TEST_CASE("trace_product basics") {
    const Ket zero = ket_from_amplitudes({Complex(1, 0), Complex(0, 0)});
    const Ket one = ket_from_amplitudes({Complex(0, 0), Complex(1, 0)});
    const Ket plus = ket_from_amplitudes({Complex(1, 0), Complex(1, 0)});

    CHECK(trace_product(projector(plus), projector(plus)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(trace_product(projector(zero), projector(one))) < 1e-15);
    CHECK(trace_product(projector(zero), projector(plus)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("trace_product rejects mismatched dims") {
    const DensityOperator a = DensityOperator::maximally_mixed(2);
    const DensityOperator b = DensityOperator::maximally_mixed(3);
    CHECK_THROWS_AS(trace_product(a, b), DimMismatchError);
}

TEST_CASE("trace_product symmetry and identity normalization") {
    SplitMix64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.next_u64() % 6);
        const DensityOperator a = random_density(rng, dim, dim);
        const DensityOperator b = random_density(rng, dim, 1 + dim / 2);
        CHECK(std::abs(trace_product(a, b) - trace_product(b, a)) < 1e-12);
        CHECK(trace_product(a, DensityOperator::maximally_mixed(dim)) ==
              doctest::Approx(1.0 / static_cast<double>(dim)).epsilon(1e-12));
    }
}

TEST_CASE("validate_density verdicts") {
    CHECK(validate_density(DensityOperator::maximally_mixed(2)).pass);

    CMatrix bad(2, 2);
    bad << 1.5, 0.0, 0.0, -0.5;
    const DensityReport rep = validate_density(DensityOperator(bad));
    CHECK_FALSE(rep.pass);
    CHECK(rep.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(rep.trace_defect < 1e-12);

    SplitMix64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.next_u64() % 7);
        CHECK(validate_density(projector(random_ket(rng, dim))).pass);
    }
}
