#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ebr/measurement_simplex.hpp"
#include "ebr/random_states.hpp"
#include "ebr/volumetrics.hpp"

using namespace ebr;

namespace {

std::vector<Ket> standard_basis(Eigen::Index dim, int n) {
    std::vector<Ket> kets;
    for (int i = 0; i < n; ++i) {
        kets.emplace_back(CVector::Unit(dim, i));
    }
    return kets;
}

struct Setup {
    GeneratorBasis gb;
    MeasurementSimplex simplex;
};

Setup make_setup(int n) {
    const auto basis = standard_basis(n, n);
    Setup s{build_generators(basis), {}};
    s.simplex = build_simplex(basis, s.gb);
    return s;
}

std::vector<RVector> vertex_points(const MeasurementSimplex& s) {
    std::vector<RVector> pts;
    for (const BlochVector& v : s.vertices) {
        pts.push_back(v.coords);
    }
    return pts;
}

} // namespace

TEST_CASE("N=2 simplex is the Bloch-ball diameter") {
    const Setup s = make_setup(2);
    RVector up(3), down(3);
    up << 0, 0, 1;
    down << 0, 0, -1;
    CHECK((s.simplex.vertex(0).coords - up).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((s.simplex.vertex(1).coords - down).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(s.simplex.vertex(0).dot(s.simplex.vertex(1)) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("vertex scalar products follow -1/(N-1) + delta_ij N/(N-1)") {
    for (int n = 2; n <= 8; ++n) {
        const Setup s = make_setup(n);
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(s.simplex.vertex(i).norm() - 1.0) < 1e-12);
            for (int j = i + 1; j < n; ++j) {
                CHECK(std::abs(s.simplex.vertex(i).dot(s.simplex.vertex(j)) + 1.0 / (n - 1)) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("transition probabilities at the vertices and the center") {
    const Setup s = make_setup(4);
    const RVector at_vertex = transition_probabilities(s.simplex.vertex(0), s.simplex);
    CHECK(at_vertex(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at_vertex.tail(3).cwiseAbs().maxCoeff() < 1e-14);

    BlochVector center;
    center.n_outcomes = 4;
    center.coords = RVector::Zero(15);
    const RVector at_center = transition_probabilities(center, s.simplex);
    CHECK((at_center.array() - 0.25).abs().maxCoeff() < 1e-15);
}

TEST_CASE("qubit at polar angle theta: (cos^2, sin^2) against the Born trace") {
    const Setup s = make_setup(2);
    const auto basis = standard_basis(2, 2);
    for (double theta : {0.1, 0.7, M_PI / 3, 2.3, M_PI - 0.05}) {
        const Ket psi = ket_from_amplitudes(
            {Complex(std::cos(theta / 2), 0), Complex(std::sin(theta / 2), 0)});
        const RVector p = transition_probabilities(to_bloch(projector(psi), s.gb), s.simplex);
        CHECK(std::abs(p(0) - std::cos(theta / 2) * std::cos(theta / 2)) < 1e-14);
        CHECK(std::abs(p(1) - std::sin(theta / 2) * std::sin(theta / 2)) < 1e-14);
        // independent oracle: explicit 2x2 trace
        CHECK(std::abs(p(0) - trace_product(projector(psi), projector(basis[0]))) < 1e-14);
    }
}

TEST_CASE("Born equivalence for random states, N = 2..8") {
    SplitMix64 rng(17);
    for (int n = 2; n <= 8; ++n) {
        const auto basis = standard_basis(n, n);
        const Setup s = make_setup(n);
        for (int trial = 0; trial < 50; ++trial) {
            const DensityOperator d = (trial % 2 == 0) ? projector(random_ket(rng, n))
                                                       : random_density(rng, n, n);
            const RVector p = transition_probabilities(to_bloch(d, s.gb), s.simplex);
            CHECK(std::abs(p.sum() - 1.0) < 1e-12);
            for (int i = 0; i < n; ++i) {
                CHECK(std::abs(p(i) - trace_product(d, projector(basis[static_cast<std::size_t>(i)]))) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("non-bona-fide vectors trigger NegativeProbabilityError") {
    const Setup s = make_setup(3);
    BlochVector bad = s.simplex.vertex(0);
    bad.coords = -bad.coords;
    CHECK_THROWS_AS(transition_probabilities(bad, s.simplex), NegativeProbabilityError);
}

TEST_CASE("projection onto the simplex") {
    const Setup s3 = make_setup(3);
    SplitMix64 rng(23);

    SUBCASE("a vertex projects to itself") {
        const OnSimplexState st = project_onto_simplex(s3.simplex.vertex(1), s3.simplex);
        CHECK((st.on_simplex.coords - s3.simplex.vertex(1).coords).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(st.bary(1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st.perp_norm < 1e-12);
    }

    SUBCASE("points in the affine hull are fixed") {
        RVector w = random_interior_barycentric(rng, 3);
        BlochVector r;
        r.n_outcomes = 3;
        r.coords = RVector::Zero(8);
        for (int i = 0; i < 3; ++i) {
            r.coords += w(i) * s3.simplex.vertex(i).coords;
        }
        const OnSimplexState st = project_onto_simplex(r, s3.simplex);
        CHECK((st.on_simplex.coords - r.coords).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(st.perp_norm < 1e-12);
    }

    SUBCASE("residual is orthogonal to every edge and every vertex") {
        for (int trial = 0; trial < 40; ++trial) {
            const BlochVector r = to_bloch(projector(random_ket(rng, 3)), s3.gb);
            const OnSimplexState st = project_onto_simplex(r, s3.simplex);
            const RVector residual = r.coords - st.on_simplex.coords;
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(residual.dot(s3.simplex.vertex(i).coords)) < 1e-10);
                for (int j = i + 1; j < 3; ++j) {
                    CHECK(std::abs(residual.dot(s3.simplex.vertex(i).coords -
                                                s3.simplex.vertex(j).coords)) < 1e-10);
                }
            }
            CHECK(std::abs(r.dot(s3.simplex.vertex(0)) -
                           st.on_simplex.dot(s3.simplex.vertex(0))) < 1e-10);
        }
    }

    SUBCASE("projection contracts the norm") {
        for (int n = 2; n <= 6; ++n) {
            const Setup s = make_setup(n);
            for (int trial = 0; trial < 20; ++trial) {
                const DensityOperator d = random_density(rng, n, n);
                const BlochVector r = to_bloch(d, s.gb);
                const OnSimplexState st = project_onto_simplex(r, s.simplex);
                CHECK(st.on_simplex.norm() <= r.norm() + 1e-12);
            }
        }
    }
}

TEST_CASE("probabilities ignore components orthogonal to the simplex span") {
    const Setup s = make_setup(3);
    SplitMix64 rng(31);
    const DensityOperator d = random_density(rng, 3, 3);
    const BlochVector r = to_bloch(d, s.gb);
    const RVector p0 = transition_probabilities(r, s.simplex);

    // remove the vertex-span component of a random direction
    RVector w(8);
    for (int i = 0; i < 8; ++i) {
        w(i) = random_normal(rng);
    }
    RMatrix span(8, 3);
    for (int i = 0; i < 3; ++i) {
        span.col(i) = s.simplex.vertex(i).coords;
    }
    w -= span * (span.transpose() * span).ldlt().solve(span.transpose() * w);
    BlochVector shifted = r;
    shifted.coords += 0.05 * w;
    const RVector p1 = transition_probabilities(shifted, s.simplex);
    CHECK((p0 - p1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("subregion_measure_ratio returns the barycentric weight") {
    const Setup s = make_setup(3);
    BlochVector center;
    center.n_outcomes = 3;
    center.coords = RVector::Zero(8);
    const OnSimplexState st = project_onto_simplex(center, s.simplex);
    for (int i = 0; i < 3; ++i) {
        CHECK(subregion_measure_ratio(st, i) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    }
    CHECK_THROWS_AS(subregion_measure_ratio(st, 3), IndexOutOfRangeError);
    CHECK_THROWS_AS(subregion_measure_ratio(st, -1), IndexOutOfRangeError);
}

TEST_CASE("cayley_menger_volume basics") {
    SUBCASE("unit segment") {
        std::vector<RVector> seg{RVector::Zero(1), RVector::Ones(1)};
        CHECK(cayley_menger_volume(seg) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("N=2 measurement simplex has measure 2") {
        const Setup s = make_setup(2);
        CHECK(cayley_menger_volume(vertex_points(s.simplex)) ==
              doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("N=3 equilateral triangle matches the inscribed-simplex formula") {
        const Setup s = make_setup(3);
        const double area = cayley_menger_volume(vertex_points(s.simplex));
        CHECK(area == doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-12));
        CHECK(area == doctest::Approx(inscribed_simplex_volume(2, 1.0)).epsilon(1e-12));
    }
    SUBCASE("degenerate points are rejected") {
        RVector a(2), b(2), c(2);
        a << 0, 0;
        b << 1, 0;
        c << 2, 0;
        CHECK_THROWS_AS(cayley_menger_volume({a, b, c}), DegenerateSimplexError);
    }
}

TEST_CASE("barycentric weights equal Cayley-Menger volume ratios") {
    SplitMix64 rng(53);
    for (int n = 2; n <= 5; ++n) {
        const Setup s = make_setup(n);
        const std::vector<RVector> verts = vertex_points(s.simplex);
        const double total = cayley_menger_volume(verts);
        for (int trial = 0; trial < 25; ++trial) {
            const RVector p = random_interior_barycentric(rng, n);
            RVector r_par = RVector::Zero(verts[0].size());
            for (int i = 0; i < n; ++i) {
                r_par += p(i) * verts[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < n; ++i) {
                std::vector<RVector> sub = verts;
                sub[static_cast<std::size_t>(i)] = r_par;
                CHECK(std::abs(cayley_menger_volume(sub) / total - p(i)) < 1e-9);
            }
        }
    }
}

TEST_CASE("two-vertex edge case on an orthonormal simplex: mu(A_j) = r_j sqrt(2)") {
    RVector ni = RVector::Unit(4, 0);
    RVector nj = RVector::Unit(4, 2);
    const double ri = 0.3, rj = 0.7;
    const RVector r_par = ri * ni + rj * nj;
    const double edge = cayley_menger_volume({ni, nj});
    CHECK(edge == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const double mu_aj = cayley_menger_volume({r_par, ni});
    CHECK(std::abs(mu_aj - rj * std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(mu_aj / edge - rj) < 1e-12);
}
