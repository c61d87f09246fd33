#include "ebr/measurement_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

namespace ebr {

namespace {
constexpr double kVertexTol = 1e-10;
constexpr double kClampTol = 1e-10;
} // namespace

MeasurementSimplex build_simplex(const std::vector<Ket>& outcome_kets, const GeneratorBasis& gb) {
    const int n = gb.n_outcomes;
    if (static_cast<int>(outcome_kets.size()) != n) {
        throw DimMismatchError("build_simplex: ket count != generator outcome count");
    }
    MeasurementSimplex s;
    s.n_outcomes = n;
    s.vertices.reserve(outcome_kets.size());
    for (const Ket& k : outcome_kets) {
        s.vertices.push_back(to_bloch(projector(k), gb));
    }

    // Both structural invariants must hold when gb was built from the same
    // kets; a violation means mismatched inputs.
    RVector centroid = RVector::Zero(s.vertices[0].coords.size());
    for (int i = 0; i < n; ++i) {
        centroid += s.vertices[static_cast<std::size_t>(i)].coords;
        for (int j = i; j < n; ++j) {
            const double expected = (i == j) ? 1.0 : -1.0 / (n - 1);
            const double got = s.vertex(i).dot(s.vertex(j));
            if (std::abs(got - expected) > kVertexTol) {
                throw Error("build_simplex: vertex Gram defect " + std::to_string(got - expected) +
                            " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    if (centroid.cwiseAbs().maxCoeff() > kVertexTol) {
        throw Error("build_simplex: vertex sum deviates from zero");
    }
    return s;
}

RVector transition_probabilities(const BlochVector& r, const MeasurementSimplex& s) {
    const int n = s.n_outcomes;
    if (r.n_outcomes != n) {
        throw DimMismatchError("transition_probabilities: outcome count mismatch");
    }
    RVector p(n);
    for (int i = 0; i < n; ++i) {
        p(i) = (1.0 + (n - 1) * r.dot(s.vertex(i))) / n;
    }
    if (p.minCoeff() < -kClampTol) {
        throw NegativeProbabilityError("transition_probabilities: p_" +
                                       std::to_string(static_cast<int>(std::distance(
                                           p.data(), std::min_element(p.data(), p.data() + n)))) +
                                       " = " + std::to_string(p.minCoeff()) +
                                       " (input not a bona fide state)");
    }
    if (p.minCoeff() < 0.0) {
        p = p.cwiseMax(0.0);
        p /= p.sum();
    }
    return p;
}

OnSimplexState project_onto_simplex(const BlochVector& r, const MeasurementSimplex& s) {
    OnSimplexState st;
    st.bary = transition_probabilities(r, s);
    st.on_simplex.n_outcomes = s.n_outcomes;
    st.on_simplex.coords = RVector::Zero(r.coords.size());
    for (int i = 0; i < s.n_outcomes; ++i) {
        st.on_simplex.coords += st.bary(i) * s.vertex(i).coords;
    }
    st.perp_norm = (r.coords - st.on_simplex.coords).norm();
    return st;
}

double subregion_measure_ratio(const OnSimplexState& st, int i) {
    if (i < 0 || i >= st.bary.size()) {
        throw IndexOutOfRangeError("subregion_measure_ratio: index " + std::to_string(i) +
                                   " out of range [0, " + std::to_string(st.bary.size()) + ")");
    }
    return st.bary(i);
}

double cayley_menger_volume(const std::vector<RVector>& points) {
    const auto np = static_cast<Eigen::Index>(points.size());
    if (np < 2) {
        throw DegenerateSimplexError("cayley_menger_volume: need at least 2 points");
    }
    const Eigen::Index m = np - 1;
    for (const RVector& p : points) {
        if (p.size() != points[0].size()) {
            throw DimMismatchError("cayley_menger_volume: mixed point dimensions");
        }
    }
    if (points[0].size() < m) {
        throw DegenerateSimplexError("cayley_menger_volume: more points than dim+1");
    }

    // Affine-independence test on the edge-vector Gram, relative to its
    // Hadamard bound so the test is scale-free.
    RMatrix edges(points[0].size(), m);
    for (Eigen::Index i = 0; i < m; ++i) {
        edges.col(i) = points[static_cast<std::size_t>(i + 1)] - points[0];
    }
    const RMatrix gram = edges.transpose() * edges;
    double hadamard = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        hadamard *= gram(i, i);
    }
    const double gram_det = gram.determinant();
    if (!(gram_det > 1e-14 * std::max(hadamard, 1e-300))) {
        throw DegenerateSimplexError("cayley_menger_volume: affinely dependent points");
    }

    // Bordered distance-matrix determinant:
    //   V^2 = (-1)^{M+1} / (2^M (M!)^2) det B
    RMatrix b(np + 1, np + 1);
    b.setOnes();
    b(0, 0) = 0.0;
    for (Eigen::Index i = 0; i < np; ++i) {
        for (Eigen::Index j = 0; j < np; ++j) {
            b(i + 1, j + 1) =
                (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)])
                    .squaredNorm();
        }
    }
    double factorial = 1.0;
    for (Eigen::Index i = 2; i <= m; ++i) {
        factorial *= static_cast<double>(i);
    }
    const double sign = (m % 2 == 0) ? -1.0 : 1.0; // (-1)^{M+1}
    const double v2 = sign * b.determinant() / (std::pow(2.0, static_cast<double>(m)) * factorial * factorial);
    return std::sqrt(std::max(v2, 0.0));
}

} // namespace ebr
