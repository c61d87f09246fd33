#include "ebr/random_states.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace ebr {

double random_normal(SplitMix64& rng) {
    double u1 = rng.next_uniform();
    while (u1 <= 0.0) {
        u1 = rng.next_uniform();
    }
    const double u2 = rng.next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex random_complex_normal(SplitMix64& rng) {
    const double re = random_normal(rng);
    const double im = random_normal(rng);
    return {re, im};
}

Ket random_ket(SplitMix64& rng, Eigen::Index dim) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = random_complex_normal(rng);
    }
    return ket_from_amplitudes(v);
}

DensityOperator random_density(SplitMix64& rng, Eigen::Index dim, Eigen::Index rank) {
    CMatrix g(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < rank; ++j) {
            g(i, j) = random_complex_normal(rng);
        }
    }
    CMatrix d = g * g.adjoint();
    return DensityOperator(d / d.trace().real());
}

std::vector<Ket> random_orthonormal_kets(SplitMix64& rng, Eigen::Index dim, int n) {
    CMatrix g(dim, n);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = random_complex_normal(rng);
        }
    }
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(g).householderQ() * CMatrix::Identity(dim, n);
    std::vector<Ket> kets;
    kets.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        kets.emplace_back(CVector(q.col(j)));
    }
    return kets;
}

CMatrix random_unitary(SplitMix64& rng, Eigen::Index dim) {
    CMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = random_complex_normal(rng);
        }
    }
    return Eigen::HouseholderQR<CMatrix>(g).householderQ() * CMatrix::Identity(dim, dim);
}

RVector random_interior_barycentric(SplitMix64& rng, int n, double min_weight) {
    while (true) {
        RVector q(n);
        for (int i = 0; i < n; ++i) {
            double u = rng.next_uniform();
            while (u <= 0.0) {
                u = rng.next_uniform();
            }
            q(i) = -std::log(u);
        }
        q /= q.sum();
        if (q.minCoeff() >= min_weight) {
            return q;
        }
    }
}

} // namespace ebr
