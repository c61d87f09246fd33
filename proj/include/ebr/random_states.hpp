// random_states.hpp — seeded generators for kets, densities, bases, unitaries
//
// Shared by the verification command and the test suites.  All draws go
// through SplitMix64 so a run is reproducible from a single 64-bit seed.

#pragma once

#include <vector>

#include "ebr/operator_core.hpp"
#include "ebr/rng.hpp"

namespace ebr {

// Standard normal via Box-Muller.
double random_normal(SplitMix64& rng);

Complex random_complex_normal(SplitMix64& rng);

Ket random_ket(SplitMix64& rng, Eigen::Index dim);

// Ginibre G (dim x rank), D = G G^dagger / tr.
DensityOperator random_density(SplitMix64& rng, Eigen::Index dim, Eigen::Index rank);

// Thin QR of a Ginibre matrix: n orthonormal columns in C^dim.
std::vector<Ket> random_orthonormal_kets(SplitMix64& rng, Eigen::Index dim, int n);

CMatrix random_unitary(SplitMix64& rng, Eigen::Index dim);

// Flat Dirichlet weights with every entry >= min_weight (rejection).
RVector random_interior_barycentric(SplitMix64& rng, int n, double min_weight = 1e-3);

} // namespace ebr
