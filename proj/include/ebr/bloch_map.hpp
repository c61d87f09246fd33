// bloch_map.hpp — density operators <-> real Bloch vectors
//
// Forward map: D = (1/N)(I_N + c_N r.Lambda).  The inverse coefficient
// follows from tr(Lambda_i Lambda_j) = 2 delta_ij:
//   tr(D Lambda_i) = (c_N/N) * 2 r_i  =>  r_i = N/(2 c_N) tr(D Lambda_i).

#pragma once

#include "ebr/su_generators.hpp"

namespace ebr {

struct BlochVector {
    int n_outcomes = 0;
    RVector coords; // length N^2-1

    double norm() const { return coords.norm(); }
    double dot(const BlochVector& other) const { return coords.dot(other.coords); }
};

// Requires D supported on the outcome span: tr(D I_N) = 1 within 1e-10,
// else OutsideSpanError.
BlochVector to_bloch(const DensityOperator& d, const GeneratorBasis& gb);

// Always Hermitian with unit trace; positivity is not guaranteed and is
// checked separately (is_bona_fide).
DensityOperator from_bloch(const BlochVector& r, const GeneratorBasis& gb);

struct BonaFideResult {
    bool bona_fide = false;
    double min_eigenvalue = 0.0;
};

// A Bloch vector represents a state iff the reconstructed operator is
// positive semidefinite (min eigenvalue >= -1e-10).
BonaFideResult is_bona_fide(const BlochVector& r, const GeneratorBasis& gb);

} // namespace ebr
