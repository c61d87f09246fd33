// measurement_simplex.hpp — the (N-1)-dimensional measurement simplex
//
// Vertices n_i = bloch(|phi_i><phi_i|) satisfy
//   n_i.n_j = -1/(N-1) + delta_ij N/(N-1),   sum_i n_i = 0,
// and the transition probability to outcome i is
//   p_i = (1/N)[1 + (N-1) r.n_i],
// equal to the relative measure mu(A_i)/mu(simplex) of the sub-region A_i
// obtained by replacing vertex n_i with the on-simplex state r_par.
// cayley_menger_volume provides the independent volume oracle for that
// identity.

#pragma once

#include <vector>

#include "ebr/bloch_map.hpp"

namespace ebr {

struct MeasurementSimplex {
    int n_outcomes = 0;
    std::vector<BlochVector> vertices;

    const BlochVector& vertex(int i) const { return vertices[static_cast<std::size_t>(i)]; }
};

// On-simplex (decohered) state: r_par = sum_i p_i n_i with barycentric
// weights p equal to the outcome probabilities.
struct OnSimplexState {
    BlochVector on_simplex;
    RVector bary;
    double perp_norm = 0.0;
};

// Vertices are the Bloch vectors of the outcome projectors; gb must be
// built from the same kets.
MeasurementSimplex build_simplex(const std::vector<Ket>& outcome_kets, const GeneratorBasis& gb);

// p_i = (1/N)[1 + (N-1) r.n_i].  Round-off negatives in (-1e-10, 0) are
// clamped to zero and the vector renormalized; anything below -1e-10
// signals a non-bona-fide input and throws NegativeProbabilityError.
RVector transition_probabilities(const BlochVector& r, const MeasurementSimplex& s);

OnSimplexState project_onto_simplex(const BlochVector& r, const MeasurementSimplex& s);

// p_i, contractually equal to mu(A_i)/mu(simplex).
double subregion_measure_ratio(const OnSimplexState& st, int i);

// M-dimensional volume of the simplex spanned by M+1 points, via the
// Cayley-Menger determinant of pairwise squared distances.  Throws
// DegenerateSimplexError when the edge-vector Gram determinant vanishes
// (relative to its Hadamard bound) below 1e-14.
double cayley_menger_volume(const std::vector<RVector>& points);

} // namespace ebr
