// su_generators.hpp — generalized Gell-Mann generators built from outcome kets
//
// For N orthonormal kets |phi_1>..|phi_N> living in an ambient space of
// dimension >= N, the N^2-1 Hermitian traceless generators are
//
//   U_jk = |phi_j><phi_k| + |phi_k><phi_j|
//   V_jk = -i(|phi_j><phi_k| - |phi_k><phi_j|)
//   W_l  = sqrt(2/(l(l+1))) (sum_{j<=l} |phi_j><phi_j| - l |phi_{l+1}><phi_{l+1}|)
//
// emitted in the order U12, V12, W1, U13, V13, U23, V23, W2, ... (for each
// column level k = 2..N, all pairs (j,k) with j < k as U then V, followed by
// W_{k-1}).  For the standard basis this reproduces the Pauli matrices at
// N = 2 and the Gell-Mann matrices at N = 3.  Downstream Bloch coordinates
// depend on this ordering, so it is part of the wire format (tag "gm1").

#pragma once

#include <vector>

#include "ebr/operator_core.hpp"

namespace ebr {

// Ordering-convention tag recorded in run artifacts.
inline constexpr const char* kGeneratorOrderTag = "gm1";

struct GeneratorBasis {
    int n_outcomes = 0;
    Eigen::Index ambient_dim = 0;
    std::vector<CMatrix> generators; // N^2-1 entries
    CMatrix sub_identity;            // sum_i |phi_i><phi_i|
};

// Throws NotOrthonormalError when the kets' Gram matrix deviates from the
// identity by more than 1e-10 (looser than the algebraic tolerance: inputs
// may be normalized projections of discretized wavefunctions).
GeneratorBasis build_generators(const std::vector<Ket>& outcome_kets);

// Entry (i,j) = tr(Lambda_i Lambda_j); equals 2*I for a valid basis.
RMatrix generator_gram(const GeneratorBasis& gb);

// c_N = sqrt(N(N-1)/2), the scale relating unit Bloch vectors to the
// generator expansion D = (1/N)(I_N + c_N r.Lambda).
double bloch_scale(int n_outcomes);

} // namespace ebr
