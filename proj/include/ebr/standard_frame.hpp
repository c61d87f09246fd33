// standard_frame.hpp — dimension-independent simplex representation
//
// N mutually orthogonal vectors m_i of squared norm N, center
// R = (1/N) sum m_i, and rescaled orthonormal m~_i = m_i/sqrt(N).  The
// canonical realization lives in N coordinates (m_i = sqrt(N) e_i); scalar
// products are frame-independent and that choice makes the translated
// rescaled state s~ literally the barycentric coordinate vector, so the
// transition probability is the plain dot product s~ . m~_i with no
// explicit dimension dependence.

#pragma once

#include "ebr/operator_core.hpp"

namespace ebr {

struct StandardFrame {
    int n_outcomes = 0;
    RMatrix m;            // column i = m_i = sqrt(N) e_i
    RVector center;       // R, unit norm
    RMatrix m_tilde;      // column i = m_i / sqrt(N), orthonormal
    RVector center_tilde; // R / sqrt(N), norm 1/sqrt(N)

    RVector m_col(int i) const { return m.col(i); }
    RVector m_tilde_col(int i) const { return m_tilde.col(i); }
};

StandardFrame build_standard_frame(int n_outcomes);

// Simplex vertex recovered from the frame: n_i = (m_i - R)/sqrt(N-1).
RVector frame_vertex(const StandardFrame& f, int i);

// s~ for a barycentric state: s = sqrt(N-1) sum_i p_i n_i + R, s~ = s/sqrt(N).
// In the canonical frame the result equals p itself.
RVector to_standard_state(const RVector& bary, const StandardFrame& f);

// s~ . m~_i
double standard_transition_probability(const RVector& s_tilde, const RVector& m_tilde_i);

// || n_i - m~_i ||, identical for every i; decreases to 0 as N grows.
double vertex_convergence_defect(int n_outcomes);

} // namespace ebr
