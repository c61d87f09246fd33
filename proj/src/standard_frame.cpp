#include "ebr/standard_frame.hpp"

#include <cmath>
#include <string>

namespace ebr {

StandardFrame build_standard_frame(int n) {
    if (n < 2) {
        throw ValidationError("build_standard_frame: need n >= 2");
    }
    StandardFrame f;
    f.n_outcomes = n;
    const double root_n = std::sqrt(static_cast<double>(n));
    f.m = root_n * RMatrix::Identity(n, n);
    f.center = RVector::Constant(n, 1.0 / root_n); // (1/N) sum_i m_i
    f.m_tilde = RMatrix::Identity(n, n);
    f.center_tilde = f.center / root_n;
    return f;
}

RVector frame_vertex(const StandardFrame& f, int i) {
    if (i < 0 || i >= f.n_outcomes) {
        throw IndexOutOfRangeError("frame_vertex: index out of range");
    }
    return (f.m_col(i) - f.center) / std::sqrt(f.n_outcomes - 1.0);
}

RVector to_standard_state(const RVector& bary, const StandardFrame& f) {
    const int n = f.n_outcomes;
    if (bary.size() != n) {
        throw DimMismatchError("to_standard_state: barycentric length != N");
    }
    RVector r_par = RVector::Zero(n);
    for (int i = 0; i < n; ++i) {
        r_par += bary(i) * frame_vertex(f, i);
    }
    const RVector s_par = std::sqrt(n - 1.0) * r_par + f.center;
    return s_par / std::sqrt(static_cast<double>(n));
}

double standard_transition_probability(const RVector& s_tilde, const RVector& m_tilde_i) {
    if (s_tilde.size() != m_tilde_i.size()) {
        throw DimMismatchError("standard_transition_probability: dim mismatch");
    }
    return s_tilde.dot(m_tilde_i);
}

double vertex_convergence_defect(int n) {
    const StandardFrame f = build_standard_frame(n);
    return (frame_vertex(f, 0) - f.m_tilde_col(0)).norm();
}

} // namespace ebr
