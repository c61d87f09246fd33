#include "ebr/bloch_map.hpp"

#include <cmath>
#include <string>

namespace ebr {

namespace {
constexpr double kSpanTol = 1e-10;
}

BlochVector to_bloch(const DensityOperator& d, const GeneratorBasis& gb) {
    if (d.dim() != gb.ambient_dim) {
        throw DimMismatchError("to_bloch: density dim != generator ambient dim");
    }
    const double support = trace_product(d.entries(), gb.sub_identity);
    if (std::abs(support - 1.0) > kSpanTol) {
        throw OutsideSpanError("to_bloch: tr(D I_N) = " + std::to_string(support) +
                               ", state not supported on the outcome span");
    }
    const int n = gb.n_outcomes;
    const double scale = n / (2.0 * bloch_scale(n));
    BlochVector r;
    r.n_outcomes = n;
    r.coords.resize(static_cast<Eigen::Index>(gb.generators.size()));
    for (Eigen::Index i = 0; i < r.coords.size(); ++i) {
        r.coords(i) = scale * trace_product(d.entries(), gb.generators[static_cast<std::size_t>(i)]);
    }
    return r;
}

DensityOperator from_bloch(const BlochVector& r, const GeneratorBasis& gb) {
    const int n = gb.n_outcomes;
    if (r.n_outcomes != n) {
        throw DimMismatchError("from_bloch: outcome count mismatch");
    }
    if (r.coords.size() != static_cast<Eigen::Index>(gb.generators.size())) {
        throw DimMismatchError("from_bloch: coordinate length != N^2-1");
    }
    CMatrix m = gb.sub_identity;
    const double c = bloch_scale(n);
    for (Eigen::Index i = 0; i < r.coords.size(); ++i) {
        m += (c * r.coords(i)) * gb.generators[static_cast<std::size_t>(i)];
    }
    return DensityOperator(m / static_cast<double>(n));
}

BonaFideResult is_bona_fide(const BlochVector& r, const GeneratorBasis& gb) {
    const DensityOperator d = from_bloch(r, gb);
    BonaFideResult res;
    res.min_eigenvalue = min_hermitian_eigenvalue(d.entries());
    res.bona_fide = res.min_eigenvalue >= -1e-10;
    return res;
}

} // namespace ebr
