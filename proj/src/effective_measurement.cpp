#include "ebr/effective_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ebr {

namespace {
constexpr double kDropTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
} // namespace

PartitionProjectors PartitionProjectors::from_index_sets(
    Eigen::Index ambient_dim, std::vector<std::vector<Eigen::Index>> index_sets) {
    if (ambient_dim < 1) {
        throw ValidationError("PartitionProjectors: ambient_dim must be positive");
    }
    if (index_sets.size() < 2) {
        throw ValidationError("PartitionProjectors: need at least 2 blocks");
    }
    std::vector<bool> seen(static_cast<std::size_t>(ambient_dim), false);
    for (std::size_t b = 0; b < index_sets.size(); ++b) {
        if (index_sets[b].empty()) {
            throw ValidationError("PartitionProjectors: block " + std::to_string(b) + " is empty");
        }
        for (Eigen::Index idx : index_sets[b]) {
            if (idx < 0 || idx >= ambient_dim) {
                throw ValidationError("PartitionProjectors: index " + std::to_string(idx) +
                                      " outside [0, " + std::to_string(ambient_dim) + ")");
            }
            if (seen[static_cast<std::size_t>(idx)]) {
                throw ValidationError("PartitionProjectors: index " + std::to_string(idx) +
                                      " appears in more than one block");
            }
            seen[static_cast<std::size_t>(idx)] = true;
        }
    }
    PartitionProjectors p;
    p.ambient_dim_ = ambient_dim;
    p.n_blocks_ = index_sets.size();
    p.index_sets_ = std::move(index_sets);
    p.completeness_defect_ = 0.0;
    return p;
}

PartitionProjectors PartitionProjectors::from_bases(std::vector<CMatrix> bases, double tol) {
    if (bases.size() < 2) {
        throw ValidationError("PartitionProjectors: need at least 2 blocks");
    }
    const Eigen::Index dim = bases[0].rows();
    Eigen::Index total_rank = 0;
    double defect = 0.0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i].rows() != dim || bases[i].cols() < 1) {
            throw ValidationError("PartitionProjectors: block " + std::to_string(i) +
                                  " has bad shape");
        }
        total_rank += bases[i].cols();
        const CMatrix g = bases[i].adjoint() * bases[i];
        defect = std::max(defect,
                          (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            defect = std::max(defect, (bases[i].adjoint() * bases[j]).cwiseAbs().maxCoeff());
        }
    }
    if (total_rank > dim) {
        throw ValidationError("PartitionProjectors: total rank exceeds ambient dim");
    }
    if (defect > tol) {
        throw ValidationError("PartitionProjectors: blocks not orthonormal (defect " +
                              std::to_string(defect) + ")");
    }
    PartitionProjectors p;
    p.ambient_dim_ = dim;
    p.n_blocks_ = bases.size();
    p.bases_ = std::move(bases);
    p.completeness_defect_ = defect;
    return p;
}

Eigen::Index PartitionProjectors::block_rank(int i) const {
    const auto b = static_cast<std::size_t>(i);
    return is_index_partition() ? static_cast<Eigen::Index>(index_sets_[b].size())
                                : bases_[b].cols();
}

bool PartitionProjectors::covers_full_space() const {
    Eigen::Index total = 0;
    for (int i = 0; i < n_blocks(); ++i) {
        total += block_rank(i);
    }
    return total == ambient_dim_;
}

CVector PartitionProjectors::apply(int i, const CVector& psi) const {
    if (psi.size() != ambient_dim_) {
        throw DimMismatchError("PartitionProjectors::apply: vector dim mismatch");
    }
    const auto b = static_cast<std::size_t>(i);
    if (is_index_partition()) {
        CVector out = CVector::Zero(ambient_dim_);
        for (Eigen::Index idx : index_sets_[b]) {
            out(idx) = psi(idx);
        }
        return out;
    }
    return bases_[b] * (bases_[b].adjoint() * psi);
}

CMatrix PartitionProjectors::dense(int i) const {
    const auto b = static_cast<std::size_t>(i);
    if (is_index_partition()) {
        CMatrix out = CMatrix::Zero(ambient_dim_, ambient_dim_);
        for (Eigen::Index idx : index_sets_[b]) {
            out(idx, idx) = 1.0;
        }
        return out;
    }
    return bases_[b] * bases_[b].adjoint();
}

DensityOperator luders_collapse(const DensityOperator& d, const CMatrix& p) {
    if (p.rows() != d.dim() || p.cols() != d.dim()) {
        throw DimMismatchError("luders_collapse: projector dim mismatch");
    }
    const double proj_defect =
        std::max((p - p.adjoint()).cwiseAbs().maxCoeff(), (p * p - p).cwiseAbs().maxCoeff());
    if (proj_defect > 1e-10) {
        throw ValidationError("luders_collapse: operator is not a projector (defect " +
                              std::to_string(proj_defect) + ")");
    }
    const CMatrix pdp = p * d.entries() * p;
    const double prob = pdp.trace().real();
    if (prob <= 1e-14) {
        throw ZeroProbabilityBranchError("luders_collapse: branch probability " +
                                         std::to_string(prob));
    }
    return DensityOperator(pdp / prob);
}

RVector EffectiveMeasurement::probabilities_all() const {
    RVector all = RVector::Zero(n_blocks_total);
    for (std::size_t i = 0; i < outcome_ids.size(); ++i) {
        all(outcome_ids[i]) = probabilities(static_cast<Eigen::Index>(i));
    }
    return all;
}

EffectiveMeasurement build_effective_measurement(const Ket& psi, const PartitionProjectors& parts) {
    if (psi.dim() != parts.ambient_dim()) {
        throw DimMismatchError("build_effective_measurement: state dim != partition dim");
    }
    EffectiveMeasurement em;
    em.n_blocks_total = parts.n_blocks();

    std::vector<CVector> branches;
    for (int i = 0; i < parts.n_blocks(); ++i) {
        CVector v = parts.apply(i, psi.amplitudes());
        const double w = v.norm();
        if (w <= kDropTol) {
            continue; // zero-probability branch: reported as exactly 0
        }
        em.outcome_ids.push_back(i);
        branches.push_back(v / w);
        em.weights.conservativeResize(em.weights.size() + 1);
        em.weights(em.weights.size() - 1) = w;
    }
    const int n = static_cast<int>(branches.size());
    if (n < 2) {
        throw Error("build_effective_measurement: fewer than 2 branches carry weight; "
                    "the outcome is deterministic and no simplex exists");
    }

    CVector recon = CVector::Zero(psi.dim());
    for (int i = 0; i < n; ++i) {
        em.outcome_kets.emplace_back(branches[static_cast<std::size_t>(i)]);
        recon += em.weights(i) * branches[static_cast<std::size_t>(i)];
    }
    em.reconstruction_defect = (psi.amplitudes() - recon).norm();

    // Span coordinates: phi_i -> e_i, psi -> weight vector.
    std::vector<Ket> span_basis;
    span_basis.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        span_basis.emplace_back(CVector::Unit(n, i));
    }
    em.generators = build_generators(span_basis);
    em.simplex = build_simplex(span_basis, em.generators);
    em.bloch_state = to_bloch(projector(Ket(em.weights.cast<Complex>() / em.weights.norm())),
                              em.generators);
    em.probabilities = transition_probabilities(em.bloch_state, em.simplex);
    return em;
}

std::pair<Ket, PartitionProjectors> discretize_position(const PositionGrid& grid,
                                                        const std::vector<Complex>& samples,
                                                        const std::vector<double>& edges) {
    if (grid.n_points < 1 || grid.x_max <= grid.x_min) {
        throw ValidationError("discretize_position: bad grid");
    }
    if (edges.empty()) {
        throw ValidationError("discretize_position: need at least 1 edge (2 intervals)");
    }
    if (static_cast<Eigen::Index>(samples.size()) != grid.n_points) {
        throw ValidationError("discretize_position: sample count != n_points");
    }
    const auto n_intervals = static_cast<Eigen::Index>(edges.size() + 1);
    if (grid.n_points < n_intervals) {
        throw ValidationError("discretize_position: fewer grid points than intervals");
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k] <= grid.x_min || edges[k] >= grid.x_max) {
            throw ValidationError("discretize_position: edge outside (x_min, x_max)");
        }
        if (k > 0 && edges[k] <= edges[k - 1]) {
            throw ValidationError("discretize_position: edges must be strictly increasing");
        }
    }

    const double dx = (grid.x_max - grid.x_min) / static_cast<double>(grid.n_points);
    CVector amp(grid.n_points);
    std::vector<std::vector<Eigen::Index>> sets(static_cast<std::size_t>(n_intervals));
    const double sqrt_dx = std::sqrt(dx);
    for (Eigen::Index j = 0; j < grid.n_points; ++j) {
        const double x = grid.x_min + (static_cast<double>(j) + 0.5) * dx;
        amp(j) = samples[static_cast<std::size_t>(j)] * sqrt_dx;
        // half-open bins [edge_{k-1}, edge_k)
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        sets[static_cast<std::size_t>(it - edges.begin())].push_back(j);
    }
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (sets[k].empty()) {
            throw EmptyIntervalError("discretize_position: interval " + std::to_string(k) +
                                     " contains no grid point");
        }
    }
    return {ket_from_amplitudes(amp), PartitionProjectors::from_index_sets(grid.n_points, sets)};
}

std::vector<BlochVector> rotate_outcome_basis(const CMatrix& u, const EffectiveMeasurement& em) {
    const auto n = static_cast<Eigen::Index>(em.outcome_kets.size());
    if (u.rows() != n || u.cols() != n) {
        throw DimMismatchError("rotate_outcome_basis: U must be N x N");
    }
    const double defect =
        (u * u.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > kUnitaryTol) {
        throw NotUnitaryError("rotate_outcome_basis: U U^dagger deviates from identity by " +
                              std::to_string(defect));
    }
    std::vector<BlochVector> rotated;
    rotated.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        // phi'_i = sum_j u_ij phi_j, i.e. row i of U in span coordinates
        const CVector coords = u.row(i).transpose();
        rotated.push_back(to_bloch(projector(Ket(coords)), em.generators));
    }
    return rotated;
}

} // namespace ebr
