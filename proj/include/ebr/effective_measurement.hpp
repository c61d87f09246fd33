// effective_measurement.hpp — degenerate and continuous-spectrum measurements
//
// A finite-outcome measurement on a high-dimensional entity is described by
// N mutually orthogonal projectors P_i.  The surviving normalized branches
// phi_i = P_i psi / ||P_i psi|| are orthonormal, so the state lives in their
// span and everything downstream (generators, simplex, Bloch vector,
// sampling) runs in span coordinates: the state's coordinate vector is just
// the weight vector (||P_1 psi||, ..., ||P_N psi||).  This keeps grid
// discretizations with thousands of points tractable; the numbers are
// identical to the ambient construction because all traces reduce to
// overlaps among psi and the phi_i.

#pragma once

#include <utility>
#include <vector>

#include "ebr/measurement_simplex.hpp"

namespace ebr {

// N mutually orthogonal projection operators, either diagonal blocks over
// the standard basis (index sets) or general subspaces given by orthonormal
// column bases.  Invariants (P_i P_j = delta_ij P_i, sum P_i = identity on
// the union of supports) are enforced at construction.
class PartitionProjectors {
  public:
    static PartitionProjectors from_index_sets(Eigen::Index ambient_dim,
                                               std::vector<std::vector<Eigen::Index>> index_sets);
    static PartitionProjectors from_bases(std::vector<CMatrix> bases, double tol = 1e-10);

    Eigen::Index ambient_dim() const { return ambient_dim_; }
    int n_blocks() const { return static_cast<int>(n_blocks_); }
    Eigen::Index block_rank(int i) const;
    bool covers_full_space() const;
    // max residual of the invariant checks (0 for index-set partitions)
    double completeness_defect() const { return completeness_defect_; }

    CVector apply(int i, const CVector& psi) const; // P_i psi
    CMatrix dense(int i) const;                     // P_i as a matrix

    const std::vector<std::vector<Eigen::Index>>& index_sets() const { return index_sets_; }
    bool is_index_partition() const { return bases_.empty(); }

  private:
    PartitionProjectors() = default;

    Eigen::Index ambient_dim_ = 0;
    std::size_t n_blocks_ = 0;
    std::vector<std::vector<Eigen::Index>> index_sets_; // index kind
    std::vector<CMatrix> bases_;                        // dense kind
    double completeness_defect_ = 0.0;
};

// P D P / tr(P D P).  Throws ZeroProbabilityBranchError when the branch
// probability falls below 1e-14.
DensityOperator luders_collapse(const DensityOperator& d, const CMatrix& p);

struct EffectiveMeasurement {
    int n_blocks_total = 0;        // outcomes of the original partition
    std::vector<int> outcome_ids;  // original block index per surviving outcome
    std::vector<Ket> outcome_kets; // surviving phi_i, ambient coordinates
    RVector weights;               // ||P_i psi|| per surviving outcome
    GeneratorBasis generators;     // span coordinates (dim = #survivors)
    MeasurementSimplex simplex;
    BlochVector bloch_state;          // r of |psi><psi| in span coordinates
    RVector probabilities;            // through the simplex, surviving outcomes
    double reconstruction_defect = 0; // || psi - sum_i w_i phi_i ||

    // Probabilities over all original blocks; dropped branches are exactly 0.
    RVector probabilities_all() const;
};

// Branches with ||P_i psi|| <= 1e-12 are dropped (their probability is
// exactly 0).  At least two branches must survive.
EffectiveMeasurement build_effective_measurement(const Ket& psi, const PartitionProjectors& parts);

struct PositionGrid {
    double x_min = 0.0;
    double x_max = 1.0;
    Eigen::Index n_points = 0;
};

// Truncates the position observable to cell-centered grid points with
// rectangle-rule weights.  Interval k is the half-open bin
// [edge_{k-1}, edge_k); the outermost bins extend to the grid ends.
// Throws EmptyIntervalError when a bin captures no grid point.
std::pair<Ket, PartitionProjectors> discretize_position(const PositionGrid& grid,
                                                        const std::vector<Complex>& wavefunction_samples,
                                                        const std::vector<double>& interval_edges);

// Vertices of the rotated outcome basis phi'_i = sum_j u_ij phi_j, in the
// ORIGINAL generator frame.  U must be unitary within 1e-10.
std::vector<BlochVector> rotate_outcome_basis(const CMatrix& u, const EffectiveMeasurement& em);

} // namespace ebr
