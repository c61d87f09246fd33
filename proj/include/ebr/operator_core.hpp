// operator_core.hpp — kets, projectors, density operators and their validation

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ebr/errors.hpp"

namespace ebr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Validation tolerances. Positivity is checked more loosely than the
// algebraic identities (trace, Hermiticity): eigenvalues of a nearly
// singular Hermitian matrix pick up more round-off than its entries.
struct Tolerances {
    double algebraic = 1e-12;
    double positivity = 1e-10;
};

// Normalized vector in a finite truncation of the Hilbert space.
class Ket {
  public:
    Ket(CVector amplitudes, double norm_tol = 1e-12);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const CVector& amplitudes() const { return amplitudes_; }
    Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

  private:
    CVector amplitudes_;
};

// Normalizes the raw amplitudes. Throws ZeroVectorError when every
// amplitude is below 1e-300 in magnitude.
Ket ket_from_amplitudes(const std::vector<Complex>& raw);
Ket ket_from_amplitudes(const CVector& raw);
Ket ket_from_amplitudes(std::initializer_list<Complex> raw);

// Hermitian, unit-trace, positive-semidefinite matrix. Construction is
// permissive; invariants are checked by validate_density, so that invalid
// candidates (e.g. a Bloch vector outside the state region) can be
// represented and diagnosed.
class DensityOperator {
  public:
    explicit DensityOperator(CMatrix entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const CMatrix& entries() const { return entries_; }

    static DensityOperator maximally_mixed(Eigen::Index dim);

  private:
    CMatrix entries_;
};

struct DensityReport {
    double hermiticity_defect = 0.0; // max |entry - adjoint entry|
    double trace_defect = 0.0;       // |tr - 1|
    double min_eigenvalue = 0.0;
    bool pass = false;
};

// |k><k|
DensityOperator projector(const Ket& k);

// Re tr(AB). Asserts the imaginary part stays below the algebraic
// tolerance, which holds whenever both operators are Hermitian.
double trace_product(const DensityOperator& a, const DensityOperator& b);
double trace_product(const CMatrix& a, const CMatrix& b);

DensityReport validate_density(const DensityOperator& d, const Tolerances& tol = {});

// Smallest eigenvalue of the Hermitized matrix (A + A^dagger)/2.
double min_hermitian_eigenvalue(const CMatrix& m);

} // namespace ebr
