#include "ebr/operator_core.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace ebr {

Ket::Ket(CVector amplitudes, double norm_tol) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw ZeroVectorError("Ket: empty amplitude vector");
    }
    const double n = amplitudes_.norm();
    if (std::abs(n - 1.0) > norm_tol) {
        throw Error("Ket: amplitudes not normalized (norm = " + std::to_string(n) + ")");
    }
}

Ket ket_from_amplitudes(const CVector& raw) {
    if (raw.size() == 0) {
        throw ZeroVectorError("ket_from_amplitudes: empty input");
    }
    if (raw.cwiseAbs().maxCoeff() < 1e-300) {
        throw ZeroVectorError("ket_from_amplitudes: all amplitudes below 1e-300");
    }
    return Ket(raw / raw.norm());
}

Ket ket_from_amplitudes(const std::vector<Complex>& raw) {
    CVector v = Eigen::Map<const CVector>(raw.data(), static_cast<Eigen::Index>(raw.size()));
    return ket_from_amplitudes(v);
}

Ket ket_from_amplitudes(std::initializer_list<Complex> raw) {
    CVector v = Eigen::Map<const CVector>(raw.begin(), static_cast<Eigen::Index>(raw.size()));
    return ket_from_amplitudes(v);
}

DensityOperator::DensityOperator(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw DimMismatchError("DensityOperator: matrix must be square and nonempty");
    }
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
    return DensityOperator(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator projector(const Ket& k) {
    const CVector& a = k.amplitudes();
    return DensityOperator(a * a.adjoint());
}

double trace_product(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimMismatchError("trace_product: dimension mismatch");
    }
    // tr(AB) = sum_ij A_ij B_ji
    const Complex t = (a.array() * b.transpose().array()).sum();
    if (std::abs(t.imag()) > 1e-12 * std::max(1.0, std::abs(t.real()))) {
        throw Error("trace_product: non-negligible imaginary part " + std::to_string(t.imag()));
    }
    return t.real();
}

double trace_product(const DensityOperator& a, const DensityOperator& b) {
    return trace_product(a.entries(), b.entries());
}

double min_hermitian_eigenvalue(const CMatrix& m) {
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityReport validate_density(const DensityOperator& d, const Tolerances& tol) {
    const CMatrix& m = d.entries();
    DensityReport rep;
    rep.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    rep.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
    rep.min_eigenvalue = min_hermitian_eigenvalue(m);
    rep.pass = rep.hermiticity_defect <= tol.algebraic && rep.trace_defect <= tol.algebraic &&
               rep.min_eigenvalue >= -tol.positivity;
    return rep;
}

} // namespace ebr
