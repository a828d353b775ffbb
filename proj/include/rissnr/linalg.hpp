// SPDX-License-Identifier: Apache-2.0
//
// Complex vector/matrix operations for the channel model, backed by Eigen.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "rissnr/common.hpp"

namespace rissnr {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Principal Hermitian square root of a Hermitian PSD matrix, via
/// eigendecomposition. Eigenvalues in [-1e-8*||R||, 0) are clamped to zero
/// so rank-deficient correlation matrices (rho = 1) are accepted; anything
/// more negative is rejected.
inline ComplexMatrix hermitian_psd_sqrt(const ComplexMatrix& r) {
    detail::require(r.rows() == r.cols(), "hermitian_psd_sqrt: matrix must be square");
    detail::require((r - r.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
                    "hermitian_psd_sqrt: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(r);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_psd_sqrt: eigendecomposition failed");

    RealVector eigs = solver.eigenvalues();
    const double norm = std::max(eigs.cwiseAbs().maxCoeff(), 1.0);
    detail::require(eigs.minCoeff() >= -1e-8 * norm,
                    "hermitian_psd_sqrt: matrix is not positive semidefinite");

    RealVector roots(eigs.size());
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        roots(i) = eigs(i) > 0.0 ? std::sqrt(eigs(i)) : 0.0;

    ComplexMatrix s = solver.eigenvectors() * roots.asDiagonal() *
                      solver.eigenvectors().adjoint();
    return 0.5 * (s + ComplexMatrix(s.adjoint()));
}

/// Kronecker product of two vectors: out(i*len(b) + j) = a(i) * b(j).
inline ComplexVector kronecker(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j)
            out(i * b.size() + j) = a(i) * b(j);
    return out;
}

/// x^H R x. Real up to rounding when R is Hermitian.
inline Complex quadratic_form(const ComplexVector& x, const ComplexMatrix& r) {
    detail::require(r.rows() == r.cols() && r.cols() == x.size(),
                    "quadratic_form: dimension mismatch");
    return x.dot(r * x);
}

/// True when m is the identity within tol (used to pick exact-moment paths).
inline bool is_identity(const ComplexMatrix& m, double tol = 1e-12) {
    if (m.rows() != m.cols())
        return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            if (std::abs(m(i, j) - Complex(target, 0.0)) > tol)
                return false;
        }
    return true;
}

} // namespace rissnr
