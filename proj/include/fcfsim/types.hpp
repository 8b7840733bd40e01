// Copyright 2026 The fcfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace fcfsim {

/// Dense complex matrix over the truncated number basis.
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using OperatorMatrix = ComplexMatrix<double>;

/// Tolerance used whenever a matrix is claimed Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Tolerance used whenever a matrix is claimed unitary.
inline constexpr double kUnitaryTol = 1e-10;

/// Number of retained oscillator levels. Always at least two.
class FockDimension {
public:
    explicit FockDimension(Eigen::Index levels) : levels_(levels) {
        if (levels < 2) {
            throw std::invalid_argument("Fock dimension must be >= 2, got " + std::to_string(levels));
        }
    }

    /// Dimension of an n-qubit register (2^n levels).
    static FockDimension for_qubits(int num_qubits) {
        if (num_qubits < 1 || num_qubits > 20) {
            throw std::invalid_argument("qubit count out of range: " + std::to_string(num_qubits));
        }
        return FockDimension(Eigen::Index{1} << num_qubits);
    }

    Eigen::Index value() const { return levels_; }

    friend bool operator==(FockDimension, FockDimension) = default;

private:
    Eigen::Index levels_;
};

/// Largest entry magnitude, i.e. the max-norm used by all tolerance checks.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) {
        return 0;
    }
    return a.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a,
                  typename Derived::RealScalar tol = typename Derived::RealScalar(kHermitianTol)) {
    return a.rows() == a.cols() && max_abs(a - a.adjoint()) < tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u,
                typename Derived::RealScalar tol = typename Derived::RealScalar(kUnitaryTol)) {
    if (u.rows() != u.cols()) {
        return false;
    }
    using Plain = typename Derived::PlainObject;
    return max_abs(u.adjoint() * u - Plain::Identity(u.rows(), u.cols())) < tol;
}

/// Largest off-diagonal magnitude of a square matrix.
template <typename Derived>
typename Derived::RealScalar off_diagonal_max(const Eigen::MatrixBase<Derived>& a) {
    typename Derived::RealScalar worst = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) {
                worst = std::max<typename Derived::RealScalar>(worst, std::abs(a(i, j)));
            }
        }
    }
    return worst;
}

}  // namespace fcfsim
