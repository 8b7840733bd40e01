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

// Operator algebra of a harmonic oscillator truncated to its lowest d levels.
// Units: hbar = 1, unit mass, unit angular frequency.

#include <fcfsim/types.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fcfsim {

/// a with a|n> = sqrt(n)|n-1>.
template <typename Real = double>
ComplexMatrix<Real> annihilation_operator(FockDimension dim) {
    const Eigen::Index d = dim.value();
    ComplexMatrix<Real> a = ComplexMatrix<Real>::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<Real>(n));
    }
    return a;
}

template <typename Real = double>
ComplexMatrix<Real> creation_operator(FockDimension dim) {
    return annihilation_operator<Real>(dim).adjoint();
}

template <typename Real = double>
ComplexMatrix<Real> number_operator(FockDimension dim) {
    const Eigen::Index d = dim.value();
    ComplexMatrix<Real> n = ComplexMatrix<Real>::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        n(k, k) = static_cast<Real>(k);
    }
    return n;
}

/// x = (a + a^dagger) / sqrt(2).
template <typename Real = double>
ComplexMatrix<Real> position_operator(FockDimension dim) {
    const ComplexMatrix<Real> a = annihilation_operator<Real>(dim);
    return (a + a.adjoint()) / std::sqrt(Real(2));
}

/// p = -i (a - a^dagger) / sqrt(2).
template <typename Real = double>
ComplexMatrix<Real> momentum_operator(FockDimension dim) {
    const ComplexMatrix<Real> a = annihilation_operator<Real>(dim);
    return std::complex<Real>(0, -1) * (a - a.adjoint()) / std::sqrt(Real(2));
}

template <typename Real = double>
struct OscillatorPair {
    ComplexMatrix<Real> ground;     // N + 1/2
    ComplexMatrix<Real> displaced;  // N + 1/2 + b^2/2 - (a + a^dagger) b / sqrt(2) + dE
};

/// Hamiltonians of the undisplaced potential x^2/2 and of (x - b)^2/2 + delta_e.
template <typename Real = double>
OscillatorPair<Real> oscillator_hamiltonians(FockDimension dim, Real displacement, Real delta_e) {
    if (!std::isfinite(displacement) || !std::isfinite(delta_e)) {
        throw std::invalid_argument("oscillator parameters must be finite");
    }
    const Eigen::Index d = dim.value();
    const ComplexMatrix<Real> identity = ComplexMatrix<Real>::Identity(d, d);
    const ComplexMatrix<Real> a = annihilation_operator<Real>(dim);

    OscillatorPair<Real> pair;
    pair.ground = number_operator<Real>(dim) + identity / Real(2);
    pair.displaced = pair.ground
                     + (displacement * displacement / Real(2) + delta_e) * identity
                     - (a + a.adjoint()) * (displacement / std::sqrt(Real(2)));
    return pair;
}

/// exp(-i A t) for Hermitian A.
///
/// Scaling and squaring around a Taylor polynomial evaluated in Horner form.
/// The generator is scaled until its 1-norm is at most 1/2; the term count is
/// the smallest q with norm^(q+1)/(q+1)! below machine epsilon. Returns the
/// identity exactly for t == 0.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> matrix_exponential(const Eigen::MatrixBase<Derived>& generator,
                                                                typename Derived::RealScalar t) {
    using Real = typename Derived::RealScalar;
    using Complex = std::complex<Real>;
    using Matrix = ComplexMatrix<Real>;

    if (!is_hermitian(generator)) {
        throw std::invalid_argument("matrix_exponential: generator is not Hermitian");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("matrix_exponential: time must be finite");
    }
    const Eigen::Index d = generator.rows();
    const Matrix identity = Matrix::Identity(d, d);
    if (t == Real(0)) {
        return identity;
    }

    Matrix scaled = Complex(0, -t) * generator.template cast<Complex>();
    const Real norm = scaled.cwiseAbs().colwise().sum().maxCoeff();
    if (norm == Real(0)) {
        return identity;
    }

    int squarings = 0;
    if (norm > Real(0.5)) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / Real(0.5))));
    }
    scaled /= std::ldexp(Real(1), squarings);
    const Real scaled_norm = std::ldexp(norm, -squarings);

    const Real eps = std::numeric_limits<Real>::epsilon();
    int terms = 1;
    Real remainder = scaled_norm * scaled_norm / Real(2);
    while (remainder > eps && terms < 64) {
        ++terms;
        remainder *= scaled_norm / Real(terms + 1);
    }

    Matrix result = identity;
    for (int j = terms; j >= 1; --j) {
        result = identity + (scaled * result) / Real(j);
    }
    for (int s = 0; s < squarings; ++s) {
        result = (result * result).eval();
    }
    return result;
}

}  // namespace fcfsim
