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

#include <fcfsim/fock.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcfsim {

/// Displacements b_k = max_displacement * k / steps for k = 0..steps.
struct TranslationPlan {
    double max_displacement;
    int steps;
    FockDimension dim;

    TranslationPlan(double max_displacement_, int steps_, FockDimension dim_)
        : max_displacement(max_displacement_), steps(steps_), dim(dim_) {
        if (!std::isfinite(max_displacement) || max_displacement < 0) {
            throw std::invalid_argument("maximum displacement must be finite and >= 0");
        }
        if (steps < 1) {
            throw std::invalid_argument("translation plan needs at least one step");
        }
    }

    double step() const { return max_displacement / steps; }

    double displacement(int k) const {
        check_index(k);
        return max_displacement * k / steps;
    }

    void check_index(int k) const {
        if (k < 0 || k > steps) {
            throw std::out_of_range("step index " + std::to_string(k) + " outside [0, " +
                                    std::to_string(steps) + "]");
        }
    }
};

/// U_T(b) = exp(-i p b). Negative b is allowed; b == 0 gives the identity exactly.
template <typename Real = double>
ComplexMatrix<Real> translation_unitary(FockDimension dim, Real displacement) {
    if (!std::isfinite(displacement)) {
        throw std::invalid_argument("displacement must be finite");
    }
    return matrix_exponential(momentum_operator<Real>(dim), displacement);
}

/// [U_T(b0/N)]^k, built by k successive products of the single-step unitary.
template <typename Real = double>
ComplexMatrix<Real> discrete_translation(const TranslationPlan& plan, int k) {
    plan.check_index(k);
    const ComplexMatrix<Real> step = translation_unitary<Real>(plan.dim, static_cast<Real>(plan.step()));
    ComplexMatrix<Real> result = ComplexMatrix<Real>::Identity(plan.dim.value(), plan.dim.value());
    for (int j = 0; j < k; ++j) {
        result = (step * result).eval();
    }
    return result;
}

/// All powers [U_T(b0/N)]^k for k = 0..N, accumulated in one pass.
template <typename Real = double>
std::vector<ComplexMatrix<Real>> translation_ladder(const TranslationPlan& plan) {
    const ComplexMatrix<Real> step = translation_unitary<Real>(plan.dim, static_cast<Real>(plan.step()));
    std::vector<ComplexMatrix<Real>> powers;
    powers.reserve(static_cast<std::size_t>(plan.steps) + 1);
    powers.push_back(ComplexMatrix<Real>::Identity(plan.dim.value(), plan.dim.value()));
    for (int k = 1; k <= plan.steps; ++k) {
        powers.push_back(step * powers.back());
    }
    return powers;
}

/// |<m|U|n>|^2: the truncated-basis FCF f_{m,n'} read off a translation unitary.
template <typename Derived>
typename Derived::RealScalar truncated_fcf(const Eigen::MatrixBase<Derived>& translation, Eigen::Index m,
                                           Eigen::Index n) {
    if (m < 0 || n < 0 || m >= translation.rows() || n >= translation.cols()) {
        throw std::out_of_range("level index outside the truncated basis");
    }
    return std::norm(translation(m, n));
}

}  // namespace fcfsim
