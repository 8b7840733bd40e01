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

#include <fcfsim/tomography.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fcfsim {

namespace {

constexpr double kDiagonalTol = 1e-12;
constexpr double kNoiselessRangeTol = 1e-6;
constexpr int kReportedLevels = 4;

// Equilibrium reference: every transition of the thermal deviation carries the
// same unit population difference, so the reference line is gain * 1.
constexpr double kReferencePopulationDifference = 1.0;

}  // namespace

double small_angle_detection_gain(double flip_angle) {
    return std::sin(flip_angle);
}

ConstraintMatrix build_constraint_matrix(int num_qubits, double flip_angle) {
    if (num_qubits != kTomographyQubits) {
        throw std::invalid_argument("constraint matrix is defined for 3 qubits, got " + std::to_string(num_qubits));
    }
    if (!(flip_angle > 0 && flip_angle < std::numbers::pi / 4)) {
        throw std::invalid_argument("flip angle must lie in (0, pi/4)");
    }
    const double reference = small_angle_detection_gain(flip_angle) * kReferencePopulationDifference;
    const double scale = small_angle_detection_gain(flip_angle) / reference;

    ConstraintMatrix m;
    m.flip_angle = flip_angle;
    m.coefficients.setZero();
    for (int spin = 1; spin <= kTomographyQubits; ++spin) {
        const int spin_bit = 1 << (kTomographyQubits - spin);
        // Spectator bits fill the two remaining positions, most significant first.
        for (int spectators = 0; spectators < 4; ++spectators) {
            int lower = 0;
            int spectator_pos = 1;
            for (int bit = kTomographyQubits - 1; bit >= 0; --bit) {
                if ((1 << bit) == spin_bit) {
                    continue;
                }
                if (spectators & (1 << spectator_pos)) {
                    lower |= 1 << bit;
                }
                --spectator_pos;
            }
            const int upper = lower | spin_bit;
            const int row = ConstraintMatrix::row_of(spin, spectators);
            m.coefficients(row, lower) = scale;
            m.coefficients(row, upper) = -scale;
            m.transitions[static_cast<std::size_t>(row)] = {spin, spectators, lower, upper};
        }
    }
    m.coefficients.row(kTransitionCount).setOnes();
    return m;
}

DensityMatrix dephase(const DensityMatrix& rho) {
    OperatorMatrix diag = rho.matrix().diagonal().asDiagonal();
    return DensityMatrix(std::move(diag), rho.trace_class());
}

TransitionIntensities detect(const DensityMatrix& diagonal_state, const ConstraintMatrix& m) {
    if (diagonal_state.dim() != kTomographyLevels) {
        throw std::invalid_argument("detect: expected an 8-level state, got " + std::to_string(diagonal_state.dim()));
    }
    if (off_diagonal_max(diagonal_state.matrix()) >= kDiagonalTol) {
        throw std::invalid_argument("detect: state has coherences; dephase it first");
    }
    const PopulationVector populations = diagonal_state.diagonal();
    return {m.coefficients * populations};
}

DiagonalReconstructor::DiagonalReconstructor(const ConstraintMatrix& m) : m_(m), qr_(m.coefficients) {
    if (qr_.rank() != kTomographyLevels) {
        throw std::invalid_argument("constraint matrix is rank deficient (rank " + std::to_string(qr_.rank()) + ")");
    }
}

PopulationVector DiagonalReconstructor::solve(const IntensityVector& r) const {
    return qr_.solve(r);
}

double DiagonalReconstructor::residual(const IntensityVector& r, const PopulationVector& populations) const {
    return (m_.coefficients * populations - r).norm();
}

PopulationVector reconstruct_diagonal(const TransitionIntensities& r, const ConstraintMatrix& m) {
    return DiagonalReconstructor(m).solve(r.r);
}

std::vector<IntensityVector> tomography_intensities(const TranslationPlan& plan, int initial_level,
                                                    const ConstraintMatrix& m) {
    if (plan.dim.value() != kTomographyLevels) {
        throw std::invalid_argument("tomography runs on the 8-level (3-qubit) register");
    }
    const DensityMatrix initial = encode_level(initial_level, kTomographyQubits);
    std::vector<IntensityVector> out;
    out.reserve(static_cast<std::size_t>(plan.steps) + 1);
    for (const auto& u : translation_ladder(plan)) {
        out.push_back(detect(dephase(evolve(initial, u)), m).r);
    }
    return out;
}

FcfTable fcf_via_tomography(const TranslationPlan& plan, int initial_level, const ConstraintMatrix& m) {
    if (initial_level < 0 || initial_level >= kReportedLevels) {
        throw std::out_of_range("initial level must be 0..3");
    }
    const DiagonalReconstructor reconstructor(m);
    const auto intensities = tomography_intensities(plan, initial_level, m);

    std::vector<PopulationVector> recovered;
    recovered.reserve(intensities.size());
    for (const auto& r : intensities) {
        const PopulationVector p = reconstructor.solve(r);
        if (p.minCoeff() < -kNoiselessRangeTol || p.maxCoeff() > 1 + kNoiselessRangeTol) {
            throw std::runtime_error("noiseless tomography recovered a population outside [0, 1]");
        }
        recovered.push_back(p);
    }

    FcfTable table;
    for (int level = 0; level < kReportedLevels; ++level) {
        for (int k = 0; k <= plan.steps; ++k) {
            table.add(level, initial_level, plan.displacement(k), recovered[static_cast<std::size_t>(k)](level),
                      FcfMethod::tomography);
        }
    }
    return table;
}

void write_constraint_csv(std::ostream& out, const ConstraintMatrix& m) {
    out << "row,label";
    for (int c = 0; c < kTomographyLevels; ++c) {
        out << ",p" << c;
    }
    out << '\n';
    for (int row = 0; row < kConstraintRows; ++row) {
        out << row << ',';
        if (row < kTransitionCount) {
            const auto& t = m.transitions[static_cast<std::size_t>(row)];
            out << "spin" << t.spin << ":" << t.lower_level << "-" << t.upper_level;
        } else {
            out << "trace";
        }
        for (int c = 0; c < kTomographyLevels; ++c) {
            out << ',' << format_real(m.coefficients(row, c));
        }
        out << '\n';
    }
}

}  // namespace fcfsim
