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

// Diagonal density-matrix tomography of a three-qubit register: dephasing,
// small-flip-angle linear detection of the 12 single-quantum transitions, and
// least-squares recovery of the 8 populations.

#include <fcfsim/fcf_table.hpp>
#include <fcfsim/state_register.hpp>
#include <fcfsim/translation.hpp>

#include <array>
#include <iosfwd>
#include <numbers>

namespace fcfsim {

inline constexpr int kTomographyQubits = 3;
inline constexpr int kTomographyLevels = 8;
inline constexpr int kTransitionCount = 12;
inline constexpr int kConstraintRows = kTransitionCount + 1;
inline constexpr double kDefaultFlipAngle = 6.0 * std::numbers::pi / 180.0;

using ConstraintCoefficients = Eigen::Matrix<double, kConstraintRows, kTomographyLevels>;
using IntensityVector = Eigen::Matrix<double, kConstraintRows, 1>;
using PopulationVector = Eigen::Matrix<double, kTomographyLevels, 1>;

/// A single-quantum transition: `spin` (1 = most significant qubit) flips
/// while the two spectators stay in `spectators` (2-bit value, big-endian,
/// over the remaining spins in order).
struct TransitionLabel {
    int spin = 1;
    int spectators = 0;
    int lower_level = 0;  // register level with the active spin in |0>
    int upper_level = 0;  // register level with the active spin in |1>
};

/// 13 x 8 map from populations to reference-normalized intensities. Rows
/// 0..11 are transitions ordered by (spin, spectators); row 12 is the trace.
struct ConstraintMatrix {
    ConstraintCoefficients coefficients;
    std::array<TransitionLabel, kTransitionCount> transitions;
    double flip_angle = kDefaultFlipAngle;

    /// Row index of the transition of `spin` with the given spectator bits.
    static int row_of(int spin, int spectators) { return (spin - 1) * 4 + spectators; }
};

struct TransitionIntensities {
    IntensityVector r;
};

/// First-order detection gain of a small y rotation on a population difference.
double small_angle_detection_gain(double flip_angle);

/// Throws std::invalid_argument unless num_qubits == 3 and 0 < flip_angle < pi/4.
ConstraintMatrix build_constraint_matrix(int num_qubits = kTomographyQubits,
                                         double flip_angle = kDefaultFlipAngle);

/// Drops every off-diagonal element.
DensityMatrix dephase(const DensityMatrix& rho);

/// r = M diag(rho). rho must be diagonal (off-diagonals below 1e-12).
TransitionIntensities detect(const DensityMatrix& diagonal_state, const ConstraintMatrix& m);

/// Least-squares population recovery with the factorization of M cached.
class DiagonalReconstructor {
public:
    explicit DiagonalReconstructor(const ConstraintMatrix& m);

    PopulationVector solve(const IntensityVector& r) const;
    double residual(const IntensityVector& r, const PopulationVector& populations) const;
    const ConstraintMatrix& constraints() const { return m_; }

private:
    ConstraintMatrix m_;
    Eigen::ColPivHouseholderQR<ConstraintCoefficients> qr_;
};

/// Minimum-residual solution of M x = r. Throws if M has rank below 8.
PopulationVector reconstruct_diagonal(const TransitionIntensities& r, const ConstraintMatrix& m);

/// Noiseless intensities of the translated level n at each plan step.
std::vector<IntensityVector> tomography_intensities(const TranslationPlan& plan, int initial_level,
                                                    const ConstraintMatrix& m);

/// For k = 0..N: prepare |n><n|, translate, dephase, detect, reconstruct.
/// Emits f_{m,n'}(b) for m = 0..3, ordered by (m, k). Recovered values that
/// leave [-1e-6, 1 + 1e-6] raise std::runtime_error.
FcfTable fcf_via_tomography(const TranslationPlan& plan, int initial_level,
                            const ConstraintMatrix& m = build_constraint_matrix());

/// Dump of M with row labels, for inspection.
void write_constraint_csv(std::ostream& out, const ConstraintMatrix& m);

}  // namespace fcfsim
