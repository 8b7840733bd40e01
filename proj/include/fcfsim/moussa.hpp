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

// Ancilla-assisted expectation measurement. An ancilla prepared in |+> controls
// a unitary S on the system; afterwards <sigma_x> + i<sigma_y> on the ancilla
// equals Tr(rho S).

#include <fcfsim/state_register.hpp>
#include <fcfsim/translation.hpp>

#include <array>
#include <complex>
#include <numbers>

namespace fcfsim {

struct AncillaReadout {
    double sx = 0;
    double sy = 0;

    std::complex<double> value() const { return {sx, sy}; }
};

/// |0><0| (x) I + |1><1| (x) S. S must be unitary within 1e-10.
OperatorMatrix controlled_unitary(const OperatorMatrix& system_unitary);

/// Runs the circuit on |+><+| (x) rho and reads sigma_x, sigma_y off the
/// reduced ancilla. For unit-trace rho, sx^2 + sy^2 <= 1 is checked.
AncillaReadout ancilla_readout(const DensityMatrix& rho, const OperatorMatrix& system_unitary);

/// <U>_rho = sx + i sy.
std::complex<double> unitary_expectation(const DensityMatrix& rho, const OperatorMatrix& unitary);

/// exp(i P theta) = I + (e^{i theta} - 1) P for a projector P.
OperatorMatrix projector_phase(const OperatorMatrix& projector, double theta);

/// Inverts sx = Tr(rho) - <P>(1 - cos theta) for <P>.
double projection_from_readout(double sx, double trace, double theta);

/// <P>_rho via the protocol with S = exp(i P theta). Requires P^2 = P within
/// 1e-10 and 1 - cos(theta) >= 1e-6. Linear in rho, so a POPS input returns the
/// population difference of its two levels directly.
double projection_expectation(const DensityMatrix& rho, const OperatorMatrix& projector,
                              double theta = std::numbers::pi);

/// <A>_rho for a pure rho diagonal in the eigenbasis of the diagonal A, taken
/// from the phase of the readout e^{i <A> theta}. Throws if rho and A are not
/// simultaneously diagonal or if |<A> theta| >= pi.
double hermitian_compatible_expectation(const DensityMatrix& rho, const OperatorMatrix& diagonal_observable,
                                        double theta);

/// POPS pairs used for the two-qubit FCF measurement, in row order of the
/// difference equations: (00,01), (00,10), (01,11), (10,11).
inline constexpr std::array<PopsPair, 4> kMoussaPairs{{{0, 1}, {0, 2}, {1, 3}, {2, 3}}};

struct MoussaFcfRun {
    double b = 0;
    std::array<PopsPair, 4> pairs = kMoussaPairs;
    std::array<double, 4> deltas{};  // f_{00,j'} - f_{00,k'} per pair
    double normalization = 1;        // F = sum_j f_{00,j'}
    std::array<double, 4> solved{};  // f_{00,j'}, j = 0..3
    double residual = 0;             // 2-norm of the least-squares residual
};

/// Readouts of the four POPS experiments at displacement index k (system d = 4).
std::array<AncillaReadout, 4> moussa_pops_readouts(const TranslationPlan& plan, int k,
                                                   double theta = std::numbers::pi);

/// Same, with the translation already built (avoids recomputing it in sweeps).
std::array<AncillaReadout, 4> moussa_pops_readouts(const OperatorMatrix& translation, double theta);

/// Least-squares solution of the four difference equations plus sum = F.
MoussaFcfRun solve_moussa_system(const std::array<double, 4>& deltas, double normalization);

/// Full pipeline: POPS preparation, translation to b0 k / N, projection on |00>,
/// and the 5x4 solve.
MoussaFcfRun fcf_via_moussa(const TranslationPlan& plan, int k, double normalization,
                            double theta = std::numbers::pi);

}  // namespace fcfsim
