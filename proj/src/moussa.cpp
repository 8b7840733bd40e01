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

#include <fcfsim/moussa.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fcfsim {

namespace {

constexpr double kProjectorTol = 1e-10;
constexpr double kMinDenominator = 1e-6;
constexpr double kReadoutTol = 1e-9;
constexpr double kCompatibilityTol = 1e-10;
constexpr double kSolverResidualTol = 1e-9;

OperatorMatrix plus_state() {
    return OperatorMatrix::Constant(2, 2, 0.5);
}

const Eigen::Matrix<double, 5, 4>& difference_design() {
    static const Eigen::Matrix<double, 5, 4> design = [] {
        Eigen::Matrix<double, 5, 4> a = Eigen::Matrix<double, 5, 4>::Zero();
        for (std::size_t row = 0; row < kMoussaPairs.size(); ++row) {
            a(static_cast<Eigen::Index>(row), kMoussaPairs[row].j) = 1;
            a(static_cast<Eigen::Index>(row), kMoussaPairs[row].k) = -1;
        }
        a.row(4).setOnes();
        return a;
    }();
    return design;
}

}  // namespace

OperatorMatrix controlled_unitary(const OperatorMatrix& system_unitary) {
    if (!is_unitary(system_unitary)) {
        throw std::invalid_argument("controlled_unitary: operator is not unitary");
    }
    const Eigen::Index d = system_unitary.rows();
    OperatorMatrix cu = OperatorMatrix::Zero(2 * d, 2 * d);
    cu.topLeftCorner(d, d).setIdentity();
    cu.bottomRightCorner(d, d) = system_unitary;
    return cu;
}

AncillaReadout ancilla_readout(const DensityMatrix& rho, const OperatorMatrix& system_unitary) {
    if (system_unitary.rows() != rho.dim()) {
        throw std::invalid_argument("ancilla_readout: unitary acts on " + std::to_string(system_unitary.rows()) +
                                    " levels, state has " + std::to_string(rho.dim()));
    }
    const OperatorMatrix cu = controlled_unitary(system_unitary);
    const OperatorMatrix joint = cu * kronecker(plus_state(), rho.matrix()) * cu.adjoint();
    const OperatorMatrix ancilla = trace_out_system(joint, 2);

    // Tr(sigma_x A) = A01 + A10, Tr(sigma_y A) = i A01 - i A10.
    const std::complex<double> i(0, 1);
    AncillaReadout out;
    out.sx = (ancilla(0, 1) + ancilla(1, 0)).real();
    out.sy = (i * ancilla(0, 1) - i * ancilla(1, 0)).real();
    if (rho.trace_class() == TraceClass::unit && out.sx * out.sx + out.sy * out.sy > 1 + kReadoutTol) {
        throw std::logic_error("ancilla readout outside the Bloch ball");
    }
    return out;
}

std::complex<double> unitary_expectation(const DensityMatrix& rho, const OperatorMatrix& unitary) {
    return ancilla_readout(rho, unitary).value();
}

OperatorMatrix projector_phase(const OperatorMatrix& projector, double theta) {
    const Eigen::Index d = projector.rows();
    const std::complex<double> phase = std::polar(1.0, theta) - 1.0;
    return OperatorMatrix::Identity(d, d) + phase * projector;
}

double projection_from_readout(double sx, double trace, double theta) {
    const double denominator = 1 - std::cos(theta);
    if (!(denominator >= kMinDenominator)) {
        throw std::domain_error("projection readout: theta too close to a multiple of 2 pi");
    }
    return (trace - sx) / denominator;
}

double projection_expectation(const DensityMatrix& rho, const OperatorMatrix& projector, double theta) {
    if (projector.rows() != projector.cols() || projector.rows() != rho.dim()) {
        throw std::invalid_argument("projection_expectation: dimension mismatch");
    }
    if (max_abs(projector * projector - projector) >= kProjectorTol) {
        throw std::invalid_argument("projection_expectation: operator is not idempotent");
    }
    if (!(1 - std::cos(theta) >= kMinDenominator)) {
        throw std::domain_error("projection_expectation: theta too close to a multiple of 2 pi");
    }
    const AncillaReadout readout = ancilla_readout(rho, projector_phase(projector, theta));
    return projection_from_readout(readout.sx, rho.nominal_trace(), theta);
}

double hermitian_compatible_expectation(const DensityMatrix& rho, const OperatorMatrix& diagonal_observable,
                                        double theta) {
    const OperatorMatrix& a = diagonal_observable;
    if (a.rows() != a.cols() || a.rows() != rho.dim()) {
        throw std::invalid_argument("hermitian_compatible_expectation: dimension mismatch");
    }
    if (!is_hermitian(a) || off_diagonal_max(a) >= kCompatibilityTol) {
        throw std::invalid_argument("hermitian_compatible_expectation: observable is not diagonal Hermitian");
    }
    if (rho.trace_class() != TraceClass::unit || off_diagonal_max(rho.matrix()) >= kCompatibilityTol ||
        max_abs(rho.matrix() * rho.matrix() - rho.matrix()) >= kCompatibilityTol) {
        throw std::invalid_argument("hermitian_compatible_expectation: state is not pure and diagonal in the "
                                    "observable's eigenbasis");
    }
    if (theta == 0 || !std::isfinite(theta)) {
        throw std::domain_error("hermitian_compatible_expectation: theta must be finite and nonzero");
    }

    Eigen::Index occupied = 0;
    rho.diagonal().maxCoeff(&occupied);
    if (std::abs(a(occupied, occupied).real() * theta) >= std::numbers::pi) {
        throw std::domain_error("hermitian_compatible_expectation: |<A> theta| >= pi, phase is ambiguous");
    }

    const Eigen::VectorXcd phases = (std::complex<double>(0, theta) * a.diagonal()).array().exp();
    const OperatorMatrix s = phases.asDiagonal();
    return std::arg(ancilla_readout(rho, s).value()) / theta;
}

std::array<AncillaReadout, 4> moussa_pops_readouts(const OperatorMatrix& translation, double theta) {
    if (translation.rows() != 4) {
        throw std::invalid_argument("Moussa FCF runs use a two-qubit system (d = 4)");
    }
    OperatorMatrix p00 = OperatorMatrix::Zero(4, 4);
    p00(0, 0) = 1;
    const OperatorMatrix s = projector_phase(p00, theta);

    std::array<AncillaReadout, 4> readouts{};
    for (std::size_t i = 0; i < kMoussaPairs.size(); ++i) {
        const DensityMatrix translated = evolve(pops_state(kMoussaPairs[i], 2), translation);
        readouts[i] = ancilla_readout(translated, s);
    }
    return readouts;
}

std::array<AncillaReadout, 4> moussa_pops_readouts(const TranslationPlan& plan, int k, double theta) {
    if (plan.dim.value() != 4) {
        throw std::invalid_argument("Moussa FCF runs use a two-qubit system (d = 4)");
    }
    return moussa_pops_readouts(discrete_translation(plan, k), theta);
}

MoussaFcfRun solve_moussa_system(const std::array<double, 4>& deltas, double normalization) {
    if (!(normalization > 0 && normalization <= 1 + 1e-12)) {
        throw std::invalid_argument("normalization F must lie in (0, 1]");
    }
    const auto& design = difference_design();
    const Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 5, 4>> qr(design);
    if (qr.rank() != 4) {
        throw std::logic_error("Moussa difference system is rank deficient");
    }
    Eigen::Matrix<double, 5, 1> rhs;
    rhs << deltas[0], deltas[1], deltas[2], deltas[3], normalization;
    const Eigen::Vector4d x = qr.solve(rhs);

    MoussaFcfRun run;
    run.deltas = deltas;
    run.normalization = normalization;
    for (int j = 0; j < 4; ++j) {
        run.solved[static_cast<std::size_t>(j)] = x(j);
    }
    run.residual = (design * x - rhs).norm();
    return run;
}

MoussaFcfRun fcf_via_moussa(const TranslationPlan& plan, int k, double normalization, double theta) {
    const auto readouts = moussa_pops_readouts(plan, k, theta);
    std::array<double, 4> deltas{};
    for (std::size_t i = 0; i < readouts.size(); ++i) {
        deltas[i] = projection_from_readout(readouts[i].sx, 0.0, theta);
    }
    MoussaFcfRun run = solve_moussa_system(deltas, normalization);
    run.b = plan.displacement(k);
    if (run.residual >= kSolverResidualTol) {
        throw std::runtime_error("Moussa solve residual " + std::to_string(run.residual) + " exceeds tolerance");
    }
    return run;
}

}  // namespace fcfsim
