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

#include <fcfsim/state_register.hpp>

#include <stdexcept>
#include <string>

namespace fcfsim {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kSpectrumTol = 1e-10;

void check_square_match(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    }
}

Eigen::Index register_size(int num_qubits) {
    return FockDimension::for_qubits(num_qubits).value();
}

}  // namespace

DensityMatrix::DensityMatrix(OperatorMatrix rho, TraceClass trace_class) : rho_(std::move(rho)), class_(trace_class) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    if (!is_hermitian(rho_)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    const std::complex<double> tr = rho_.trace();
    if (std::abs(tr - nominal_trace()) > kTraceTol) {
        throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " does not match its class");
    }
    if (class_ == TraceClass::unit) {
        const Eigen::VectorXd spectrum = Eigen::SelfAdjointEigenSolver<OperatorMatrix>(rho_, Eigen::EigenvaluesOnly)
                                             .eigenvalues();
        if (spectrum.minCoeff() < -kSpectrumTol || spectrum.maxCoeff() > 1 + kSpectrumTol) {
            throw std::invalid_argument("unit-trace state has eigenvalues outside [0, 1]");
        }
    }
}

DensityMatrix encode_level(int level, int num_qubits) {
    const Eigen::Index d = register_size(num_qubits);
    if (level < 0 || level >= d) {
        throw std::out_of_range("level " + std::to_string(level) + " does not fit in " + std::to_string(num_qubits) +
                                " qubits");
    }
    OperatorMatrix rho = OperatorMatrix::Zero(d, d);
    rho(level, level) = 1.0;
    return DensityMatrix(std::move(rho), TraceClass::unit);
}

DensityMatrix pops_state(PopsPair pair, int num_qubits) {
    const Eigen::Index d = register_size(num_qubits);
    if (pair.j == pair.k) {
        throw std::invalid_argument("POPS pair needs two distinct levels");
    }
    if (pair.j < 0 || pair.k < 0 || pair.j >= d || pair.k >= d) {
        throw std::out_of_range("POPS level outside the register");
    }
    OperatorMatrix rho = OperatorMatrix::Zero(d, d);
    rho(pair.j, pair.j) = 1.0;
    rho(pair.k, pair.k) = -1.0;
    return DensityMatrix(std::move(rho), TraceClass::traceless);
}

OperatorMatrix kronecker(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const TraceClass cls = (a.trace_class() == TraceClass::unit && b.trace_class() == TraceClass::unit)
                               ? TraceClass::unit
                               : TraceClass::traceless;
    return DensityMatrix(kronecker(a.matrix(), b.matrix()), cls);
}

OperatorMatrix trace_out_system(const OperatorMatrix& joint, Eigen::Index ancilla_dim) {
    if (ancilla_dim < 1 || joint.rows() != joint.cols() || joint.rows() % ancilla_dim != 0) {
        throw std::invalid_argument("partial trace: joint dimension " + std::to_string(joint.rows()) +
                                    " is not a multiple of ancilla dimension " + std::to_string(ancilla_dim));
    }
    const Eigen::Index sys = joint.rows() / ancilla_dim;
    OperatorMatrix reduced(ancilla_dim, ancilla_dim);
    for (Eigen::Index i = 0; i < ancilla_dim; ++i) {
        for (Eigen::Index j = 0; j < ancilla_dim; ++j) {
            reduced(i, j) = joint.block(i * sys, j * sys, sys, sys).trace();
        }
    }
    return reduced;
}

DensityMatrix partial_trace_system(const DensityMatrix& rho, Eigen::Index ancilla_dim) {
    return DensityMatrix(trace_out_system(rho.matrix(), ancilla_dim), rho.trace_class());
}

std::complex<double> expectation(const DensityMatrix& rho, const OperatorMatrix& observable) {
    check_square_match(rho.matrix(), observable, "expectation");
    // Tr(rho O) without forming the product.
    return (rho.matrix().transpose().cwiseProduct(observable)).sum();
}

DensityMatrix evolve(const DensityMatrix& rho, const OperatorMatrix& unitary) {
    check_square_match(rho.matrix(), unitary, "evolve");
    if (!is_unitary(unitary)) {
        throw std::invalid_argument("evolve: operator is not unitary");
    }
    OperatorMatrix out = unitary * rho.matrix() * unitary.adjoint();
    // Symmetrize away round-off so the result passes the Hermitian check.
    out = ((out + out.adjoint()) / 2.0).eval();
    return DensityMatrix(std::move(out), rho.trace_class());
}

}  // namespace fcfsim
