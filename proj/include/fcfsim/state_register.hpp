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

#include <fcfsim/types.hpp>

#include <complex>

namespace fcfsim {

/// Unit-trace states stand in for pseudopure states; traceless states are
/// POPS differences |j><j| - |k><k| and anything derived from them.
enum class TraceClass { unit, traceless };

/// Hermitian register state with a declared trace class.
///
/// The constructor checks Hermiticity (1e-12) and that the trace matches the
/// declared class (1e-10). Unit-trace states must also have their spectrum in
/// [-1e-10, 1 + 1e-10].
class DensityMatrix {
public:
    DensityMatrix(OperatorMatrix rho, TraceClass trace_class);

    const OperatorMatrix& matrix() const { return rho_; }
    TraceClass trace_class() const { return class_; }
    Eigen::Index dim() const { return rho_.rows(); }
    double nominal_trace() const { return class_ == TraceClass::unit ? 1.0 : 0.0; }

    /// Populations in the computational basis.
    Eigen::VectorXd diagonal() const { return rho_.diagonal().real(); }

private:
    OperatorMatrix rho_;
    TraceClass class_;
};

/// j != k, both basis indices of the system register.
struct PopsPair {
    int j;
    int k;
};

/// |n><n| on numQubits qubits; big-endian labeling, so level 3 on three qubits is |011>.
DensityMatrix encode_level(int level, int num_qubits);

/// |j><j| - |k><k|.
DensityMatrix pops_state(PopsPair pair, int num_qubits);

/// a (x) b, with a as the most significant factor.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out the trailing system factor of an (ancilla (x) system) state,
/// leaving the ancilla_dim x ancilla_dim reduced state.
DensityMatrix partial_trace_system(const DensityMatrix& rho, Eigen::Index ancilla_dim);

/// Tr(rho O).
std::complex<double> expectation(const DensityMatrix& rho, const OperatorMatrix& observable);

/// U rho U^dagger. U must be unitary within 1e-10.
DensityMatrix evolve(const DensityMatrix& rho, const OperatorMatrix& unitary);

/// Raw-matrix versions used inside the protocols, no validation.
OperatorMatrix kronecker(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix trace_out_system(const OperatorMatrix& joint, Eigen::Index ancilla_dim);

}  // namespace fcfsim
