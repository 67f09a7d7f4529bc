// Copyright 2026 The pauliflow Authors
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

#ifndef PAULIFLOW_EXACT_ORACLE_HPP
#define PAULIFLOW_EXACT_ORACLE_HPP

#include <complex>
#include <vector>

#include "pauliflow/circuit.hpp"
#include "pauliflow/pauli.hpp"

namespace pauliflow {

/// Dense density matrix on up to 10 qubits (16 MB of complex doubles).
/// Qubit q maps to bit n-1-q of the basis index, so qubit 0 is the most
/// significant bit, matching the gate-matrix support convention.
class DensityMatrix {
  public:
    explicit DensityMatrix(const ProductState &state);

    uint32_t n() const { return n_; }
    std::size_t dim() const { return dim_; }
    cplx &at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx &at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    void apply_gate(const Gate &gate, const Circuit &circuit);
    /// Single-qubit depolarizing channel N_p on one qubit.
    void depolarize_qubit(uint32_t qubit, double p);
    /// N_p on every qubit.
    void depolarize_all(double p);

    double expectation(const PauliString &p) const;
    double expectation(const Observable &obs) const;

    double trace_real() const;
    double hermiticity_defect() const;
    /// Least eigenvalue is >= -tol, verified by a pivoted LDL^H on the
    /// regularized matrix.
    bool positive_semidefinite(double tol = 1e-9) const;

  private:
    uint32_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// tr(O Phi_noisy(rho_0)) by dense evolution: depolarizing layer first,
/// then unitary layer + depolarizing layer per circuit layer.
double exact_noisy_expectation(const Circuit &circuit, const ProductState &state,
                               const Observable &obs, double p);

/// Untruncated Pauli-transfer evaluation: the full path sum with noise
/// factors (1-p)^|s|. Shares the path-engine traversal configured with an
/// unbounded cutoff; aborts with PathExplosionError past 2^24 paths.
double exact_pauli_transfer(const Circuit &circuit, const Observable &obs,
                            const ProductState &state, double p);

struct ChannelCheck {
    double p = 0.0;
    /// Worst deviation of the damped Bloch components from (1-p) * r.
    double max_deviation = 0.0;
    bool identity_preserved = false;
    bool ok = false;
};

/// Verifies the Pauli-damping action of the depolarizing channel on a probe
/// set of Bloch vectors.
ChannelCheck depolarize_channel_check(double p);

}  // namespace pauliflow

#endif
