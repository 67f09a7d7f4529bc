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

#ifndef PAULIFLOW_COUNTEREXAMPLE_HPP
#define PAULIFLOW_COUNTEREXAMPLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pauliflow/circuit.hpp"
#include "pauliflow/matrix.hpp"
#include "pauliflow/pauli.hpp"

namespace pauliflow {

/// The 3-qubit majority-voting permutation unitary: swaps |100> with |011>
/// and fixes the other six basis states. Its Heisenberg action on Z_1 is
/// (Z_1 + Z_2 + Z_3)/2 - Z_1 Z_2 Z_3 / 2, which defeats naive weight
/// truncation when tensored.
Matrix v_gate();

/// One layer of n/3 V gates on a 1 x n line (n a multiple of 3).
Circuit v_gate_circuit(int n);

/// Z on the first qubit of each of the first k majority-gate blocks
/// (0-based qubits 0, 3, 6, ...); needs n >= 3k.
PauliString majority_observable(int n, int k);

/// Closed-form weight coefficient for the k-block V circuit:
/// (3/2)^{2k-w/2} (-1/2)^{w/2-k} C(k, 2k-w/2) for even w in [2k, 4k],
/// zero otherwise.
double analytic_fw(int k, int w);

/// Tail error E^(ell) = sum_{w > ell} F_w (1-p)^w by direct finite
/// summation (at most 2k+1 terms).
double truncation_error(int k, int ell, double p);

/// Terminating-hypergeometric closed form of the same tail sum; defined for
/// even k, even ell with 2k <= ell <= 4k-2. Cross-check only.
double truncation_error_hypergeometric(int k, int ell, double p);

struct PropertyReport {
    int k = 0;
    double p = 0.0;
    bool vanishes_below_2k = true;       // F_w = 0 for w < 2k
    bool full_tail_matches_product = true;  // ell < 2k tail equals the product form
    bool zero_above_4k = true;           // E^(ell) = 0 for ell > 4k
    bool sign_alternates = true;         // sign of E^(ell) flips with ell
    bool growth_bound_holds = true;      // |E^(ell)| >= (3(1-p)^2/2)^k - 1 in range
    bool growth_bound_checked = false;   // false when p is above the threshold
    std::vector<std::string> failures;
    bool all_pass() const;
};

/// Verifies the five tail-error properties over an ell range. The growth
/// bound is checked for even ell with 2k <= ell <= 9k/4 and only for
/// p < 1 - sqrt(2/3); the sign alternation for even ell in [2k, 4k-2] is
/// sgn E^(ell) = (-1)^{(ell-2k)/2 + 1}, the sign of the first discarded
/// coefficient.
PropertyReport verify_properties(int k, int ell_min, int ell_max, double p);

struct MixedObservableError {
    int n = 0;
    int g = 0;
    int ell = 0;
    double p = 0.0;
    double error = 0.0;  // E_C^(ell), the signed mixed tail error
    /// Witness term: k with 8k < ell < 9k maximizing |E^(ell)_{C_{4k}}|/g.
    std::optional<int> witness_k;
    double witness_value = 0.0;
};

/// Mixed observable O = (1/g) sum_{k=1..g} O_{4k} with g = ceil(log2(n)^2)
/// unless overridden; the error is assembled from analytic per-k tails.
/// Requires n a multiple of 3 and 12 g <= n.
MixedObservableError mixed_observable_error(int n, int ell, double p,
                                            std::optional<int> g_override = std::nullopt);

}  // namespace pauliflow

#endif
