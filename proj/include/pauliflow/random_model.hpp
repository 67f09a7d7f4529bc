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

#ifndef PAULIFLOW_RANDOM_MODEL_HPP
#define PAULIFLOW_RANDOM_MODEL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "pauliflow/circuit.hpp"

namespace pauliflow {

/// A circuit architecture with gate slots but no gate choices yet.
struct SlotSkeleton {
    struct Slot {
        std::vector<Coord> support;  // size 1 or 2
    };
    int lx = 0;
    int ly = 0;
    std::vector<std::vector<Slot>> layers;

    /// Brickwork skeleton: alternating layers of horizontal two-qubit slots
    /// (even/odd offset) and full layers of one-qubit slots.
    static SlotSkeleton brickwork(int lx, int ly, int depth);
    /// One-qubit slots on every qubit in every layer.
    static SlotSkeleton single_qubit_layers(int lx, int ly, int depth);

    std::size_t one_qubit_slot_count() const;
};

/// How free slots (and constrained slots) are filled.
enum class GatePolicy {
    /// Free one-qubit slots always become T; constrained slots and
    /// two-qubit slots get a fixed Clifford. The adversarial maximum the
    /// average-case path bound must dominate.
    always_t_when_free,
    /// Free one-qubit slots draw uniformly from {H,S,SDG,X,Y,Z,T};
    /// constrained slots from the Clifford part; two-qubit slots from
    /// {CNOT, CNOT reversed, CZ, SWAP}.
    uniform_clifford_or_t,
};

GatePolicy gate_policy_from_name(const std::string &name);
const char *gate_policy_name(GatePolicy p);

/// Samples a circuit from the random T-gate model: each one-qubit slot is
/// independently "free" with probability q, and the policy fills it.
/// Deterministic for a fixed seed.
Circuit sample_random_model(const SlotSkeleton &skeleton, double q, GatePolicy policy,
                            uint64_t seed);

/// Fraction of one-qubit slots that became T gates; used by concentration
/// checks.
double t_gate_fraction(const Circuit &circuit, const SlotSkeleton &skeleton);

}  // namespace pauliflow

#endif
