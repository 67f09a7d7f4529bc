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

#ifndef PAULIFLOW_SPARSENESS_HPP
#define PAULIFLOW_SPARSENESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pauliflow/circuit.hpp"

namespace pauliflow {

/// A space-time point (x, y, t). t = 0 is the input boundary (no gates);
/// the gates of layer k live at t = k, 1 <= k <= depth.
struct SpacetimePoint {
    int x = 0;
    int y = 0;
    int t = 0;
    bool operator==(const SpacetimePoint &o) const { return x == o.x && y == o.y && t == o.t; }
};

enum class SparsenessStatus { certified, refuted, inconclusive };

struct SparsenessReport {
    double q = 0.0;
    int k = 0;
    SparsenessStatus status = SparsenessStatus::inconclusive;
    /// Largest subset size actually covered by the enumeration.
    int max_size_checked = 0;
    /// Total number of space-time points n*(d+1).
    int point_count = 0;
    /// For refuted: a connected subset with magic fraction above q.
    std::optional<std::vector<SpacetimePoint>> witness;
    /// Magic fraction of the witness, recomputed directly.
    double witness_fraction = 0.0;
    std::string note;
};

/// Checks the magic-gate sparseness condition: every connected space-time
/// subset A with k <= |A| <= cap must satisfy T(A)/|A| <= q, where T(A)
/// counts T gates and non-Clifford single-qubit generic gates on points of
/// A. Two points are adjacent when |dt| <= 1 and |dx|+|dy| <= 1. Certified
/// only when the cap reaches n*(d+1) (or the circuit has no magic gates at
/// all, or q >= 1); otherwise a clean sweep is reported as inconclusive.
/// Enumeration grows connected sets from each root point and forbids
/// smaller-indexed points, so each subset is visited exactly once; the
/// first violation wins and becomes the witness.
SparsenessReport check_sparseness(const Circuit &circuit, double q, int k, int subset_size_cap);

/// Recount used by tests and reports: fraction of witness points holding a
/// magic gate, plus a connectivity check. Independent of the enumeration.
bool verify_sparseness_witness(const Circuit &circuit, double q,
                               const std::vector<SpacetimePoint> &witness, double *fraction);

}  // namespace pauliflow

#endif
