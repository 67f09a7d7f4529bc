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

#ifndef PAULIFLOW_QAOA_HPP
#define PAULIFLOW_QAOA_HPP

#include <optional>
#include <string>
#include <vector>

#include "pauliflow/circuit.hpp"
#include "pauliflow/ising.hpp"
#include "pauliflow/path_engine.hpp"

namespace pauliflow {

/// Qubit placement plus SWAP schedule. Each stage is a block of SWAP-only
/// layers applied after a computing window; edges are realized whenever
/// their spins are lattice-adjacent in the current placement.
struct Embedding {
    std::vector<Coord> placement;  // spin -> initial coordinate
    int lattice_x = 0;
    int lattice_y = 0;

    struct Stage {
        /// Each inner vector is one circuit layer of disjoint SWAPs, given
        /// as coordinate pairs.
        std::vector<std::vector<std::pair<Coord, Coord>>> swap_layers;
    };
    std::vector<Stage> stages;

    /// Identity embedding for a model whose own placement is already
    /// nearest-neighbor local; no SWAP stages.
    static Embedding native(const IsingModel &model);
    /// Spins on a 1 x n line with the full odd-even transposition network
    /// (n rounds, one SWAP layer each); every spin pair crosses once, so
    /// any graph embeds.
    static Embedding linear_swap_network(const IsingModel &model);
};

enum class QaoaMixer {
    transverse_x,  // one layer of exp(-i alpha X) per qubit
    none,
};

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> alphas;
};

struct QaoaLayout {
    int variational_layers = 0;
    /// Computing depth c_j per variational layer (non-SWAP layers).
    std::vector<int> computing_depth;
    /// SWAP-only depth per variational layer; the schedule repeats, so this
    /// is the embedding overhead of one layer.
    int swap_depth = 0;
    /// Marks permuting layers in the emitted circuit.
    std::vector<bool> layer_is_permuting;
    /// spin -> qubit index after the full circuit (SWAP stages permute).
    std::vector<uint32_t> final_qubit_of_spin;
    std::vector<double> gammas;
    std::vector<double> alphas;

    int max_computing_depth() const;
};

struct QaoaBuild {
    Circuit circuit;
    QaoaLayout layout;
};

/// Emits the layered circuit for m variational layers: per layer, field
/// rotations, then per stage the e^{-i gamma J ZZ} terms of currently
/// adjacent unrealized edges compiled to {CNOT, Rz} (Rz snapping to
/// S/Z/SDG/identity at multiples of pi/2), then the stage's SWAP layers,
/// then the mixer block. Throws if some model edge is never realized in a
/// variational layer, naming the edge.
QaoaBuild build_qaoa(const IsingModel &model, const QaoaParams &params,
                     const Embedding &embedding, QaoaMixer mixer = QaoaMixer::transverse_x);

/// Q = max_j(c_j 2^{c_j}) / lambda. Throws std::domain_error when
/// lambda = 0 (no SWAP layers; the bound is inapplicable).
double qaoa_sparseness_bound(const QaoaLayout &layout);

/// The model's energy observable re-indexed to where each spin ends up
/// after the circuit's SWAP stages.
Observable energy_observable_at_output(const IsingModel &model, const QaoaLayout &layout);

struct DispatchOptions {
    double lambda_threshold = 4.0;
    double p = 0.1;
    double epsilon = 0.1;
    double a = 2.0;
    int ell_fallback = 8;
    int threads = 1;
};

struct DispatchReport {
    char branch = 'a';
    double lambda = 0.0;
    double estimate = 0.0;
    double bound = 0.0;
    // Branch b only:
    double q = 0.0;
    double p_threshold = 0.0;
    bool guaranteed = false;
    int cutoff = 0;
    std::optional<double> log_bound;
    std::string note;
};

/// Routes a model to whichever estimator carries a guarantee:
/// lambda <= threshold goes to the classical block approximation of the
/// ground energy (ties included); larger lambda goes to the truncated path
/// estimate of the noisy circuit energy from the |+>^n start, with Q from
/// the layout and the p > 1 - 1/2^Q threshold check. Below threshold the
/// estimate still runs at the fallback cutoff and is flagged unguaranteed.
DispatchReport dispatch_energy_estimate(const IsingModel &model, const QaoaBuild &build,
                                 const DispatchOptions &options);

}  // namespace pauliflow

#endif
