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

#ifndef PAULIFLOW_ISING_HPP
#define PAULIFLOW_ISING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pauliflow/circuit.hpp"
#include "pauliflow/pauli.hpp"

namespace pauliflow {

/// Classical Ising Hamiltonian sum J_ij Z_i Z_j + sum b_i Z_i on a
/// bounded-degree graph, with an optional 2D placement.
struct IsingModel {
    struct Edge {
        int i = 0;
        int j = 0;
        double coupling = 0.0;
    };
    int nodes = 0;
    std::vector<Edge> edges;
    std::vector<double> fields;

    /// Optional placement: spin index -> lattice coordinate.
    std::optional<std::vector<Coord>> placement;
    int lattice_x = 0;
    int lattice_y = 0;

    void validate() const;
    int max_degree() const;
    double max_abs_coupling() const;
    /// Longest edge in Manhattan distance under the placement.
    int max_edge_length() const;
    double energy(const std::vector<int> &spins) const;

    /// Nearest-neighbor grid with couplings/fields from a callback.
    static IsingModel grid(int lx, int ly,
                           const std::vector<double> &couplings_row_major_h_then_v,
                           const std::vector<double> &fields);
};

IsingModel ising_from_json(const nlohmann::json &j);
nlohmann::json ising_to_json(const IsingModel &model);

struct GroundState {
    double energy = 0.0;
    std::vector<int> spins;  // +1 / -1
};

/// Global minimum by bitmask sweep with Gray-code incremental updates;
/// ties break toward the lexicographically smallest configuration
/// (+1 before -1, spin 0 first). Requires n <= 26.
GroundState exact_ground_energy(const IsingModel &model);

struct BlockDecomposition {
    int block_size = 0;  // L
    int blocks_x = 0;
    int blocks_y = 0;
    /// block id per spin.
    std::vector<int> block_of_spin;
    /// spins per block.
    std::vector<std::vector<int>> blocks;
    /// indices into model.edges.
    std::vector<std::size_t> kept_edges;
    std::vector<std::size_t> dropped_edges;
};

/// Tiles the placement lattice into L x L blocks and classifies edges as
/// kept (inside one block) or dropped (crossing blocks).
BlockDecomposition block_decompose(const IsingModel &model, int block_size);

struct ApproxGroundEnergy {
    double energy = 0.0;  // sum of per-block minima (plus dropped-edge-free fields)
    int block_size = 0;
    double error_bound = 0.0;  // bound on |E0' - E0|
    std::vector<int> spins;    // concatenated per-block minimizers
    std::size_t dropped_edge_count = 0;
};

/// Block approximation with an explicit L.
ApproxGroundEnergy approx_ground_energy_blocks(const IsingModel &model, int block_size);

/// Chooses L = ceil(4 J_max / eps) for nearest-neighbor placements
/// (c = 1) and L = ceil(8 c J_max / eps) otherwise, capped so that every
/// block brute-force stays within 26 spins; throws with the feasible
/// precision floor when the required L does not fit.
ApproxGroundEnergy approx_ground_energy(const IsingModel &model, double eps);

/// The Hamiltonian as a Pauli observable: one Z_i Z_j term per edge and one
/// Z_i term per nonzero field.
Observable energy_observable(const IsingModel &model);

}  // namespace pauliflow

#endif
