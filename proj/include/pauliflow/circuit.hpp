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

#ifndef PAULIFLOW_CIRCUIT_HPP
#define PAULIFLOW_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pauliflow/pauli.hpp"

namespace pauliflow {

/// Lattice coordinate of a qubit.
struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord &o) const { return x == o.x && y == o.y; }
    bool operator<(const Coord &o) const { return y != o.y ? y < o.y : x < o.x; }
};

enum class GateKind : uint8_t {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    CNOT,
    CZ,
    SWAP,
    T,
    Generic,
};

const char *gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string &name);

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<Coord> support;
    /// Row-major unitary, only for GateKind::Generic.
    std::optional<Matrix> matrix;

    static Gate clifford(CliffordGate g, std::vector<Coord> support);
    static Gate t(Coord c);
    static Gate generic(Matrix m, std::vector<Coord> support);
};

/// Layered circuit on an Lx x Ly square lattice. Layer i holds the gates of
/// time step i+1; qubit (x, y) has flat index y*Lx + x.
struct Circuit {
    int lx = 0;
    int ly = 0;
    std::vector<std::vector<Gate>> layers;

    Circuit() = default;
    Circuit(int lx_, int ly_) : lx(lx_), ly(ly_) {}

    int n_qubits() const { return lx * ly; }
    int depth() const { return static_cast<int>(layers.size()); }
    bool in_lattice(Coord c) const { return c.x >= 0 && c.x < lx && c.y >= 0 && c.y < ly; }
    uint32_t qubit_index(Coord c) const { return static_cast<uint32_t>(c.y * lx + c.x); }
    Coord coord_of(uint32_t q) const {
        return Coord{static_cast<int>(q % lx), static_cast<int>(q / lx)};
    }
};

struct Violation {
    int layer = -1;
    std::string message;
};

/// All locality/overlap violations; empty means the circuit is valid.
/// Violations are data, not failures.
std::vector<Violation> validate(const Circuit &circuit);

/// Positions of T gates keyed by 1-based layer index. Generic gates never
/// appear here even when they are non-Clifford.
std::map<int, std::vector<Coord>> t_census(const Circuit &circuit);

/// Positions of magic gates: T gates plus single-qubit generic gates whose
/// conjugation action branches (i.e. non-Clifford). Multi-qubit generic
/// gates are outside this accounting; magic_census throws if it finds a
/// non-Clifford one.
std::map<int, std::vector<Coord>> magic_census(const Circuit &circuit);

/// Whether a generic gate's conjugation maps every Pauli to a single Pauli.
bool generic_gate_is_clifford(const Matrix &m, std::size_t arity);

nlohmann::json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &j);

}  // namespace pauliflow

#endif
