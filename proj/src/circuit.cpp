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

#include "pauliflow/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pauliflow {

const char *gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::T: return "T";
        case GateKind::Generic: return "U";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string &name) {
    if (name == "H") return GateKind::H;
    if (name == "S") return GateKind::S;
    if (name == "SDG") return GateKind::Sdg;
    if (name == "X") return GateKind::X;
    if (name == "Y") return GateKind::Y;
    if (name == "Z") return GateKind::Z;
    if (name == "CNOT") return GateKind::CNOT;
    if (name == "CZ") return GateKind::CZ;
    if (name == "SWAP") return GateKind::SWAP;
    if (name == "T") return GateKind::T;
    if (name == "U") return GateKind::Generic;
    throw std::invalid_argument("unknown gate kind: " + name);
}

namespace {

std::optional<CliffordGate> clifford_of_kind(GateKind k) {
    switch (k) {
        case GateKind::H: return CliffordGate::H;
        case GateKind::S: return CliffordGate::S;
        case GateKind::Sdg: return CliffordGate::Sdg;
        case GateKind::X: return CliffordGate::X;
        case GateKind::Y: return CliffordGate::Y;
        case GateKind::Z: return CliffordGate::Z;
        case GateKind::CNOT: return CliffordGate::CNOT;
        case GateKind::CZ: return CliffordGate::CZ;
        case GateKind::SWAP: return CliffordGate::SWAP;
        default: return std::nullopt;
    }
}

int expected_arity(GateKind k) {
    if (auto c = clifford_of_kind(k)) {
        return clifford_arity(*c);
    }
    if (k == GateKind::T) {
        return 1;
    }
    return -1;  // generic: 1..3
}

bool support_connected(const std::vector<Coord> &support) {
    if (support.size() <= 1) {
        return true;
    }
    std::vector<bool> seen(support.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < support.size(); ++j) {
            if (seen[j]) continue;
            int d = std::abs(support[i].x - support[j].x) + std::abs(support[i].y - support[j].y);
            if (d == 1) {
                seen[j] = true;
                ++visited;
                stack.push_back(j);
            }
        }
    }
    return visited == support.size();
}

}  // namespace

Gate Gate::clifford(CliffordGate g, std::vector<Coord> support) {
    Gate gate;
    switch (g) {
        case CliffordGate::H: gate.kind = GateKind::H; break;
        case CliffordGate::S: gate.kind = GateKind::S; break;
        case CliffordGate::Sdg: gate.kind = GateKind::Sdg; break;
        case CliffordGate::X: gate.kind = GateKind::X; break;
        case CliffordGate::Y: gate.kind = GateKind::Y; break;
        case CliffordGate::Z: gate.kind = GateKind::Z; break;
        case CliffordGate::CNOT: gate.kind = GateKind::CNOT; break;
        case CliffordGate::CZ: gate.kind = GateKind::CZ; break;
        case CliffordGate::SWAP: gate.kind = GateKind::SWAP; break;
    }
    gate.support = std::move(support);
    return gate;
}

Gate Gate::t(Coord c) {
    Gate gate;
    gate.kind = GateKind::T;
    gate.support = {c};
    return gate;
}

Gate Gate::generic(Matrix m, std::vector<Coord> support) {
    Gate gate;
    gate.kind = GateKind::Generic;
    gate.support = std::move(support);
    gate.matrix = std::move(m);
    return gate;
}

std::vector<Violation> validate(const Circuit &circuit) {
    std::vector<Violation> out;
    for (int t = 0; t < circuit.depth(); ++t) {
        std::set<Coord> used;
        for (const Gate &g : circuit.layers[t]) {
            std::ostringstream gate_desc;
            gate_desc << gate_kind_name(g.kind) << " at";
            for (Coord c : g.support) {
                gate_desc << " (" << c.x << "," << c.y << ")";
            }

            int arity = expected_arity(g.kind);
            if (arity > 0 && static_cast<int>(g.support.size()) != arity) {
                out.push_back({t, gate_desc.str() + ": wrong support size"});
                continue;
            }
            if (g.kind == GateKind::Generic) {
                if (g.support.empty() || g.support.size() > 3) {
                    out.push_back({t, gate_desc.str() + ": generic gates take 1-3 qubits"});
                    continue;
                }
                if (!g.matrix || g.matrix->dim() != (std::size_t{1} << g.support.size())) {
                    out.push_back({t, gate_desc.str() + ": missing or mis-sized matrix"});
                    continue;
                }
                if (!g.matrix->is_unitary(1e-10)) {
                    out.push_back({t, gate_desc.str() + ": matrix not unitary within 1e-10"});
                }
            }
            std::set<Coord> distinct(g.support.begin(), g.support.end());
            if (distinct.size() != g.support.size()) {
                out.push_back({t, gate_desc.str() + ": repeated qubit in support"});
            }
            for (Coord c : g.support) {
                if (!circuit.in_lattice(c)) {
                    out.push_back({t, gate_desc.str() + ": qubit outside lattice"});
                }
                if (used.count(c)) {
                    out.push_back({t, gate_desc.str() + ": qubit used twice in one layer"});
                }
                used.insert(c);
            }
            if (!support_connected(g.support)) {
                out.push_back({t, gate_desc.str() + ": support not nearest-neighbor connected"});
            }
        }
    }
    return out;
}

std::map<int, std::vector<Coord>> t_census(const Circuit &circuit) {
    std::map<int, std::vector<Coord>> out;
    for (int t = 0; t < circuit.depth(); ++t) {
        for (const Gate &g : circuit.layers[t]) {
            if (g.kind == GateKind::T) {
                out[t + 1].push_back(g.support[0]);
            }
        }
    }
    return out;
}

bool generic_gate_is_clifford(const Matrix &m, std::size_t arity) {
    PauliString probe(static_cast<uint32_t>(arity));
    std::vector<uint32_t> qubits(arity);
    for (std::size_t i = 0; i < arity; ++i) {
        qubits[i] = static_cast<uint32_t>(i);
    }
    for (std::size_t q = 0; q < arity; ++q) {
        for (Pauli p : {Pauli::X, Pauli::Z}) {
            PauliString s = probe;
            s.set_letter(static_cast<uint32_t>(q), p);
            if (conjugate_generic(m, qubits, s).size() != 1) {
                return false;
            }
        }
    }
    return true;
}

std::map<int, std::vector<Coord>> magic_census(const Circuit &circuit) {
    std::map<int, std::vector<Coord>> out;
    for (int t = 0; t < circuit.depth(); ++t) {
        for (const Gate &g : circuit.layers[t]) {
            if (g.kind == GateKind::T) {
                out[t + 1].push_back(g.support[0]);
            } else if (g.kind == GateKind::Generic && g.matrix) {
                if (generic_gate_is_clifford(*g.matrix, g.support.size())) {
                    continue;
                }
                if (g.support.size() > 1) {
                    throw std::invalid_argument(
                        "multi-qubit non-Clifford generic gate is outside the magic accounting");
                }
                out[t + 1].push_back(g.support[0]);
            }
        }
    }
    return out;
}

nlohmann::json circuit_to_json(const Circuit &circuit) {
    nlohmann::json j;
    j["lattice"] = {circuit.lx, circuit.ly};
    nlohmann::json layers = nlohmann::json::array();
    for (const auto &layer : circuit.layers) {
        nlohmann::json jl = nlohmann::json::array();
        for (const Gate &g : layer) {
            nlohmann::json jg;
            jg["kind"] = gate_kind_name(g.kind);
            nlohmann::json qs = nlohmann::json::array();
            for (Coord c : g.support) {
                qs.push_back({c.x, c.y});
            }
            jg["qubits"] = qs;
            if (g.matrix) {
                nlohmann::json m = nlohmann::json::array();
                for (const cplx &v : g.matrix->data()) {
                    m.push_back({v.real(), v.imag()});
                }
                jg["matrix"] = m;
            }
            jl.push_back(jg);
        }
        layers.push_back(jl);
    }
    j["layers"] = layers;
    return j;
}

Circuit circuit_from_json(const nlohmann::json &j) {
    Circuit c;
    const auto &lattice = j.at("lattice");
    c.lx = lattice.at(0).get<int>();
    c.ly = lattice.at(1).get<int>();
    if (c.lx <= 0 || c.ly <= 0) {
        throw std::invalid_argument("lattice dimensions must be positive");
    }
    for (const auto &jl : j.at("layers")) {
        std::vector<Gate> layer;
        for (const auto &jg : jl) {
            Gate g;
            g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
            for (const auto &q : jg.at("qubits")) {
                g.support.push_back(Coord{q.at(0).get<int>(), q.at(1).get<int>()});
            }
            if (jg.contains("matrix")) {
                const auto &jm = jg.at("matrix");
                std::size_t dim = 1;
                while (dim * dim < jm.size()) {
                    ++dim;
                }
                if (dim * dim != jm.size()) {
                    throw std::invalid_argument("matrix entry count is not a perfect square");
                }
                std::vector<cplx> data;
                data.reserve(jm.size());
                for (const auto &entry : jm) {
                    data.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
                }
                g.matrix = Matrix(dim, std::move(data));
            } else if (g.kind == GateKind::Generic) {
                throw std::invalid_argument("generic gate requires a matrix");
            }
            layer.push_back(std::move(g));
        }
        c.layers.push_back(std::move(layer));
    }
    return c;
}

}  // namespace pauliflow
