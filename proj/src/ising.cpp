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

#include "pauliflow/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pauliflow {

void IsingModel::validate() const {
    if (nodes <= 0) {
        throw std::invalid_argument("model needs at least one spin");
    }
    if (static_cast<int>(fields.size()) != nodes) {
        throw std::invalid_argument("field count must equal node count");
    }
    for (const Edge &e : edges) {
        if (e.i < 0 || e.i >= nodes || e.j < 0 || e.j >= nodes || e.i == e.j) {
            throw std::invalid_argument("edge endpoints out of range");
        }
        if (e.coupling == 0.0) {
            throw std::invalid_argument("couplings must be nonzero");
        }
    }
    if (placement) {
        if (static_cast<int>(placement->size()) != nodes) {
            throw std::invalid_argument("placement must cover every spin");
        }
        for (Coord c : *placement) {
            if (c.x < 0 || c.x >= lattice_x || c.y < 0 || c.y >= lattice_y) {
                throw std::invalid_argument("placement coordinate outside lattice");
            }
        }
    }
}

int IsingModel::max_degree() const {
    std::vector<int> deg(static_cast<std::size_t>(nodes), 0);
    for (const Edge &e : edges) {
        ++deg[static_cast<std::size_t>(e.i)];
        ++deg[static_cast<std::size_t>(e.j)];
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

double IsingModel::max_abs_coupling() const {
    double m = 0.0;
    for (const Edge &e : edges) {
        m = std::max(m, std::abs(e.coupling));
    }
    return m;
}

int IsingModel::max_edge_length() const {
    if (!placement) {
        throw std::invalid_argument("max edge length needs a placement");
    }
    int c = 0;
    for (const Edge &e : edges) {
        Coord a = (*placement)[static_cast<std::size_t>(e.i)];
        Coord b = (*placement)[static_cast<std::size_t>(e.j)];
        c = std::max(c, std::abs(a.x - b.x) + std::abs(a.y - b.y));
    }
    return c;
}

double IsingModel::energy(const std::vector<int> &spins) const {
    if (static_cast<int>(spins.size()) != nodes) {
        throw std::invalid_argument("spin count mismatch");
    }
    double e = 0.0;
    for (const Edge &edge : edges) {
        e += edge.coupling * spins[static_cast<std::size_t>(edge.i)] *
             spins[static_cast<std::size_t>(edge.j)];
    }
    for (int i = 0; i < nodes; ++i) {
        e += fields[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
    }
    return e;
}

IsingModel IsingModel::grid(int lx, int ly, const std::vector<double> &couplings,
                            const std::vector<double> &fields) {
    IsingModel m;
    m.nodes = lx * ly;
    m.lattice_x = lx;
    m.lattice_y = ly;
    m.fields = fields.empty() ? std::vector<double>(static_cast<std::size_t>(m.nodes), 0.0)
                              : fields;
    std::vector<Coord> place;
    for (int y = 0; y < ly; ++y) {
        for (int x = 0; x < lx; ++x) {
            place.push_back(Coord{x, y});
        }
    }
    m.placement = place;

    // Horizontal edges first (row major), then vertical.
    std::size_t idx = 0;
    auto next_coupling = [&]() {
        if (couplings.empty()) return 1.0;
        if (idx >= couplings.size()) {
            throw std::invalid_argument("not enough couplings for the grid");
        }
        return couplings[idx++];
    };
    for (int y = 0; y < ly; ++y) {
        for (int x = 0; x + 1 < lx; ++x) {
            m.edges.push_back(Edge{y * lx + x, y * lx + x + 1, next_coupling()});
        }
    }
    for (int y = 0; y + 1 < ly; ++y) {
        for (int x = 0; x < lx; ++x) {
            m.edges.push_back(Edge{y * lx + x, (y + 1) * lx + x, next_coupling()});
        }
    }
    m.validate();
    return m;
}

IsingModel ising_from_json(const nlohmann::json &j) {
    IsingModel m;
    m.nodes = j.at("nodes").get<int>();
    for (const auto &e : j.at("edges")) {
        m.edges.push_back(IsingModel::Edge{e.at(0).get<int>(), e.at(1).get<int>(),
                                           e.at(2).get<double>()});
    }
    if (j.contains("fields")) {
        m.fields = j.at("fields").get<std::vector<double>>();
    } else {
        m.fields.assign(static_cast<std::size_t>(m.nodes), 0.0);
    }
    if (j.contains("placement")) {
        std::vector<Coord> place;
        for (const auto &c : j.at("placement")) {
            place.push_back(Coord{c.at(0).get<int>(), c.at(1).get<int>()});
        }
        m.placement = place;
        const auto &lattice = j.at("lattice");
        m.lattice_x = lattice.at(0).get<int>();
        m.lattice_y = lattice.at(1).get<int>();
    }
    m.validate();
    return m;
}

nlohmann::json ising_to_json(const IsingModel &model) {
    nlohmann::json j;
    j["nodes"] = model.nodes;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : model.edges) {
        edges.push_back({e.i, e.j, e.coupling});
    }
    j["edges"] = edges;
    j["fields"] = model.fields;
    if (model.placement) {
        nlohmann::json place = nlohmann::json::array();
        for (Coord c : *model.placement) {
            place.push_back({c.x, c.y});
        }
        j["placement"] = place;
        j["lattice"] = {model.lattice_x, model.lattice_y};
    }
    return j;
}

namespace {

/// spins as bitmask, bit i set = spin i is -1. Lexicographic order on
/// (s_0, s_1, ...) with +1 < -1.
bool lex_less(uint32_t a, uint32_t b) {
    if (a == b) {
        return false;
    }
    uint32_t diff = a ^ b;
    uint32_t lowest = diff & (~diff + 1);
    return (a & lowest) == 0;
}

std::vector<int> mask_to_spins(uint32_t mask, int n) {
    std::vector<int> spins(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        spins[static_cast<std::size_t>(i)] = ((mask >> i) & 1u) ? -1 : 1;
    }
    return spins;
}

GroundState brute_force_subset(const IsingModel &model, const std::vector<int> &spins_subset) {
    const int n = static_cast<int>(spins_subset.size());
    if (n > 26) {
        throw std::invalid_argument("brute force limited to 26 spins");
    }
    std::vector<int> local_index(static_cast<std::size_t>(model.nodes), -1);
    for (int i = 0; i < n; ++i) {
        local_index[static_cast<std::size_t>(spins_subset[static_cast<std::size_t>(i)])] = i;
    }
    // Adjacency restricted to the subset.
    struct LocalEdge {
        int other;
        double coupling;
    };
    std::vector<std::vector<LocalEdge>> adj(static_cast<std::size_t>(n));
    for (const auto &e : model.edges) {
        int li = local_index[static_cast<std::size_t>(e.i)];
        int lj = local_index[static_cast<std::size_t>(e.j)];
        if (li >= 0 && lj >= 0) {
            adj[static_cast<std::size_t>(li)].push_back(LocalEdge{lj, e.coupling});
            adj[static_cast<std::size_t>(lj)].push_back(LocalEdge{li, e.coupling});
        }
    }
    std::vector<double> field(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        field[static_cast<std::size_t>(i)] =
            model.fields[static_cast<std::size_t>(spins_subset[static_cast<std::size_t>(i)])];
    }

    std::vector<int> spin(static_cast<std::size_t>(n), 1);
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        energy += field[static_cast<std::size_t>(i)];
        for (const LocalEdge &e : adj[static_cast<std::size_t>(i)]) {
            if (e.other > i) {
                energy += e.coupling;
            }
        }
    }

    double best_energy = energy;
    uint32_t best_mask = 0;
    uint32_t gray = 0;
    const uint32_t total = uint32_t{1} << n;
    for (uint32_t counter = 1; counter < total; ++counter) {
        uint32_t next_gray = counter ^ (counter >> 1);
        uint32_t flipped = gray ^ next_gray;
        int bit = std::countr_zero(flipped);
        gray = next_gray;

        // Flipping spin `bit`: delta = -2 s_bit (sum_j J s_j + b).
        double around = field[static_cast<std::size_t>(bit)];
        for (const LocalEdge &e : adj[static_cast<std::size_t>(bit)]) {
            around += e.coupling * spin[static_cast<std::size_t>(e.other)];
        }
        energy -= 2.0 * spin[static_cast<std::size_t>(bit)] * around;
        spin[static_cast<std::size_t>(bit)] = -spin[static_cast<std::size_t>(bit)];

        if (energy < best_energy - 1e-12 ||
            (std::abs(energy - best_energy) <= 1e-12 && lex_less(gray, best_mask))) {
            best_energy = energy;
            best_mask = gray;
        }
    }

    GroundState out;
    out.spins = mask_to_spins(best_mask, n);
    // Recompute from scratch: incremental updates drift at 1e-15 scale.
    double exact = 0.0;
    for (int i = 0; i < n; ++i) {
        exact += field[static_cast<std::size_t>(i)] * out.spins[static_cast<std::size_t>(i)];
        for (const LocalEdge &e : adj[static_cast<std::size_t>(i)]) {
            if (e.other > i) {
                exact += e.coupling * out.spins[static_cast<std::size_t>(i)] *
                         out.spins[static_cast<std::size_t>(e.other)];
            }
        }
    }
    out.energy = exact;
    return out;
}

}  // namespace

GroundState exact_ground_energy(const IsingModel &model) {
    model.validate();
    if (model.nodes > 26) {
        throw std::invalid_argument("exact ground energy limited to 26 spins");
    }
    std::vector<int> all(static_cast<std::size_t>(model.nodes));
    for (int i = 0; i < model.nodes; ++i) {
        all[static_cast<std::size_t>(i)] = i;
    }
    return brute_force_subset(model, all);
}

BlockDecomposition block_decompose(const IsingModel &model, int block_size) {
    model.validate();
    if (!model.placement) {
        throw std::invalid_argument("block decomposition needs a placement");
    }
    if (block_size < 1) {
        throw std::invalid_argument("block size must be >= 1");
    }
    BlockDecomposition out;
    out.block_size = block_size;
    out.blocks_x = (model.lattice_x + block_size - 1) / block_size;
    out.blocks_y = (model.lattice_y + block_size - 1) / block_size;
    out.blocks.resize(static_cast<std::size_t>(out.blocks_x) *
                      static_cast<std::size_t>(out.blocks_y));
    out.block_of_spin.resize(static_cast<std::size_t>(model.nodes));
    for (int i = 0; i < model.nodes; ++i) {
        Coord c = (*model.placement)[static_cast<std::size_t>(i)];
        int b = (c.y / block_size) * out.blocks_x + (c.x / block_size);
        out.block_of_spin[static_cast<std::size_t>(i)] = b;
        out.blocks[static_cast<std::size_t>(b)].push_back(i);
    }
    for (std::size_t e = 0; e < model.edges.size(); ++e) {
        const auto &edge = model.edges[e];
        if (out.block_of_spin[static_cast<std::size_t>(edge.i)] ==
            out.block_of_spin[static_cast<std::size_t>(edge.j)]) {
            out.kept_edges.push_back(e);
        } else {
            out.dropped_edges.push_back(e);
        }
    }
    return out;
}

ApproxGroundEnergy approx_ground_energy_blocks(const IsingModel &model, int block_size) {
    BlockDecomposition decomposition = block_decompose(model, block_size);
    for (const auto &block : decomposition.blocks) {
        if (block.size() > 26) {
            throw std::invalid_argument("block too large for brute force (over 26 spins)");
        }
    }

    // Restrict the model to kept edges, then minimize block by block.
    IsingModel pruned = model;
    pruned.edges.clear();
    for (std::size_t e : decomposition.kept_edges) {
        pruned.edges.push_back(model.edges[e]);
    }

    ApproxGroundEnergy out;
    out.block_size = block_size;
    out.dropped_edge_count = decomposition.dropped_edges.size();
    out.spins.assign(static_cast<std::size_t>(model.nodes), 1);
    double total = 0.0;
    for (const auto &block : decomposition.blocks) {
        if (block.empty()) {
            continue;
        }
        GroundState g = brute_force_subset(pruned, block);
        total += g.energy;
        for (std::size_t i = 0; i < block.size(); ++i) {
            out.spins[static_cast<std::size_t>(block[i])] = g.spins[i];
        }
    }
    out.energy = total;

    double j_max = model.max_abs_coupling();
    double n = static_cast<double>(model.nodes);
    double L = static_cast<double>(block_size);
    int c = model.max_edge_length();
    if (c <= 1) {
        out.error_bound = 4.0 * j_max * n / L;
    } else {
        out.error_bound = 8.0 * static_cast<double>(c) * j_max *
                          static_cast<double>(model.max_degree()) * n / L;
    }
    return out;
}

ApproxGroundEnergy approx_ground_energy(const IsingModel &model, double eps) {
    if (eps <= 0.0) {
        throw std::invalid_argument("precision must be positive");
    }
    if (!model.placement) {
        throw std::invalid_argument("block approximation needs a placement");
    }
    double j_max = model.max_abs_coupling();
    int c = model.max_edge_length();
    double raw = (c <= 1) ? 4.0 * j_max / eps : 8.0 * static_cast<double>(c) * j_max / eps;
    int block = std::max(1, static_cast<int>(std::ceil(raw)));
    int side = std::max(model.lattice_x, model.lattice_y);
    block = std::min(block, side);  // one block already makes E0' exact
    if (static_cast<long>(block) * block > 26) {
        int max_block = 5;  // largest L with L^2 <= 26
        double eps_floor = (c <= 1) ? 4.0 * j_max / max_block
                                    : 8.0 * static_cast<double>(c) * j_max / max_block;
        if (side > max_block) {
            throw std::invalid_argument(
                "requested precision needs blocks beyond the brute-force cap; smallest "
                "feasible eps is about " +
                std::to_string(eps_floor));
        }
        block = side;
    }
    return approx_ground_energy_blocks(model, block);
}

Observable energy_observable(const IsingModel &model) {
    model.validate();
    if (model.nodes > 64) {
        throw std::invalid_argument("Pauli observable limited to 64 spins");
    }
    Observable obs;
    uint32_t n = static_cast<uint32_t>(model.nodes);
    for (const auto &e : model.edges) {
        PauliString s(n);
        s.set_letter(static_cast<uint32_t>(e.i), Pauli::Z);
        s.set_letter(static_cast<uint32_t>(e.j), Pauli::Z);
        obs.terms.push_back(Observable::Term{e.coupling, s});
    }
    for (int i = 0; i < model.nodes; ++i) {
        if (model.fields[static_cast<std::size_t>(i)] != 0.0) {
            obs.terms.push_back(Observable::Term{
                model.fields[static_cast<std::size_t>(i)],
                PauliString::single(n, static_cast<uint32_t>(i), Pauli::Z)});
        }
    }
    obs.validate();
    return obs;
}

}  // namespace pauliflow
