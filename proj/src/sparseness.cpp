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

#include "pauliflow/sparseness.hpp"

#include <algorithm>
#include <stdexcept>

namespace pauliflow {

namespace {

struct PointGraph {
    int lx, ly, slabs;  // slabs = depth + 1
    std::vector<bool> magic;
    std::vector<std::vector<int>> adj;

    int id(int x, int y, int t) const { return (t * ly + y) * lx + x; }
    SpacetimePoint point(int id_) const {
        int t = id_ / (lx * ly);
        int rem = id_ % (lx * ly);
        return SpacetimePoint{rem % lx, rem / lx, t};
    }
    int size() const { return lx * ly * slabs; }
};

PointGraph build_point_graph(const Circuit &circuit) {
    PointGraph g;
    g.lx = circuit.lx;
    g.ly = circuit.ly;
    g.slabs = circuit.depth() + 1;
    g.magic.assign(g.size(), false);
    for (const auto &[layer, coords] : magic_census(circuit)) {
        for (Coord c : coords) {
            g.magic[g.id(c.x, c.y, layer)] = true;
        }
    }
    g.adj.resize(g.size());
    const int steps[][3] = {
        {1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0},  {0, 0, 1},   {0, 0, -1},
        {1, 0, 1},  {-1, 0, 1}, {0, 1, 1},  {0, -1, 1},  {1, 0, -1},  {-1, 0, -1},
        {0, 1, -1}, {0, -1, -1}};
    for (int t = 0; t < g.slabs; ++t) {
        for (int y = 0; y < g.ly; ++y) {
            for (int x = 0; x < g.lx; ++x) {
                for (const auto &s : steps) {
                    int nx = x + s[0], ny = y + s[1], nt = t + s[2];
                    if (nx < 0 || nx >= g.lx || ny < 0 || ny >= g.ly || nt < 0 ||
                        nt >= g.slabs) {
                        continue;
                    }
                    g.adj[g.id(x, y, t)].push_back(g.id(nx, ny, nt));
                }
            }
        }
    }
    return g;
}

struct Enumerator {
    const PointGraph &graph;
    double q;
    int k;
    int cap;

    std::vector<int> subset;
    int magic_count = 0;
    std::vector<uint8_t> state;  // 0 free, 1 in subset, 2 banned
    std::optional<std::vector<int>> witness;

    Enumerator(const PointGraph &g, double q_, int k_, int cap_)
        : graph(g), q(q_), k(k_), cap(cap_), state(g.size(), 0) {}

    bool violated() const {
        return static_cast<int>(subset.size()) >= k &&
               static_cast<double>(magic_count) > q * static_cast<double>(subset.size());
    }

    // Connected supersets of the current subset avoiding banned points.
    // Candidates are neighbors of the subset; each candidate is either taken
    // (recurse) or banned for the rest of this branch, so every connected
    // set is produced exactly once per root.
    bool extend(const std::vector<int> &candidates) {
        if (violated()) {
            witness = subset;
            return true;
        }
        if (static_cast<int>(subset.size()) >= cap) {
            return false;
        }
        std::vector<int> banned_here;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            int v = candidates[i];
            if (state[v] != 0) {
                continue;
            }
            state[v] = 1;
            subset.push_back(v);
            magic_count += graph.magic[v] ? 1 : 0;

            std::vector<int> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                if (state[candidates[j]] == 0) {
                    next.push_back(candidates[j]);
                }
            }
            for (int u : graph.adj[v]) {
                if (state[u] == 0 &&
                    std::find(next.begin(), next.end(), u) == next.end()) {
                    next.push_back(u);
                }
            }
            bool stop = extend(next);

            magic_count -= graph.magic[v] ? 1 : 0;
            subset.pop_back();
            state[v] = 2;
            banned_here.push_back(v);
            if (stop) {
                for (int u : banned_here) state[u] = 0;
                return true;
            }
        }
        for (int u : banned_here) state[u] = 0;
        return false;
    }

    bool run_root(int root) {
        state[root] = 1;
        subset.push_back(root);
        magic_count += graph.magic[root] ? 1 : 0;
        std::vector<int> candidates;
        for (int u : graph.adj[root]) {
            if (state[u] == 0) {
                candidates.push_back(u);
            }
        }
        bool stop = extend(candidates);
        magic_count -= graph.magic[root] ? 1 : 0;
        subset.pop_back();
        state[root] = 2;  // stays banned for later roots
        return stop;
    }
};

}  // namespace

SparsenessReport check_sparseness(const Circuit &circuit, double q, int k, int subset_size_cap) {
    if (k < 1) {
        throw std::invalid_argument("sparseness parameter k must be >= 1");
    }
    if (subset_size_cap < k) {
        throw std::invalid_argument("subset size cap must be at least k");
    }

    PointGraph graph = build_point_graph(circuit);
    SparsenessReport report;
    report.q = q;
    report.k = k;
    report.point_count = graph.size();

    bool any_magic = std::any_of(graph.magic.begin(), graph.magic.end(), [](bool b) { return b; });
    if (!any_magic) {
        report.status = SparsenessStatus::certified;
        report.max_size_checked = graph.size();
        report.note = "no magic gates; every subset has fraction 0";
        return report;
    }
    if (q >= 1.0) {
        report.status = SparsenessStatus::certified;
        report.max_size_checked = graph.size();
        report.note = "fraction can never exceed 1";
        return report;
    }

    int cap = std::min(subset_size_cap, graph.size());
    report.max_size_checked = cap;

    Enumerator e(graph, q, k, cap);
    for (int root = 0; root < graph.size(); ++root) {
        if (e.run_root(root)) {
            break;
        }
    }

    if (e.witness) {
        report.status = SparsenessStatus::refuted;
        std::vector<SpacetimePoint> pts;
        int magic = 0;
        for (int v : *e.witness) {
            pts.push_back(graph.point(v));
            magic += graph.magic[v] ? 1 : 0;
        }
        report.witness = pts;
        report.witness_fraction = static_cast<double>(magic) / static_cast<double>(pts.size());
    } else if (cap >= graph.size()) {
        report.status = SparsenessStatus::certified;
    } else {
        report.status = SparsenessStatus::inconclusive;
        report.note = "no violation up to the size cap; larger subsets unchecked";
    }
    return report;
}

bool verify_sparseness_witness(const Circuit &circuit, double q,
                               const std::vector<SpacetimePoint> &witness, double *fraction) {
    if (witness.empty()) {
        return false;
    }
    PointGraph graph = build_point_graph(circuit);
    // Connectivity by BFS over the witness points.
    std::vector<int> ids;
    for (const SpacetimePoint &p : witness) {
        if (p.x < 0 || p.x >= graph.lx || p.y < 0 || p.y >= graph.ly || p.t < 0 ||
            p.t >= graph.slabs) {
            return false;
        }
        ids.push_back(graph.id(p.x, p.y, p.t));
    }
    std::vector<bool> in_set(graph.size(), false), seen(graph.size(), false);
    for (int v : ids) in_set[v] = true;
    std::vector<int> stack{ids[0]};
    seen[ids[0]] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : graph.adj[v]) {
            if (in_set[u] && !seen[u]) {
                seen[u] = true;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    if (visited != ids.size()) {
        return false;
    }
    int magic = 0;
    for (int v : ids) {
        magic += graph.magic[v] ? 1 : 0;
    }
    double f = static_cast<double>(magic) / static_cast<double>(ids.size());
    if (fraction != nullptr) {
        *fraction = f;
    }
    return f > q;
}

}  // namespace pauliflow
