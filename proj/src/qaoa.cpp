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

#include "pauliflow/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace pauliflow {

namespace {

constexpr double kAngleSnapTolerance = 1e-12;

/// Reduce an Rz angle to a gate: identity (nullopt), Clifford S/Z/SDG, or a
/// generic phase rotation.
std::optional<Gate> rz_gate(double angle, Coord where) {
    double reduced = std::fmod(angle, 2.0 * M_PI);
    if (reduced < 0.0) {
        reduced += 2.0 * M_PI;
    }
    auto near = [&](double target) { return std::abs(reduced - target) < kAngleSnapTolerance; };
    if (near(0.0) || near(2.0 * M_PI)) {
        return std::nullopt;  // global phase only
    }
    if (near(M_PI / 2.0)) {
        return Gate::clifford(CliffordGate::S, {where});
    }
    if (near(M_PI)) {
        return Gate::clifford(CliffordGate::Z, {where});
    }
    if (near(3.0 * M_PI / 2.0)) {
        return Gate::clifford(CliffordGate::Sdg, {where});
    }
    return Gate::generic(mat_rz(angle), {where});
}

bool adjacent(Coord a, Coord b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1;
}

}  // namespace

Embedding Embedding::native(const IsingModel &model) {
    model.validate();
    if (!model.placement) {
        throw std::invalid_argument("native embedding needs a placed model");
    }
    if (model.max_edge_length() > 1) {
        throw std::invalid_argument("native embedding requires nearest-neighbor edges only");
    }
    Embedding e;
    e.placement = *model.placement;
    e.lattice_x = model.lattice_x;
    e.lattice_y = model.lattice_y;
    return e;
}

Embedding Embedding::linear_swap_network(const IsingModel &model) {
    model.validate();
    Embedding e;
    e.lattice_x = model.nodes;
    e.lattice_y = 1;
    for (int i = 0; i < model.nodes; ++i) {
        e.placement.push_back(Coord{i, 0});
    }
    // Odd-even transposition: n rounds bring every pair adjacent once.
    for (int round = 0; round < model.nodes; ++round) {
        Stage stage;
        std::vector<std::pair<Coord, Coord>> layer;
        for (int x = round % 2; x + 1 < model.nodes; x += 2) {
            layer.emplace_back(Coord{x, 0}, Coord{x + 1, 0});
        }
        if (layer.empty()) {
            continue;
        }
        stage.swap_layers.push_back(layer);
        e.stages.push_back(std::move(stage));
    }
    return e;
}

int QaoaLayout::max_computing_depth() const {
    if (computing_depth.empty()) {
        return 0;
    }
    return *std::max_element(computing_depth.begin(), computing_depth.end());
}

QaoaBuild build_qaoa(const IsingModel &model, const QaoaParams &params,
                     const Embedding &embedding, QaoaMixer mixer) {
    model.validate();
    if (params.gammas.size() != params.alphas.size() || params.gammas.empty()) {
        throw std::invalid_argument("need equal nonzero counts of gamma and alpha parameters");
    }
    if (static_cast<int>(embedding.placement.size()) != model.nodes) {
        throw std::invalid_argument("embedding placement must cover every spin");
    }
    const int m = static_cast<int>(params.gammas.size());

    QaoaBuild out;
    out.circuit = Circuit(embedding.lattice_x, embedding.lattice_y);
    out.layout.variational_layers = m;
    out.layout.gammas = params.gammas;
    out.layout.alphas = params.alphas;

    std::vector<Coord> placement = embedding.placement;  // spin -> coordinate

    auto push_layer = [&](std::vector<Gate> layer, bool permuting) {
        out.circuit.layers.push_back(std::move(layer));
        out.layout.layer_is_permuting.push_back(permuting);
    };

    for (int j = 0; j < m; ++j) {
        const double gamma = params.gammas[static_cast<std::size_t>(j)];
        const double alpha = params.alphas[static_cast<std::size_t>(j)];
        int computing_layers = 0;
        int swap_layers = 0;
        std::vector<bool> realized(model.edges.size(), false);

        // Field rotations e^{-i gamma b_i Z_i} at each spin's current spot.
        {
            std::vector<Gate> layer;
            for (int i = 0; i < model.nodes; ++i) {
                double b = model.fields[static_cast<std::size_t>(i)];
                if (b == 0.0) {
                    continue;
                }
                if (auto g = rz_gate(2.0 * gamma * b, placement[static_cast<std::size_t>(i)])) {
                    layer.push_back(std::move(*g));
                }
            }
            if (!layer.empty()) {
                push_layer(std::move(layer), false);
                ++computing_layers;
            }
        }

        const std::size_t stage_count = embedding.stages.size();
        for (std::size_t stage = 0; stage <= stage_count; ++stage) {
            // Realize every currently adjacent, not-yet-realized edge.
            std::vector<std::size_t> ready;
            for (std::size_t e = 0; e < model.edges.size(); ++e) {
                if (realized[e]) continue;
                Coord a = placement[static_cast<std::size_t>(model.edges[e].i)];
                Coord b = placement[static_cast<std::size_t>(model.edges[e].j)];
                if (adjacent(a, b)) {
                    ready.push_back(e);
                }
            }
            // Greedy packing into groups with disjoint supports.
            while (!ready.empty()) {
                std::set<Coord> used;
                std::vector<std::size_t> group;
                std::vector<std::size_t> rest;
                for (std::size_t e : ready) {
                    Coord a = placement[static_cast<std::size_t>(model.edges[e].i)];
                    Coord b = placement[static_cast<std::size_t>(model.edges[e].j)];
                    if (used.count(a) == 0 && used.count(b) == 0) {
                        used.insert(a);
                        used.insert(b);
                        group.push_back(e);
                    } else {
                        rest.push_back(e);
                    }
                }
                std::vector<Gate> entangle;
                std::vector<Gate> rotate;
                for (std::size_t e : group) {
                    Coord a = placement[static_cast<std::size_t>(model.edges[e].i)];
                    Coord b = placement[static_cast<std::size_t>(model.edges[e].j)];
                    entangle.push_back(Gate::clifford(CliffordGate::CNOT, {a, b}));
                    if (auto g = rz_gate(2.0 * gamma * model.edges[e].coupling, b)) {
                        rotate.push_back(std::move(*g));
                    }
                    realized[e] = true;
                }
                push_layer(entangle, false);
                ++computing_layers;
                if (!rotate.empty()) {
                    push_layer(std::move(rotate), false);
                    ++computing_layers;
                }
                std::vector<Gate> disentangle;
                for (std::size_t e : group) {
                    Coord a = placement[static_cast<std::size_t>(model.edges[e].i)];
                    Coord b = placement[static_cast<std::size_t>(model.edges[e].j)];
                    disentangle.push_back(Gate::clifford(CliffordGate::CNOT, {a, b}));
                }
                push_layer(std::move(disentangle), false);
                ++computing_layers;
                ready = std::move(rest);
            }

            if (stage == stage_count) {
                break;
            }
            // Permuting block: emit SWAP layers and track the placement.
            for (const auto &swap_layer : embedding.stages[stage].swap_layers) {
                std::vector<Gate> layer;
                for (const auto &[a, b] : swap_layer) {
                    layer.push_back(Gate::clifford(CliffordGate::SWAP, {a, b}));
                }
                push_layer(std::move(layer), true);
                ++swap_layers;
                for (Coord &c : placement) {
                    for (const auto &[a, b] : swap_layer) {
                        if (c == a) {
                            c = b;
                        } else if (c == b) {
                            c = a;
                        }
                    }
                }
            }
        }

        for (std::size_t e = 0; e < model.edges.size(); ++e) {
            if (!realized[e]) {
                throw std::invalid_argument(
                    "embedding never makes edge (" + std::to_string(model.edges[e].i) + "," +
                    std::to_string(model.edges[e].j) + ") adjacent in variational layer " +
                    std::to_string(j + 1));
            }
        }

        if (mixer == QaoaMixer::transverse_x && alpha != 0.0) {
            std::vector<Gate> layer;
            for (int y = 0; y < out.circuit.ly; ++y) {
                for (int x = 0; x < out.circuit.lx; ++x) {
                    layer.push_back(Gate::generic(mat_rx_exponent(alpha), {Coord{x, y}}));
                }
            }
            push_layer(std::move(layer), false);
            ++computing_layers;
        }

        out.layout.computing_depth.push_back(computing_layers);
        if (j == 0) {
            out.layout.swap_depth = swap_layers;
        } else if (out.layout.swap_depth != swap_layers) {
            // Identical schedule each layer keeps lambda well defined.
            out.layout.swap_depth = std::min(out.layout.swap_depth, swap_layers);
        }
    }

    out.layout.final_qubit_of_spin.resize(static_cast<std::size_t>(model.nodes));
    for (int i = 0; i < model.nodes; ++i) {
        out.layout.final_qubit_of_spin[static_cast<std::size_t>(i)] =
            out.circuit.qubit_index(placement[static_cast<std::size_t>(i)]);
    }
    return out;
}

double qaoa_sparseness_bound(const QaoaLayout &layout) {
    if (layout.swap_depth == 0) {
        throw std::domain_error("no SWAP layers; the sparseness bound is inapplicable");
    }
    double best = 0.0;
    for (int c : layout.computing_depth) {
        best = std::max(best, static_cast<double>(c) * std::exp2(static_cast<double>(c)));
    }
    return best / static_cast<double>(layout.swap_depth);
}

Observable energy_observable_at_output(const IsingModel &model, const QaoaLayout &layout) {
    if (static_cast<int>(layout.final_qubit_of_spin.size()) != model.nodes) {
        throw std::invalid_argument("layout does not match model");
    }
    Observable base = energy_observable(model);
    // Re-map each spin index through its final qubit position.
    uint32_t n = base.terms.front().string.n;
    Observable out;
    for (const Observable::Term &t : base.terms) {
        PauliString mapped(n);
        for (uint32_t q = 0; q < n; ++q) {
            if (t.string.letter(q) != Pauli::I) {
                mapped.set_letter(layout.final_qubit_of_spin[q], t.string.letter(q));
            }
        }
        out.terms.push_back(Observable::Term{t.coeff, mapped});
    }
    out.validate();
    return out;
}

DispatchReport dispatch_energy_estimate(const IsingModel &model, const QaoaBuild &build,
                                 const DispatchOptions &options) {
    DispatchReport report;
    report.lambda = static_cast<double>(build.layout.swap_depth);

    if (report.lambda <= options.lambda_threshold) {
        // Ties go to the classical approximation.
        report.branch = 'a';
        ApproxGroundEnergy approx = approx_ground_energy(model, options.epsilon);
        report.estimate = approx.energy;
        report.bound = approx.error_bound;
        report.note = "block approximation with L = " + std::to_string(approx.block_size);
        return report;
    }

    report.branch = 'b';
    report.q = qaoa_sparseness_bound(build.layout);
    report.p_threshold = 1.0 - std::exp2(-report.q);
    const Circuit &circuit = build.circuit;
    const int n = circuit.n_qubits();
    const int d = circuit.depth();
    const int max_weight = n * (d + 1);

    int cutoff = options.ell_fallback;
    if (options.p > report.p_threshold) {
        report.guaranteed = true;
        cutoff = choose_cutoff(n, d, options.epsilon, options.p, report.q, options.a);
        if (cutoff > max_weight) {
            cutoff = max_weight;  // already exact
        }
    } else {
        report.note = "no guarantee: p at or below 1 - 1/2^Q; best-effort at the fallback cutoff";
    }
    report.cutoff = cutoff;

    CompiledCircuit compiled(circuit);
    Observable obs = energy_observable_at_output(model, build.layout);
    ProductState plus = ProductState::all_plus(static_cast<uint32_t>(n));
    EnumerateOptions run;
    run.cutoff = cutoff;
    run.threads = options.threads;
    TruncatedExpectation value =
        expectation_truncated(compiled, obs, plus, options.p, run, report.q);
    report.estimate = value.value;
    report.log_bound = value.log_per_term_bound;
    if (value.per_term_bound) {
        double coeff_sum = 0.0;
        for (const Observable::Term &t : obs.terms) {
            coeff_sum += std::abs(t.coeff);
        }
        report.bound = *value.per_term_bound * coeff_sum;
    } else {
        report.bound = std::numeric_limits<double>::infinity();
    }
    return report;
}

}  // namespace pauliflow
