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

#include "pauliflow/path_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "pauliflow/compensated.hpp"
#include "pauliflow/log.hpp"

namespace pauliflow {

namespace {

uint32_t pack_letters(const PauliString &s, const std::vector<uint32_t> &qubits) {
    uint32_t code = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        code |= static_cast<uint32_t>(s.letter(qubits[i])) << (2 * i);
    }
    return code;
}

void unpack_letters(uint32_t code, const std::vector<uint32_t> &qubits, PauliString &s) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        s.set_letter(qubits[i], static_cast<Pauli>((code >> (2 * i)) & 3u));
    }
}

}  // namespace

CompiledCircuit::CompiledCircuit(const Circuit &circuit) {
    auto violations = validate(circuit);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid circuit: layer " +
                                    std::to_string(violations.front().layer) + ": " +
                                    violations.front().message);
    }
    if (circuit.n_qubits() > 64) {
        throw std::invalid_argument("path engine supports at most 64 qubits");
    }
    n_ = static_cast<uint32_t>(circuit.n_qubits());

    for (const auto &layer : circuit.layers) {
        std::vector<CompiledGate> compiled_layer;
        for (const Gate &g : layer) {
            CompiledGate cg;
            for (Coord c : g.support) {
                cg.qubits.push_back(circuit.qubit_index(c));
                cg.support_mask |= uint64_t{1} << circuit.qubit_index(c);
            }
            switch (g.kind) {
                case GateKind::T:
                    cg.action = CompiledGate::Action::t;
                    cg.magic = true;
                    break;
                case GateKind::Generic: {
                    cg.action = CompiledGate::Action::generic;
                    const std::size_t d = cg.qubits.size();
                    const uint32_t combos = uint32_t{1} << (2 * d);
                    std::vector<uint32_t> local(d);
                    for (std::size_t i = 0; i < d; ++i) {
                        local[i] = static_cast<uint32_t>(i);
                    }
                    cg.table.resize(combos);
                    bool branches = false;
                    for (uint32_t code = 0; code < combos; ++code) {
                        PauliString probe(static_cast<uint32_t>(d));
                        for (std::size_t i = 0; i < d; ++i) {
                            probe.set_letter(static_cast<uint32_t>(i),
                                             static_cast<Pauli>((code >> (2 * i)) & 3u));
                        }
                        auto terms = conjugate_generic(*g.matrix, local, probe);
                        for (const SignedPauliTerm &t : terms) {
                            uint32_t out_code = 0;
                            for (std::size_t i = 0; i < d; ++i) {
                                out_code |= static_cast<uint32_t>(
                                                t.string.letter(static_cast<uint32_t>(i)))
                                            << (2 * i);
                            }
                            cg.table[code].emplace_back(t.coeff, out_code);
                        }
                        if (code != 0 && cg.table[code].size() > 1) {
                            branches = true;
                        }
                    }
                    cg.magic = branches && d == 1;
                    break;
                }
                default:
                    cg.action = CompiledGate::Action::clifford;
                    switch (g.kind) {
                        case GateKind::H: cg.cliff = CliffordGate::H; break;
                        case GateKind::S: cg.cliff = CliffordGate::S; break;
                        case GateKind::Sdg: cg.cliff = CliffordGate::Sdg; break;
                        case GateKind::X: cg.cliff = CliffordGate::X; break;
                        case GateKind::Y: cg.cliff = CliffordGate::Y; break;
                        case GateKind::Z: cg.cliff = CliffordGate::Z; break;
                        case GateKind::CNOT: cg.cliff = CliffordGate::CNOT; break;
                        case GateKind::CZ: cg.cliff = CliffordGate::CZ; break;
                        case GateKind::SWAP: cg.cliff = CliffordGate::SWAP; break;
                        default: throw std::logic_error("unexpected gate kind");
                    }
                    break;
            }
            compiled_layer.push_back(std::move(cg));
        }
        layers_.push_back(std::move(compiled_layer));
    }
}

namespace {

using CompiledGate = CompiledCircuit::CompiledGate;

/// One in-flight branch of the backward walk.
struct Node {
    PauliString string;   // s_level
    int level = 0;        // strings s_0..s_{level-1} still to come
    double coeff = 1.0;
    int64_t weight = 0;   // |s_d| + ... + |s_level|
    int magic = 0;
};

struct Walker {
    const CompiledCircuit &cc;
    const ProductState *state;
    int64_t cutoff;
    uint64_t max_paths;
    const std::function<void(const PathVisit &)> *visitor;

    // When set, branches reaching this level are collected instead of
    // walked further (used to build the parallel frontier).
    int collect_level = -1;
    std::vector<Node> *collected = nullptr;

    PathStats stats{};
    std::vector<PauliString> stack{};

    void leaf(const Node &node) {
        ++stats.total_paths;
        if (max_paths != 0 && stats.total_paths > max_paths) {
            throw PathExplosionError(stats.total_paths, max_paths);
        }
        int w = static_cast<int>(node.weight);
        ++stats.paths_by_weight[w];
        stats.magic_encounters_total += static_cast<uint64_t>(node.magic);
        auto [it, inserted] = stats.max_magic_by_weight.try_emplace(w, node.magic);
        if (!inserted && node.magic > it->second) {
            it->second = node.magic;
        }
        if (w > stats.max_weight) {
            stats.max_weight = w;
        }
        if (visitor != nullptr) {
            double overlap = state != nullptr ? product_state_expectation(*state, node.string) : 1.0;
            if (overlap != 0.0) {
                PathVisit visit;
                visit.strings = std::span<const PauliString>(stack.data(), stack.size());
                visit.amplitude = node.coeff;
                visit.f = node.coeff * overlap;
                visit.weight = w;
                visit.magic_encounters = node.magic;
                (*visitor)(visit);
            }
        }
    }

    void descend(const Node &node) {
        if (node.level == collect_level && collected != nullptr) {
            collected->push_back(node);
            return;
        }
        // Every remaining string must be non-identity; at level 0 this is
        // the final weight check itself.
        if (node.weight + node.level > cutoff) {
            ++stats.pruned;
            return;
        }
        if (node.level == 0) {
            leaf(node);
            return;
        }
        apply_gates(node, 0);
    }

    void apply_gates(Node node, std::size_t gate_index) {
        const auto &layer = cc.layers()[static_cast<std::size_t>(node.level - 1)];
        for (std::size_t gi = gate_index; gi < layer.size(); ++gi) {
            const CompiledGate &g = layer[gi];
            if (((node.string.x_mask | node.string.z_mask) & g.support_mask) == 0) {
                continue;  // gate meets only identities
            }
            if (g.magic) {
                ++node.magic;
            }
            switch (g.action) {
                case CompiledGate::Action::clifford: {
                    SignedPauliTerm t = conjugate_clifford(g.cliff, g.qubits, node.string);
                    node.string = t.string;
                    node.coeff *= t.coeff;
                    break;
                }
                case CompiledGate::Action::t: {
                    Pauli letter = node.string.letter(g.qubits[0]);
                    if (letter == Pauli::Z) {
                        break;  // commutes
                    }
                    auto terms = branch_t(g.qubits[0], node.string);
                    for (const SignedPauliTerm &t : terms) {
                        Node branch = node;
                        branch.string = t.string;
                        branch.coeff = node.coeff * t.coeff;
                        apply_gates(std::move(branch), gi + 1);
                    }
                    return;
                }
                case CompiledGate::Action::generic: {
                    uint32_t code = pack_letters(node.string, g.qubits);
                    const auto &branches = g.table[code];
                    if (branches.size() == 1) {
                        node.coeff *= branches[0].first;
                        unpack_letters(branches[0].second, g.qubits, node.string);
                        break;
                    }
                    for (const auto &[c, out_code] : branches) {
                        Node branch = node;
                        branch.coeff = node.coeff * c;
                        unpack_letters(out_code, g.qubits, branch.string);
                        apply_gates(std::move(branch), gi + 1);
                    }
                    return;
                }
            }
        }
        // Layer complete: node.string is s_{level-1}.
        Node next;
        next.string = node.string;
        next.level = node.level - 1;
        next.coeff = node.coeff;
        next.weight = node.weight + weight(node.string);
        next.magic = node.magic;
        stack.push_back(next.string);
        descend(next);
        stack.pop_back();
    }

    void run(const Node &root) {
        stack.clear();
        stack.push_back(root.string);
        descend(root);
        stack.pop_back();
    }

    /// Resume from a frontier node whose prefix strings are not retained;
    /// visitors needing full paths must run serial.
    void resume(const Node &node) {
        stack.clear();
        descend(node);
    }
};

Node make_root(const CompiledCircuit &cc, const PauliString &obs) {
    if (obs.n != cc.n()) {
        throw std::invalid_argument("observable qubit count does not match circuit");
    }
    if (obs.is_identity()) {
        throw std::invalid_argument("observable must be non-identity");
    }
    Node root;
    root.string = obs;
    root.level = cc.depth();
    root.coeff = 1.0;
    root.weight = weight(obs);
    root.magic = 0;
    return root;
}

/// Expands whole layers breadth-first until at least `target` independent
/// subtrees exist (or the walk bottoms out). Deterministic.
std::vector<Node> build_frontier(const CompiledCircuit &cc, const Node &root, int64_t cutoff,
                                 std::size_t target) {
    std::vector<Node> frontier{root};
    while (frontier.size() < target) {
        int top_level = 0;
        for (const Node &n : frontier) {
            top_level = std::max(top_level, n.level);
        }
        if (top_level == 0) {
            break;
        }
        std::vector<Node> next;
        for (const Node &n : frontier) {
            if (n.level < top_level) {
                next.push_back(n);
                continue;
            }
            Walker w{cc, nullptr, cutoff, 0, nullptr};
            w.collect_level = n.level - 1;
            w.collected = &next;
            w.resume(n);
            // Pruned branches disappear here; stats for them are not
            // recoverable from the frontier, so parallel runs recount
            // pruning per subtree only.
        }
        frontier = std::move(next);
        if (frontier.empty()) {
            break;
        }
    }
    return frontier;
}

}  // namespace

std::vector<SignedPauliTerm> CompiledCircuit::layer_branches(int layer_index,
                                                             const PauliString &s) const {
    if (layer_index < 0 || layer_index >= depth()) {
        throw std::out_of_range("layer index out of range");
    }
    std::vector<SignedPauliTerm> current{SignedPauliTerm{1.0, s}};
    for (const CompiledGate &g : layers_[static_cast<std::size_t>(layer_index)]) {
        std::vector<SignedPauliTerm> next;
        for (const SignedPauliTerm &term : current) {
            if (((term.string.x_mask | term.string.z_mask) & g.support_mask) == 0) {
                next.push_back(term);
                continue;
            }
            switch (g.action) {
                case CompiledGate::Action::clifford: {
                    SignedPauliTerm t = conjugate_clifford(g.cliff, g.qubits, term.string);
                    next.push_back(SignedPauliTerm{term.coeff * t.coeff, t.string});
                    break;
                }
                case CompiledGate::Action::t: {
                    for (const SignedPauliTerm &t : branch_t(g.qubits[0], term.string)) {
                        next.push_back(SignedPauliTerm{term.coeff * t.coeff, t.string});
                    }
                    break;
                }
                case CompiledGate::Action::generic: {
                    uint32_t code = pack_letters(term.string, g.qubits);
                    for (const auto &[c, out_code] : g.table[code]) {
                        PauliString out = term.string;
                        unpack_letters(out_code, g.qubits, out);
                        next.push_back(SignedPauliTerm{term.coeff * c, out});
                    }
                    break;
                }
            }
        }
        current = std::move(next);
    }
    return current;
}

void PathStats::merge(const PathStats &other) {
    for (const auto &[w, c] : other.paths_by_weight) {
        paths_by_weight[w] += c;
    }
    total_paths += other.total_paths;
    magic_encounters_total += other.magic_encounters_total;
    for (const auto &[w, m] : other.max_magic_by_weight) {
        auto [it, inserted] = max_magic_by_weight.try_emplace(w, m);
        if (!inserted && m > it->second) {
            it->second = m;
        }
    }
    max_weight = std::max(max_weight, other.max_weight);
    pruned += other.pruned;
}

uint64_t PathStats::paths_up_to(int ell) const {
    uint64_t total = 0;
    for (const auto &[w, c] : paths_by_weight) {
        if (w <= ell) {
            total += c;
        }
    }
    return total;
}

uint64_t PathStats::paths_between(int k, int ell) const {
    uint64_t total = 0;
    for (const auto &[w, c] : paths_by_weight) {
        if (w >= k && w <= ell) {
            total += c;
        }
    }
    return total;
}

PathStats enumerate_paths(const CompiledCircuit &circuit, const PauliString &obs,
                          const ProductState *state, const EnumerateOptions &options,
                          const std::function<void(const PathVisit &)> &visitor) {
    if (state != nullptr && state->n() != circuit.n()) {
        throw std::invalid_argument("state qubit count does not match circuit");
    }
    Node root = make_root(circuit, obs);
    Walker w{circuit, state, options.cutoff, options.max_paths,
             visitor ? &visitor : nullptr};
    w.run(root);
    return std::move(w.stats);
}

namespace {

struct SlotAccumulator {
    std::vector<CompensatedSum> by_weight;
    PathStats stats;
};

/// Runs the walk over deterministic frontier slots, each slot accumulating
/// f-values by weight; slots merge in index order.
FwTable reduce_over_slots(const CompiledCircuit &circuit, const PauliString &obs,
                          const ProductState *state, const EnumerateOptions &options) {
    Node root = make_root(circuit, obs);
    const int64_t cutoff = options.cutoff;
    const std::size_t max_weight_bound =
        static_cast<std::size_t>(circuit.n()) * static_cast<std::size_t>(circuit.depth() + 1);

    int threads = std::max(1, options.threads);
    std::vector<Node> frontier;
    if (threads == 1) {
        frontier.push_back(root);
    } else {
        frontier = build_frontier(circuit, root, cutoff,
                                  static_cast<std::size_t>(threads) * 8);
        PF_DEBUG("parallel reduction over %zu subtree slots with %d threads", frontier.size(),
                 threads);
    }

    std::vector<SlotAccumulator> slots(frontier.size());
    std::atomic<std::size_t> next_slot{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&]() {
        while (true) {
            std::size_t slot = next_slot.fetch_add(1);
            if (slot >= frontier.size() || failed.load()) {
                return;
            }
            try {
                SlotAccumulator &acc = slots[slot];
                acc.by_weight.resize(max_weight_bound + 1);
                std::function<void(const PathVisit &)> visitor = [&](const PathVisit &v) {
                    acc.by_weight[static_cast<std::size_t>(v.weight)].add(v.f);
                };
                Walker w{circuit, state, cutoff, options.max_paths, state ? &visitor : nullptr};
                w.resume(frontier[slot]);
                acc.stats = std::move(w.stats);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };

    if (threads == 1 || frontier.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        int spawn = std::min<int>(threads, static_cast<int>(frontier.size()));
        pool.reserve(static_cast<std::size_t>(spawn));
        for (int i = 0; i < spawn; ++i) {
            pool.emplace_back(work);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failed.load()) {
        std::rethrow_exception(error);
    }

    FwTable out;
    std::vector<CompensatedSum> merged(max_weight_bound + 1);
    for (const SlotAccumulator &acc : slots) {
        for (std::size_t w = 0; w < acc.by_weight.size(); ++w) {
            double v = acc.by_weight[w].value();
            if (v != 0.0) {
                merged[w].add(v);
            }
        }
        out.stats.merge(acc.stats);
    }
    for (std::size_t w = 0; w < merged.size(); ++w) {
        double v = merged[w].value();
        if (v != 0.0 || out.stats.paths_by_weight.count(static_cast<int>(w)) != 0) {
            // Keep structurally present weights even if they cancel to zero.
            out.poly.coeffs[static_cast<int>(w)] = v;
        }
    }
    return out;
}

}  // namespace

FwTable accumulate_fw(const CompiledCircuit &circuit, const PauliString &obs,
                      const ProductState &state, const EnumerateOptions &options) {
    state.validate();
    return reduce_over_slots(circuit, obs, &state, options);
}

PathStats count_paths(const CompiledCircuit &circuit, const PauliString &obs,
                      const EnumerateOptions &options) {
    return reduce_over_slots(circuit, obs, nullptr, options).stats;
}

TruncatedExpectation expectation_truncated(const CompiledCircuit &circuit, const Observable &obs,
                                           const ProductState &state, double p,
                                           const EnumerateOptions &options,
                                           std::optional<double> certified_q) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    obs.validate();

    TruncatedExpectation out;
    out.cutoff = options.cutoff;
    out.p = p;
    out.epsilon_split_factor = std::sqrt(static_cast<double>(obs.term_count()));

    CompensatedSum total;
    for (const Observable::Term &term : obs.terms) {
        FwTable fw = accumulate_fw(circuit, term.string, state, options);
        double value = fw.poly.evaluate_at_noise(p);
        out.term_values.push_back(value);
        total.add(term.coeff * value);
        out.stats.merge(fw.stats);
    }
    out.value = total.value();

    if (certified_q.has_value()) {
        double q = *certified_q;
        double n = static_cast<double>(circuit.n());
        double d = static_cast<double>(circuit.depth());
        double log_ratio = q * std::log(2.0) + std::log1p(-p);
        if (p < 1.0 && options.cutoff != kUnboundedCutoff) {
            double log_bound = std::log(n * d) + static_cast<double>(options.cutoff) * log_ratio;
            out.log_per_term_bound = log_bound;
            if (log_bound < 700.0) {
                out.per_term_bound = std::exp(log_bound);
            }
        } else if (p == 1.0) {
            out.log_per_term_bound = -std::numeric_limits<double>::infinity();
            out.per_term_bound = 0.0;
        }
    }
    return out;
}

int choose_cutoff(int n, int d, double eps, double p, double q, double a) {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("cutoff selection needs n >= 1 and d >= 1");
    }
    if (eps <= 0.0) {
        throw std::invalid_argument("precision must be positive");
    }
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    double damping = std::exp2(q) * (1.0 - p);
    if (damping >= 1.0) {
        throw NoCutoffError(
            "no efficient cutoff guaranteed: requires p above 1 - 1/2^Q");
    }
    double from_precision =
        std::log(static_cast<double>(n) * static_cast<double>(d) / eps) / std::log(1.0 / damping);
    double from_floor = a * std::log(static_cast<double>(n));
    double ell = std::max(from_precision, from_floor);
    return static_cast<int>(std::ceil(std::max(ell, 1.0)));
}

RandomModelStats random_model_statistics(const SlotSkeleton &skeleton, double q,
                                         GatePolicy policy, const PauliString &obs, int trials,
                                         int ell, uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    std::mt19937_64 master(seed);
    CompensatedSum sum;
    CompensatedSum sumsq;
    for (int t = 0; t < trials; ++t) {
        uint64_t trial_seed = master();
        Circuit c = sample_random_model(skeleton, q, policy, trial_seed);
        CompiledCircuit compiled(c);
        EnumerateOptions options;
        options.cutoff = ell;
        PathStats stats = count_paths(compiled, obs, options);
        double count = static_cast<double>(stats.paths_up_to(ell));
        sum.add(count);
        sumsq.add(count * count);
    }
    RandomModelStats out;
    out.trials = static_cast<uint64_t>(trials);
    out.mean = sum.value() / trials;
    double var = std::max(0.0, sumsq.value() / trials - out.mean * out.mean);
    out.stddev = std::sqrt(var);
    out.sigma_mean = out.stddev / std::sqrt(static_cast<double>(trials));
    out.bound = std::pow(1.0 + q, ell);
    out.within_bound_3sigma = out.mean <= out.bound + 3.0 * out.sigma_mean;
    return out;
}

double path_value(const CompiledCircuit &circuit, const ProductState &state,
                  std::span<const PauliString> path) {
    if (static_cast<int>(path.size()) != circuit.depth() + 1) {
        throw std::invalid_argument("path must have depth+1 strings");
    }
    double amp = 1.0;
    for (int k = circuit.depth(); k >= 1; --k) {
        const PauliString &from = path[static_cast<std::size_t>(k)];
        const PauliString &to = path[static_cast<std::size_t>(k - 1)];
        double c = 0.0;
        for (const SignedPauliTerm &t : circuit.layer_branches(k - 1, from)) {
            if (t.string == to) {
                c = t.coeff;
                break;
            }
        }
        if (c == 0.0) {
            return 0.0;
        }
        amp *= c;
    }
    return amp * product_state_expectation(state, path[0]);
}

double orthogonality_probe(std::span<const EnsembleMember> ensemble, const ProductState &state,
                           std::span<const PauliString> path_a,
                           std::span<const PauliString> path_b) {
    CompensatedSum total;
    for (const EnsembleMember &member : ensemble) {
        CompiledCircuit compiled(member.circuit);
        double fa = path_value(compiled, state, path_a);
        double fb = path_value(compiled, state, path_b);
        total.add(member.prob * fa * fb);
    }
    return total.value();
}

}  // namespace pauliflow
