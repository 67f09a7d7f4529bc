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

#ifndef PAULIFLOW_PATH_ENGINE_HPP
#define PAULIFLOW_PATH_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pauliflow/circuit.hpp"
#include "pauliflow/pauli.hpp"
#include "pauliflow/polynomial.hpp"
#include "pauliflow/random_model.hpp"

namespace pauliflow {

inline constexpr int kUnboundedCutoff = std::numeric_limits<int>::max();

/// Thrown when an untruncated traversal exceeds its path budget.
class PathExplosionError : public std::runtime_error {
  public:
    PathExplosionError(uint64_t count, uint64_t budget)
        : std::runtime_error("path enumeration exceeded budget"), count_(count), budget_(budget) {}
    uint64_t count() const { return count_; }
    uint64_t budget() const { return budget_; }

  private:
    uint64_t count_;
    uint64_t budget_;
};

/// Circuit precompiled for Heisenberg back-propagation: per gate, the
/// support bit mask, whether it counts toward the magic budget (T gates and
/// non-Clifford single-qubit generics), and for generic gates the full
/// branch table over 4^D restricted input strings.
class CompiledCircuit {
  public:
    explicit CompiledCircuit(const Circuit &circuit);

    struct CompiledGate {
        enum class Action : uint8_t { clifford, t, generic };
        Action action = Action::clifford;
        CliffordGate cliff = CliffordGate::H;
        std::vector<uint32_t> qubits;
        uint64_t support_mask = 0;
        bool magic = false;
        /// For generic: packed input letters -> branch list of
        /// (coefficient, packed output letters). Letters pack 2 bits per
        /// support qubit, qubits[i] at bit 2i.
        std::vector<std::vector<std::pair<double, uint32_t>>> table;
    };

    uint32_t n() const { return n_; }
    int depth() const { return static_cast<int>(layers_.size()); }
    const std::vector<std::vector<CompiledGate>> &layers() const { return layers_; }

    /// All branch terms of one layer's conjugation applied to s.
    std::vector<SignedPauliTerm> layer_branches(int layer_index, const PauliString &s) const;

  private:
    uint32_t n_ = 0;
    std::vector<std::vector<CompiledGate>> layers_;
};

/// Histogram and tallies over enumerated transition-nonzero paths. Counts
/// cover the transition structure only, so they do not depend on the
/// initial state.
struct PathStats {
    std::map<int, uint64_t> paths_by_weight;
    uint64_t total_paths = 0;
    uint64_t magic_encounters_total = 0;
    /// weight -> max magic encounters over paths of that weight.
    std::map<int, int> max_magic_by_weight;
    int max_weight = 0;
    uint64_t pruned = 0;

    void merge(const PathStats &other);
    uint64_t paths_up_to(int ell) const;
    uint64_t paths_between(int k, int ell) const;
};

/// One leaf of the traversal. strings runs s_d down to s_0.
struct PathVisit {
    std::span<const PauliString> strings;
    double amplitude = 0.0;  // product of transition coefficients
    double f = 0.0;          // amplitude times tr(s_0 rho_0)
    int weight = 0;
    int magic_encounters = 0;
};

struct EnumerateOptions {
    int cutoff = kUnboundedCutoff;
    int threads = 1;
    /// Abort threshold on leaf count; 0 means unlimited.
    uint64_t max_paths = 0;
};

/// Depth-first walk backward from s_d = obs. A branch is pruned as soon as
/// its accumulated weight plus one per remaining string exceeds the cutoff
/// (every string of a nonzero path is non-identity). The visitor sees only
/// leaves with nonzero f; stats count every transition-nonzero leaf.
/// Serial; for parallel reductions use accumulate_fw/count_paths.
PathStats enumerate_paths(const CompiledCircuit &circuit, const PauliString &obs,
                          const ProductState *state, const EnumerateOptions &options,
                          const std::function<void(const PathVisit &)> &visitor);

struct FwTable {
    WeightPolynomial poly;
    PathStats stats;
};

/// F_w = sum of f(s) over enumerated paths of weight w <= cutoff.
/// Compensated accumulation; with threads > 1 the branch tree is split into
/// deterministic subtree slots merged in fixed order, so results agree with
/// the serial walk to 1e-12.
FwTable accumulate_fw(const CompiledCircuit &circuit, const PauliString &obs,
                      const ProductState &state, const EnumerateOptions &options);

/// Path counting only; no initial state involved.
PathStats count_paths(const CompiledCircuit &circuit, const PauliString &obs,
                      const EnumerateOptions &options);

struct TruncatedExpectation {
    double value = 0.0;
    int cutoff = 0;
    double p = 0.0;
    /// Per-term truncation bound n*d*(2^Q(1-p))^cutoff when a Q was
    /// supplied and lies below threshold; stored as a natural log since Q
    /// may be far above 1 at desk scale.
    std::optional<double> log_per_term_bound;
    std::optional<double> per_term_bound;
    /// Per-term precision split factor sqrt(g) for an epsilon target.
    double epsilon_split_factor = 1.0;
    std::vector<double> term_values;
    PathStats stats;
};

/// Sum over observable terms of a_k times the truncated polynomial value.
TruncatedExpectation expectation_truncated(const CompiledCircuit &circuit, const Observable &obs,
                                           const ProductState &state, double p,
                                           const EnumerateOptions &options,
                                           std::optional<double> certified_q = std::nullopt);

/// Thrown when no efficient cutoff is guaranteed at this (p, Q).
class NoCutoffError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// ceil(max(ln(n d / eps) / ln(1/(2^q (1-p))), a ln n)), natural logs.
/// Requires 2^q (1-p) < 1.
int choose_cutoff(int n, int d, double eps, double p, double q, double a);

struct RandomModelStats {
    double mean = 0.0;
    double stddev = 0.0;
    double sigma_mean = 0.0;
    double bound = 0.0;  // (1+q)^ell
    uint64_t trials = 0;
    bool within_bound_3sigma = false;
};

/// Monte-Carlo mean of the number of paths with weight <= ell over circuits
/// sampled from the random model, against the (1+q)^ell average bound.
RandomModelStats random_model_statistics(const SlotSkeleton &skeleton, double q,
                                         GatePolicy policy, const PauliString &obs, int trials,
                                         int ell, uint64_t seed);

/// f(s) for an explicit path s_0..s_d: the product of per-layer transition
/// coefficients times tr(s_0 rho_0). Zero when any transition vanishes.
double path_value(const CompiledCircuit &circuit, const ProductState &state,
                  std::span<const PauliString> path);

struct EnsembleMember {
    double prob = 0.0;
    Circuit circuit;
};

/// Exact mixture average E[f(s) f(s')] over a finite circuit ensemble.
double orthogonality_probe(std::span<const EnsembleMember> ensemble, const ProductState &state,
                           std::span<const PauliString> path_a,
                           std::span<const PauliString> path_b);

}  // namespace pauliflow

#endif
