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

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pauliflow/circuit.hpp"
#include "pauliflow/counterexample.hpp"
#include "pauliflow/random_model.hpp"
#include "pauliflow/sparseness.hpp"
#include "test_support.hpp"

using namespace pauliflow;

TEST_CASE("empty circuit validates") {
    Circuit c(2, 2);
    CHECK(validate(c).empty());
}

TEST_CASE("overlapping supports in one layer are flagged") {
    Circuit c(2, 1);
    c.layers.push_back({Gate::clifford(CliffordGate::H, {Coord{0, 0}}),
                        Gate::clifford(CliffordGate::S, {Coord{0, 0}})});
    auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0].layer == 0);
}

TEST_CASE("non-adjacent two-qubit gates are flagged") {
    Circuit c(3, 1);
    c.layers.push_back({Gate::clifford(CliffordGate::CNOT, {Coord{0, 0}, Coord{2, 0}})});
    CHECK_FALSE(validate(c).empty());
}

TEST_CASE("t_census locates T gates by layer") {
    Circuit c(2, 2);
    c.layers.push_back({Gate::clifford(CliffordGate::H, {Coord{0, 0}})});
    c.layers.push_back({Gate::t(Coord{0, 0})});
    auto census = t_census(c);
    REQUIRE(census.size() == 1);
    REQUIRE(census.count(2) == 1);
    CHECK(census.at(2).size() == 1);
    CHECK(census.at(2)[0] == Coord{0, 0});

    Circuit clifford_only(2, 2);
    clifford_only.layers.push_back({Gate::clifford(CliffordGate::CZ, {Coord{0, 0}, Coord{1, 0}})});
    CHECK(t_census(clifford_only).empty());

    // The majority-gate circuit has generic gates but no T gates.
    CHECK(t_census(v_gate_circuit(6)).empty());
}

TEST_CASE("magic census counts non-Clifford one-qubit generics") {
    Circuit c(2, 1);
    c.layers.push_back({Gate::generic(mat_rz(0.3), {Coord{0, 0}}),
                        Gate::generic(mat_h(), {Coord{1, 0}})});
    auto census = magic_census(c);
    REQUIRE(census.count(1) == 1);
    REQUIRE(census.at(1).size() == 1);
    CHECK(census.at(1)[0] == Coord{0, 0});
}

TEST_CASE("circuit JSON round trip") {
    testing::RandomCircuitSpec spec;
    spec.seed = 99;
    Circuit c = testing::random_clifford_t_circuit(spec);
    c.layers.push_back({Gate::generic(mat_rz(0.7), {Coord{0, 0}})});
    nlohmann::json j = circuit_to_json(c);
    Circuit back = circuit_from_json(j);
    CHECK(back.lx == c.lx);
    CHECK(back.ly == c.ly);
    REQUIRE(back.depth() == c.depth());
    for (int t = 0; t < c.depth(); ++t) {
        REQUIRE(back.layers[t].size() == c.layers[t].size());
        for (std::size_t g = 0; g < c.layers[t].size(); ++g) {
            CHECK(back.layers[t][g].kind == c.layers[t][g].kind);
            CHECK(back.layers[t][g].support == c.layers[t][g].support);
        }
    }
    CHECK(circuit_to_json(back) == j);
}

namespace {

/// Independent oracle: all subsets by bitmask, connectivity by BFS over the
/// same adjacency, fraction by recount. Only for tiny point sets.
struct BruteForceSparseness {
    const Circuit &circuit;
    std::vector<SpacetimePoint> points;
    std::vector<bool> magic;

    explicit BruteForceSparseness(const Circuit &c) : circuit(c) {
        auto census = magic_census(c);
        for (int t = 0; t <= c.depth(); ++t) {
            for (int y = 0; y < c.ly; ++y) {
                for (int x = 0; x < c.lx; ++x) {
                    points.push_back(SpacetimePoint{x, y, t});
                    bool m = false;
                    if (census.count(t) != 0) {
                        for (Coord cc : census.at(t)) {
                            if (cc.x == x && cc.y == y) m = true;
                        }
                    }
                    magic.push_back(m);
                }
            }
        }
    }

    static bool adjacent(const SpacetimePoint &a, const SpacetimePoint &b) {
        return std::abs(a.t - b.t) <= 1 &&
               std::abs(a.x - b.x) + std::abs(a.y - b.y) <= 1 &&
               !(a.x == b.x && a.y == b.y && a.t == b.t);
    }

    bool connected(uint32_t mask) const {
        std::vector<int> members;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (mask & (1u << i)) members.push_back(static_cast<int>(i));
        }
        if (members.empty()) return false;
        std::vector<bool> seen(members.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t visited = 1;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < members.size(); ++j) {
                if (!seen[j] && adjacent(points[members[i]], points[members[j]])) {
                    seen[j] = true;
                    ++visited;
                    stack.push_back(j);
                }
            }
        }
        return visited == members.size();
    }

    /// True iff some connected subset of size >= k violates the fraction.
    bool has_violation(double q, int k) const {
        for (uint32_t mask = 1; mask < (1u << points.size()); ++mask) {
            int size = __builtin_popcount(mask);
            if (size < k || !connected(mask)) continue;
            int m = 0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if ((mask & (1u << i)) && magic[i]) ++m;
            }
            if (m > q * size) return true;
        }
        return false;
    }
};

}  // namespace

TEST_CASE("sparseness: all-Clifford circuits certify trivially") {
    Circuit c(2, 2);
    c.layers.push_back({Gate::clifford(CliffordGate::CZ, {Coord{0, 0}, Coord{1, 0}})});
    auto report = check_sparseness(c, 0.1, 2, 4);
    CHECK(report.status == SparsenessStatus::certified);
}

TEST_CASE("sparseness: one T gate on a 2x2x2 instance certifies at (1/4, 4)") {
    Circuit c(2, 2);
    c.layers.push_back({Gate::t(Coord{0, 0})});
    c.layers.push_back({Gate::clifford(CliffordGate::H, {Coord{1, 1}})});
    int points = c.n_qubits() * (c.depth() + 1);
    auto report = check_sparseness(c, 0.25, 4, points);
    CHECK(report.status == SparsenessStatus::certified);
    CHECK(report.max_size_checked == points);
}

TEST_CASE("sparseness: a dense-T line refutes with a verifying witness") {
    Circuit c(2, 1);
    c.layers.push_back({Gate::t(Coord{0, 0}), Gate::t(Coord{1, 0})});
    auto report = check_sparseness(c, 0.4, 2, 6);
    REQUIRE(report.status == SparsenessStatus::refuted);
    REQUIRE(report.witness.has_value());
    double fraction = 0.0;
    CHECK(verify_sparseness_witness(c, 0.4, *report.witness, &fraction));
    CHECK(fraction > 0.4);
    CHECK(report.witness_fraction == doctest::Approx(fraction));
}

TEST_CASE("sparseness: certified at full cap never coexists with a brute-force violation") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        testing::RandomCircuitSpec spec;
        spec.lx = 2;
        spec.ly = 2;
        spec.depth = 2;
        spec.t_gates = (seed % 3 == 0) ? 2 : 1;
        spec.seed = seed;
        Circuit c = testing::random_clifford_t_circuit(spec);
        int points = c.n_qubits() * (c.depth() + 1);
        REQUIRE(points <= 16);
        BruteForceSparseness brute(c);
        for (double q : {0.15, 0.3}) {
            for (int k : {2, 4}) {
                auto report = check_sparseness(c, q, k, points);
                bool brute_violation = brute.has_violation(q, k);
                CAPTURE(seed);
                CAPTURE(q);
                CAPTURE(k);
                if (report.status == SparsenessStatus::certified) {
                    CHECK_FALSE(brute_violation);
                } else {
                    REQUIRE(report.status == SparsenessStatus::refuted);
                    CHECK(brute_violation);
                    CHECK(verify_sparseness_witness(c, q, *report.witness, nullptr));
                }
            }
        }
    }
}

TEST_CASE("sparseness rejects a cap below k") {
    Circuit c(2, 1);
    c.layers.push_back({Gate::t(Coord{0, 0})});
    CHECK_THROWS_AS(check_sparseness(c, 0.5, 4, 3), std::invalid_argument);
}

TEST_CASE("random model: boundary probabilities") {
    SlotSkeleton skeleton = SlotSkeleton::single_qubit_layers(2, 2, 3);
    Circuit none = sample_random_model(skeleton, 0.0, GatePolicy::always_t_when_free, 5);
    CHECK(t_census(none).empty());

    Circuit all = sample_random_model(skeleton, 1.0, GatePolicy::always_t_when_free, 5);
    std::size_t t_count = 0;
    for (const auto &layer : all.layers) {
        for (const auto &g : layer) {
            if (g.kind == GateKind::T) ++t_count;
        }
    }
    CHECK(t_count == skeleton.one_qubit_slot_count());
}

TEST_CASE("random model: empirical T fraction concentrates") {
    SlotSkeleton skeleton = SlotSkeleton::single_qubit_layers(10, 10, 100);  // 10^4 slots
    Circuit c = sample_random_model(skeleton, 0.3, GatePolicy::always_t_when_free, 123);
    double fraction = t_gate_fraction(c, skeleton);
    CHECK(fraction == doctest::Approx(0.3).epsilon(0.07));  // 0.3 +- 0.02 expected
    CHECK(std::abs(fraction - 0.3) < 0.02);
}

TEST_CASE("random model: fixed seed reproduces bit-identically") {
    SlotSkeleton skeleton = SlotSkeleton::brickwork(3, 2, 4);
    Circuit a = sample_random_model(skeleton, 0.4, GatePolicy::uniform_clifford_or_t, 77);
    Circuit b = sample_random_model(skeleton, 0.4, GatePolicy::uniform_clifford_or_t, 77);
    CHECK(circuit_to_json(a) == circuit_to_json(b));
    Circuit other = sample_random_model(skeleton, 0.4, GatePolicy::uniform_clifford_or_t, 78);
    CHECK(circuit_to_json(other) != circuit_to_json(a));
}

TEST_CASE("random model circuits validate") {
    SlotSkeleton skeleton = SlotSkeleton::brickwork(3, 3, 5);
    for (uint64_t seed = 0; seed < 4; ++seed) {
        Circuit c = sample_random_model(skeleton, 0.5, GatePolicy::uniform_clifford_or_t, seed);
        CHECK(validate(c).empty());
    }
}
