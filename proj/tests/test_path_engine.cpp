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

#include <cmath>

#include "pauliflow/counterexample.hpp"
#include "pauliflow/path_engine.hpp"
#include "test_support.hpp"

using namespace pauliflow;

namespace {

ProductState skewed_probe_state() {
    // (|+Y> + |+>)/sqrt(3), Bloch vector (2/3, 2/3, 1/3).
    ProductState s;
    s.qubits = {BlochVector{2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0}};
    return s;
}

Circuit single_t_circuit() {
    Circuit c(1, 1);
    c.layers.push_back({Gate::t(Coord{0, 0})});
    return c;
}

}  // namespace

TEST_CASE("Clifford circuits have exactly one path") {
    Circuit c(2, 1);
    c.layers.push_back({Gate::clifford(CliffordGate::CNOT, {Coord{0, 0}, Coord{1, 0}})});
    c.layers.push_back({Gate::clifford(CliffordGate::H, {Coord{0, 0}})});
    CompiledCircuit compiled(c);
    EnumerateOptions opt;
    PathStats stats = count_paths(compiled, PauliString::single(2, 0, Pauli::Z), opt);
    CHECK(stats.total_paths == 1);
    CHECK(stats.paths_by_weight.size() == 1);
}

TEST_CASE("single T on X branches into the two known paths") {
    CompiledCircuit compiled(single_t_circuit());
    ProductState state = skewed_probe_state();
    std::vector<std::pair<std::string, double>> seen;
    EnumerateOptions opt;
    enumerate_paths(compiled, PauliString::single(1, 0, Pauli::X), &state, opt,
                    [&](const PathVisit &v) {
                        seen.emplace_back(v.strings.back().to_string(), v.f);
                        CHECK(v.weight == 2);
                    });
    REQUIRE(seen.size() == 2);
    CHECK(seen[0].first == "X");
    CHECK(seen[0].second == doctest::Approx(std::sqrt(2.0) / 3.0));
    CHECK(seen[1].first == "Y");
    CHECK(seen[1].second == doctest::Approx(-std::sqrt(2.0) / 3.0));
}

TEST_CASE("single V gate yields its four known path values") {
    Circuit c = v_gate_circuit(3);
    CompiledCircuit compiled(c);
    ProductState zero = ProductState::all_zero(3);
    int count = 0;
    double zzz_f = 0.0;
    EnumerateOptions opt;
    enumerate_paths(compiled, majority_observable(3, 1), &zero, opt, [&](const PathVisit &v) {
        ++count;
        CHECK(std::abs(v.f) == doctest::Approx(0.5));
        if (v.strings.back().to_string() == "ZZZ") {
            zzz_f = v.f;
            CHECK(v.weight == 4);
        } else {
            CHECK(v.weight == 2);
        }
    });
    CHECK(count == 4);
    CHECK(zzz_f == doctest::Approx(-0.5));
}

TEST_CASE("identity observable is rejected") {
    CompiledCircuit compiled(single_t_circuit());
    EnumerateOptions opt;
    CHECK_THROWS_AS(count_paths(compiled, PauliString(1), opt), std::invalid_argument);
}

TEST_CASE("accumulate_fw reproduces the V-gate polynomial") {
    CompiledCircuit compiled(v_gate_circuit(3));
    EnumerateOptions opt;
    FwTable fw = accumulate_fw(compiled, majority_observable(3, 1), ProductState::all_zero(3),
                               opt);
    CHECK(fw.poly.coefficient(2) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fw.poly.coefficient(4) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fw.poly.coefficient(3) == 0.0);
    CHECK(fw.poly.evaluate_at_noise(0.1) == doctest::Approx(0.88695).epsilon(1e-9));
}

TEST_CASE("accumulate_fw on a weight-spreading Clifford layer") {
    // CNOT maps Z on the target into Z Z, so weights are 1 then 2.
    Circuit c(2, 1);
    c.layers.push_back({Gate::clifford(CliffordGate::CNOT, {Coord{1, 0}, Coord{0, 0}})});
    CompiledCircuit compiled(c);
    EnumerateOptions opt;
    FwTable fw = accumulate_fw(compiled, PauliString::single(2, 0, Pauli::Z),
                               ProductState::all_zero(2), opt);
    REQUIRE(fw.poly.coeffs.size() == 1);
    CHECK(fw.poly.coefficient(3) == doctest::Approx(1.0));
}

TEST_CASE("truncated expectation at the edges of p") {
    CompiledCircuit compiled(v_gate_circuit(3));
    Observable obs = Observable::single(majority_observable(3, 1));
    ProductState zero = ProductState::all_zero(3);
    EnumerateOptions opt;
    CHECK(expectation_truncated(compiled, obs, zero, 1.0, opt).value == doctest::Approx(0.0));
    CHECK(expectation_truncated(compiled, obs, zero, 0.0, opt).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(expectation_truncated(compiled, obs, zero, 1.5, opt),
                    std::invalid_argument);
}

TEST_CASE("cutoff pruning drops the heavy V-gate path") {
    CompiledCircuit compiled(v_gate_circuit(3));
    EnumerateOptions opt;
    opt.cutoff = 3;
    FwTable fw = accumulate_fw(compiled, majority_observable(3, 1), ProductState::all_zero(3),
                               opt);
    CHECK(fw.poly.coefficient(2) == doctest::Approx(1.5));
    CHECK(fw.poly.coefficient(4) == 0.0);
    CHECK(fw.stats.pruned > 0);
}

TEST_CASE("count_paths reports the known counts") {
    CompiledCircuit compiled(single_t_circuit());
    EnumerateOptions opt;
    opt.cutoff = 2;
    PathStats stats = count_paths(compiled, PauliString::single(1, 0, Pauli::X), opt);
    CHECK(stats.total_paths == 2);
    CHECK(stats.paths_by_weight.at(2) == 2);
    CHECK(stats.magic_encounters_total == 2);

    uint64_t histogram_total = 0;
    for (const auto &[w, c] : stats.paths_by_weight) {
        histogram_total += c;
    }
    CHECK(histogram_total == stats.total_paths);
}

TEST_CASE("states outside the Bloch ball are rejected") {
    CompiledCircuit compiled(single_t_circuit());
    ProductState bad;
    bad.qubits = {BlochVector{1.0, 1.0, 1.0}};
    EnumerateOptions opt;
    CHECK_THROWS_AS(accumulate_fw(compiled, PauliString::single(1, 0, Pauli::X), bad, opt),
                    std::invalid_argument);
}

TEST_CASE("per-path magic stays within Q*w on a certified-style circuit") {
    testing::RandomCircuitSpec spec;
    spec.lx = 3;
    spec.ly = 2;
    spec.depth = 4;
    spec.t_gates = 3;
    spec.seed = 42;
    Circuit c = testing::random_clifford_t_circuit(spec);
    CompiledCircuit compiled(c);
    EnumerateOptions opt;
    PathStats stats = count_paths(compiled, PauliString::single(6, 2, Pauli::Z), opt);
    // Every magic encounter touches a non-identity site, so magic <= w.
    for (const auto &[w, magic] : stats.max_magic_by_weight) {
        CHECK(magic <= w);
    }
}

TEST_CASE("choose_cutoff evaluates the formula") {
    CHECK(choose_cutoff(100, 10, 0.01, 0.3, 0.1, 2.0) == 41);
    // Q = 0: pure Clifford case collapses to ln(nd/eps)/ln(1/(1-p)).
    int ell = choose_cutoff(16, 4, 0.1, 0.5, 0.0, 2.0);
    double expect = std::max(std::log(16.0 * 4.0 / 0.1) / std::log(2.0),
                             2.0 * std::log(16.0));
    CHECK(ell == static_cast<int>(std::ceil(expect)));
    // Threshold boundary: 2^Q (1-p) = 1 exactly.
    double q = 0.5;
    double p_star = 1.0 - 1.0 / std::exp2(q);
    CHECK_THROWS_AS(choose_cutoff(10, 5, 0.1, p_star, q, 2.0), NoCutoffError);
    CHECK_THROWS_AS(choose_cutoff(10, 5, 0.1, 0.01, q, 2.0), NoCutoffError);
}

TEST_CASE("serial and parallel reductions agree to 1e-12") {
    testing::RandomCircuitSpec spec;
    spec.lx = 3;
    spec.ly = 2;
    spec.depth = 5;
    spec.t_gates = 8;
    spec.seed = 7;
    Circuit c = testing::random_clifford_t_circuit(spec);
    CompiledCircuit compiled(c);
    PauliString obs = testing::random_pauli(6, 2, 3);
    ProductState state = testing::random_product_state(6, 5);

    EnumerateOptions serial;
    serial.threads = 1;
    FwTable a = accumulate_fw(compiled, obs, state, serial);

    EnumerateOptions parallel;
    parallel.threads = 4;
    FwTable b = accumulate_fw(compiled, obs, state, parallel);

    CHECK(a.stats.total_paths == b.stats.total_paths);
    for (const auto &[w, coeff] : a.poly.coeffs) {
        CHECK(b.poly.coefficient(w) == doctest::Approx(coeff).epsilon(1e-12));
    }
    for (const auto &[w, count] : a.stats.paths_by_weight) {
        CHECK(b.stats.paths_by_weight.at(w) == count);
    }

    // Parallel runs of the same width are bitwise reproducible.
    FwTable b2 = accumulate_fw(compiled, obs, state, parallel);
    for (const auto &[w, coeff] : b.poly.coeffs) {
        CHECK(b2.poly.coefficient(w) == coeff);
    }
}

TEST_CASE("random model statistics honor the solvable small cases") {
    // Q = 0: pure Clifford, exactly one path.
    SlotSkeleton skeleton = SlotSkeleton::single_qubit_layers(2, 1, 2);
    RandomModelStats zero = random_model_statistics(
        skeleton, 0.0, GatePolicy::always_t_when_free,
        PauliString::single(2, 0, Pauli::Z), 50, 6, 11);
    CHECK(zero.mean == doctest::Approx(1.0));
    CHECK(zero.stddev == doctest::Approx(0.0));

    // Q = 1 always-T on one qubit, obs X, d = 1: always two paths.
    SlotSkeleton single = SlotSkeleton::single_qubit_layers(1, 1, 1);
    RandomModelStats two = random_model_statistics(
        single, 1.0, GatePolicy::always_t_when_free,
        PauliString::single(1, 0, Pauli::X), 25, 2, 11);
    CHECK(two.mean == doctest::Approx(2.0));

    // Q = 0.2 on a small skeleton stays under (1+Q)^ell on average.
    SlotSkeleton brick = SlotSkeleton::brickwork(3, 2, 4);
    RandomModelStats avg = random_model_statistics(
        brick, 0.2, GatePolicy::always_t_when_free,
        PauliString::single(6, 1, Pauli::Z), 300, 8, 19);
    CHECK(avg.within_bound_3sigma);
}

TEST_CASE("orthogonality probe reproduces -2Q/9") {
    Circuit identity(1, 1);
    identity.layers.push_back({});
    Circuit t = single_t_circuit();
    ProductState state = skewed_probe_state();
    std::vector<PauliString> xx = {PauliString::single(1, 0, Pauli::X),
                                   PauliString::single(1, 0, Pauli::X)};
    std::vector<PauliString> yx = {PauliString::single(1, 0, Pauli::Y),
                                   PauliString::single(1, 0, Pauli::X)};
    for (double q : {0.0, 0.25, 0.6, 1.0}) {
        std::vector<EnsembleMember> ensemble;
        ensemble.push_back({1.0 - q, identity});
        ensemble.push_back({q, t});
        double value = orthogonality_probe(ensemble, state, xx, yx);
        CHECK(value == doctest::Approx(-2.0 * q / 9.0).epsilon(1e-12));
        // Same path twice at q = 0 gives f((X,X),I)^2 = 4/9.
        if (q == 0.0) {
            CHECK(orthogonality_probe(ensemble, state, xx, xx) ==
                  doctest::Approx(4.0 / 9.0));
        }
    }
    // A path with no support in any member averages to zero.
    std::vector<PauliString> zx = {PauliString::single(1, 0, Pauli::Z),
                                   PauliString::single(1, 0, Pauli::X)};
    std::vector<EnsembleMember> ensemble;
    ensemble.push_back({0.5, identity});
    ensemble.push_back({0.5, t});
    CHECK(orthogonality_probe(ensemble, state, xx, zx) == doctest::Approx(0.0));
}

TEST_CASE("path legality and |f| <= 1 over a random sweep") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        testing::RandomCircuitSpec spec;
        spec.lx = 2;
        spec.ly = 2;
        spec.depth = 4;
        spec.t_gates = 5;
        spec.seed = seed;
        Circuit c = testing::random_clifford_t_circuit(spec);
        CompiledCircuit compiled(c);
        PauliString obs = testing::random_pauli(4, 2, seed);
        ProductState state = testing::random_product_state(4, seed + 100);
        EnumerateOptions opt;
        enumerate_paths(compiled, obs, &state, opt, [&](const PathVisit &v) {
            CHECK(std::abs(v.f) <= 1.0 + 1e-12);
            CHECK(std::abs(v.amplitude) <= 1.0 + 1e-12);
            for (const PauliString &s : v.strings) {
                CHECK_FALSE(s.is_identity());
            }
        });
    }
}

TEST_CASE("path explosion aborts with a count") {
    // 24 T gates on X-letters double every layer.
    Circuit c(1, 1);
    for (int i = 0; i < 30; ++i) {
        c.layers.push_back({Gate::t(Coord{0, 0}), });
    }
    CompiledCircuit compiled(c);
    EnumerateOptions opt;
    opt.max_paths = 1000;
    CHECK_THROWS_AS(count_paths(compiled, PauliString::single(1, 0, Pauli::X), opt),
                    PathExplosionError);
}
