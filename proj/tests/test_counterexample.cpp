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

#include "pauliflow/compensated.hpp"
#include "pauliflow/counterexample.hpp"
#include "pauliflow/path_engine.hpp"

using namespace pauliflow;

namespace {

/// Convolution oracle: F_w for k blocks by repeated convolution of the
/// one-block table {2: 3/2, 4: -1/2}. Independent of the closed form.
std::map<int, double> convolved_fw(int k) {
    std::map<int, double> acc{{2, 1.5}, {4, -0.5}};
    std::map<int, double> base = acc;
    for (int i = 1; i < k; ++i) {
        std::map<int, double> next;
        for (const auto &[wa, fa] : acc) {
            for (const auto &[wb, fb] : base) {
                next[wa + wb] += fa * fb;
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

TEST_CASE("the majority gate is the expected permutation") {
    Matrix v = v_gate();
    CHECK(v.is_unitary(1e-14));
    // V^2 = identity.
    CHECK((v * v).approx_equal(Matrix::identity(8), 1e-14));
    // V|111> = |111>.
    CHECK(v.at(7, 7) == cplx{1.0, 0.0});
    // V|100> = |011>.
    CHECK(v.at(3, 4) == cplx{1.0, 0.0});

    uint32_t support[] = {0, 1, 2};
    auto terms = conjugate_generic(v, support, PauliString::from_string(3, "ZII"));
    REQUIRE(terms.size() == 4);
    for (const auto &t : terms) {
        if (t.string == PauliString::from_string(3, "ZZZ")) {
            CHECK(t.coeff == doctest::Approx(-0.5));
        } else {
            CHECK(t.coeff == doctest::Approx(0.5));
        }
    }
}

TEST_CASE("analytic coefficients match the worked values") {
    CHECK(analytic_fw(1, 2) == doctest::Approx(1.5));
    CHECK(analytic_fw(1, 4) == doctest::Approx(-0.5));
    CHECK(analytic_fw(2, 4) == doctest::Approx(2.25));
    CHECK(analytic_fw(2, 6) == doctest::Approx(-1.5));
    CHECK(analytic_fw(1, 3) == 0.0);
    CHECK(analytic_fw(3, 4) == 0.0);
    CHECK(analytic_fw(2, 10) == 0.0);
    for (int k = 1; k <= 20; ++k) {
        CHECK(analytic_fw(k, 2 * k) == doctest::Approx(std::pow(1.5, k)));
    }
}

TEST_CASE("analytic coefficients equal the convolution oracle") {
    for (int k = 1; k <= 8; ++k) {
        auto table = convolved_fw(k);
        for (int w = 2 * k; w <= 4 * k; w += 2) {
            CHECK(analytic_fw(k, w) == doctest::Approx(table.at(w)).epsilon(1e-12));
        }
    }
}

TEST_CASE("noiseless coefficients sum to one") {
    for (int k = 1; k <= 20; ++k) {
        CompensatedSum sum;
        for (int w = 2 * k; w <= 4 * k; w += 2) {
            sum.add(analytic_fw(k, w));
        }
        CHECK(sum.value() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("engine reproduces the analytic coefficients exactly") {
    for (int k = 1; k <= 6; ++k) {
        int n = 3 * k;
        CompiledCircuit compiled(v_gate_circuit(n));
        EnumerateOptions opt;
        FwTable fw = accumulate_fw(compiled, majority_observable(n, k),
                                   ProductState::all_zero(static_cast<uint32_t>(n)), opt);
        for (int w = 0; w <= 4 * k; ++w) {
            CAPTURE(k);
            CAPTURE(w);
            CHECK(std::abs(fw.poly.coefficient(w) - analytic_fw(k, w)) < 1e-12);
        }
    }
}

TEST_CASE("tail errors match the worked examples") {
    // ell below 2k keeps nothing: the tail is the full factorized series.
    CHECK(truncation_error(1, 0, 0.2) ==
          doctest::Approx(1.5 * 0.64 - 0.5 * 0.64 * 0.64));
    // Everything kept above 4k.
    CHECK(truncation_error(3, 13, 0.1) == 0.0);
    CHECK(truncation_error(5, 21, 0.05) == 0.0);
    // First dropped coefficient at k=1, ell=2.
    CHECK(truncation_error(1, 2, 0.1) == doctest::Approx(-0.32805).epsilon(1e-12));
}

TEST_CASE("hypergeometric closed form agrees with the direct tail") {
    for (int k : {1, 2, 3, 4, 6, 8, 10}) {
        for (double p : {0.0, 0.1, 0.15, 0.3}) {
            for (int ell = 2 * k; ell <= 4 * k - 2; ell += 2) {
                double direct = truncation_error(k, ell, p);
                double closed = truncation_error_hypergeometric(k, ell, p);
                CAPTURE(k);
                CAPTURE(ell);
                CAPTURE(p);
                CHECK(closed == doctest::Approx(direct).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("large-k evaluation stays consistent across the method switch") {
    // k = 40 runs the direct sum, k = 41 the transformed series.
    for (double p : {0.0, 0.1}) {
        for (int offset = 0; offset <= 20; offset += 4) {
            double a = truncation_error(40, 80 + offset, p);
            double b = truncation_error_hypergeometric(40, 80 + offset, p);
            CHECK(a == doctest::Approx(b).epsilon(1e-7));
            double c = truncation_error(41, 82 + offset, p);
            double d = truncation_error_hypergeometric(41, 82 + offset, p);
            CHECK(c == doctest::Approx(d).epsilon(1e-7));
        }
    }
}

TEST_CASE("odd cutoffs drop the same weights as the even cutoff below") {
    CHECK(truncation_error(3, 7, 0.1) == truncation_error(3, 6, 0.1));
    CHECK(truncation_error(5, 13, 0.1) == truncation_error(5, 12, 0.1));
}

TEST_CASE("the five tail properties hold for k up to 12") {
    for (int k = 1; k <= 12; ++k) {
        PropertyReport report = verify_properties(k, 0, 4 * k + 4, 0.1);
        CAPTURE(k);
        for (const std::string &f : report.failures) {
            CAPTURE(f);
        }
        CHECK(report.all_pass());
        CHECK(report.growth_bound_checked);
    }
}

TEST_CASE("boundary equality of the growth bound at k=1, p=0") {
    double e = std::abs(truncation_error(1, 2, 0.0));
    CHECK(e == doctest::Approx(0.5));
    CHECK(std::pow(1.5, 1) - 1.0 == doctest::Approx(0.5));
}

TEST_CASE("growth check is skipped above the noise threshold") {
    PropertyReport report = verify_properties(8, 0, 40, 0.25);
    CHECK_FALSE(report.growth_bound_checked);
    CHECK(report.all_pass());
}

TEST_CASE("exponential witness at ell = 2k") {
    for (int k = 1; k <= 20; ++k) {
        double e = std::abs(truncation_error(k, 2 * k, 0.1));
        CHECK(e + 1e-12 >= std::pow(1.215, k) - 1.0);
    }
}

TEST_CASE("mixed observable error grows geometrically at spec scale") {
    const int n = 3 * (1 << 14);
    double last_witnessed = 0.0;
    bool saw_witness = false;
    for (int ell = 32; ell <= 96; ell += 2) {
        MixedObservableError r = mixed_observable_error(n, ell, 0.1);
        CHECK(r.g == 243);
        if (!r.witness_k) {
            continue;
        }
        saw_witness = true;
        double e = std::abs(r.error);
        if (last_witnessed > 0.0) {
            CHECK(e / last_witnessed >= 1.1);
        }
        last_witnessed = e;
        CHECK(r.witness_value > 0.0);
        CHECK(8 * *r.witness_k < ell);
        CHECK(ell < 9 * *r.witness_k);
        // The opposite-sign full-series terms can shave a sliver off the
        // same-sign witness stack.
        CHECK(e >= r.witness_value * 0.99);
    }
    CHECK(saw_witness);
}

TEST_CASE("mixed observable error vanishes beyond 16 g") {
    MixedObservableError r = mixed_observable_error(96, 16 * 4 + 2, 0.1, 4);
    CHECK(r.error == 0.0);
}

TEST_CASE("mixed observable error matches the engine at n=36, g=2") {
    const int n = 36;
    const int g = 2;
    ProductState zero = ProductState::all_zero(static_cast<uint32_t>(n));
    CompiledCircuit compiled(v_gate_circuit(n));
    for (int ell : {8, 10, 12, 16, 20, 24, 31}) {
        // Engine: E = <O>_exact - <O>_ell with O = (1/g) sum O_{4k}.
        double engine_error = 0.0;
        for (int k = 1; k <= g; ++k) {
            PauliString obs = majority_observable(n, 4 * k);
            EnumerateOptions unbounded;
            FwTable full = accumulate_fw(compiled, obs, zero, unbounded);
            EnumerateOptions truncated;
            truncated.cutoff = ell;
            FwTable head = accumulate_fw(compiled, obs, zero, truncated);
            engine_error += (full.poly.evaluate_at_noise(0.1) -
                             head.poly.evaluate_at_noise(0.1)) /
                            static_cast<double>(g);
        }
        MixedObservableError analytic = mixed_observable_error(n, ell, 0.1, g);
        CAPTURE(ell);
        CHECK(std::abs(engine_error - analytic.error) < 1e-10);
    }
}

TEST_CASE("mixed observable guards its size preconditions") {
    CHECK_THROWS_AS(mixed_observable_error(10, 8, 0.1), std::invalid_argument);  // not mult of 3
    CHECK_THROWS_AS(mixed_observable_error(36, 8, 0.1), std::invalid_argument);  // 12g > n
}
