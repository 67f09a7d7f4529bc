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
#include <random>

#include "pauliflow/counterexample.hpp"
#include "pauliflow/noise_polynomial.hpp"
#include "pauliflow/path_engine.hpp"
#include "pauliflow/polynomial.hpp"
#include "test_support.hpp"

using namespace pauliflow;

namespace {

WeightPolynomial v_poly() {
    WeightPolynomial p;
    p.set(2, 1.5);
    p.set(4, -0.5);
    return p;
}

}  // namespace

TEST_CASE("evaluation in x = 1 - p") {
    WeightPolynomial p = v_poly();
    CHECK(p.evaluate_at_noise(0.0) == doctest::Approx(1.0));
    CHECK(p.evaluate_at_noise(1.0) == doctest::Approx(0.0));
    CHECK(p.evaluate_at_noise(0.1) == doctest::Approx(0.88695));
    CHECK_THROWS_AS(p.evaluate_at_noise(-0.1), std::invalid_argument);
}

TEST_CASE("l2 norm of coefficients") {
    CHECK(v_poly().l2_norm() == doctest::Approx(std::sqrt(10.0) / 2.0));
    WeightPolynomial mono;
    mono.set(7, -1.0);
    CHECK(mono.l2_norm() == doctest::Approx(1.0));
    // Counterexample coefficients at k = 4.
    WeightPolynomial ce;
    double expect = 0.0;
    for (int w = 8; w <= 16; w += 2) {
        ce.set(w, analytic_fw(4, w));
        expect += analytic_fw(4, w) * analytic_fw(4, w);
    }
    CHECK(ce.l2_norm() == doctest::Approx(std::sqrt(expect)));
}

TEST_CASE("V-gate polynomial roots are {0, 0, +-sqrt(3)}") {
    RootProfile profile = find_roots(v_poly());
    REQUIRE(profile.roots.size() == 4);
    CHECK(profile.all_real);
    CHECK(profile.zero_multiplicity == 2);
    auto mags = profile.sorted_magnitudes();
    CHECK(mags[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(mags[1] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(mags[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
    CHECK(mags[3] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
    double sum = profile.roots[2].real() + profile.roots[3].real();
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("monomials have only the origin root") {
    WeightPolynomial mono;
    mono.set(5, 1.0);
    RootProfile profile = find_roots(mono);
    CHECK(profile.roots.size() == 5);
    CHECK(profile.zero_multiplicity == 5);
    CHECK(profile.all_real);
}

TEST_CASE("degenerate polynomials are rejected by the root finder") {
    WeightPolynomial empty;
    CHECK_THROWS_AS(find_roots(empty), std::invalid_argument);
    WeightPolynomial constant;
    constant.set(0, 2.0);
    CHECK_THROWS_AS(find_roots(constant), std::invalid_argument);
}

TEST_CASE("x^2 + 1 has the conjugate pair +-i") {
    WeightPolynomial p;
    p.set(0, 1.0);
    p.set(2, 1.0);
    RootProfile profile = find_roots(p);
    REQUIRE(profile.roots.size() == 2);
    CHECK_FALSE(profile.all_real);
    CHECK(std::abs(profile.roots[0].imag()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("roots reconstruct the polynomial within 1e-6 relative") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        WeightPolynomial p;
        int degree = 3 + static_cast<int>(rng() % 8);
        for (int w = 0; w <= degree; ++w) {
            if (rng() % 4 != 0) {
                p.set(w, coeff(rng));
            }
        }
        if (p.degree() < 1) continue;
        RootProfile profile = find_roots(p);
        CHECK(reconstruction_error(p, profile) < 1e-6);
    }
}

TEST_CASE("radius bound covers the smallest roots") {
    WeightPolynomial p = v_poly();
    double bound = root_radius_bound(p, 1);
    CHECK(bound == doctest::Approx(std::pow(10.0, 0.25)).epsilon(1e-12));
    auto mags = find_roots(p).sorted_magnitudes();
    CHECK(mags[0] <= bound);
    CHECK(mags[1] <= bound);

    WeightPolynomial mono;
    mono.set(4, 1.0);
    for (int k = 0; k <= 2; ++k) {
        CHECK(root_radius_bound(mono, k) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(root_radius_bound(mono, 3), std::invalid_argument);
}

TEST_CASE("radius bound property sweep on Clifford+T polynomials") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        testing::RandomCircuitSpec spec;
        spec.lx = 3;
        spec.ly = 2;
        spec.depth = 3;
        spec.t_gates = 5;
        spec.seed = seed;
        Circuit c = testing::random_clifford_t_circuit(spec);
        CompiledCircuit compiled(c);
        EnumerateOptions opt;
        FwTable fw = accumulate_fw(compiled, testing::random_pauli(6, 2, seed),
                                   ProductState::all_zero(6), opt);
        WeightPolynomial poly = fw.poly.cleaned(1e-12);
        if (poly.degree() < 2) continue;
        RootProfile profile = find_roots(poly);
        auto mags = profile.sorted_magnitudes();
        for (int k = 0; k <= poly.degree() - 2; ++k) {
            double bound = root_radius_bound(poly, k);
            for (int j = 0; j <= k; ++j) {
                CHECK(mags[static_cast<std::size_t>(j)] <= bound * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("polynomial evaluation equals engine evaluation on a p-grid") {
    CompiledCircuit compiled(v_gate_circuit(3));
    Observable obs = Observable::single(majority_observable(3, 1));
    ProductState zero = ProductState::all_zero(3);
    EnumerateOptions opt;
    opt.cutoff = 4;
    FwTable fw = accumulate_fw(compiled, obs.terms.front().string, zero, opt);
    for (int i = 0; i <= 10; ++i) {
        double p = static_cast<double>(i) / 10.0;
        TruncatedExpectation direct = expectation_truncated(compiled, obs, zero, p, opt);
        CHECK(fw.poly.evaluate_at_noise(p) == doctest::Approx(direct.value).epsilon(1e-12));
    }
}

TEST_CASE("fragility certificate gates on its premises") {
    WeightPolynomial complex_roots;
    complex_roots.set(0, 1.0);
    complex_roots.set(2, 1.0);
    FragilityOptions opt;
    FragilityCertificate cert = fragility_certificate(complex_roots, opt);
    CHECK_FALSE(cert.applicable);
    CHECK(cert.reason == "roots not all real");

    // A root inside the interval disables the certificate.
    WeightPolynomial inside;
    inside.set(0, -0.95);
    inside.set(1, 1.0);  // root at 0.95
    FragilityOptions opt2;
    opt2.interval = 0.1;
    FragilityCertificate cert2 = fragility_certificate(inside, opt2);
    CHECK_FALSE(cert2.applicable);
}

TEST_CASE("monomial fragility envelope verifies") {
    WeightPolynomial mono;
    mono.set(6, 1.0);
    FragilityOptions opt;
    opt.radius = 0.5;
    opt.interval = 0.1;
    opt.g_threshold = 6;
    FragilityCertificate cert = fragility_certificate(mono, opt);
    REQUIRE(cert.applicable);
    CHECK(cert.verified);
    CHECK(cert.anchor_kind == "right-end");
    CHECK(cert.envelope_ratio <= 1.0 + 1e-9);
    CHECK(cert.concavity_slack <= 1e-9);
}

TEST_CASE("synthetic product polynomial with roots near zero verifies") {
    // prod (x - r_i) with twelve roots in [-0.4, 0.4] and one at 1.8.
    std::vector<double> roots;
    for (int i = 0; i < 12; ++i) {
        roots.push_back(-0.4 + 0.8 * static_cast<double>(i) / 11.0);
    }
    roots.push_back(1.8);
    std::vector<double> coeffs{1.0};
    for (double r : roots) {
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * r;
        }
        coeffs = std::move(next);
    }
    WeightPolynomial p;
    for (std::size_t w = 0; w < coeffs.size(); ++w) {
        p.set(static_cast<int>(w), coeffs[w]);
    }
    FragilityOptions opt;
    opt.radius = 0.5;
    opt.interval = 0.08;
    opt.g_threshold = 12;
    FragilityCertificate cert = fragility_certificate(p, opt);
    REQUIRE(cert.applicable);
    CHECK(cert.verified);

    // Second-difference cross-check of Y'' away from roots.
    auto y = [&](double x) { return std::log(std::abs(p.evaluate_x(x))); };
    const double h = 1e-4;
    for (double x : {0.93, 0.96, 0.99}) {
        double numeric = (y(x + h) - 2.0 * y(x) + y(x - h)) / (h * h);
        double analytic = 0.0;
        for (double r : roots) {
            analytic -= 1.0 / ((x - r) * (x - r));
        }
        CHECK(numeric == doctest::Approx(analytic).epsilon(1e-4));
    }
}

TEST_CASE("stationary-anchor branch engages when Y'(1) < 0") {
    // Roots above 1 pull Y'(1) negative.
    std::vector<double> roots{-0.2, -0.1, 0.0, 0.1, 0.2, 1.4, 1.45, 1.5, 1.55, 1.6};
    std::vector<double> coeffs{1.0};
    for (double r : roots) {
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * r;
        }
        coeffs = std::move(next);
    }
    WeightPolynomial p;
    for (std::size_t w = 0; w < coeffs.size(); ++w) {
        p.set(static_cast<int>(w), coeffs[w]);
    }
    FragilityOptions opt;
    opt.radius = 0.25;
    opt.interval = 0.2;
    opt.g_threshold = 5;
    FragilityCertificate cert = fragility_certificate(p, opt);
    REQUIRE(cert.applicable);
    CHECK((cert.anchor_kind == "stationary" || cert.anchor_kind == "left-end"));
    CHECK(cert.verified);
}
