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

#include "pauliflow/pauli.hpp"

using namespace pauliflow;

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

std::vector<uint32_t> q(std::initializer_list<uint32_t> list) {
    return std::vector<uint32_t>(list);
}

}  // namespace

TEST_CASE("weight counts non-identity sites") {
    CHECK(weight(PauliString::from_string(3, "III")) == 0);
    CHECK(weight(PauliString::from_string(3, "XIZ")) == 2);
    CHECK(weight(PauliString::from_string(3, "ZZZ")) == 3);
}

TEST_CASE("letter round trip") {
    PauliString s(4);
    s.set_letter(0, Pauli::X);
    s.set_letter(1, Pauli::Y);
    s.set_letter(2, Pauli::Z);
    CHECK(s.letter(0) == Pauli::X);
    CHECK(s.letter(1) == Pauli::Y);
    CHECK(s.letter(2) == Pauli::Z);
    CHECK(s.letter(3) == Pauli::I);
    CHECK(s.to_string() == "XYZI");
    s.set_letter(1, Pauli::I);
    CHECK(s.letter(1) == Pauli::I);
    CHECK(weight(s) == 2);
}

TEST_CASE("named Clifford conjugation matches the small examples") {
    auto h = conjugate_clifford(CliffordGate::H, q({0}), PauliString::single(1, 0, Pauli::X));
    CHECK(h.coeff == 1.0);
    CHECK(h.string.letter(0) == Pauli::Z);

    auto s = conjugate_clifford(CliffordGate::S, q({0}), PauliString::single(1, 0, Pauli::X));
    CHECK(s.coeff == -1.0);
    CHECK(s.string.letter(0) == Pauli::Y);

    auto sw = conjugate_clifford(CliffordGate::SWAP, q({0, 1}),
                                 PauliString::single(2, 0, Pauli::X));
    CHECK(sw.coeff == 1.0);
    CHECK(sw.string.letter(0) == Pauli::I);
    CHECK(sw.string.letter(1) == Pauli::X);

    CHECK_THROWS_AS(conjugate_clifford(CliffordGate::H, q({3}),
                                       PauliString::single(2, 0, Pauli::X)),
                    std::out_of_range);
}

TEST_CASE("named Clifford rules agree with explicit-matrix conjugation") {
    struct Case {
        CliffordGate gate;
        int arity;
    };
    const Case cases[] = {
        {CliffordGate::H, 1},    {CliffordGate::S, 1},  {CliffordGate::Sdg, 1},
        {CliffordGate::X, 1},    {CliffordGate::Y, 1},  {CliffordGate::Z, 1},
        {CliffordGate::CNOT, 2}, {CliffordGate::CZ, 2}, {CliffordGate::SWAP, 2},
    };
    for (const Case &c : cases) {
        Matrix m = clifford_matrix(c.gate);
        int combos = c.arity == 1 ? 4 : 16;
        for (int code = 1; code < combos; ++code) {
            PauliString p(static_cast<uint32_t>(c.arity));
            for (int i = 0; i < c.arity; ++i) {
                p.set_letter(static_cast<uint32_t>(i), static_cast<Pauli>((code >> (2 * i)) & 3));
            }
            std::vector<uint32_t> support;
            for (int i = 0; i < c.arity; ++i) {
                support.push_back(static_cast<uint32_t>(i));
            }
            SignedPauliTerm fast = conjugate_clifford(c.gate, support, p);
            auto generic = conjugate_generic(m, support, p);
            REQUIRE(generic.size() == 1);
            CAPTURE(clifford_name(c.gate));
            CAPTURE(p.to_string());
            CHECK(generic[0].coeff == doctest::Approx(fast.coeff).epsilon(1e-12));
            CHECK(generic[0].string == fast.string);
        }
    }
}

TEST_CASE("Clifford conjugation is an involution up to sign") {
    auto roundtrip = [](CliffordGate g, CliffordGate ginv, const PauliString &p,
                        std::vector<uint32_t> support) {
        SignedPauliTerm once = conjugate_clifford(g, support, p);
        SignedPauliTerm back = conjugate_clifford(ginv, support, once.string);
        CHECK(back.string == p);
        CHECK(back.coeff * once.coeff == doctest::Approx(1.0));
    };
    for (int code = 1; code < 16; ++code) {
        PauliString p(2);
        p.set_letter(0, static_cast<Pauli>(code & 3));
        p.set_letter(1, static_cast<Pauli>((code >> 2) & 3));
        roundtrip(CliffordGate::S, CliffordGate::Sdg, p, {0});
        roundtrip(CliffordGate::H, CliffordGate::H, p, {1});
        roundtrip(CliffordGate::CNOT, CliffordGate::CNOT, p, {0, 1});
        roundtrip(CliffordGate::CZ, CliffordGate::CZ, p, {1, 0});
    }
}

TEST_CASE("T branching follows the (X - Y)/sqrt(2) convention") {
    PauliString x = PauliString::single(1, 0, Pauli::X);
    auto bx = branch_t(0, x);
    REQUIRE(bx.size() == 2);
    CHECK(bx[0].coeff == doctest::Approx(kSqrtHalf));
    CHECK(bx[0].string.letter(0) == Pauli::X);
    CHECK(bx[1].coeff == doctest::Approx(-kSqrtHalf));
    CHECK(bx[1].string.letter(0) == Pauli::Y);

    auto bz = branch_t(0, PauliString::single(1, 0, Pauli::Z));
    REQUIRE(bz.size() == 1);
    CHECK(bz[0].coeff == 1.0);

    auto by = branch_t(0, PauliString::single(1, 0, Pauli::Y));
    REQUIRE(by.size() == 2);
    CHECK(by[0].coeff == doctest::Approx(kSqrtHalf));
    CHECK(by[0].string.letter(0) == Pauli::Y);
    CHECK(by[1].coeff == doctest::Approx(kSqrtHalf));
    CHECK(by[1].string.letter(0) == Pauli::X);

    // Against the explicit T matrix.
    for (Pauli letter : {Pauli::X, Pauli::Y, Pauli::Z}) {
        PauliString p = PauliString::single(1, 0, letter);
        auto fast = branch_t(0, p);
        auto generic = conjugate_generic(mat_t(), q({0}), p);
        REQUIRE(fast.size() == generic.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            bool found = false;
            for (const auto &gterm : generic) {
                if (gterm.string == fast[i].string) {
                    found = true;
                    CHECK(gterm.coeff == doctest::Approx(fast[i].coeff).epsilon(1e-12));
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("branching preserves the total squared coefficient") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> letter(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        PauliString p(3);
        p.set_letter(0, static_cast<Pauli>(letter(rng)));
        p.set_letter(1, static_cast<Pauli>(letter(rng)));
        p.set_letter(2, static_cast<Pauli>(letter(rng)));
        double total = 0.0;
        for (const auto &t : branch_t(1, p)) {
            total += t.coeff * t.coeff;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("generic conjugation rejects non-unitary matrices") {
    Matrix bad(2, {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}});
    CHECK_THROWS_AS(conjugate_generic(bad, q({0}), PauliString::single(1, 0, Pauli::X)),
                    std::invalid_argument);
}

TEST_CASE("generic identity conjugation returns the input") {
    PauliString p = PauliString::from_string(2, "XZ");
    auto terms = conjugate_generic(Matrix::identity(4), q({0, 1}), p);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].coeff == doctest::Approx(1.0));
    CHECK(terms[0].string == p);
}

TEST_CASE("CNOT as explicit matrix matches the named path") {
    PauliString x0 = PauliString::single(2, 0, Pauli::X);
    auto terms = conjugate_generic(mat_cnot(), q({0, 1}), x0);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].coeff == doctest::Approx(1.0));
    CHECK(terms[0].string == PauliString::from_string(2, "XX"));
}

TEST_CASE("product state expectations") {
    ProductState zero = ProductState::all_zero(3);
    CHECK(product_state_expectation(zero, PauliString::from_string(3, "ZZI")) == 1.0);
    CHECK(product_state_expectation(zero, PauliString::from_string(3, "XII")) == 0.0);
    CHECK(product_state_expectation(zero, PauliString::from_string(3, "III")) == 1.0);

    // (|+Y> + |+>)/sqrt(3) has Bloch vector (2/3, 2/3, 1/3).
    ProductState mixed;
    mixed.qubits = {BlochVector{2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0}};
    CHECK(product_state_expectation(mixed, PauliString::single(1, 0, Pauli::X)) ==
          doctest::Approx(2.0 / 3.0));

    ProductState wrong = ProductState::all_zero(2);
    CHECK_THROWS_AS(product_state_expectation(wrong, PauliString::from_string(3, "ZII")),
                    std::invalid_argument);
}

TEST_CASE("observable validation and norm bound") {
    Observable obs;
    obs.terms.push_back({1.0, PauliString::from_string(2, "ZI")});
    obs.terms.push_back({0.5, PauliString::from_string(2, "IZ")});
    obs.validate();
    CHECK(obs.norm_lower_bound() == doctest::Approx(std::sqrt(1.25)));

    obs.terms.push_back({2.0, PauliString::from_string(2, "ZI")});
    CHECK_THROWS_AS(obs.validate(), std::invalid_argument);
}
