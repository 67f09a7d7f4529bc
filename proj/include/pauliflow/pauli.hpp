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

#ifndef PAULIFLOW_PAULI_HPP
#define PAULIFLOW_PAULI_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pauliflow/matrix.hpp"

namespace pauliflow {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// An n-qubit Pauli string, bit-packed as an (x, z) mask pair per qubit:
/// 00 = I, 10 = X, 11 = Y, 01 = Z. Supports up to 64 qubits, which covers
/// every instance the enumeration engine touches.
struct PauliString {
    uint32_t n = 0;
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;

    PauliString() = default;
    explicit PauliString(uint32_t n_qubits);

    static PauliString single(uint32_t n_qubits, uint32_t qubit, Pauli p);
    /// Parse e.g. "IXZ" (qubit 0 first).
    static PauliString from_string(uint32_t n_qubits, const std::string &letters);

    Pauli letter(uint32_t qubit) const {
        static constexpr Pauli table[4] = {Pauli::I, Pauli::Z, Pauli::X, Pauli::Y};
        uint64_t x = (x_mask >> qubit) & 1u;
        uint64_t z = (z_mask >> qubit) & 1u;
        return table[(x << 1) | z];
    }

    void set_letter(uint32_t qubit, Pauli p);

    bool is_identity() const { return (x_mask | z_mask) == 0; }

    std::string to_string() const;

    bool operator==(const PauliString &other) const {
        return n == other.n && x_mask == other.x_mask && z_mask == other.z_mask;
    }
};

/// Number of non-identity sites.
int weight(const PauliString &p);

struct SignedPauliTerm {
    double coeff = 0.0;
    PauliString string;
};

/// Named Clifford gates with hard-coded conjugation rules.
enum class CliffordGate : uint8_t { H, S, Sdg, X, Y, Z, CNOT, CZ, SWAP };

const char *clifford_name(CliffordGate g);
Matrix clifford_matrix(CliffordGate g);
int clifford_arity(CliffordGate g);

/// U^dagger p U for a named Clifford. Exactly one output term, coeff in
/// {+1,-1}; sites outside the support are untouched.
SignedPauliTerm conjugate_clifford(CliffordGate gate, std::span<const uint32_t> qubits,
                                   const PauliString &p);

/// T-gate branching under the convention T^dagger X T = (X - Y)/sqrt(2).
/// I and Z pass through; X and Y branch into two terms with coefficients
/// +-1/sqrt(2). Sum of squared coefficients is always 1.
std::vector<SignedPauliTerm> branch_t(uint32_t qubit, const PauliString &p);

/// U^dagger p U for an explicit unitary on up to three qubits. qubits[0] is
/// the most significant bit of the matrix index. Coefficients are
/// tr(s' U^dagger p U)/2^D over all 4^D restricted strings s'; terms with
/// |c| < 1e-12 are dropped. Throws if the matrix is not unitary within 1e-10
/// or a transition amplitude has imaginary residue above 1e-10.
std::vector<SignedPauliTerm> conjugate_generic(const Matrix &gate,
                                               std::span<const uint32_t> qubits,
                                               const PauliString &p);

/// Per-qubit Bloch vector; rx^2 + ry^2 + rz^2 <= 1 for a physical state.
struct BlochVector {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;
};

/// Product state given as one single-qubit density operator per qubit.
struct ProductState {
    std::vector<BlochVector> qubits;

    static ProductState all_zero(uint32_t n);
    static ProductState all_plus(uint32_t n);

    uint32_t n() const { return static_cast<uint32_t>(qubits.size()); }
    /// Throws if any Bloch vector leaves the unit ball.
    void validate() const;
};

/// tr(p rho) for a product state: the product over qubits of the Bloch
/// component matching the letter (1 for I).
double product_state_expectation(const ProductState &state, const PauliString &p);

/// Linear combination of distinct Pauli strings.
struct Observable {
    struct Term {
        double coeff = 0.0;
        PauliString string;
    };
    std::vector<Term> terms;

    static Observable single(PauliString p, double coeff = 1.0);

    std::size_t term_count() const { return terms.size(); }
    /// Frobenius lower bound on the operator norm: sqrt(sum coeff^2).
    double norm_lower_bound() const;
    /// Throws if terms repeat a Pauli string, qubit counts disagree, or the
    /// term count exceeds the polynomial budget (n^3, floor 64).
    void validate() const;
};

}  // namespace pauliflow

#endif
