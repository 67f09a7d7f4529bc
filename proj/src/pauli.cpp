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

#include "pauliflow/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pauliflow {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kCoeffZeroThreshold = 1e-12;
constexpr double kImagResidueTolerance = 1e-10;

void check_qubit(const PauliString &p, uint32_t qubit) {
    if (qubit >= p.n) {
        throw std::out_of_range("qubit index out of range");
    }
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw std::invalid_argument("invalid Pauli letter");
    }
}

PauliString::PauliString(uint32_t n_qubits) : n(n_qubits) {
    if (n_qubits > 64) {
        throw std::invalid_argument("PauliString supports at most 64 qubits");
    }
}

PauliString PauliString::single(uint32_t n_qubits, uint32_t qubit, Pauli p) {
    PauliString s(n_qubits);
    check_qubit(s, qubit);
    s.set_letter(qubit, p);
    return s;
}

PauliString PauliString::from_string(uint32_t n_qubits, const std::string &letters) {
    PauliString s(n_qubits);
    if (letters.size() != n_qubits) {
        throw std::invalid_argument("letter count does not match qubit count");
    }
    for (uint32_t q = 0; q < n_qubits; ++q) {
        s.set_letter(q, pauli_from_char(letters[q]));
    }
    return s;
}

void PauliString::set_letter(uint32_t qubit, Pauli p) {
    check_qubit(*this, qubit);
    uint64_t bit = uint64_t{1} << qubit;
    x_mask &= ~bit;
    z_mask &= ~bit;
    switch (p) {
        case Pauli::I: break;
        case Pauli::X: x_mask |= bit; break;
        case Pauli::Y: x_mask |= bit; z_mask |= bit; break;
        case Pauli::Z: z_mask |= bit; break;
    }
}

std::string PauliString::to_string() const {
    std::string s(n, 'I');
    for (uint32_t q = 0; q < n; ++q) {
        s[q] = pauli_char(letter(q));
    }
    return s;
}

int weight(const PauliString &p) {
    return std::popcount(p.x_mask | p.z_mask);
}

const char *clifford_name(CliffordGate g) {
    switch (g) {
        case CliffordGate::H: return "H";
        case CliffordGate::S: return "S";
        case CliffordGate::Sdg: return "SDG";
        case CliffordGate::X: return "X";
        case CliffordGate::Y: return "Y";
        case CliffordGate::Z: return "Z";
        case CliffordGate::CNOT: return "CNOT";
        case CliffordGate::CZ: return "CZ";
        case CliffordGate::SWAP: return "SWAP";
    }
    return "?";
}

Matrix clifford_matrix(CliffordGate g) {
    switch (g) {
        case CliffordGate::H: return mat_h();
        case CliffordGate::S: return mat_s();
        case CliffordGate::Sdg: return mat_sdg();
        case CliffordGate::X: return mat_x();
        case CliffordGate::Y: return mat_y();
        case CliffordGate::Z: return mat_z();
        case CliffordGate::CNOT: return mat_cnot();
        case CliffordGate::CZ: return mat_cz();
        case CliffordGate::SWAP: return mat_swap();
    }
    throw std::logic_error("unknown Clifford gate");
}

int clifford_arity(CliffordGate g) {
    switch (g) {
        case CliffordGate::CNOT:
        case CliffordGate::CZ:
        case CliffordGate::SWAP:
            return 2;
        default:
            return 1;
    }
}

SignedPauliTerm conjugate_clifford(CliffordGate gate, std::span<const uint32_t> qubits,
                                   const PauliString &p) {
    if (static_cast<int>(qubits.size()) != clifford_arity(gate)) {
        throw std::invalid_argument("wrong support size for Clifford gate");
    }
    for (uint32_t q : qubits) {
        check_qubit(p, q);
    }

    PauliString out = p;
    int sign = 1;
    auto xbit = [&](uint32_t q) { return (out.x_mask >> q) & 1u; };
    auto zbit = [&](uint32_t q) { return (out.z_mask >> q) & 1u; };
    auto set_bits = [&](uint32_t q, uint64_t x, uint64_t z) {
        uint64_t bit = uint64_t{1} << q;
        out.x_mask = (out.x_mask & ~bit) | (x << q);
        out.z_mask = (out.z_mask & ~bit) | (z << q);
    };

    // Heisenberg direction U^dagger P U throughout; for the self-inverse
    // gates this coincides with U P U^dagger, for S/Sdg the rules below are
    // written for the dagger-on-the-left convention.
    switch (gate) {
        case CliffordGate::H: {
            uint32_t q = qubits[0];
            uint64_t x = xbit(q), z = zbit(q);
            if (x && z) sign = -sign;  // Y -> -Y
            set_bits(q, z, x);
            break;
        }
        case CliffordGate::S: {
            // X -> -Y, Y -> X, Z -> Z.
            uint32_t q = qubits[0];
            uint64_t x = xbit(q), z = zbit(q);
            if (x && !z) {
                sign = -sign;
                set_bits(q, 1, 1);
            } else if (x && z) {
                set_bits(q, 1, 0);
            }
            break;
        }
        case CliffordGate::Sdg: {
            // X -> Y, Y -> -X, Z -> Z.
            uint32_t q = qubits[0];
            uint64_t x = xbit(q), z = zbit(q);
            if (x && !z) {
                set_bits(q, 1, 1);
            } else if (x && z) {
                sign = -sign;
                set_bits(q, 1, 0);
            }
            break;
        }
        case CliffordGate::X: {
            uint32_t q = qubits[0];
            if (zbit(q)) sign = -sign;  // Y and Z flip
            break;
        }
        case CliffordGate::Y: {
            uint32_t q = qubits[0];
            if (xbit(q) != zbit(q)) sign = -sign;  // X and Z flip
            break;
        }
        case CliffordGate::Z: {
            uint32_t q = qubits[0];
            if (xbit(q)) sign = -sign;  // X and Y flip
            break;
        }
        case CliffordGate::CNOT: {
            uint32_t c = qubits[0], t = qubits[1];
            if (c == t) throw std::invalid_argument("CNOT qubits must differ");
            uint64_t xc = xbit(c), zc = zbit(c), xt = xbit(t), zt = zbit(t);
            if (xc && zt && (xt ^ zc ^ 1u)) sign = -sign;
            set_bits(t, xt ^ xc, zt);
            set_bits(c, xc, zc ^ zt);
            break;
        }
        case CliffordGate::CZ: {
            uint32_t a = qubits[0], b = qubits[1];
            if (a == b) throw std::invalid_argument("CZ qubits must differ");
            uint64_t xa = xbit(a), za = zbit(a), xb = xbit(b), zb = zbit(b);
            if (xa && xb && (za ^ zb)) sign = -sign;
            set_bits(a, xa, za ^ xb);
            set_bits(b, xb, zb ^ xa);
            break;
        }
        case CliffordGate::SWAP: {
            uint32_t a = qubits[0], b = qubits[1];
            if (a == b) throw std::invalid_argument("SWAP qubits must differ");
            uint64_t xa = xbit(a), za = zbit(a), xb = xbit(b), zb = zbit(b);
            set_bits(a, xb, zb);
            set_bits(b, xa, za);
            break;
        }
    }
    return SignedPauliTerm{static_cast<double>(sign), out};
}

std::vector<SignedPauliTerm> branch_t(uint32_t qubit, const PauliString &p) {
    check_qubit(p, qubit);
    switch (p.letter(qubit)) {
        case Pauli::I:
        case Pauli::Z:
            return {SignedPauliTerm{1.0, p}};
        case Pauli::X: {
            PauliString flipped = p;
            flipped.set_letter(qubit, Pauli::Y);
            return {SignedPauliTerm{kSqrtHalf, p}, SignedPauliTerm{-kSqrtHalf, flipped}};
        }
        case Pauli::Y: {
            PauliString flipped = p;
            flipped.set_letter(qubit, Pauli::X);
            return {SignedPauliTerm{kSqrtHalf, p}, SignedPauliTerm{kSqrtHalf, flipped}};
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

Matrix pauli_matrix_for_letters(std::span<const Pauli> letters) {
    Matrix m = Matrix::identity(1);
    for (Pauli p : letters) {
        switch (p) {
            case Pauli::I: m = kron(m, mat_identity2()); break;
            case Pauli::X: m = kron(m, mat_x()); break;
            case Pauli::Y: m = kron(m, mat_y()); break;
            case Pauli::Z: m = kron(m, mat_z()); break;
        }
    }
    return m;
}

}  // namespace

std::vector<SignedPauliTerm> conjugate_generic(const Matrix &gate,
                                               std::span<const uint32_t> qubits,
                                               const PauliString &p) {
    const std::size_t d = qubits.size();
    if (d == 0 || d > 3) {
        throw std::invalid_argument("generic gates support one to three qubits");
    }
    if (gate.dim() != (std::size_t{1} << d)) {
        throw std::invalid_argument("gate matrix dimension does not match support size");
    }
    if (!gate.is_unitary(1e-10)) {
        throw std::invalid_argument("gate matrix is not unitary within 1e-10");
    }
    for (uint32_t q : qubits) {
        check_qubit(p, q);
    }

    std::vector<Pauli> letters(d);
    for (std::size_t i = 0; i < d; ++i) {
        letters[i] = p.letter(qubits[i]);
    }

    Matrix conj = gate.dagger() * pauli_matrix_for_letters(letters) * gate;

    const std::size_t dim = gate.dim();
    const std::size_t strings = std::size_t{1} << (2 * d);
    std::vector<SignedPauliTerm> out;
    double sumsq = 0.0;
    std::vector<Pauli> target(d);
    for (std::size_t code = 0; code < strings; ++code) {
        for (std::size_t i = 0; i < d; ++i) {
            target[i] = static_cast<Pauli>((code >> (2 * i)) & 3u);
        }
        Matrix basis = pauli_matrix_for_letters(target);
        cplx amp = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                amp += basis.at(r, c) * conj.at(c, r);
            }
        }
        amp /= static_cast<double>(dim);
        if (std::abs(amp.imag()) > kImagResidueTolerance) {
            throw std::runtime_error("transition amplitude has non-real residue");
        }
        double c = amp.real();
        if (std::abs(c) < kCoeffZeroThreshold) {
            continue;
        }
        sumsq += c * c;
        PauliString s = p;
        for (std::size_t i = 0; i < d; ++i) {
            s.set_letter(qubits[i], target[i]);
        }
        out.push_back(SignedPauliTerm{c, s});
    }
    if (std::abs(sumsq - 1.0) > 1e-9) {
        throw std::runtime_error("conjugation does not preserve total squared coefficient");
    }
    return out;
}

ProductState ProductState::all_zero(uint32_t n) {
    ProductState s;
    s.qubits.assign(n, BlochVector{0.0, 0.0, 1.0});
    return s;
}

void ProductState::validate() const {
    for (const BlochVector &b : qubits) {
        double norm2 = b.rx * b.rx + b.ry * b.ry + b.rz * b.rz;
        if (norm2 > 1.0 + 1e-12) {
            throw std::invalid_argument("Bloch vector outside the unit ball");
        }
    }
}

ProductState ProductState::all_plus(uint32_t n) {
    ProductState s;
    s.qubits.assign(n, BlochVector{1.0, 0.0, 0.0});
    return s;
}

double product_state_expectation(const ProductState &state, const PauliString &p) {
    if (state.n() != p.n) {
        throw std::invalid_argument("state and Pauli string qubit counts differ");
    }
    double value = 1.0;
    uint64_t support = p.x_mask | p.z_mask;
    while (support != 0) {
        uint32_t q = static_cast<uint32_t>(std::countr_zero(support));
        support &= support - 1;
        const BlochVector &b = state.qubits[q];
        switch (p.letter(q)) {
            case Pauli::X: value *= b.rx; break;
            case Pauli::Y: value *= b.ry; break;
            case Pauli::Z: value *= b.rz; break;
            case Pauli::I: break;
        }
        if (value == 0.0) {
            return 0.0;
        }
    }
    return value;
}

Observable Observable::single(PauliString p, double coeff) {
    Observable o;
    o.terms.push_back(Term{coeff, std::move(p)});
    return o;
}

double Observable::norm_lower_bound() const {
    double s = 0.0;
    for (const Term &t : terms) {
        s += t.coeff * t.coeff;
    }
    return std::sqrt(s);
}

void Observable::validate() const {
    if (terms.empty()) {
        throw std::invalid_argument("observable must have at least one term");
    }
    struct Key {
        uint64_t x, z;
        bool operator==(const Key &o) const { return x == o.x && z == o.z; }
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const {
            return std::hash<uint64_t>{}(k.x * 0x9e3779b97f4a7c15ull ^ k.z);
        }
    };
    std::unordered_set<Key, KeyHash> seen;
    uint32_t n = terms.front().string.n;
    std::size_t budget = std::max<std::size_t>(
        64, static_cast<std::size_t>(n) * n * n);
    if (terms.size() > budget) {
        throw std::invalid_argument("observable exceeds the polynomial term budget");
    }
    for (const Term &t : terms) {
        if (t.string.n != n) {
            throw std::invalid_argument("observable terms act on different qubit counts");
        }
        if (!seen.insert(Key{t.string.x_mask, t.string.z_mask}).second) {
            throw std::invalid_argument("observable terms must be distinct Pauli strings");
        }
    }
}

}  // namespace pauliflow
