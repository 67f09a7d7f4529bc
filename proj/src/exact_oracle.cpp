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

#include "pauliflow/exact_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "pauliflow/compensated.hpp"
#include "pauliflow/path_engine.hpp"

namespace pauliflow {

namespace {

constexpr uint64_t kPathBudget = uint64_t{1} << 24;

Matrix gate_matrix_of(const Gate &g) {
    switch (g.kind) {
        case GateKind::H: return mat_h();
        case GateKind::S: return mat_s();
        case GateKind::Sdg: return mat_sdg();
        case GateKind::X: return mat_x();
        case GateKind::Y: return mat_y();
        case GateKind::Z: return mat_z();
        case GateKind::CNOT: return mat_cnot();
        case GateKind::CZ: return mat_cz();
        case GateKind::SWAP: return mat_swap();
        case GateKind::T: return mat_t();
        case GateKind::Generic: return *g.matrix;
    }
    throw std::logic_error("unknown gate kind");
}

}  // namespace

DensityMatrix::DensityMatrix(const ProductState &state) : n_(state.n()) {
    if (n_ == 0 || n_ > 10) {
        throw std::invalid_argument("density matrix oracle supports 1 to 10 qubits");
    }
    state.validate();
    dim_ = std::size_t{1} << n_;
    data_.assign(dim_ * dim_, cplx{0.0, 0.0});

    // rho = kron over qubits of (I + r . sigma)/2, qubit 0 outermost.
    data_[0] = 1.0;
    std::size_t cur = 1;
    for (uint32_t q = 0; q < n_; ++q) {
        const BlochVector &b = state.qubits[q];
        cplx m00{(1.0 + b.rz) / 2.0, 0.0};
        cplx m01{b.rx / 2.0, -b.ry / 2.0};
        cplx m10{b.rx / 2.0, b.ry / 2.0};
        cplx m11{(1.0 - b.rz) / 2.0, 0.0};
        std::size_t next = cur * 2;
        std::vector<cplx> grown(next * next);
        for (std::size_t r = 0; r < cur; ++r) {
            for (std::size_t c = 0; c < cur; ++c) {
                cplx v = data_[r * dim_ + c];
                if (v == cplx{0.0, 0.0}) continue;
                grown[(r * 2) * next + c * 2] = v * m00;
                grown[(r * 2) * next + c * 2 + 1] = v * m01;
                grown[(r * 2 + 1) * next + c * 2] = v * m10;
                grown[(r * 2 + 1) * next + c * 2 + 1] = v * m11;
            }
        }
        for (std::size_t r = 0; r < next; ++r) {
            for (std::size_t c = 0; c < next; ++c) {
                data_[r * dim_ + c] = grown[r * next + c];
            }
        }
        cur = next;
    }
}

void DensityMatrix::apply_gate(const Gate &gate, const Circuit &circuit) {
    Matrix u = gate_matrix_of(gate);
    const std::size_t d = gate.support.size();
    const std::size_t block = std::size_t{1} << d;
    if (u.dim() != block) {
        throw std::invalid_argument("gate matrix dimension mismatch");
    }

    // Bit position of each support qubit; support[0] is the most
    // significant bit of the gate index.
    std::vector<int> bits(d);
    for (std::size_t i = 0; i < d; ++i) {
        uint32_t q = circuit.qubit_index(gate.support[i]);
        bits[i] = static_cast<int>(n_ - 1 - q);
    }

    uint64_t support_mask = 0;
    for (int b : bits) {
        support_mask |= uint64_t{1} << b;
    }

    auto scatter = [&](std::size_t base, std::size_t pattern) {
        std::size_t idx = base;
        for (std::size_t i = 0; i < d; ++i) {
            if ((pattern >> (d - 1 - i)) & 1u) {
                idx |= std::size_t{1} << bits[i];
            }
        }
        return idx;
    };

    std::vector<cplx> amps(block);
    // rho <- U rho
    for (std::size_t col = 0; col < dim_; ++col) {
        for (std::size_t base = 0; base < dim_; ++base) {
            if ((base & support_mask) != 0) continue;
            for (std::size_t pat = 0; pat < block; ++pat) {
                amps[pat] = at(scatter(base, pat), col);
            }
            for (std::size_t r = 0; r < block; ++r) {
                cplx acc{0.0, 0.0};
                for (std::size_t k = 0; k < block; ++k) {
                    acc += u.at(r, k) * amps[k];
                }
                at(scatter(base, r), col) = acc;
            }
        }
    }
    // rho <- rho U^dagger
    for (std::size_t row = 0; row < dim_; ++row) {
        for (std::size_t base = 0; base < dim_; ++base) {
            if ((base & support_mask) != 0) continue;
            for (std::size_t pat = 0; pat < block; ++pat) {
                amps[pat] = at(row, scatter(base, pat));
            }
            for (std::size_t c = 0; c < block; ++c) {
                cplx acc{0.0, 0.0};
                for (std::size_t k = 0; k < block; ++k) {
                    acc += amps[k] * std::conj(u.at(c, k));
                }
                at(row, scatter(base, c)) = acc;
            }
        }
    }
}

void DensityMatrix::depolarize_qubit(uint32_t qubit, double p) {
    if (qubit >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
    const std::size_t bit = std::size_t{1} << (n_ - 1 - qubit);
    const double keep = 1.0 - p;
    const double mix = p / 2.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        if ((r & bit) != 0) continue;
        std::size_t r1 = r | bit;
        for (std::size_t c = 0; c < dim_; ++c) {
            if ((c & bit) != 0) continue;
            std::size_t c1 = c | bit;
            cplx d00 = at(r, c);
            cplx d11 = at(r1, c1);
            cplx partial = d00 + d11;
            at(r, c) = keep * d00 + mix * partial;
            at(r1, c1) = keep * d11 + mix * partial;
            at(r, c1) *= keep;
            at(r1, c) *= keep;
        }
    }
}

void DensityMatrix::depolarize_all(double p) {
    for (uint32_t q = 0; q < n_; ++q) {
        depolarize_qubit(q, p);
    }
}

double DensityMatrix::expectation(const PauliString &p) const {
    if (p.n != n_) {
        throw std::invalid_argument("Pauli string qubit count mismatch");
    }
    // tr(P rho) = sum_i P[i, i^flip] rho[i^flip, i].
    std::size_t flip = 0;
    for (uint32_t q = 0; q < n_; ++q) {
        Pauli letter = p.letter(q);
        if (letter == Pauli::X || letter == Pauli::Y) {
            flip |= std::size_t{1} << (n_ - 1 - q);
        }
    }
    cplx total{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        cplx phase{1.0, 0.0};
        for (uint32_t q = 0; q < n_; ++q) {
            std::size_t b = (i >> (n_ - 1 - q)) & 1u;
            switch (p.letter(q)) {
                case Pauli::I:
                case Pauli::X:
                    break;
                case Pauli::Y:
                    phase *= (b == 0) ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
                    break;
                case Pauli::Z:
                    if (b == 1) phase = -phase;
                    break;
            }
        }
        total += phase * at(i ^ flip, i);
    }
    if (std::abs(total.imag()) > 1e-10) {
        throw std::runtime_error("Pauli expectation has non-real residue");
    }
    return total.real();
}

double DensityMatrix::expectation(const Observable &obs) const {
    CompensatedSum total;
    for (const Observable::Term &t : obs.terms) {
        total.add(t.coeff * expectation(t.string));
    }
    return total.value();
}

double DensityMatrix::trace_real() const {
    CompensatedSum tr;
    for (std::size_t i = 0; i < dim_; ++i) {
        tr.add(at(i, i).real());
    }
    return tr.value();
}

double DensityMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    return worst;
}

bool DensityMatrix::positive_semidefinite(double tol) const {
    // LDL^H with the diagonal regularized by tol; any strongly negative
    // pivot certifies an eigenvalue below -tol.
    std::vector<cplx> a(data_);
    const std::size_t m = dim_;
    for (std::size_t i = 0; i < m; ++i) {
        a[i * m + i] += tol;
    }
    std::vector<double> diag(m, 0.0);
    std::vector<cplx> l(m * m, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < m; ++j) {
        cplx sum = a[j * m + j];
        for (std::size_t k = 0; k < j; ++k) {
            sum -= l[j * m + k] * std::conj(l[j * m + k]) * diag[k];
        }
        double piv = sum.real();
        if (piv < -1e-12) {
            return false;
        }
        diag[j] = piv;
        if (std::abs(piv) < 1e-300) {
            // Defective column; zero it and continue.
            for (std::size_t i = j + 1; i < m; ++i) {
                l[i * m + j] = 0.0;
            }
            continue;
        }
        for (std::size_t i = j + 1; i < m; ++i) {
            cplx s = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= l[i * m + k] * std::conj(l[j * m + k]) * diag[k];
            }
            l[i * m + j] = s / piv;
        }
    }
    return true;
}

double exact_noisy_expectation(const Circuit &circuit, const ProductState &state,
                               const Observable &obs, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    if (circuit.n_qubits() > 10) {
        throw std::invalid_argument("density matrix oracle supports at most 10 qubits");
    }
    if (static_cast<int>(state.n()) != circuit.n_qubits()) {
        throw std::invalid_argument("state qubit count does not match circuit");
    }
    DensityMatrix rho(state);
    rho.depolarize_all(p);
    for (const auto &layer : circuit.layers) {
        for (const Gate &g : layer) {
            rho.apply_gate(g, circuit);
        }
        rho.depolarize_all(p);
    }
    return rho.expectation(obs);
}

double exact_pauli_transfer(const Circuit &circuit, const Observable &obs,
                            const ProductState &state, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    obs.validate();
    CompiledCircuit compiled(circuit);
    const double x = 1.0 - p;
    CompensatedSum total;
    for (const Observable::Term &term : obs.terms) {
        EnumerateOptions options;
        options.cutoff = kUnboundedCutoff;
        options.max_paths = kPathBudget;
        CompensatedSum term_sum;
        enumerate_paths(compiled, term.string, &state, options, [&](const PathVisit &v) {
            term_sum.add(v.f * std::pow(x, v.weight));
        });
        total.add(term.coeff * term_sum.value());
    }
    return total.value();
}

ChannelCheck depolarize_channel_check(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    ChannelCheck out;
    out.p = p;
    const BlochVector probes[] = {
        {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},  {0.0, 0.0, 1.0},
        {-0.3, 0.4, 0.5}, {0.0, 0.0, 0.0},
    };
    double worst = 0.0;
    for (const BlochVector &b : probes) {
        ProductState s;
        s.qubits = {b};
        DensityMatrix rho(s);
        rho.depolarize_qubit(0, p);
        double rx = rho.expectation(PauliString::single(1, 0, Pauli::X));
        double ry = rho.expectation(PauliString::single(1, 0, Pauli::Y));
        double rz = rho.expectation(PauliString::single(1, 0, Pauli::Z));
        worst = std::max({worst, std::abs(rx - (1.0 - p) * b.rx),
                          std::abs(ry - (1.0 - p) * b.ry), std::abs(rz - (1.0 - p) * b.rz)});
        out.identity_preserved = std::abs(rho.trace_real() - 1.0) < 1e-12;
        if (!out.identity_preserved) {
            break;
        }
    }
    out.max_deviation = worst;
    out.ok = out.identity_preserved && worst < 1e-12;
    return out;
}

}  // namespace pauliflow
