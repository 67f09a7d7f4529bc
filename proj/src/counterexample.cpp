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

#include "pauliflow/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pauliflow/compensated.hpp"

namespace pauliflow {

namespace {

constexpr double kGrowthThreshold = 0.18350341907227397;  // 1 - sqrt(2/3)

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Direct compensated tail sum over even w in (ell, 4k]. The terms
/// alternate with magnitudes up to ((3x^2+x^4)/2)^k, so this is only
/// trustworthy for moderate k.
double tail_direct(int k, int ell_even, double x) {
    CompensatedSum tail;
    int start = std::max(2 * k, ell_even + 2);
    for (int w = start; w <= 4 * k; w += 2) {
        tail.add(analytic_fw(k, w) * std::pow(x, w));
    }
    return tail.value();
}

/// Euler-transformed closed form: every series term is positive, so the
/// evaluation stays stable for k in the hundreds. Valid for even ell with
/// 2k <= ell <= 4k-2:
///   E = -(-1)^{(ell-2k)/2} 2^{-k} 3^{2k-ell/2-1} x^{ell+2}
///       C(k, 2k-ell/2-1) (1-z)^k 2F1(ell/2-k+1, k+1; ell/2-k+2; z)
/// with z = x^2/3.
double tail_transformed(int k, int ell_even, double x) {
    if (x == 0.0) {
        return 0.0;
    }
    const double z = x * x / 3.0;
    const double a = ell_even / 2.0 - k + 1.0;
    const double b = k + 1.0;
    const double c = ell_even / 2.0 - k + 2.0;

    double term = 1.0;
    double series = 1.0;
    double log_offset = 0.0;
    for (int j = 0; j < 100000; ++j) {
        term *= (a + j) * (b + j) / ((c + j) * (1.0 + j)) * z;
        series += term;
        if (term < series * 1e-19) {
            break;
        }
        if (series > 1e250) {
            series *= 1e-200;
            term *= 1e-200;
            log_offset += 200.0 * std::log(10.0);
        }
    }

    double log_mag = -k * std::log(2.0) + (2 * k - ell_even / 2 - 1) * std::log(3.0) +
                     (ell_even + 2) * std::log(x) + log_binomial(k, 2 * k - ell_even / 2 - 1) +
                     k * std::log1p(-z) + std::log(series) + log_offset;
    double sign = ((((ell_even - 2 * k) / 2) % 2) == 0) ? -1.0 : 1.0;
    return sign * std::exp(log_mag);
}

}  // namespace

Matrix v_gate() {
    Matrix v(8);
    // Basis |q1 q2 q3> with q1 the most significant bit; |100> = 4 and
    // |011> = 3 swap, everything else is fixed.
    for (std::size_t basis = 0; basis < 8; ++basis) {
        std::size_t to = basis;
        if (basis == 4) {
            to = 3;
        } else if (basis == 3) {
            to = 4;
        }
        v.at(to, basis) = 1.0;
    }
    if (!v.is_unitary(1e-14)) {
        throw std::logic_error("majority gate must be unitary");
    }
    return v;
}

Circuit v_gate_circuit(int n) {
    if (n <= 0 || n % 3 != 0) {
        throw std::invalid_argument("system size must be a positive multiple of 3");
    }
    Circuit c(n, 1);
    std::vector<Gate> layer;
    Matrix v = v_gate();
    for (int i = 0; i < n; i += 3) {
        layer.push_back(Gate::generic(v, {Coord{i, 0}, Coord{i + 1, 0}, Coord{i + 2, 0}}));
    }
    c.layers.push_back(std::move(layer));
    return c;
}

PauliString majority_observable(int n, int k) {
    if (k < 1 || 3 * k > n) {
        throw std::invalid_argument("observable needs 3k <= n");
    }
    PauliString s(static_cast<uint32_t>(n));
    for (int i = 0; i < k; ++i) {
        s.set_letter(static_cast<uint32_t>(3 * i), Pauli::Z);
    }
    return s;
}

double analytic_fw(int k, int w) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    if (w % 2 != 0 || w < 2 * k || w > 4 * k) {
        return 0.0;
    }
    int m = 2 * k - w / 2;  // count of weight-2 blocks
    return std::pow(1.5, m) * std::pow(-0.5, w / 2 - k) * binomial(k, m);
}

double truncation_error(int k, int ell, double p) {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1");
    }
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    const double x = 1.0 - p;
    // E^(ell) only changes at even ell: odd ell discards the same weights
    // as ell-1.
    int lc = (ell % 2 == 0) ? ell : ell - 1;
    if (lc < 2 * k) {
        // Nothing survives the cutoff; the full series factorizes.
        return std::pow((3.0 * x * x - x * x * x * x) / 2.0, k);
    }
    if (lc >= 4 * k) {
        return 0.0;
    }
    // Partial tail: direct alternating sum loses ~0.24k digits of
    // cancellation, so switch to the all-positive transformed series for
    // large k.
    if (k <= 40) {
        return tail_direct(k, lc, x);
    }
    return tail_transformed(k, lc, x);
}

double truncation_error_hypergeometric(int k, int ell, double p) {
    if (ell % 2 != 0) {
        throw std::invalid_argument("closed form assumes even ell");
    }
    if (ell < 2 * k || ell > 4 * k - 2) {
        throw std::invalid_argument("closed form covers 2k <= ell <= 4k-2");
    }
    const double x = 1.0 - p;
    const double z = x * x / 3.0;
    // 2F1(1, b; c; z) with b = ell/2 - 2k + 1 <= 0 terminates.
    const int b = ell / 2 - 2 * k + 1;
    const int c = 2 - k + ell / 2;
    double term = 1.0;
    double series = 1.0;
    for (int j = 0; j <= -b; ++j) {
        term *= (static_cast<double>(b + j) / static_cast<double>(c + j)) * z;
        if (term == 0.0) {
            break;
        }
        series += term;
    }
    double sign = ((((ell - 2 * k) / 2) % 2) == 0) ? -1.0 : 1.0;
    return sign * std::pow(2.0, -k) * std::pow(3.0, 2 * k - ell / 2 - 1) *
           std::pow(x, ell + 2) * binomial(k, 2 * k - ell / 2 - 1) * series;
}

bool PropertyReport::all_pass() const {
    return vanishes_below_2k && full_tail_matches_product && zero_above_4k && sign_alternates &&
           growth_bound_holds;
}

PropertyReport verify_properties(int k, int ell_min, int ell_max, double p) {
    PropertyReport report;
    report.k = k;
    report.p = p;
    const double x = 1.0 - p;

    for (int w = 0; w < 2 * k; ++w) {
        if (analytic_fw(k, w) != 0.0) {
            report.vanishes_below_2k = false;
            report.failures.push_back("F_" + std::to_string(w) + " nonzero below 2k");
        }
    }

    // Property 2 as a two-route check: the direct series sum against the
    // factorized product form.
    {
        CompensatedSum series;
        for (int w = 2 * k; w <= 4 * k; w += 2) {
            series.add(analytic_fw(k, w) * std::pow(x, w));
        }
        double product = std::pow((3.0 * x * x - x * x * x * x) / 2.0, k);
        if (std::abs(series.value() - product) > 1e-9 * std::max(1.0, std::abs(product))) {
            report.full_tail_matches_product = false;
            report.failures.push_back("series sum disagrees with the product form");
        }
    }

    for (int ell = 4 * k + 1; ell <= std::max(ell_max, 4 * k + 4); ++ell) {
        if (truncation_error(k, ell, p) != 0.0) {
            report.zero_above_4k = false;
            report.failures.push_back("tail not zero at ell=" + std::to_string(ell));
        }
    }

    // Sign of the first discarded coefficient: for even ell in [2k, 4k-2],
    // sgn E^(ell) = (-1)^{(ell-2k)/2 + 1}.
    for (int ell = 2 * k; ell <= std::min(4 * k - 2, ell_max); ell += 2) {
        if (ell < ell_min) continue;
        double e = truncation_error(k, ell, p);
        if (e == 0.0) {
            continue;  // p = 1 collapses everything
        }
        double expected = ((((ell - 2 * k) / 2 + 1) % 2) == 0) ? 1.0 : -1.0;
        if (e * expected < 0.0) {
            report.sign_alternates = false;
            report.failures.push_back("sign mismatch at ell=" + std::to_string(ell));
        }
    }

    if (p < kGrowthThreshold) {
        report.growth_bound_checked = true;
        const double bound = std::pow(1.5 * x * x, k) - 1.0;
        for (int ell = 2 * k; 4 * ell <= 9 * k; ell += 2) {
            if (ell < ell_min || ell > ell_max) continue;
            double e = std::abs(truncation_error(k, ell, p));
            if (e + 1e-9 * std::max(1.0, std::abs(bound)) < bound) {
                report.growth_bound_holds = false;
                report.failures.push_back("growth bound fails at ell=" + std::to_string(ell));
            }
        }
    }
    return report;
}

MixedObservableError mixed_observable_error(int n, int ell, double p,
                                            std::optional<int> g_override) {
    if (n <= 0 || n % 3 != 0) {
        throw std::invalid_argument("system size must be a positive multiple of 3");
    }
    int g;
    if (g_override) {
        g = *g_override;
    } else {
        double lg = std::log2(static_cast<double>(n));
        g = static_cast<int>(std::ceil(lg * lg));
    }
    if (g < 1 || 12 * g > n) {
        throw std::invalid_argument("system too small: need 12 g(n) <= n");
    }
    // Largest analytic block is 4g; keep |E| inside double range.
    if (static_cast<double>(4 * g) * std::log(2.0) > 700.0) {
        throw std::invalid_argument("n too large for double-precision analytic evaluation");
    }

    MixedObservableError out;
    out.n = n;
    out.g = g;
    out.ell = ell;
    out.p = p;

    CompensatedSum total;
    double best = 0.0;
    std::optional<int> best_k;
    for (int k = 1; k <= g; ++k) {
        double e = truncation_error(4 * k, ell, p);
        total.add(e);
        if (8 * k < ell && ell < 9 * k) {
            double candidate = std::abs(e) / static_cast<double>(g);
            if (candidate > best) {
                best = candidate;
                best_k = k;
            }
        }
    }
    out.error = total.value() / static_cast<double>(g);
    out.witness_k = best_k;
    out.witness_value = best;
    return out;
}

}  // namespace pauliflow
