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

#include "pauliflow/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace pauliflow {

int WeightPolynomial::degree() const {
    if (coeffs.empty()) {
        return -1;
    }
    return coeffs.rbegin()->first;
}

int WeightPolynomial::min_degree() const {
    if (coeffs.empty()) {
        return -1;
    }
    return coeffs.begin()->first;
}

double WeightPolynomial::coefficient(int w) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? 0.0 : it->second;
}

void WeightPolynomial::set(int w, double v) {
    if (w < 0) {
        throw std::invalid_argument("polynomial weight must be nonnegative");
    }
    coeffs[w] = v;
}

double WeightPolynomial::evaluate_x(double x) const {
    double acc = 0.0;
    int next = degree();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc *= std::pow(x, next - it->first);
        acc += it->second;
        next = it->first;
    }
    if (next > 0) {
        acc *= std::pow(x, next);
    }
    return acc;
}

double WeightPolynomial::evaluate_at_noise(double p) const {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("noise rate must lie in [0, 1]");
    }
    return evaluate_x(1.0 - p);
}

double WeightPolynomial::l2_norm() const {
    double s = 0.0;
    for (const auto &[w, c] : coeffs) {
        s += c * c;
    }
    return std::sqrt(s);
}

std::vector<double> WeightPolynomial::dense() const {
    std::vector<double> out(static_cast<std::size_t>(degree() + 1), 0.0);
    for (const auto &[w, c] : coeffs) {
        out[static_cast<std::size_t>(w)] = c;
    }
    return out;
}

WeightPolynomial WeightPolynomial::cleaned(double threshold) const {
    WeightPolynomial out;
    for (const auto &[w, c] : coeffs) {
        if (std::abs(c) > threshold) {
            out.coeffs[w] = c;
        }
    }
    return out;
}

}  // namespace pauliflow
