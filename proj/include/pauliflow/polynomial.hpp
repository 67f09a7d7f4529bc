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

#ifndef PAULIFLOW_POLYNOMIAL_HPP
#define PAULIFLOW_POLYNOMIAL_HPP

#include <map>
#include <vector>

namespace pauliflow {

/// The noisy expectation value as a polynomial in x = 1 - p: the weight-w
/// coefficient collects every path of total Pauli weight w.
struct WeightPolynomial {
    /// weight -> coefficient; absent weights are structural zeros.
    std::map<int, double> coeffs;

    bool empty() const { return coeffs.empty(); }
    int degree() const;
    int min_degree() const;

    double coefficient(int w) const;
    void set(int w, double v);

    /// Horner evaluation at x.
    double evaluate_x(double x) const;
    /// Evaluation at noise rate p, i.e. at x = 1 - p.
    double evaluate_at_noise(double p) const;

    /// Euclidean norm of the coefficients.
    double l2_norm() const;

    /// Dense coefficient vector c[0..degree].
    std::vector<double> dense() const;

    /// Copy with |coefficient| <= threshold entries removed.
    WeightPolynomial cleaned(double threshold) const;
};

}  // namespace pauliflow

#endif
