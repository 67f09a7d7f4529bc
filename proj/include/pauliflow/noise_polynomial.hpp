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

#ifndef PAULIFLOW_NOISE_POLYNOMIAL_HPP
#define PAULIFLOW_NOISE_POLYNOMIAL_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pauliflow/polynomial.hpp"

namespace pauliflow {

/// Roots of the weight polynomial in the variable x = 1 - p.
struct RootProfile {
    std::vector<std::complex<double>> roots;
    bool all_real = false;
    /// Zero roots peeled off before iteration (trailing structural zeros of
    /// the coefficient list).
    int zero_multiplicity = 0;
    /// Counts at a few standard radii, for reports.
    std::map<double, int> count_within_radius;

    int count_within(double radius) const;
    std::vector<double> sorted_magnitudes() const;
};

/// All complex roots by zero-deflation plus Aberth-Ehrlich iteration with a
/// Newton polish. all_real holds when every |Im r| < 1e-8 (1 + |Re r|).
RootProfile find_roots(const WeightPolynomial &poly);

/// Max relative coefficient error when rebuilding the polynomial from the
/// profile's roots and the leading coefficient.
double reconstruction_error(const WeightPolynomial &poly, const RootProfile &profile);

/// Coefficient-norm root bound (||F||_2 / |F_M|)^{1/(M-k-1)}: with roots
/// sorted by magnitude ascending and k zero-indexed, roots r_0..r_k all lie
/// within the bound. k must satisfy 0 <= k <= M-2.
double root_radius_bound(const WeightPolynomial &poly, int k);

struct FragilityOptions {
    double radius = 1.0;        // R
    double interval = 0.1;      // check x in [1-interval, 1)
    int g_threshold = 1;        // required count of roots within R
    int grid_points = 101;
    double value_floor = 1e-9;  // |Q(1)| must exceed this
};

struct FragilityCertificate {
    bool applicable = false;
    std::string reason;  // set when inapplicable

    double c_eff = 0.0;       // g / (1+R)^2
    double q_at_one = 0.0;    // Q(1)
    double y_prime_anchor = 0.0;
    double anchor_x = 1.0;    // 1, interior stationary point, or 1-interval
    std::string anchor_kind;  // "right-end" | "stationary" | "left-end"

    /// Worst slack of the concavity check: max over the grid of
    /// Y''(x) + g/(x+R)^2 (should be <= 0).
    double concavity_slack = 0.0;
    /// Max of |Q(x)| / envelope(x) over the grid (should be <= 1).
    double envelope_ratio = 0.0;
    bool verified = false;

    struct Sample {
        double x;
        double abs_q;
        double envelope;
    };
    std::vector<Sample> samples;
};

/// Checks the premises (all roots real, >= g roots within R, no root in
/// [1-interval, 1), |Q(1)| above the floor) and then verifies on a grid
/// that log|Q| is concave at rate at least g/(x+R)^2 and that |Q| stays
/// under the quadratic decay envelope anchored per the sign of Y'.
FragilityCertificate fragility_certificate(const WeightPolynomial &poly,
                                           const FragilityOptions &options);

nlohmann::json root_report_json(const WeightPolynomial &poly, const RootProfile &profile,
                                const std::optional<FragilityCertificate> &certificate);

}  // namespace pauliflow

#endif
