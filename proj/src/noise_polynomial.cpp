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

#include "pauliflow/noise_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pauliflow {

namespace {

using cd = std::complex<double>;

cd eval_poly(const std::vector<double> &coeffs, cd x) {
    cd acc{0.0, 0.0};
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * x + coeffs[i];
    }
    return acc;
}

cd eval_deriv(const std::vector<double> &coeffs, cd x) {
    cd acc{0.0, 0.0};
    for (std::size_t i = coeffs.size(); i-- > 1;) {
        acc = acc * x + static_cast<double>(i) * coeffs[i];
    }
    return acc;
}

/// Aberth-Ehrlich simultaneous iteration on a monic-normalized polynomial.
std::vector<cd> aberth_roots(std::vector<double> coeffs) {
    const std::size_t degree = coeffs.size() - 1;
    double lead = coeffs.back();
    for (double &c : coeffs) {
        c /= lead;
    }

    double radius = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
        radius = std::max(radius, std::abs(coeffs[i]));
    }
    radius = 1.0 + radius;  // Cauchy bound

    std::vector<cd> roots(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        double angle = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(degree) +
                       0.437;  // fixed offset to avoid symmetry stalls
        roots[i] = std::polar(0.5 * radius, angle);
    }

    const int max_iters = 600;
    for (int iter = 0; iter < max_iters; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            cd p = eval_poly(coeffs, roots[i]);
            cd dp = eval_deriv(coeffs, roots[i]);
            if (std::abs(dp) < 1e-300) {
                roots[i] += cd{1e-8, 1e-8};
                worst = 1.0;
                continue;
            }
            cd newton = p / dp;
            cd repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < degree; ++j) {
                if (j == i) continue;
                cd diff = roots[i] - roots[j];
                if (std::abs(diff) < 1e-300) {
                    diff = cd{1e-12, 1e-12};
                }
                repulsion += 1.0 / diff;
            }
            cd denom = 1.0 - newton * repulsion;
            cd step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            roots[i] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(roots[i])));
        }
        if (worst < 1e-14) {
            break;
        }
    }
    // Newton polish.
    for (cd &r : roots) {
        for (int it = 0; it < 3; ++it) {
            cd dp = eval_deriv(coeffs, r);
            if (std::abs(dp) < 1e-300) break;
            r -= eval_poly(coeffs, r) / dp;
        }
    }
    return roots;
}

}  // namespace

int RootProfile::count_within(double radius) const {
    int count = 0;
    for (const cd &r : roots) {
        if (std::abs(r) <= radius) {
            ++count;
        }
    }
    return count;
}

std::vector<double> RootProfile::sorted_magnitudes() const {
    std::vector<double> mags;
    mags.reserve(roots.size());
    for (const cd &r : roots) {
        mags.push_back(std::abs(r));
    }
    std::sort(mags.begin(), mags.end());
    return mags;
}

RootProfile find_roots(const WeightPolynomial &poly) {
    if (poly.empty() || poly.degree() < 1) {
        throw std::invalid_argument("root finding needs degree >= 1");
    }
    std::vector<double> coeffs = poly.dense();

    RootProfile profile;
    std::size_t first_nonzero = 0;
    while (first_nonzero < coeffs.size() && coeffs[first_nonzero] == 0.0) {
        ++first_nonzero;
    }
    if (first_nonzero == coeffs.size()) {
        throw std::invalid_argument("zero polynomial has no root profile");
    }
    profile.zero_multiplicity = static_cast<int>(first_nonzero);
    for (std::size_t i = 0; i < first_nonzero; ++i) {
        profile.roots.emplace_back(0.0, 0.0);
    }
    std::vector<double> reduced(coeffs.begin() + static_cast<long>(first_nonzero), coeffs.end());

    if (reduced.size() == 2) {
        profile.roots.emplace_back(-reduced[0] / reduced[1], 0.0);
    } else if (reduced.size() == 3) {
        // Quadratic formula, numerically careful variant.
        double a = reduced[2], b = reduced[1], c = reduced[0];
        cd disc = std::sqrt(cd{b * b - 4.0 * a * c, 0.0});
        cd q = (b >= 0.0) ? (-b - disc) / 2.0 : (-b + disc) / 2.0;
        if (std::abs(q) > 1e-300) {
            profile.roots.push_back(q / a);
            profile.roots.push_back(c / q);
        } else {
            profile.roots.emplace_back(0.0, 0.0);
            profile.roots.emplace_back(0.0, 0.0);
        }
    } else if (reduced.size() > 3) {
        for (const cd &r : aberth_roots(reduced)) {
            profile.roots.push_back(r);
        }
    }

    profile.all_real = true;
    for (const cd &r : profile.roots) {
        if (std::abs(r.imag()) >= 1e-8 * (1.0 + std::abs(r.real()))) {
            profile.all_real = false;
            break;
        }
    }
    for (double radius : {0.25, 0.5, 1.0, 2.0}) {
        profile.count_within_radius[radius] = profile.count_within(radius);
    }
    return profile;
}

double reconstruction_error(const WeightPolynomial &poly, const RootProfile &profile) {
    std::vector<double> coeffs = poly.dense();
    std::vector<cd> built{cd{coeffs.back(), 0.0}};
    for (const cd &r : profile.roots) {
        std::vector<cd> next(built.size() + 1, cd{0.0, 0.0});
        for (std::size_t i = 0; i < built.size(); ++i) {
            next[i + 1] += built[i];
            next[i] -= built[i] * r;
        }
        built = std::move(next);
    }
    double scale = 0.0;
    for (double c : coeffs) {
        scale = std::max(scale, std::abs(c));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        worst = std::max(worst, std::abs(built[i] - cd{coeffs[i], 0.0}) / scale);
    }
    return worst;
}

double root_radius_bound(const WeightPolynomial &poly, int k) {
    int degree = poly.degree();
    if (degree < 1) {
        throw std::invalid_argument("bound needs degree >= 1");
    }
    double leading = poly.coefficient(degree);
    if (leading == 0.0) {
        throw std::invalid_argument("leading coefficient must be nonzero");
    }
    if (k < 0 || k >= degree - 1) {
        throw std::invalid_argument("root index must satisfy 0 <= k <= M-2");
    }
    double exponent = 1.0 / static_cast<double>(degree - k - 1);
    return std::pow(poly.l2_norm() / std::abs(leading), exponent);
}

FragilityCertificate fragility_certificate(const WeightPolynomial &poly,
                                           const FragilityOptions &options) {
    FragilityCertificate cert;
    if (poly.empty() || poly.degree() < 1) {
        cert.reason = "polynomial has no degree";
        return cert;
    }
    RootProfile profile = find_roots(poly);
    if (!profile.all_real) {
        cert.reason = "roots not all real";
        return cert;
    }
    const double R = options.radius;
    const double eps = options.interval;
    const int g = options.g_threshold;
    if (profile.count_within(R) < g) {
        cert.reason = "fewer roots within R than the threshold";
        return cert;
    }
    std::vector<double> roots;
    roots.reserve(profile.roots.size());
    for (const cd &r : profile.roots) {
        roots.push_back(r.real());
    }
    for (double r : roots) {
        if (r >= 1.0 - eps && r < 1.0) {
            cert.reason = "root inside the check interval [1-eps, 1)";
            return cert;
        }
    }
    double q1 = poly.evaluate_x(1.0);
    if (std::abs(q1) <= options.value_floor) {
        cert.reason = "|Q(1)| below the value floor";
        return cert;
    }

    cert.applicable = true;
    cert.q_at_one = q1;
    cert.c_eff = static_cast<double>(g) / ((1.0 + R) * (1.0 + R));

    auto y_prime = [&](double x) {
        double s = 0.0;
        for (double r : roots) {
            s += 1.0 / (x - r);
        }
        return s;
    };
    auto y_second = [&](double x) {
        double s = 0.0;
        for (double r : roots) {
            s -= 1.0 / ((x - r) * (x - r));
        }
        return s;
    };

    const double left = 1.0 - eps;
    double yp1 = y_prime(1.0);

    // Anchor for the quadratic decay envelope. Y' is strictly decreasing
    // (Y'' < 0), so on [1-eps, 1] it is positive throughout, negative
    // throughout, or crosses zero once.
    double anchor = 1.0;
    if (yp1 >= 0.0) {
        cert.anchor_kind = "right-end";
        anchor = 1.0;
    } else if (y_prime(left) <= 0.0) {
        cert.anchor_kind = "left-end";
        anchor = left;
    } else {
        cert.anchor_kind = "stationary";
        double lo = left, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            double mid = (lo + hi) / 2.0;
            if (y_prime(mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        anchor = (lo + hi) / 2.0;
    }
    cert.anchor_x = anchor;
    cert.y_prime_anchor = y_prime(anchor);

    double q_anchor = std::abs(poly.evaluate_x(anchor));
    double concavity_slack = -std::numeric_limits<double>::infinity();
    double envelope_ratio = 0.0;
    const int grid = std::max(2, options.grid_points);
    for (int i = 0; i < grid; ++i) {
        double x = left + (1.0 - left) * static_cast<double>(i) / static_cast<double>(grid);
        double ys = y_second(x);
        double bound = -static_cast<double>(g) / ((x + R) * (x + R));
        concavity_slack = std::max(concavity_slack, ys - bound);

        double dx = x - anchor;
        double log_env = std::log(q_anchor) + cert.y_prime_anchor * dx -
                         0.5 * cert.c_eff * dx * dx;
        double envelope = std::exp(log_env);
        double abs_q = std::abs(poly.evaluate_x(x));
        envelope_ratio = std::max(envelope_ratio, abs_q / envelope);
        cert.samples.push_back(FragilityCertificate::Sample{x, abs_q, envelope});
    }
    cert.concavity_slack = concavity_slack;
    cert.envelope_ratio = envelope_ratio;
    cert.verified = concavity_slack <= 1e-9 && envelope_ratio <= 1.0 + 1e-9;
    return cert;
}

nlohmann::json root_report_json(const WeightPolynomial &poly, const RootProfile &profile,
                                const std::optional<FragilityCertificate> &certificate) {
    nlohmann::json j;
    j["l2_norm"] = poly.l2_norm();
    j["degree"] = poly.degree();
    nlohmann::json roots = nlohmann::json::array();
    for (const cd &r : profile.roots) {
        roots.push_back({r.real(), r.imag()});
    }
    j["roots"] = roots;
    j["all_real"] = profile.all_real;
    nlohmann::json counts;
    for (const auto &[radius, count] : profile.count_within_radius) {
        counts[std::to_string(radius)] = count;
    }
    j["count_within_radius"] = counts;
    if (certificate) {
        nlohmann::json c;
        c["applicable"] = certificate->applicable;
        if (!certificate->applicable) {
            c["reason"] = certificate->reason;
        } else {
            c["verified"] = certificate->verified;
            c["c_eff"] = certificate->c_eff;
            c["anchor_kind"] = certificate->anchor_kind;
            c["anchor_x"] = certificate->anchor_x;
            c["concavity_slack"] = certificate->concavity_slack;
            c["envelope_ratio"] = certificate->envelope_ratio;
        }
        j["certificate"] = c;
    }
    return j;
}

}  // namespace pauliflow
