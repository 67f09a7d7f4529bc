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

#ifndef PAULIFLOW_COMPENSATED_HPP
#define PAULIFLOW_COMPENSATED_HPP

#include <cmath>

namespace pauliflow {

/// Neumaier-compensated accumulator. Summation order still matters at the
/// 1e-16 level, so reductions that must agree across worker counts merge
/// partial sums in a fixed order.
class CompensatedSum {
  public:
    CompensatedSum() = default;
    explicit CompensatedSum(double v) : sum_(v) {}

    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    void merge(const CompensatedSum &other) {
        add(other.sum_);
        add(other.comp_);
    }

    double value() const {
        return sum_ + comp_;
    }

    CompensatedSum &operator+=(double x) {
        add(x);
        return *this;
    }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace pauliflow

#endif
