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

#include "pauliflow/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace pauliflow {

Matrix::Matrix(std::size_t dim, std::vector<cplx> data) : dim_(dim), data_(std::move(data)) {
    if (data_.size() != dim_ * dim_) {
        throw std::invalid_argument("matrix data size does not match dimension");
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::dagger() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            m.at(c, r) = std::conj(at(r, c));
        }
    }
    return m;
}

Matrix Matrix::operator*(const Matrix &rhs) const {
    if (dim_ != rhs.dim_) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            cplx a = at(r, k);
            if (a == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; ++c) {
                m.at(r, c) += a * rhs.at(k, c);
            }
        }
    }
    return m;
}

bool Matrix::approx_equal(const Matrix &rhs, double tol) const {
    if (dim_ != rhs.dim_) {
        return false;
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (std::abs(data_[i] - rhs.data_[i]) > tol) {
            return false;
        }
    }
    return true;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += at(i, i);
    }
    return t;
}

double Matrix::unitarity_defect() const {
    Matrix prod = (*this) * dagger();
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            cplx expect = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(prod.at(r, c) - expect));
        }
    }
    return worst;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix m(a.dim() * b.dim());
    for (std::size_t ar = 0; ar < a.dim(); ++ar) {
        for (std::size_t ac = 0; ac < a.dim(); ++ac) {
            for (std::size_t br = 0; br < b.dim(); ++br) {
                for (std::size_t bc = 0; bc < b.dim(); ++bc) {
                    m.at(ar * b.dim() + br, ac * b.dim() + bc) = a.at(ar, ac) * b.at(br, bc);
                }
            }
        }
    }
    return m;
}

Matrix mat_identity2() {
    return Matrix::identity(2);
}

Matrix mat_x() {
    return Matrix(2, {0, 1, 1, 0});
}

Matrix mat_y() {
    return Matrix(2, {cplx{0, 0}, cplx{0, -1}, cplx{0, 1}, cplx{0, 0}});
}

Matrix mat_z() {
    return Matrix(2, {1, 0, 0, -1});
}

Matrix mat_h() {
    const double s = 1.0 / std::sqrt(2.0);
    return Matrix(2, {s, s, s, -s});
}

Matrix mat_s() {
    return Matrix(2, {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 1}});
}

Matrix mat_sdg() {
    return Matrix(2, {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, -1}});
}

Matrix mat_t() {
    return Matrix(2, {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, M_PI / 4.0)});
}

Matrix mat_cnot() {
    Matrix m(4);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    m.at(2, 3) = 1;
    m.at(3, 2) = 1;
    return m;
}

Matrix mat_cz() {
    Matrix m = Matrix::identity(4);
    m.at(3, 3) = -1;
    return m;
}

Matrix mat_swap() {
    Matrix m(4);
    m.at(0, 0) = 1;
    m.at(1, 2) = 1;
    m.at(2, 1) = 1;
    m.at(3, 3) = 1;
    return m;
}

Matrix mat_rz(double theta) {
    Matrix m(2);
    m.at(0, 0) = std::polar(1.0, -theta / 2.0);
    m.at(1, 1) = std::polar(1.0, theta / 2.0);
    return m;
}

Matrix mat_rx_exponent(double theta) {
    Matrix m(2);
    m.at(0, 0) = std::cos(theta);
    m.at(1, 1) = std::cos(theta);
    m.at(0, 1) = cplx{0, -std::sin(theta)};
    m.at(1, 0) = cplx{0, -std::sin(theta)};
    return m;
}

}  // namespace pauliflow
