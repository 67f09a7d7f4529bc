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

#ifndef PAULIFLOW_MATRIX_HPP
#define PAULIFLOW_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace pauliflow {

using cplx = std::complex<double>;

/// Dense row-major square complex matrix. Gate matrices never exceed 8x8
/// (three qubits), so none of this needs to be clever.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    Matrix(std::size_t dim, std::vector<cplx> data);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cplx &at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx &at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    const std::vector<cplx> &data() const { return data_; }

    Matrix dagger() const;
    Matrix operator*(const Matrix &rhs) const;
    bool approx_equal(const Matrix &rhs, double tol) const;

    cplx trace() const;

    /// Max-norm of U U^dagger - I.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-10) const { return unitarity_defect() < tol; }

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

Matrix kron(const Matrix &a, const Matrix &b);

// Single-qubit basics, T convention diag(1, e^{i pi/4}).
Matrix mat_identity2();
Matrix mat_x();
Matrix mat_y();
Matrix mat_z();
Matrix mat_h();
Matrix mat_s();
Matrix mat_sdg();
Matrix mat_t();

// Two-qubit named gates; first support qubit is the most significant bit.
Matrix mat_cnot();
Matrix mat_cz();
Matrix mat_swap();

/// exp(-i theta Z / 2) = diag(e^{-i theta/2}, e^{i theta/2}).
Matrix mat_rz(double theta);
/// exp(-i theta X).
Matrix mat_rx_exponent(double theta);

}  // namespace pauliflow

#endif
