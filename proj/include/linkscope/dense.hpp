// Copyright 2026 The linkscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense linear algebra used as a verification oracle: a full
// eigen-decomposition (Jacobi for symmetric input, Hessenberg reduction plus
// shifted QR otherwise), inversion and spectral norms. Sized for n <= 512.

#include <complex>
#include <cstddef>
#include <vector>

namespace linkscope {

using Complex = std::complex<double>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  Matrix transposed() const {
    Matrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using DenseMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

bool is_symmetric(const DenseMatrix& a);

struct DenseEigen {
  std::vector<Complex> values;
  // Column k is the (unit-norm) right eigenvector for values[k].
  ComplexMatrix vectors;
};

// Full eigen-decomposition. Symmetric input goes through cyclic Jacobi
// (orthonormal vectors); everything else through orthogonal Hessenberg
// reduction and Francis double-shift QR with back-substitution.
DenseEigen eigen_decompose(const DenseMatrix& a);

// Gauss-Jordan with partial pivoting. Returns false when a pivot falls below
// rel_pivot_tol times the largest column entry (numerically singular).
bool invert(const ComplexMatrix& a, ComplexMatrix& inverse, double rel_pivot_tol = 1e-14);

// Largest singular value via power iteration on M^H M.
double spectral_norm(const ComplexMatrix& m, int max_iter = 2000, double rel_tol = 1e-13);

}  // namespace linkscope
