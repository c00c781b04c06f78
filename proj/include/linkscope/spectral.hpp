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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "linkscope/dense.hpp"
#include "linkscope/graph.hpp"

namespace linkscope {

struct SpectralConfig {
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  // Matvec is always evaluated in a fixed sequential order; the flag is kept
  // so callers can state the requirement explicitly.
  bool deterministic = true;
};

enum class EigenStatus {
  kConverged,
  kUnconverged,
  // Spectral radius is zero (the view is acyclic). The vector is a degree
  // fallback, not an eigenvector.
  kNilpotentOrZero,
};

std::string to_string(EigenStatus status);

struct EigenResult {
  double eigenvalue = 0.0;
  std::vector<double> vector;
  int iterations = 0;
  double residual = 0.0;
  EigenStatus status = EigenStatus::kConverged;

  bool converged() const { return status == EigenStatus::kConverged; }
};

// Leading eigenpair of A^T (the left Perron vector y of A, eigenvector
// centrality over followers). Power iteration on A^T + I from a jittered
// all-ones start; converged when ||A^T y - lambda y|| <= tol * max(lambda, 1).
// For acyclic views returns eigenvalue 0, status kNilpotentOrZero and the
// normalized in-degree vector (uniform if the view has no edges).
EigenResult leading_left_eigenpair(const EdgeView& view, const SpectralConfig& cfg = {});

// Same for A (right vector z). The acyclic fallback is the normalized
// out-degree vector.
EigenResult leading_right_eigenpair(const EdgeView& view, const SpectralConfig& cfg = {});

enum class Side { kRight, kLeft };

struct DenseSpectrum {
  std::vector<Complex> eigenvalues;
  ComplexMatrix eigenvectors;
  std::size_t leading_index = 0;
  double leading_eigenvalue = 0.0;
  // Unit-norm, sign-fixed so the entries sum to a nonnegative value.
  std::vector<double> leading_vector;
  double condition = 1.0;  // estimate of cond_2(V); infinity when singular
  bool diagonalizable = true;
  std::size_t rank = 0;  // eigenvalues with modulus > 1e-10 * max modulus
};

inline constexpr std::size_t kDenseOracleLimit = 512;
inline constexpr double kDiagonalizableConditionLimit = 1e10;

// Full spectrum of a dense nonnegative matrix. The leading eigenvalue is the
// one with the largest real part, which for nonnegative input is the
// spectral radius.
DenseSpectrum dense_spectrum(const DenseMatrix& a);

// Dense spectrum of the view's adjacency (kRight) or its transpose (kLeft).
// Throws InputError when n exceeds kDenseOracleLimit.
DenseSpectrum dense_spectrum_oracle(const EdgeView& view, Side side = Side::kRight);

DenseMatrix to_dense(const EdgeView& view);

// Check of lambda(A) - sum_{E_R} y_i y_j <= lambda(A~(E_R)) with every
// quantity taken from the dense oracle. `removed_constant` is the diagnostic
// ||V|| ||V^-1|| rank(Sigma) of the original matrix (the constant appearing
// in the matching upper bound); it is reported, never asserted.
struct RemovalBoundCheck {
  double lambda_original = 0.0;
  double lambda_removed = 0.0;
  double score_sum = 0.0;
  double lower_bound = 0.0;  // lambda_original - score_sum
  double slack = 0.0;        // lambda_removed - lower_bound
  bool holds = false;        // lower_bound <= lambda_removed + tolerance
  double diagnostic_constant = 0.0;
  bool diagonalizable = true;
};

RemovalBoundCheck check_removal_lower_bound(const EdgeView& view, const RemovalSet& removal,
                                            double tolerance = 1e-6);

}  // namespace linkscope
