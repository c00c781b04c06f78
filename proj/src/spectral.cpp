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

#include "linkscope/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linkscope/error.hpp"
#include "linkscope/random.hpp"

namespace linkscope {
namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void normalize_or_uniform(std::vector<double>& x) {
  const double nrm = norm2(x);
  if (nrm > 0.0) {
    for (double& v : x) v /= nrm;
  } else if (!x.empty()) {
    std::fill(x.begin(), x.end(), 1.0 / std::sqrt(static_cast<double>(x.size())));
  }
}

EigenResult power_iterate(const EdgeView& view, bool transpose, const SpectralConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1) {
    throw InputError("power iteration needs tol > 0 and max_iter >= 1");
  }
  const std::size_t n = view.node_count();
  auto apply = [&](std::span<const double> x, std::span<double> out) {
    if (transpose) {
      view.multiply_transpose(x, out);
    } else {
      view.multiply(x, out);
    }
  };

  EigenResult result;
  if (n == 0) {
    result.status = EigenStatus::kNilpotentOrZero;
    return result;
  }

  std::vector<double> x(n);
  std::vector<double> w(n);

  if (is_acyclic(view)) {
    // A nonnegative matrix has spectral radius zero exactly when its pattern
    // has no cycle. One multiplication of the all-ones vector gives the
    // degree vector used as the documented fallback.
    std::fill(x.begin(), x.end(), 1.0);
    apply(x, w);
    normalize_or_uniform(w);
    apply(w, x);
    result.eigenvalue = 0.0;
    result.residual = norm2(x);
    result.vector = std::move(w);
    result.status = EigenStatus::kNilpotentOrZero;
    return result;
  }

  CounterStream jitter(cfg.seed, 0x6c656674ULL);
  for (double& v : x) v = 1.0 + 1e-6 * (jitter.uniform() - 0.5);
  normalize_or_uniform(x);

  // Iterating with A + I keeps the Perron root strictly dominant in modulus
  // even when the dominant component is periodic.
  double lambda = 0.0;
  double residual = 0.0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    apply(x, w);
    lambda = std::inner_product(x.begin(), x.end(), w.begin(), 0.0);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = w[i] - lambda * x[i];
      r2 += d * d;
    }
    residual = std::sqrt(r2);
    result.iterations = it;
    if (residual <= cfg.tol * std::max(lambda, 1.0)) {
      result.eigenvalue = lambda;
      result.residual = residual;
      result.vector = std::move(x);
      result.status = EigenStatus::kConverged;
      return result;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] += w[i];
    normalize_or_uniform(x);
  }

  // The last iterate was normalized after its residual was measured; refresh
  // both so the reported pair is self-consistent.
  apply(x, w);
  lambda = std::inner_product(x.begin(), x.end(), w.begin(), 0.0);
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) r2 += (w[i] - lambda * x[i]) * (w[i] - lambda * x[i]);
  result.eigenvalue = lambda;
  result.residual = std::sqrt(r2);
  result.vector = std::move(x);
  result.status = EigenStatus::kUnconverged;
  return result;
}

// Strongly connected components of the nonzero pattern (iterative Tarjan).
std::vector<std::vector<std::size_t>> pattern_components(const DenseMatrix& a) {
  const std::size_t n = a.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kNone);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      bool descended = false;
      while (f.next < n) {
        const std::size_t w = f.next++;
        if (a(f.node, w) == 0.0) continue;
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[f.node] = std::min(low[f.node], index[w]);
      }
      if (descended) continue;
      const std::size_t v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

// Null vector of (A - mu I) by inverse iteration with a dense LU.
std::vector<double> inverse_iteration(const DenseMatrix& a, double mu) {
  const std::size_t n = a.size();
  const double shift = mu + 1e-10 * std::max(1.0, std::abs(mu));
  DenseMatrix lu = a;
  for (std::size_t i = 0; i < n; ++i) lu(i, i) -= shift;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(lu(i, j)));
  const double tiny = std::max(scale, 1.0) * 1e-300;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(lu(r, k)) > std::abs(lu(p, k))) p = r;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(p, c), lu(k, c));
      std::swap(perm[p], perm[k]);
    }
    if (std::abs(lu(k, k)) < tiny) lu(k, k) = tiny;
    for (std::size_t r = k + 1; r < n; ++r) {
      lu(r, k) /= lu(k, k);
      const double f = lu(r, k);
      if (f == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  for (int it = 0; it < 4; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = x[perm[i]];
      for (std::size_t j = 0; j < i; ++j) acc -= lu(i, j) * y[j];
      y[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
      double acc = y[i];
      for (std::size_t j = i + 1; j < n; ++j) acc -= lu(i, j) * y[j];
      y[i] = acc / lu(i, i);
    }
    const double nrm = norm2(y);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
  }
  double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (sum < 0.0) {
    for (double& v : x) v = -v;
  }
  return x;
}

}  // namespace

std::string to_string(EigenStatus status) {
  switch (status) {
    case EigenStatus::kConverged:
      return "converged";
    case EigenStatus::kUnconverged:
      return "unconverged";
    case EigenStatus::kNilpotentOrZero:
      return "nilpotent_or_zero";
  }
  return "unknown";
}

EigenResult leading_left_eigenpair(const EdgeView& view, const SpectralConfig& cfg) {
  return power_iterate(view, /*transpose=*/true, cfg);
}

EigenResult leading_right_eigenpair(const EdgeView& view, const SpectralConfig& cfg) {
  return power_iterate(view, /*transpose=*/false, cfg);
}

DenseMatrix to_dense(const EdgeView& view) {
  DenseMatrix a(view.node_count(), 0.0);
  view.for_each_edge([&](EdgeId, const Edge& e) { a(e.follower, e.followee) = 1.0; });
  return a;
}

DenseSpectrum dense_spectrum(const DenseMatrix& a) {
  const std::size_t n = a.size();
  if (n > kDenseOracleLimit) {
    throw InputError("dense spectrum refused: n = " + std::to_string(n) + " exceeds limit " +
                     std::to_string(kDenseOracleLimit));
  }
  DenseSpectrum out;
  if (n == 0) return out;

  // The spectrum is the union of the spectra of the diagonal blocks of the
  // strongly connected components; decomposing first keeps the eigenvalues
  // of acyclic parts exactly zero instead of Jordan-perturbed.
  for (const auto& comp : pattern_components(a)) {
    if (comp.size() == 1) {
      out.eigenvalues.emplace_back(a(comp[0], comp[0]), 0.0);
      continue;
    }
    DenseMatrix block(comp.size());
    for (std::size_t r = 0; r < comp.size(); ++r)
      for (std::size_t c = 0; c < comp.size(); ++c) block(r, c) = a(comp[r], comp[c]);
    const DenseEigen eig = eigen_decompose(block);
    out.eigenvalues.insert(out.eigenvalues.end(), eig.values.begin(), eig.values.end());
  }
  std::stable_sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return std::abs(x.imag()) < std::abs(y.imag());
  });
  out.leading_index = 0;
  out.leading_eigenvalue = std::max(0.0, out.eigenvalues.front().real());

  double max_modulus = 0.0;
  for (const auto& v : out.eigenvalues) max_modulus = std::max(max_modulus, std::abs(v));
  out.rank = 0;
  if (max_modulus > 0.0) {
    for (const auto& v : out.eigenvalues) {
      if (std::abs(v) > 1e-10 * max_modulus) ++out.rank;
    }
  }

  DenseEigen full = eigen_decompose(a);
  out.eigenvectors = std::move(full.vectors);
  if (is_symmetric(a)) {
    out.condition = 1.0;
  } else {
    ComplexMatrix inv;
    if (invert(out.eigenvectors, inv)) {
      out.condition = spectral_norm(out.eigenvectors) * spectral_norm(inv);
    } else {
      out.condition = std::numeric_limits<double>::infinity();
    }
  }
  out.diagonalizable = out.condition <= kDiagonalizableConditionLimit;
  out.leading_vector = inverse_iteration(a, out.leading_eigenvalue);
  return out;
}

DenseSpectrum dense_spectrum_oracle(const EdgeView& view, Side side) {
  if (view.node_count() > kDenseOracleLimit) {
    throw InputError("dense spectrum refused: n = " + std::to_string(view.node_count()) +
                     " exceeds limit " + std::to_string(kDenseOracleLimit));
  }
  DenseMatrix a = to_dense(view);
  return dense_spectrum(side == Side::kLeft ? a.transposed() : a);
}

RemovalBoundCheck check_removal_lower_bound(const EdgeView& view, const RemovalSet& removal,
                                            double tolerance) {
  RemovalBoundCheck check;
  const DenseSpectrum left = dense_spectrum_oracle(view, Side::kLeft);
  const EdgeView reduced = remove_edges(view, removal);
  const DenseSpectrum after = dense_spectrum_oracle(reduced, Side::kRight);

  check.lambda_original = left.leading_eigenvalue;
  check.lambda_removed = after.leading_eigenvalue;
  for (const ScoredEdge& entry : removal.entries()) {
    check.score_sum += left.leading_vector[entry.edge.follower] * left.leading_vector[entry.edge.followee];
  }
  check.lower_bound = check.lambda_original - check.score_sum;
  check.slack = check.lambda_removed - check.lower_bound;
  check.holds = check.lower_bound <= check.lambda_removed + tolerance;

  // ||V|| ||V^-1|| rank(Sigma) of the original matrix.
  const DenseSpectrum right = dense_spectrum_oracle(view, Side::kRight);
  check.diagonalizable = right.diagonalizable;
  check.diagnostic_constant = right.condition * static_cast<double>(right.rank);
  return check;
}

}  // namespace linkscope
