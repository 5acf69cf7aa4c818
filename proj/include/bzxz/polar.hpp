// Copyright 2026 The bzxz Authors
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

#include <algorithm>
#include <utility>
#include <vector>

#include "bzxz/linalg.hpp"

namespace bzxz {

// ---------------------------------------------------------------------------
// Light matrices: at most one entry of modulus > zero_tol per row and column.
// ---------------------------------------------------------------------------

struct LightProfile {
  bool is_light = false;
  std::size_t weight = 0;
  std::vector<std::pair<std::size_t, std::size_t>> nonzero_positions;  // (row, col)
};

inline LightProfile light_weight(const Matrix& m, double zero_tol = 1e-12) {
  LightProfile out;
  if (m.rows() != m.cols()) return out;
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<int> row_count(n, 0), col_count(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (std::abs(m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) > zero_tol) {
        ++row_count[r];
        ++col_count[c];
        out.nonzero_positions.emplace_back(r, c);
      }
    }
  }
  out.weight = out.nonzero_positions.size();
  out.is_light = std::all_of(row_count.begin(), row_count.end(), [](int k) { return k <= 1; }) &&
                 std::all_of(col_count.begin(), col_count.end(), [](int k) { return k <= 1; });
  return out;
}

// ---------------------------------------------------------------------------
// Completion of singular polar factors.
// ---------------------------------------------------------------------------

enum class CompletionKind { identity_like, canonical_classical, explicit_values };

/// Which free phase the canonical classical rule assigns: the x-type slots of
/// the diagonal blocks (11, 22) take -i, the y-type slots of the off-diagonal
/// blocks (12, 21) take +i.
enum class SlotRole { x_type, y_type };

struct CompletionRule {
  CompletionKind kind = CompletionKind::identity_like;
  SlotRole role = SlotRole::x_type;
  std::vector<Complex> values;  // explicit_values only, consumed slot by slot

  static CompletionRule identity_like() { return {}; }

  static CompletionRule canonical_classical(SlotRole role) {
    return {CompletionKind::canonical_classical, role, {}};
  }

  /// Canonical rule for block (row, col) of a 2x2 block partition, 0-based.
  static CompletionRule canonical_for_block(int row, int col) {
    return canonical_classical(row == col ? SlotRole::x_type : SlotRole::y_type);
  }

  static CompletionRule explicit_list(std::vector<Complex> v) {
    return {CompletionKind::explicit_values, SlotRole::x_type, std::move(v)};
  }

  Complex value_for(std::size_t slot) const {
    switch (kind) {
      case CompletionKind::identity_like:
        return 1.0;
      case CompletionKind::canonical_classical:
        return role == SlotRole::x_type ? -kI : kI;
      case CompletionKind::explicit_values:
        if (slot >= values.size()) {
          throw Error(ErrorCode::invalid_options,
                      "explicit completion has " + std::to_string(values.size()) +
                          " values, slot " + std::to_string(slot) + " requested");
        }
        return values[slot];
    }
    return 1.0;
  }
};

// ---------------------------------------------------------------------------
// Polar decomposition M = P V.
// ---------------------------------------------------------------------------

enum class PolarMethod { heron, spectral, light };

enum class PolarStrategy { automatic, heron_only, spectral_only };

inline const char* to_string(PolarMethod m) {
  switch (m) {
    case PolarMethod::heron: return "heron";
    case PolarMethod::spectral: return "spectral";
    case PolarMethod::light: return "light";
  }
  return "?";
}

/// A non-unique entry of V. For the light path (row, col) is the entry of V;
/// for the spectral path row == col == index of the completed kernel direction.
struct FreeSlot {
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value;
};

struct PolarFactors {
  Matrix p;
  Matrix v;
  std::vector<FreeSlot> free_slots;
  PolarMethod method = PolarMethod::heron;
  int iterations_used = 0;
  double residual = 0.0;
};

struct PolarOptions {
  int max_iter = 100;
  double conv_tol = 1e-10;
  /// Singular when the smallest singular value is below singularity_tol * dim.
  double singularity_tol = 1e-12;
  double zero_tol = 1e-12;
  CompletionRule completion;
  PolarStrategy strategy = PolarStrategy::automatic;
};

namespace detail {

inline void validate(const Matrix& m, const PolarOptions& opts) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::shape_mismatch, "polar_decompose: matrix must be square");
  }
  if (opts.max_iter < 1 || !(opts.conv_tol > 0.0) || !(opts.singularity_tol >= 0.0) ||
      !(opts.zero_tol >= 0.0)) {
    throw Error(ErrorCode::invalid_options,
                "polar_decompose: need max_iter >= 1, conv_tol > 0, non-negative thresholds");
  }
  for (const Complex& z : opts.completion.values) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
      throw Error(ErrorCode::invalid_options, "explicit completion values must have unit modulus");
    }
  }
}

inline void finish(const Matrix& m, PolarFactors& f) {
  f.p = 0.5 * (f.p + f.p.adjoint()).eval();
  f.residual = (f.p * f.v - m).norm();
}

/// Orthonormal vectors spanning the complement of the columns of `basis`,
/// taken greedily from e_0, e_1, ... by Gram-Schmidt.
inline Matrix complete_basis(const Matrix& basis, Eigen::Index n) {
  Matrix out(n, n - basis.cols());
  Matrix accepted = basis;
  Eigen::Index filled = 0;
  for (Eigen::Index k = 0; k < n && filled < out.cols(); ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass) e -= accepted * (accepted.adjoint() * e);
    const double len = e.norm();
    if (len < 0.5) continue;
    e /= len;
    out.col(filled++) = e;
    accepted.conservativeResize(Eigen::NoChange, accepted.cols() + 1);
    accepted.col(accepted.cols() - 1) = e;
  }
  return out;
}

}  // namespace detail

/// Closed-form polar factors of a light matrix: P holds the row moduli on its
/// diagonal, V is a complex permutation. Unmatched rows and columns are paired
/// in increasing order and each pairing is a free slot.
inline PolarFactors light_polar(const Matrix& m, const PolarOptions& opts = {}) {
  detail::validate(m, opts);
  const LightProfile lp = light_weight(m, opts.zero_tol);
  if (!lp.is_light) throw Error(ErrorCode::invalid_options, "light_polar: matrix is not light");
  const Eigen::Index n = m.rows();
  PolarFactors f;
  f.method = PolarMethod::light;
  f.p = Matrix::Zero(n, n);
  f.v = Matrix::Zero(n, n);
  std::vector<bool> row_used(static_cast<std::size_t>(n), false);
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);
  for (const auto& [r, c] : lp.nonzero_positions) {
    const Complex z = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    f.p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = std::abs(z);
    f.v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z / std::abs(z);
    row_used[r] = col_used[c] = true;
  }
  std::size_t next_col = 0;
  for (std::size_t r = 0; r < row_used.size(); ++r) {
    if (row_used[r]) continue;
    while (col_used[next_col]) ++next_col;
    const Complex z = opts.completion.value_for(f.free_slots.size());
    f.v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(next_col)) = z;
    f.free_slots.push_back({r, next_col, z});
    col_used[next_col] = true;
  }
  detail::finish(m, f);
  return f;
}

inline double smallest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

/// SVD-based polar factors. Range directions are fixed by M; kernel directions
/// on both sides are completed from the standard basis and joined with the
/// phase supplied by the completion rule.
inline PolarFactors spectral_polar(const Matrix& m, const PolarOptions& opts = {}) {
  detail::validate(m, opts);
  const Eigen::Index n = m.rows();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double threshold = opts.singularity_tol * static_cast<double>(n);
  Eigen::Index rank = 0;
  while (rank < n && sigma(rank) > threshold) ++rank;

  Matrix left(n, n), right(n, n);
  left.leftCols(rank) = svd.matrixU().leftCols(rank);
  right.leftCols(rank) = svd.matrixV().leftCols(rank);
  PolarFactors f;
  f.method = PolarMethod::spectral;
  if (rank < n) {
    left.rightCols(n - rank) = detail::complete_basis(left.leftCols(rank), n);
    right.rightCols(n - rank) = detail::complete_basis(right.leftCols(rank), n);
    for (Eigen::Index k = rank; k < n; ++k) {
      const Complex z = opts.completion.value_for(f.free_slots.size());
      left.col(k) *= z;
      const auto idx = static_cast<std::size_t>(k);
      f.free_slots.push_back({idx, idx, z});
    }
  }
  Eigen::VectorXd kept = sigma;
  for (Eigen::Index k = rank; k < n; ++k) kept(k) = 0.0;
  f.v = left * right.adjoint();
  f.p = left * kept.asDiagonal() * left.adjoint();
  detail::finish(m, f);
  return f;
}

/// Heron/Newton iteration X <- (X + X^{-dag}) / 2 towards the unitary factor.
/// Throws NonConvergence when max_iter is exhausted first.
inline PolarFactors heron_polar(const Matrix& m, const PolarOptions& opts = {}) {
  detail::validate(m, opts);
  const Eigen::Index n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix x = m;
  double step = std::numeric_limits<double>::infinity();
  int k = 0;
  while (k < opts.max_iter) {
    ++k;
    const Matrix inv_adj = Eigen::PartialPivLU<Matrix>(x.adjoint()).solve(id);
    Matrix next = 0.5 * (x + inv_adj);
    step = (next - x).norm();
    x = std::move(next);
    if (!std::isfinite(step)) break;
    if (step <= opts.conv_tol) break;
  }
  if (!(step <= opts.conv_tol)) {
    throw Error(ErrorCode::non_convergence, "Heron iteration stopped after " + std::to_string(k) +
                                                " steps with step size " + std::to_string(step));
  }
  PolarFactors f;
  f.method = PolarMethod::heron;
  f.iterations_used = k;
  f.v = std::move(x);
  f.p = m * f.v.adjoint();
  detail::finish(m, f);
  return f;
}

inline PolarFactors polar_decompose(const Matrix& m, const PolarOptions& opts = {}) {
  detail::validate(m, opts);
  switch (opts.strategy) {
    case PolarStrategy::heron_only:
      return heron_polar(m, opts);
    case PolarStrategy::spectral_only:
      return spectral_polar(m, opts);
    case PolarStrategy::automatic:
      break;
  }
  if (light_weight(m, opts.zero_tol).is_light) return light_polar(m, opts);
  if (smallest_singular_value(m) < opts.singularity_tol * static_cast<double>(m.rows())) {
    return spectral_polar(m, opts);
  }
  return heron_polar(m, opts);
}

inline bool is_regular(const Matrix& m, const PolarOptions& opts = {}) {
  return smallest_singular_value(m) >= opts.singularity_tol * static_cast<double>(m.rows());
}

}  // namespace bzxz
