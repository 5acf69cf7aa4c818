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

#include <cstdint>
#include <string>
#include <vector>

#include "bzxz/block_zxz.hpp"
#include "bzxz/circuit.hpp"
#include "bzxz/random.hpp"

namespace bzxz {

struct PermutationProfile {
  bool is_permutation = false;
  std::vector<std::size_t> mapping;  // mapping[col] = row of the 1 entry
};

inline PermutationProfile is_permutation(const Matrix& u, double tol = 1e-12) {
  PermutationProfile out;
  if (u.rows() == 0 || u.rows() != u.cols()) return out;
  const auto n = static_cast<std::size_t>(u.rows());
  std::vector<std::size_t> mapping(n, n);
  std::vector<int> row_hits(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      const Complex z = u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (std::abs(z) <= tol) continue;
      if (std::abs(z - 1.0) > tol || mapping[c] != n) return out;
      mapping[c] = r;
      ++row_hits[r];
    }
    if (mapping[c] == n) return out;
  }
  for (int k : row_hits)
    if (k != 1) return out;
  out.is_permutation = true;
  out.mapping = std::move(mapping);
  return out;
}

inline PermutationProfile is_permutation(const UnitaryMatrix& u, double tol = 1e-12) {
  return is_permutation(u.matrix(), tol);
}

/// Complex permutation matrix with entries in {1, i, -1, -i}: column c holds
/// i^phase[c] in row row_of_col[c]. Exact arithmetic for the classical path.
struct PhasedPermutation {
  std::vector<std::size_t> row_of_col;
  std::vector<std::uint8_t> phase;

  std::size_t size() const { return row_of_col.size(); }

  PhasedPermutation adjoint() const {
    PhasedPermutation t{std::vector<std::size_t>(size()), std::vector<std::uint8_t>(size())};
    for (std::size_t c = 0; c < size(); ++c) {
      t.row_of_col[row_of_col[c]] = c;
      t.phase[row_of_col[c]] = static_cast<std::uint8_t>((4 - phase[c]) % 4);
    }
    return t;
  }

  friend PhasedPermutation operator*(const PhasedPermutation& x, const PhasedPermutation& y) {
    PhasedPermutation p{std::vector<std::size_t>(y.size()), std::vector<std::uint8_t>(y.size())};
    for (std::size_t c = 0; c < y.size(); ++c) {
      const std::size_t mid = y.row_of_col[c];
      p.row_of_col[c] = x.row_of_col[mid];
      p.phase[c] = static_cast<std::uint8_t>((x.phase[mid] + y.phase[c]) % 4);
    }
    return p;
  }

  bool is_real_permutation() const {
    for (std::uint8_t k : phase)
      if (k != 0) return false;
    return true;
  }

  Matrix to_matrix() const {
    static const Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto n = static_cast<Eigen::Index>(size());
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t c = 0; c < size(); ++c) {
      m(static_cast<Eigen::Index>(row_of_col[c]), static_cast<Eigen::Index>(c)) = units[phase[c]];
    }
    return m;
  }
};

/// Permutation factors of U = diag(A, B) N(C) diag(I, D); C is diagonal with
/// entries +-1.
struct BirkhoffFactors {
  std::vector<std::size_t> a, b, d;  // mapping[col] = row
  std::vector<int> c;                // diagonal of C
  std::size_t weight11 = 0;
  std::size_t weight12 = 0;
};

namespace detail {

/// V of the light block picked out of the top half of U by columns
/// [col0, col0 + m), free slots set to i^free_phase. has_entry[r] reports
/// whether row r of the block carries U's 1.
inline PhasedPermutation light_factor(const std::vector<std::size_t>& mapping, std::size_t col0,
                                      std::size_t m, std::uint8_t free_phase,
                                      std::vector<bool>& has_entry, std::size_t& weight) {
  PhasedPermutation v{std::vector<std::size_t>(m, m), std::vector<std::uint8_t>(m, 0)};
  has_entry.assign(m, false);
  weight = 0;
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t r = mapping[col0 + c];
    if (r < m) {
      v.row_of_col[c] = r;
      has_entry[r] = true;
      ++weight;
    }
  }
  std::size_t next_col = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (has_entry[r]) continue;
    while (v.row_of_col[next_col] != m) ++next_col;
    v.row_of_col[next_col] = r;
    v.phase[next_col] = free_phase;
  }
  return v;
}

inline std::vector<std::size_t> real_mapping(const PhasedPermutation& p, const char* name) {
  if (!p.is_real_permutation()) {
    throw Error(ErrorCode::decomposition_failed,
                std::string("classical path: factor ") + name + " is not a real permutation");
  }
  return p.row_of_col;
}

}  // namespace detail

/// Exact block-ZXZ factors of a permutation matrix given by its mapping. The
/// free phases of the light polar factors are x_j = -i (V11) and y_k = +i
/// (V12), which turns every factor into a permutation matrix.
inline BirkhoffFactors birkhoff_permutations(const std::vector<std::size_t>& mapping) {
  const std::size_t n = mapping.size();
  if (n % 2 != 0) throw Error(ErrorCode::odd_dimension, "birkhoff: dimension is odd");
  const std::size_t m = n / 2;
  BirkhoffFactors out;
  std::vector<bool> in11, in12;
  const PhasedPermutation v11 = detail::light_factor(mapping, 0, m, 3, in11, out.weight11);
  const PhasedPermutation v12 = detail::light_factor(mapping, m, m, 1, in12, out.weight12);
  if (out.weight11 + out.weight12 != m) {
    throw Error(ErrorCode::not_permutation, "top half weights do not sum to n/2");
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (in11[r] == in12[r]) {
      throw Error(ErrorCode::not_permutation, "row " + std::to_string(r) + " is not covered once");
    }
  }
  // (P11 - i P12)^2 is 1 where U11 holds the row's entry, -1 where U12 does.
  out.c.resize(m);
  for (std::size_t col = 0; col < m; ++col) out.c[col] = in11[v11.row_of_col[col]] ? 1 : -1;

  PhasedPermutation d = v11.adjoint() * v12;
  for (auto& k : d.phase) k = static_cast<std::uint8_t>((k + 3) % 4);  // times -i

  PhasedPermutation a = v11;
  for (std::size_t col = 0; col < m; ++col) {
    if (!in11[a.row_of_col[col]]) a.phase[col] = static_cast<std::uint8_t>((a.phase[col] + 1) % 4);
  }

  // B = U21 + U22 D^dag, column by column: C = -1 columns come from U21,
  // C = +1 columns from U22 D^dag.
  const PhasedPermutation d_adj = d.adjoint();
  PhasedPermutation b{std::vector<std::size_t>(m, m), std::vector<std::uint8_t>(m, 0)};
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t src = col;
    if (out.c[col] == 1) {
      src = m + d_adj.row_of_col[col];
      b.phase[col] = d_adj.phase[col];
    }
    const std::size_t r = mapping[src];
    if (r < m) throw Error(ErrorCode::decomposition_failed, "classical path: B column is empty");
    b.row_of_col[col] = r - m;
  }
  out.a = detail::real_mapping(a, "A");
  out.b = detail::real_mapping(b, "B");
  out.d = detail::real_mapping(d, "D");
  return out;
}

inline BlockFactors birkhoff_block_zxz(const UnitaryMatrix& u) {
  const PermutationProfile prof = is_permutation(u);
  if (!prof.is_permutation) throw Error(ErrorCode::not_permutation, "birkhoff_block_zxz");
  if (u.dim() % 2 != 0) throw Error(ErrorCode::odd_dimension, "birkhoff_block_zxz");
  const BirkhoffFactors p = birkhoff_permutations(prof.mapping);
  BlockFactors f;
  f.form = Form::bzxz;
  f.variant = Variant::v1;
  f.method11 = f.method12 = PolarMethod::light;
  f.a = permutation_matrix(p.a);
  f.b = permutation_matrix(p.b);
  f.d = permutation_matrix(p.d);
  const auto m = static_cast<Eigen::Index>(p.c.size());
  f.c = Matrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) f.c(k, k) = static_cast<double>(p.c[static_cast<std::size_t>(k)]);
  f.residual = frobenius_distance(factor_product(f), u.matrix());
  return f;
}

namespace detail {

inline Controls with_control(const Controls& base, std::size_t wire, Polarity p) {
  Controls c = base;
  c.push_back({wire, p});
  return c;
}

inline void classical_into(const std::vector<std::size_t>& mapping, std::size_t first,
                           std::size_t sub_wires, const Controls& controls, Circuit& circ) {
  if (sub_wires == 1) {
    if (mapping[0] == 1) {
      circ.emit(Gate::not_gate(first, controls));
    } else {
      circ.emit(Gate::identity(first, controls));
    }
    return;
  }
  const BirkhoffFactors f = birkhoff_permutations(mapping);
  classical_into(f.d, first + 1, sub_wires - 1, with_control(controls, first, Polarity::positive),
                 circ);
  std::vector<Complex> fan(f.c.begin(), f.c.end());
  emit_negator_fan(circ, fan, first, sub_wires, controls);
  classical_into(f.b, first + 1, sub_wires - 1, with_control(controls, first, Polarity::positive),
                 circ);
  classical_into(f.a, first + 1, sub_wires - 1, with_control(controls, first, Polarity::negative),
                 circ);
}

}  // namespace detail

/// Circuit of (multi-)controlled NOT gates realizing a 2^w permutation matrix.
inline Circuit classical_circuit_from_mapping(const std::vector<std::size_t>& mapping) {
  const std::size_t w = wire_count(mapping.size());
  Circuit circ(w);
  detail::classical_into(mapping, 0, w, {}, circ);
  return circ;
}

inline Circuit classical_circuit(const UnitaryMatrix& u) {
  wire_count(u.dim());
  const PermutationProfile prof = is_permutation(u);
  if (!prof.is_permutation) throw Error(ErrorCode::not_permutation, "classical_circuit");
  return classical_circuit_from_mapping(prof.mapping);
}

}  // namespace bzxz
