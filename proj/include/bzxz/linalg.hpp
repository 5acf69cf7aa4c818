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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>

#include "bzxz/error.hpp"

namespace bzxz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kDefaultUnitarityTol = 1e-10;
inline constexpr Complex kI{0.0, 1.0};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Number of wires for a 2^w dimension. Throws NotPowerOfTwo otherwise.
inline std::size_t wire_count(std::size_t dim) {
  if (!is_power_of_two(dim) || dim < 2) {
    throw Error(ErrorCode::not_power_of_two,
                "dimension " + std::to_string(dim) + " is not 2^w with w >= 1");
  }
  std::size_t w = 0;
  while ((std::size_t{1} << w) < dim) ++w;
  return w;
}

inline double frobenius_distance(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::shape_mismatch, "frobenius_distance: operands differ in shape");
  }
  return (x - y).norm();
}

/// max(||U^dag U - I||_F, ||U U^dag - I||_F); +inf for non-square input.
inline double unitarity_residual(const Matrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return std::max((u.adjoint() * u - id).norm(), (u * u.adjoint() - id).norm());
}

/// Dense square matrix that passed a unitarity check. The residual measured at
/// validation time travels with the value.
class UnitaryMatrix {
 public:
  static UnitaryMatrix validate(Matrix m, double tol = kDefaultUnitarityTol) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
      throw Error(ErrorCode::shape_mismatch, "unitary matrix must be square and non-empty");
    }
    const double r = bzxz::unitarity_residual(m);
    if (!(r <= tol)) {
      throw Error(ErrorCode::not_unitary, "unitarity residual " + std::to_string(r) +
                                              " exceeds tolerance " + std::to_string(tol));
    }
    return UnitaryMatrix(std::move(m), r);
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double unitarity_residual() const { return residual_; }

 private:
  UnitaryMatrix(Matrix m, double r) : m_(std::move(m)), residual_(r) {}

  Matrix m_;
  double residual_;
};

struct BlockView {
  Matrix u11, u12, u21, u22;
};

inline void require_even_square(const Matrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::shape_mismatch, std::string(op) + ": matrix is not square");
  }
  if (m.rows() % 2 != 0) {
    throw Error(ErrorCode::odd_dimension,
                std::string(op) + ": dimension " + std::to_string(m.rows()) + " is odd");
  }
}

inline BlockView block_split(const Matrix& u) {
  require_even_square(u, "block_split");
  const Eigen::Index h = u.rows() / 2;
  return {u.topLeftCorner(h, h), u.topRightCorner(h, h), u.bottomLeftCorner(h, h),
          u.bottomRightCorner(h, h)};
}

inline BlockView block_split(const UnitaryMatrix& u) { return block_split(u.matrix()); }

inline Matrix block_assemble(const BlockView& b) {
  const Eigen::Index h = b.u11.rows();
  for (const Matrix* m : {&b.u11, &b.u12, &b.u21, &b.u22}) {
    if (m->rows() != h || m->cols() != h) {
      throw Error(ErrorCode::shape_mismatch, "block_assemble: blocks must be equal square sizes");
    }
  }
  Matrix u(2 * h, 2 * h);
  u << b.u11, b.u12, b.u21, b.u22;
  return u;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix u = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  u.topLeftCorner(a.rows(), a.cols()) = a;
  u.bottomRightCorner(b.rows(), b.cols()) = b;
  return u;
}

/// F U F with F = H (x) I, computed blockwise.
inline Matrix hadamard_conjugate(const Matrix& u) {
  const BlockView b = block_split(u);
  return 0.5 * block_assemble({b.u11 + b.u12 + b.u21 + b.u22, b.u11 - b.u12 + b.u21 - b.u22,
                               b.u11 + b.u12 - b.u21 - b.u22, b.u11 - b.u12 - b.u21 + b.u22});
}

/// F = (1/sqrt 2) [[I, I], [I, -I]] of size n.
inline Matrix fourier_hadamard(std::size_t n) {
  if (n % 2 != 0) throw Error(ErrorCode::odd_dimension, "fourier_hadamard: odd size");
  const auto h = static_cast<Eigen::Index>(n / 2);
  const Matrix id = Matrix::Identity(h, h);
  Matrix f(2 * h, 2 * h);
  f << id, id, id, -id;
  return f / std::sqrt(2.0);
}

inline Matrix2 hadamard_matrix() {
  Matrix2 h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

/// (1/2) [[I + V, I - V], [I - V, I + V]]: the block negator, member of bXU.
inline Matrix block_negator(const Matrix& v) {
  const Matrix id = Matrix::Identity(v.rows(), v.cols());
  return 0.5 * block_assemble({id + v, id - v, id - v, id + v});
}

/// [[0, I], [I, 0]] of size 2m.
inline Matrix block_not(std::size_t m) {
  const auto h = static_cast<Eigen::Index>(m);
  const Matrix id = Matrix::Identity(h, h);
  return block_assemble({Matrix::Zero(h, h), id, id, Matrix::Zero(h, h)});
}

/// block-diag(I, V): member of bZU.
inline Matrix block_phasor(const Matrix& v) {
  return block_diag(Matrix::Identity(v.rows(), v.cols()), v);
}

inline bool is_diagonal(const Matrix& m, double tol) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && std::abs(m(r, c)) > tol) return false;
  return true;
}

}  // namespace bzxz
