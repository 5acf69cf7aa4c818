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

#include <map>
#include <string>

#include "bzxz/block_zxz.hpp"
#include "bzxz/linalg.hpp"
#include "bzxz/polar.hpp"

namespace bzxz {

/// Named residuals of the block identities that follow from unitarity.
/// Checks needing regular blocks are listed in `not_applicable` instead when a
/// block is singular.
struct IdentityReport {
  std::map<std::string, double> residuals;
  std::vector<std::string> not_applicable;
  bool regular_blocks = false;
  double tolerance = 0.0;
  bool passed = false;

  double max_residual() const {
    double m = 0.0;
    for (const auto& [name, r] : residuals) m = std::max(m, r);
    return m;
  }
};

struct BlockPolars {
  PolarFactors f11, f12, f21, f22;
};

inline BlockPolars polar_blocks(const Matrix& u, const PolarOptions& popts = {}) {
  const BlockView b = block_split(u);
  auto opts_for = [&](int r, int c) {
    PolarOptions o = popts;
    if (o.completion.kind == CompletionKind::canonical_classical) {
      o.completion = CompletionRule::canonical_for_block(r, c);
    }
    return o;
  };
  return {polar_decompose(b.u11, opts_for(0, 0)), polar_decompose(b.u12, opts_for(0, 1)),
          polar_decompose(b.u21, opts_for(1, 0)), polar_decompose(b.u22, opts_for(1, 1))};
}

inline IdentityReport check_block_identities(const UnitaryMatrix& u, double tol,
                                             const PolarOptions& popts = {}) {
  require_even_square(u.matrix(), "check_block_identities");
  const BlockView blk = block_split(u);
  const BlockPolars bp = polar_blocks(u.matrix(), popts);
  const Matrix &p11 = bp.f11.p, &p12 = bp.f12.p, &p21 = bp.f21.p, &p22 = bp.f22.p;
  const Matrix &v11 = bp.f11.v, &v12 = bp.f12.v, &v21 = bp.f21.v, &v22 = bp.f22.v;
  const Eigen::Index h = p11.rows();
  const Matrix id = Matrix::Identity(h, h);

  IdentityReport rep;
  rep.tolerance = tol;
  auto& r = rep.residuals;
  r["squares_top"] = (p11 * p11 + p12 * p12 - id).norm();
  r["squares_bottom"] = (p21 * p21 + p22 * p22 - id).norm();
  r["commute_top"] = (p11 * p12 - p12 * p11).norm();
  r["commute_bottom"] = (p21 * p22 - p22 * p21).norm();
  r["columns_left"] = (v11.adjoint() * p11 * p11 * v11 + v21.adjoint() * p21 * p21 * v21 - id).norm();
  r["columns_right"] = (v12.adjoint() * p12 * p12 * v12 + v22.adjoint() * p22 * p22 * v22 - id).norm();
  r["cross_rows"] = (p11 * v11 * v21.adjoint() * p21 + p12 * v12 * v22.adjoint() * p22).norm();
  r["cross_columns"] = (v11.adjoint() * p11 * p12 * v12 + v21.adjoint() * p21 * p22 * v22).norm();

  rep.regular_blocks = is_regular(blk.u11, popts) && is_regular(blk.u12, popts) &&
                       is_regular(blk.u21, popts) && is_regular(blk.u22, popts);
  if (rep.regular_blocks) {
    r["unitary_rows"] = (v11 * v21.adjoint() + v12 * v22.adjoint()).norm();
    r["unitary_columns"] = (v11.adjoint() * v12 + v21.adjoint() * v22).norm();
    for (Variant variant : {Variant::v1, Variant::v2}) {
      const Complex si = variant_sign(variant) * kI;
      const std::string tag = variant == Variant::v1 ? "_v1" : "_v2";
      const Matrix m1 = p11 - si * p12;
      const Matrix m2 = p22 - si * p21;
      r["c_expressions" + tag] =
          (v11.adjoint() * m1 * m1 * v11 - v21.adjoint() * m2 * m2 * v21).norm();
      const Matrix d1 = -si * v11.adjoint() * v12;
      r["d_expressions" + tag] = (d1 - si * v21.adjoint() * v22).norm();
      r["b_expressions" + tag] =
          ((blk.u21 + blk.u22 * d1.adjoint()) - (p21 - si * p22) * v21).norm();
    }
  } else {
    rep.not_applicable = {"unitary_rows", "unitary_columns", "c_expressions", "d_expressions", "b_expressions"};
  }
  rep.passed = rep.max_residual() <= tol;
  return rep;
}

struct BxuReport {
  double homomorphism_residual = 0.0;  // ||N(V1) N(V2) - N(V1 V2)||_F
  double line_sum_residual = 0.0;      // max |row or column sum of N(V1) - 1|
};

inline BxuReport bxu_isomorphism_check(const Matrix& v1, const Matrix& v2) {
  if (v1.rows() != v2.rows() || v1.cols() != v2.cols() || v1.rows() != v1.cols()) {
    throw Error(ErrorCode::shape_mismatch, "bxu_isomorphism_check: operands differ in shape");
  }
  BxuReport rep;
  const Matrix n1 = block_negator(v1);
  rep.homomorphism_residual = (n1 * block_negator(v2) - block_negator(v1 * v2)).norm();
  for (Eigen::Index k = 0; k < n1.rows(); ++k) {
    rep.line_sum_residual = std::max(rep.line_sum_residual, std::abs(n1.row(k).sum() - 1.0));
    rep.line_sum_residual = std::max(rep.line_sum_residual, std::abs(n1.col(k).sum() - 1.0));
  }
  return rep;
}

/// Dual factors written directly in the polar factors Q W of the blocks of
/// F U F. Independent of dual_block_xzx's route through block_zxz; both agree
/// when all blocks are regular.
inline BlockFactors dual_factors_from_polar(const UnitaryMatrix& u, Variant variant,
                                            const PolarOptions& popts = {}) {
  const BlockPolars bp = polar_blocks(hadamard_conjugate(u.matrix()), popts);
  const Complex si = variant_sign(variant) * kI;
  BlockFactors f;
  f.form = Form::bxzx;
  f.variant = variant;
  f.a = (bp.f21.p - si * bp.f22.p) * bp.f21.v * bp.f11.v.adjoint() * (bp.f11.p - si * bp.f12.p);
  f.b = (bp.f11.p + si * bp.f12.p) * bp.f11.v;
  f.c = (bp.f11.p - si * bp.f12.p) * bp.f11.v;
  f.d = -si * bp.f11.v.adjoint() * bp.f12.v;
  f.residual = frobenius_distance(factor_product(f), u.matrix());
  return f;
}

}  // namespace bzxz
