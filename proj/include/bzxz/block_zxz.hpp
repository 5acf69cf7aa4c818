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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bzxz/linalg.hpp"
#include "bzxz/polar.hpp"
#include "bzxz/random.hpp"

namespace bzxz {

/// bzxz: U = diag(A, B) N(C) diag(I, D).
/// bxzx: U = N(A') diag(B', C') N(D').
enum class Form { bzxz, bxzx };

/// v1 and v2 differ by the sign of every i in the factor formulas.
enum class Variant { v1, v2 };

inline const char* to_string(Form f) { return f == Form::bzxz ? "bzxz" : "bxzx"; }
inline const char* to_string(Variant v) { return v == Variant::v1 ? "1" : "2"; }

inline double variant_sign(Variant v) { return v == Variant::v1 ? 1.0 : -1.0; }

// ---------------------------------------------------------------------------
// n = 2
// ---------------------------------------------------------------------------

inline Matrix2 negator_matrix(Complex c) {
  Matrix2 m;
  m << 1.0 + c, 1.0 - c, 1.0 - c, 1.0 + c;
  return 0.5 * m;
}

inline Matrix2 phasor_matrix(Complex d) {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, d;
  return m;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * std::numbers::pi);
  if (x <= -std::numbers::pi) x += 2.0 * std::numbers::pi;
  return x;
}

/// U = [[cos(phi) e^{i(alpha+psi)},  sin(phi) e^{i(alpha+chi)}],
///      [-sin(phi) e^{i(alpha-chi)}, cos(phi) e^{i(alpha-psi)}]]
struct U2Params {
  double alpha = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double chi = 0.0;

  Matrix2 matrix() const {
    const double c = std::cos(phi), s = std::sin(phi);
    Matrix2 m;
    m << c * std::polar(1.0, alpha + psi), s * std::polar(1.0, alpha + chi),
        -s * std::polar(1.0, alpha - chi), c * std::polar(1.0, alpha - psi);
    return m;
  }
};

/// Angles in canonical ranges: alpha = arg(det)/2, phi in [0, pi/2], psi and
/// chi in (-pi, pi]. chi is zeroed for diagonal input, psi for antidiagonal.
inline U2Params u2_parameters(const Matrix2& m, double unitarity_tol = kDefaultUnitarityTol) {
  const double r = unitarity_residual(m);
  if (!(r <= unitarity_tol)) {
    throw Error(ErrorCode::not_unitary, "u2_parameters: residual " + std::to_string(r));
  }
  constexpr double degenerate = 1e-13;
  U2Params p;
  p.alpha = std::arg(m.determinant()) / 2.0;
  p.phi = std::atan2(std::abs(m(0, 1)), std::abs(m(0, 0)));
  p.psi = std::abs(m(0, 0)) > degenerate ? wrap_angle(std::arg(m(0, 0)) - p.alpha) : 0.0;
  p.chi = std::abs(m(0, 1)) > degenerate ? wrap_angle(std::arg(m(0, 1)) - p.alpha) : 0.0;
  return p;
}

/// U = diag(a, b) N(c) diag(1, d) with unit-modulus scalars.
struct ScalarFactors {
  Complex a, b, c, d;
  Variant variant = Variant::v1;

  Matrix2 product() const {
    Matrix2 ab;
    ab << a, 0.0, 0.0, b;
    return ab * negator_matrix(c) * phasor_matrix(d);
  }
};

inline ScalarFactors scalar_zxz(const U2Params& p, Variant variant) {
  const double s = variant_sign(variant);
  ScalarFactors f;
  f.variant = variant;
  f.a = std::polar(1.0, p.alpha + s * p.phi + p.psi);
  f.b = s * kI * std::polar(1.0, p.alpha + s * p.phi - p.chi);
  f.c = std::polar(1.0, -2.0 * s * p.phi);
  f.d = -s * kI * std::polar(1.0, p.chi - p.psi);
  return f;
}

// ---------------------------------------------------------------------------
// Block factors
// ---------------------------------------------------------------------------

/// Rung of the fallback ladder that produced the factors.
enum class FallbackStage { none, spectral, preconditioned };

inline const char* to_string(FallbackStage s) {
  switch (s) {
    case FallbackStage::none: return "none";
    case FallbackStage::spectral: return "spectral";
    case FallbackStage::preconditioned: return "preconditioned";
  }
  return "?";
}

/// Single-qubit gates on the top wire absorbed around the factored matrix:
/// U = (left (x) I) * product(factors) * (right (x) I).
struct Preconditioning {
  Matrix2 left;
  Matrix2 right;
  std::uint64_t seed = 0;
};

struct BlockFactors {
  Matrix a, b, c, d;
  Form form = Form::bzxz;
  Variant variant = Variant::v1;
  double residual = 0.0;
  FallbackStage stage = FallbackStage::none;
  std::optional<Preconditioning> preconditioning;
  PolarMethod method11 = PolarMethod::heron;
  PolarMethod method12 = PolarMethod::heron;
};

struct DecompositionOptions {
  Variant variant = Variant::v1;
  PolarOptions polar;
  /// Success gate: reconstruction residual and factor unitarity <= tol * n.
  double residual_tol = 1e-9;
  /// Seed of the random top-wire rotations used by the last fallback rung.
  std::uint64_t seed = 0;
  /// Rung to start from; later rungs are only reached on failure.
  FallbackStage first_stage = FallbackStage::none;
};

/// G (x) I_{n/2}.
inline Matrix top_wire_gate(const Matrix2& g, Eigen::Index n) {
  const Eigen::Index h = n / 2;
  const Matrix id = Matrix::Identity(h, h);
  return block_assemble({g(0, 0) * id, g(0, 1) * id, g(1, 0) * id, g(1, 1) * id});
}

/// The matrix the factors multiply out to, preconditioning included.
inline Matrix factor_product(const BlockFactors& f) {
  Matrix core;
  if (f.form == Form::bzxz) {
    core = block_diag(f.a, f.b) * block_negator(f.c) * block_phasor(f.d);
  } else {
    core = block_negator(f.a) * block_diag(f.b, f.c) * block_negator(f.d);
  }
  if (f.preconditioning) {
    const Eigen::Index n = core.rows();
    core = top_wire_gate(f.preconditioning->left, n) * core *
           top_wire_gate(f.preconditioning->right, n);
  }
  return core;
}

struct FactorReport {
  /// ||A(I+C) - 2U11||, ||B(I-C) - 2U21||, ||A(I-C)D - 2U12||, ||B(I+C)D - 2U22||
  /// against the matrix actually factored. Only present for form bzxz.
  std::optional<std::array<double, 4>> block_residuals;
  double total = 0.0;
  double max_factor_unitarity = 0.0;
};

inline FactorReport verify_factors(const Matrix& u, const BlockFactors& f) {
  require_even_square(u, "verify_factors");
  const Eigen::Index h = u.rows() / 2;
  for (const Matrix* m : {&f.a, &f.b, &f.c, &f.d}) {
    if (m->rows() != h || m->cols() != h) {
      throw Error(ErrorCode::shape_mismatch, "verify_factors: factor size does not match U");
    }
  }
  FactorReport rep;
  rep.total = frobenius_distance(factor_product(f), u);
  for (const Matrix* m : {&f.a, &f.b, &f.c, &f.d}) {
    rep.max_factor_unitarity = std::max(rep.max_factor_unitarity, unitarity_residual(*m));
  }
  if (f.form == Form::bzxz) {
    Matrix target = u;
    if (f.preconditioning) {
      target = top_wire_gate(f.preconditioning->left.adjoint(), u.rows()) * u *
               top_wire_gate(f.preconditioning->right.adjoint(), u.rows());
    }
    const BlockView t = block_split(target);
    const Matrix id = Matrix::Identity(h, h);
    rep.block_residuals = std::array<double, 4>{
        (f.a * (id + f.c) - 2.0 * t.u11).norm(), (f.b * (id - f.c) - 2.0 * t.u21).norm(),
        (f.a * (id - f.c) * f.d - 2.0 * t.u12).norm(),
        (f.b * (id + f.c) * f.d - 2.0 * t.u22).norm()};
  }
  return rep;
}

inline FactorReport verify_factors(const UnitaryMatrix& u, const BlockFactors& f) {
  return verify_factors(u.matrix(), f);
}

namespace detail {

inline PolarOptions polar_for_block(const PolarOptions& base, int row, int col) {
  PolarOptions o = base;
  if (o.completion.kind == CompletionKind::canonical_classical) {
    o.completion = CompletionRule::canonical_for_block(row, col);
  }
  return o;
}

/// One attempt at the bzxz factors with a fixed polar configuration. B comes
/// from the closed form B = U21 + U22 D^dag, which needs only the top-row
/// polar pair.
inline BlockFactors bzxz_attempt(const Matrix& u, Variant variant, const PolarOptions& popts) {
  const BlockView blk = block_split(u);
  const PolarFactors f11 = polar_decompose(blk.u11, polar_for_block(popts, 0, 0));
  const PolarFactors f12 = polar_decompose(blk.u12, polar_for_block(popts, 0, 1));
  const Complex si = variant_sign(variant) * kI;
  BlockFactors f;
  f.form = Form::bzxz;
  f.variant = variant;
  f.method11 = f11.method;
  f.method12 = f12.method;
  const Matrix minus = f11.p - si * f12.p;
  f.a = (f11.p + si * f12.p) * f11.v;
  f.c = f11.v.adjoint() * minus * minus * f11.v;
  f.d = -si * f11.v.adjoint() * f12.v;
  f.b = blk.u21 + blk.u22 * f.d.adjoint();
  return f;
}

inline bool passes_gate(const Matrix& u, BlockFactors& f, double tol) {
  const FactorReport rep = verify_factors(u, f);
  f.residual = rep.total;
  const double limit = tol * static_cast<double>(u.rows());
  return rep.total <= limit && rep.max_factor_unitarity <= limit;
}

/// Heron (automatic polar), then spectral. Returns nullopt if neither passes.
inline std::optional<BlockFactors> bzxz_ladder(const Matrix& u, const DecompositionOptions& opts,
                                               FallbackStage first, std::string& log) {
  if (first == FallbackStage::none) {
    try {
      BlockFactors f = bzxz_attempt(u, opts.variant, opts.polar);
      if (passes_gate(u, f, opts.residual_tol)) return f;
      log += "automatic polar: residual " + std::to_string(f.residual) + "; ";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_convergence) throw;
      log += std::string("automatic polar: ") + e.what() + "; ";
    }
  }
  PolarOptions spectral = opts.polar;
  spectral.strategy = PolarStrategy::spectral_only;
  spectral.completion = CompletionRule::identity_like();
  BlockFactors f = bzxz_attempt(u, opts.variant, spectral);
  f.stage = FallbackStage::spectral;
  if (passes_gate(u, f, opts.residual_tol)) return f;
  log += "spectral polar: residual " + std::to_string(f.residual) + "; ";
  return std::nullopt;
}

inline BlockFactors bzxz_unchecked(const Matrix& u, const DecompositionOptions& opts) {
  require_even_square(u, "block_zxz");
  std::string log;
  if (opts.first_stage != FallbackStage::preconditioned) {
    if (auto f = bzxz_ladder(u, opts, opts.first_stage, log)) return *f;
  }
  Rng rng(opts.seed);
  const Matrix2 g = random_unitary(2, rng);
  const Matrix2 g2 = random_unitary(2, rng);
  const Eigen::Index n = u.rows();
  const Matrix w = top_wire_gate(g, n) * u * top_wire_gate(g2, n);
  if (auto f = bzxz_ladder(w, opts, FallbackStage::none, log)) {
    f->stage = FallbackStage::preconditioned;
    f->preconditioning = Preconditioning{g.adjoint(), g2.adjoint(), opts.seed};
    if (passes_gate(u, *f, opts.residual_tol)) return *f;
    log += "preconditioned: residual " + std::to_string(f->residual);
  }
  throw Error(ErrorCode::decomposition_failed,
              "block_zxz of " + std::to_string(n) + "x" + std::to_string(n) + " matrix: " + log);
}

inline BlockFactors bxzx_unchecked(const Matrix& u, const DecompositionOptions& opts) {
  require_even_square(u, "dual_block_xzx");
  const BlockFactors inner = bzxz_unchecked(hadamard_conjugate(u), opts);
  BlockFactors f;
  f.form = Form::bxzx;
  f.variant = inner.variant;
  f.stage = inner.stage;
  f.method11 = inner.method11;
  f.method12 = inner.method12;
  f.a = inner.b * inner.a.adjoint();
  f.b = inner.a;
  f.c = inner.a * inner.c;
  f.d = inner.d;
  if (inner.preconditioning) {
    const Matrix2 h = hadamard_matrix();
    f.preconditioning = Preconditioning{h * inner.preconditioning->left * h,
                                        h * inner.preconditioning->right * h,
                                        inner.preconditioning->seed};
  }
  if (!passes_gate(u, f, opts.residual_tol)) {
    throw Error(ErrorCode::decomposition_failed,
                "dual_block_xzx: residual " + std::to_string(f.residual));
  }
  return f;
}

}  // namespace detail

/// Block-ZXZ factors U = diag(A, B) N(C) diag(I, D) of an even-size unitary.
inline BlockFactors block_zxz(const UnitaryMatrix& u, const DecompositionOptions& opts = {}) {
  return detail::bzxz_unchecked(u.matrix(), opts);
}

/// Dual factors U = N(A') diag(B', C') N(D'), obtained from the block-ZXZ
/// factors (a, b, c, d) of F U F as A' = b a^-1, B' = a, C' = a c, D' = d.
inline BlockFactors dual_block_xzx(const UnitaryMatrix& u, const DecompositionOptions& opts = {}) {
  return detail::bxzx_unchecked(u.matrix(), opts);
}

inline BlockFactors decompose(const UnitaryMatrix& u, Form form,
                              const DecompositionOptions& opts = {}) {
  return form == Form::bzxz ? block_zxz(u, opts) : dual_block_xzx(u, opts);
}

/// [blockNOT, diag(I, A), blockNOT, diag(I, B), N(C), diag(I, D)]; the ordered
/// product equals the factored matrix. Preconditioning gates are not included.
inline std::vector<Matrix> expand_to_bxu_bzu(const BlockFactors& f) {
  if (f.form != Form::bzxz) {
    throw Error(ErrorCode::invalid_options, "expand_to_bxu_bzu needs bzxz factors");
  }
  const auto h = static_cast<std::size_t>(f.a.rows());
  return {block_not(h),      block_phasor(f.a),     block_not(h),
          block_phasor(f.b), block_negator(f.c), block_phasor(f.d)};
}

}  // namespace bzxz
