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
#include <cstdint>
#include <string>
#include <vector>

#include "bzxz/block_zxz.hpp"
#include "bzxz/linalg.hpp"

namespace bzxz {

enum class GateKind { hadamard, u2, negator, phasor, not_gate, identity };

enum class Polarity { positive, negative };

struct Control {
  std::size_t wire = 0;
  Polarity polarity = Polarity::positive;

  friend bool operator==(const Control&, const Control&) = default;
};

using Controls = std::vector<Control>;

/// Single-qubit gate on `target`, fired when every control matches its
/// polarity (positive: |1>, negative: |0>). Wire 0 is the most significant bit.
struct Gate {
  GateKind kind = GateKind::identity;
  std::size_t target = 0;
  Controls controls;
  Complex param{1.0, 0.0};  // negator c or phasor d
  Matrix2 payload = Matrix2::Identity();  // u2 only

  static Gate hadamard(std::size_t t, Controls c = {}) {
    return {GateKind::hadamard, t, std::move(c), 1.0, Matrix2::Identity()};
  }
  static Gate u2(const Matrix2& m, std::size_t t, Controls c = {}) {
    return {GateKind::u2, t, std::move(c), 1.0, m};
  }
  static Gate negator(Complex c, std::size_t t, Controls ctl = {}) {
    return {GateKind::negator, t, std::move(ctl), c, Matrix2::Identity()};
  }
  static Gate phasor(Complex d, std::size_t t, Controls ctl = {}) {
    return {GateKind::phasor, t, std::move(ctl), d, Matrix2::Identity()};
  }
  static Gate not_gate(std::size_t t, Controls c = {}) {
    return {GateKind::not_gate, t, std::move(c), -1.0, Matrix2::Identity()};
  }
  static Gate identity(std::size_t t, Controls c = {}) {
    return {GateKind::identity, t, std::move(c), 1.0, Matrix2::Identity()};
  }

  Matrix2 matrix() const {
    switch (kind) {
      case GateKind::hadamard: return hadamard_matrix();
      case GateKind::u2: return payload;
      case GateKind::negator: return negator_matrix(param);
      case GateKind::phasor: return phasor_matrix(param);
      case GateKind::not_gate: return negator_matrix(-1.0);
      case GateKind::identity: return Matrix2::Identity();
    }
    return Matrix2::Identity();
  }

  /// Identity kind, or a negator within tol of Negator(1).
  bool is_identity(double tol = 1e-12) const {
    return kind == GateKind::identity ||
           (kind == GateKind::negator && std::abs(param - Complex(1.0)) <= tol);
  }
};

struct Circuit {
  std::size_t wires = 0;
  std::vector<Gate> gates;  // application order: gates[0] acts first
  std::size_t elided_identities = 0;

  explicit Circuit(std::size_t w = 0) : wires(w) {}

  void append(Gate g) {
    if (g.target >= wires) {
      throw Error(ErrorCode::invalid_options, "gate target " + std::to_string(g.target) +
                                                  " outside " + std::to_string(wires) + " wires");
    }
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      const std::size_t w = g.controls[i].wire;
      if (w >= wires || w == g.target) {
        throw Error(ErrorCode::invalid_options, "control wire " + std::to_string(w) + " invalid");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (g.controls[j].wire == w) {
          throw Error(ErrorCode::invalid_options, "duplicate control wire " + std::to_string(w));
        }
      }
    }
    gates.push_back(std::move(g));
  }

  /// Appends unless the gate is an identity, which is only counted.
  void emit(Gate g) {
    if (g.is_identity()) {
      ++elided_identities;
      return;
    }
    append(std::move(g));
  }
};

/// Emits N(diag(x_0, ..., x_{k-1})) acting on the `sub_wires` wires starting at
/// `first`: one NEGATOR(x_j) on `first` per bit pattern j of the remaining
/// wires (first + 1 is the most significant). A fan whose entries all agree
/// collapses to a single gate without the pattern controls.
inline void emit_negator_fan(Circuit& circ, const std::vector<Complex>& x, std::size_t first,
                             std::size_t sub_wires, const Controls& controls,
                             double tol = 1e-12) {
  const bool uniform = std::all_of(x.begin(), x.end(),
                                   [&](const Complex& z) { return std::abs(z - x.front()) <= tol; });
  auto make = [&](Complex c, Controls ctl) {
    if (std::abs(c + 1.0) <= tol) return Gate::not_gate(first, std::move(ctl));
    return Gate::negator(c, first, std::move(ctl));
  };
  if (uniform) {
    circ.emit(make(x.front(), controls));
    return;
  }
  const std::size_t lower = sub_wires - 1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    Controls ctl = controls;
    for (std::size_t k = 0; k < lower; ++k) {
      const bool one = ((j >> (lower - 1 - k)) & 1U) != 0;
      ctl.push_back({first + 1 + k, one ? Polarity::positive : Polarity::negative});
    }
    circ.emit(make(x[j], std::move(ctl)));
  }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Left-multiplies `state` (2^w rows) by the gate expanded over all wires.
inline void apply_gate(const Gate& g, std::size_t wires, Matrix& state) {
  const Matrix2 m = g.matrix();
  const std::size_t n = std::size_t{1} << wires;
  const std::size_t tbit = std::size_t{1} << (wires - 1 - g.target);
  std::size_t mask = 0, want = 0;
  for (const Control& c : g.controls) {
    const std::size_t bit = std::size_t{1} << (wires - 1 - c.wire);
    mask |= bit;
    if (c.polarity == Polarity::positive) want |= bit;
  }
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    if ((i0 & tbit) != 0 || (i0 & mask) != want) continue;
    const auto r0 = static_cast<Eigen::Index>(i0);
    const auto r1 = static_cast<Eigen::Index>(i0 | tbit);
    for (Eigen::Index c = 0; c < state.cols(); ++c) {
      const Complex x0 = state(r0, c), x1 = state(r1, c);
      state(r0, c) = m(0, 0) * x0 + m(0, 1) * x1;
      state(r1, c) = m(1, 0) * x0 + m(1, 1) * x1;
    }
  }
}

/// Product of the gate matrices, last gate leftmost.
inline Matrix evaluate_circuit(const Circuit& c) {
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << c.wires);
  Matrix u = Matrix::Identity(n, n);
  for (const Gate& g : c.gates) apply_gate(g, c.wires, u);
  return u;
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

struct GateCensus {
  std::size_t hadamard_count = 0;  // h
  std::size_t generic_count = 0;   // g: U2 payloads
  std::size_t negator_count = 0;   // every NEGATOR, NOTs included
  std::size_t phasor_count = 0;
  std::size_t not_count = 0;
  std::size_t sqrt_not_count = 0;  // negators with c = +-i
  std::size_t elided_identities = 0;

  /// Four real parameters per generic gate.
  std::size_t parameter_count() const { return 4 * generic_count; }

  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

/// Predicted h and g for full recursion. For form bzxz: h = 2(4^{w-1} - 1)/3,
/// g = 4^{w-1}; the dual form spends four Hadamards per level instead of two.
inline GateCensus gate_counts(std::size_t w, Form form = Form::bzxz) {
  if (w < 1) throw Error(ErrorCode::invalid_options, "gate_counts: w must be >= 1");
  const std::size_t g = std::size_t{1} << (2 * (w - 1));
  const std::size_t per_level = form == Form::bzxz ? 2 : 4;
  GateCensus c;
  c.generic_count = g;
  c.hadamard_count = per_level * (g - 1) / 3;
  return c;
}

/// Predicted census after every H and U2 is lowered to six NEGATOR/PHASOR
/// gates: 3h + 3g negators (2h + 2g NOTs, h square roots of NOT), 3h + 3g
/// phasors.
inline GateCensus lowered_gate_counts(std::size_t w, Form form = Form::bzxz) {
  const GateCensus base = gate_counts(w, form);
  const std::size_t h = base.hadamard_count, g = base.generic_count;
  GateCensus c;
  c.negator_count = 3 * h + 3 * g;
  c.not_count = 2 * h + 2 * g;
  c.sqrt_not_count = h;
  c.phasor_count = 3 * h + 3 * g;
  return c;
}

inline GateCensus census(const Circuit& c, double tol = 1e-12) {
  GateCensus out;
  out.elided_identities = c.elided_identities;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::hadamard: ++out.hadamard_count; break;
      case GateKind::u2: ++out.generic_count; break;
      case GateKind::phasor: ++out.phasor_count; break;
      case GateKind::not_gate:
        ++out.negator_count;
        ++out.not_count;
        break;
      case GateKind::negator:
        ++out.negator_count;
        if (std::abs(g.param + 1.0) <= tol) ++out.not_count;
        if (std::abs(std::abs(g.param.imag()) - 1.0) <= tol) ++out.sqrt_not_count;
        break;
      case GateKind::identity: ++out.elided_identities; break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// NEGATOR / PHASOR lowering
// ---------------------------------------------------------------------------

/// M = X P(a) X P(b) N(c) P(d) with (a, b, c, d) the scalar factors of M.
/// Returned in application order: P(d), N(c), P(b), NOT, P(a), NOT.
inline std::vector<Gate> lower_u2_to_negator_phasor(const Matrix2& m, Variant variant,
                                                    std::size_t target = 0,
                                                    const Controls& controls = {}) {
  const ScalarFactors f = scalar_zxz(u2_parameters(m), variant);
  return {Gate::phasor(f.d, target, controls),  Gate::negator(f.c, target, controls),
          Gate::phasor(f.b, target, controls),  Gate::not_gate(target, controls),
          Gate::phasor(f.a, target, controls),  Gate::not_gate(target, controls)};
}

/// Replaces every Hadamard and U2 gate by its six-gate cascade.
inline Circuit lower_circuit(const Circuit& c, Variant variant) {
  Circuit out(c.wires);
  out.elided_identities = c.elided_identities;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::hadamard || g.kind == GateKind::u2) {
      for (Gate& h : lower_u2_to_negator_phasor(g.matrix(), variant, g.target, g.controls)) {
        out.append(std::move(h));
      }
    } else {
      out.append(g);
    }
  }
  return out;
}

}  // namespace bzxz
