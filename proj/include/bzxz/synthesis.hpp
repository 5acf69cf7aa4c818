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
#include <optional>
#include <vector>

#include "bzxz/block_zxz.hpp"
#include "bzxz/circuit.hpp"
#include "bzxz/classical.hpp"

namespace bzxz {

enum class Lowering { u2, negator_phasor, classical_auto };

inline const char* to_string(Lowering l) {
  switch (l) {
    case Lowering::u2: return "u2";
    case Lowering::negator_phasor: return "negator-phasor";
    case Lowering::classical_auto: return "classical-auto";
  }
  return "?";
}

struct SynthesisOptions {
  Form form = Form::bzxz;
  Variant variant = Variant::v1;
  Lowering lowering = Lowering::u2;
  PolarOptions polar;
  double residual_tol = 1e-9;
  std::uint64_t seed = 0;
  /// Replace H . controlled-X . H by a NEGATOR fan when X is diagonal.
  bool diagonal_fan = true;
  FallbackStage first_stage = FallbackStage::none;
};

/// A decomposition inside the recursion that left the first rung.
struct FallbackRecord {
  std::size_t first_wire = 0;
  std::size_t dim = 0;
  FallbackStage stage = FallbackStage::none;
  std::uint64_t seed = 0;
};

struct SynthesisResult {
  Circuit circuit;
  bool classical_route = false;
  std::vector<FallbackRecord> fallbacks;
  std::optional<BlockFactors> top_factors;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Synthesizer {
 public:
  Synthesizer(const SynthesisOptions& opts, SynthesisResult& out) : opts_(opts), out_(out) {}

  void run(const Matrix& u, std::size_t first, std::size_t sub_wires, const Controls& controls) {
    if (sub_wires == 1) {
      out_.circuit.emit(Gate::u2(u, first, controls));
      return;
    }
    DecompositionOptions d;
    d.variant = opts_.variant;
    d.polar = opts_.polar;
    d.residual_tol = opts_.residual_tol;
    d.first_stage = opts_.first_stage;
    d.seed = mix_seed(opts_.seed, calls_++);
    const BlockFactors f = opts_.form == Form::bzxz ? bzxz_unchecked(u, d) : bxzx_unchecked(u, d);
    if (f.stage != FallbackStage::none) {
      out_.fallbacks.push_back({first, static_cast<std::size_t>(u.rows()), f.stage, d.seed});
    }
    if (!out_.top_factors) out_.top_factors = f;

    const Controls pos = with_control(controls, first, Polarity::positive);
    const Controls neg = with_control(controls, first, Polarity::negative);
    if (f.preconditioning) out_.circuit.emit(Gate::u2(f.preconditioning->right, first, controls));
    if (f.form == Form::bzxz) {
      run(f.d, first + 1, sub_wires - 1, pos);
      middle(f.c, first, sub_wires, controls);
      run(f.b, first + 1, sub_wires - 1, pos);
      run(f.a, first + 1, sub_wires - 1, neg);
    } else {
      middle(f.d, first, sub_wires, controls);
      run(f.c, first + 1, sub_wires - 1, pos);
      run(f.b, first + 1, sub_wires - 1, neg);
      middle(f.a, first, sub_wires, controls);
    }
    if (f.preconditioning) out_.circuit.emit(Gate::u2(f.preconditioning->left, first, controls));
  }

 private:
  /// N(x) = F diag(I, x) F on the current wires.
  void middle(const Matrix& x, std::size_t first, std::size_t sub_wires, const Controls& controls) {
    if (opts_.diagonal_fan && is_diagonal(x, 1e-12)) {
      std::vector<Complex> diag(static_cast<std::size_t>(x.rows()));
      for (Eigen::Index k = 0; k < x.rows(); ++k) diag[static_cast<std::size_t>(k)] = x(k, k);
      emit_negator_fan(out_.circuit, diag, first, sub_wires, controls);
      return;
    }
    out_.circuit.emit(Gate::hadamard(first, controls));
    run(x, first + 1, sub_wires - 1, with_control(controls, first, Polarity::positive));
    out_.circuit.emit(Gate::hadamard(first, controls));
  }

  const SynthesisOptions& opts_;
  SynthesisResult& out_;
  std::uint64_t calls_ = 0;
};

}  // namespace detail

/// Recursive synthesis of a 2^w x 2^w unitary into controlled single-qubit
/// gates. Gates are returned in application order.
inline SynthesisResult synthesize_with_report(const UnitaryMatrix& u,
                                              const SynthesisOptions& opts = {}) {
  const std::size_t w = wire_count(u.dim());
  SynthesisResult out;
  out.circuit = Circuit(w);
  if (opts.lowering == Lowering::classical_auto) {
    const PermutationProfile prof = is_permutation(u);
    if (prof.is_permutation) {
      out.classical_route = true;
      out.circuit = classical_circuit_from_mapping(prof.mapping);
      if (w >= 2) out.top_factors = birkhoff_block_zxz(u);
      return out;
    }
  }
  detail::Synthesizer(opts, out).run(u.matrix(), 0, w, {});
  if (opts.lowering == Lowering::negator_phasor) {
    out.circuit = lower_circuit(out.circuit, opts.variant);
  }
  return out;
}

inline Circuit synthesize(const UnitaryMatrix& u, const SynthesisOptions& opts = {}) {
  return synthesize_with_report(u, opts).circuit;
}

}  // namespace bzxz
