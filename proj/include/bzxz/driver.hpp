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

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "bzxz/io.hpp"
#include "bzxz/synthesis.hpp"
#include "bzxz/verify.hpp"

namespace bzxz::driver {

enum class InputKind { matrix, truth_table };

struct RunConfig {
  std::string input_path;
  InputKind input_kind = InputKind::matrix;
  Form form = Form::bzxz;
  Variant variant = Variant::v1;
  Lowering lowering = Lowering::classical_auto;
  int heron_iters = 100;
  double unitarity_tol = kDefaultUnitarityTol;
  /// Reconstruction threshold; 0 selects 1e-8 * 2^w.
  double residual_tol = 0.0;
  bool check_identities = false;
  std::uint64_t seed = 0;
  std::string output_path;  // circuit file; empty writes to stdout
  std::string report_path;  // empty writes the report to the diagnostic stream
  std::string qasm_path;
  int precision = 2;
};

enum ExitStatus : int {
  exit_ok = 0,
  exit_residual = 1,
  exit_parse = 2,
  exit_not_unitary = 3,
  exit_decomposition = 4,
};

inline int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_unitary: return exit_not_unitary;
    case ErrorCode::decomposition_failed:
    case ErrorCode::non_convergence: return exit_decomposition;
    default: return exit_parse;
  }
}

namespace detail {

inline void print_matrix(std::ostream& out, const char* name, const Matrix& m, int precision) {
  out << name << " =\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(precision) << z.real()
           << (std::signbit(z.imag()) ? " - " : " + ") << std::abs(z.imag()) << "i";
      out << std::setw(precision + 14) << cell.str();
    }
    out << '\n';
  }
}

inline std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::parse_error, "cannot write '" + path + "'");
  f << text;
}

}  // namespace detail

/// Reads the input, synthesizes, writes circuit and report. Returns the exit
/// status; error messages go to `diag`.
inline int run(const RunConfig& cfg, std::ostream& diag) {
  if (cfg.heron_iters < 1 || cfg.unitarity_tol <= 0.0 || cfg.residual_tol < 0.0) {
    diag << "error: heron iterations must be >= 1 and tolerances positive\n";
    return exit_parse;
  }
  Matrix m;
  try {
    std::ifstream in(cfg.input_path);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + cfg.input_path + "'");
    m = cfg.input_kind == InputKind::matrix ? io::read_matrix(in)
                                            : permutation_matrix(io::read_truth_table(in));
  } catch (const Error& e) {
    diag << "error [input]: " << e.what() << '\n';
    return exit_parse;
  }

  SynthesisOptions opts;
  opts.form = cfg.form;
  opts.variant = cfg.variant;
  opts.lowering = cfg.lowering;
  opts.polar.max_iter = cfg.heron_iters;
  opts.seed = cfg.seed;

  std::string stage = "validate";
  try {
    const UnitaryMatrix u = UnitaryMatrix::validate(m, cfg.unitarity_tol);
    const std::size_t w = wire_count(u.dim());
    stage = "synthesize";
    const SynthesisResult res = synthesize_with_report(u, opts);
    stage = "evaluate";
    const double residual = frobenius_distance(evaluate_circuit(res.circuit), u.matrix());
    const double threshold =
        cfg.residual_tol > 0.0 ? cfg.residual_tol : 1e-8 * static_cast<double>(u.dim());
    const bool ok = residual <= threshold;

    const GateCensus seen = census(res.circuit);
    const GateCensus predicted = gate_counts(w, cfg.form);
    std::ostringstream rep;
    rep << "# block-ZXZ synthesis report\n";
    rep << "input: " << cfg.input_path << " ("
        << (cfg.input_kind == InputKind::matrix ? "matrix" : "truth table") << ")\n";
    rep << "dimension: " << u.dim() << ", wires: " << w << '\n';
    rep << "form: " << to_string(cfg.form) << ", variant: " << to_string(cfg.variant)
        << ", lowering: " << to_string(cfg.lowering)
        << (res.classical_route ? " (classical route)" : "") << "\n\n";
    if (res.top_factors) {
      const BlockFactors& f = *res.top_factors;
      const bool dual = f.form == Form::bxzx;
      rep << "top-level factors:\n";
      detail::print_matrix(rep, dual ? "A'" : "A", f.a, cfg.precision);
      detail::print_matrix(rep, dual ? "B'" : "B", f.b, cfg.precision);
      detail::print_matrix(rep, dual ? "C'" : "C", f.c, cfg.precision);
      detail::print_matrix(rep, dual ? "D'" : "D", f.d, cfg.precision);
      rep << '\n';
    }
    rep << "gates: " << res.circuit.gates.size() << " (hadamard " << seen.hadamard_count
        << ", generic " << seen.generic_count << ", negator " << seen.negator_count
        << ", phasor " << seen.phasor_count << ", not " << seen.not_count << ")\n";
    rep << "predicted for full recursion: h " << predicted.hadamard_count << ", g "
        << predicted.generic_count << '\n';
    rep << "reconstruction residual: " << detail::sci(residual) << " (threshold "
        << detail::sci(threshold) << ")\n";

    IdentityReport ids;
    const bool want_ids = cfg.check_identities && u.dim() % 2 == 0;
    if (want_ids) {
      stage = "check-identities";
      ids = check_block_identities(u, 1e-8, opts.polar);
    }

    rep << "\n[values]\n";
    rep << "form=" << to_string(cfg.form) << '\n';
    rep << "variant=" << to_string(cfg.variant) << '\n';
    rep << "lowering=" << to_string(cfg.lowering) << '\n';
    rep << "classical=" << (res.classical_route ? 1 : 0) << '\n';
    rep << "wires=" << w << '\n';
    rep << "gates=" << res.circuit.gates.size() << '\n';
    rep << "h=" << seen.hadamard_count << '\n';
    rep << "g=" << seen.generic_count << '\n';
    rep << "predicted_h=" << predicted.hadamard_count << '\n';
    rep << "predicted_g=" << predicted.generic_count << '\n';
    rep << "negators=" << seen.negator_count << '\n';
    rep << "phasors=" << seen.phasor_count << '\n';
    rep << "nots=" << seen.not_count << '\n';
    rep << "elided=" << seen.elided_identities << '\n';
    rep << "residual=" << detail::sci(residual) << '\n';
    rep << "threshold=" << detail::sci(threshold) << '\n';
    if (res.fallbacks.empty()) {
      rep << "fallback=none\n";
    } else {
      rep << "fallback=";
      for (std::size_t k = 0; k < res.fallbacks.size(); ++k) {
        const FallbackRecord& fb = res.fallbacks[k];
        rep << (k ? ";" : "") << to_string(fb.stage) << "@wire" << fb.first_wire << "/dim"
            << fb.dim << "/seed" << fb.seed;
      }
      rep << '\n';
    }
    rep << "seed=" << cfg.seed << '\n';
    if (want_ids) {
      for (const auto& [name, r] : ids.residuals) rep << "identity." << name << '=' << detail::sci(r) << '\n';
      for (const auto& name : ids.not_applicable) rep << "identity." << name << "=n/a\n";
      rep << "identities_passed=" << (ids.passed ? 1 : 0) << '\n';
    }
    rep << "status=" << (ok ? "ok" : "residual_exceeded") << '\n';

    stage = "write";
    std::ostringstream circ;
    io::write_circuit(circ, res.circuit);
    if (cfg.output_path.empty()) {
      std::cout << circ.str();
    } else {
      detail::write_file(cfg.output_path, circ.str());
    }
    if (!cfg.qasm_path.empty()) {
      std::ostringstream q;
      io::write_qasm(q, res.circuit);
      detail::write_file(cfg.qasm_path, q.str());
    }
    if (cfg.report_path.empty()) {
      diag << rep.str();
    } else {
      detail::write_file(cfg.report_path, rep.str());
    }
    if (!ok) diag << "error [evaluate]: residual " << detail::sci(residual) << " exceeds threshold\n";
    return ok ? exit_ok : exit_residual;
  } catch (const Error& e) {
    diag << "error [" << stage << "]: " << e.what() << '\n';
    return exit_status_for(e.code());
  }
}

}  // namespace bzxz::driver
