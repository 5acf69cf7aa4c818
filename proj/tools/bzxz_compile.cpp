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

// Command-line front end: compiles a unitary or truth table into a circuit.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "bzxz/driver.hpp"

int main(int argc, char** argv) {
  using namespace bzxz;
  driver::RunConfig cfg;
  std::string matrix_path;
  std::string table_path;
  int variant = 1;
  double tol = 0.0;

  CLI::App app{"Block-ZXZ circuit compiler"};
  auto* in_matrix = app.add_option("-i,--input", matrix_path, "Unitary matrix file")->check(CLI::ExistingFile);
  auto* in_table = app.add_option("-t,--truth-table", table_path, "Reversible truth table file")
                       ->check(CLI::ExistingFile);
  in_matrix->excludes(in_table);
  app.add_option("--form", cfg.form, "Decomposition form")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Form>{{"bzxz", Form::bzxz}, {"bxzx", Form::bxzx}}));
  app.add_option("--variant", variant, "Scalar variant (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.add_option("--lowering", cfg.lowering, "Gate set")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Lowering>{
          {"u2", Lowering::u2},
          {"negator-phasor", Lowering::negator_phasor},
          {"classical-auto", Lowering::classical_auto}}));
  app.add_option("--heron-iters", cfg.heron_iters, "Maximum Heron iterations")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "Reconstruction threshold (default 1e-8 * 2^w)")->check(CLI::NonNegativeNumber);
  app.add_option("--unitarity-tol", cfg.unitarity_tol, "Input unitarity tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--check-identities", cfg.check_identities, "Report polar-factor identity residuals");
  app.add_option("--seed", cfg.seed, "Seed for preconditioning fallbacks");
  app.add_option("-o,--output", cfg.output_path, "Circuit output file (default stdout)");
  app.add_option("--report", cfg.report_path, "Report file (default stderr)");
  app.add_option("--qasm", cfg.qasm_path, "Also write OpenQASM 2 to this file");
  app.add_option("--precision", cfg.precision, "Digits for printed factors")->check(CLI::Range(0, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : driver::exit_parse;
  }
  if (matrix_path.empty() && table_path.empty()) {
    std::cerr << "error: one of --input or --truth-table is required\n";
    return driver::exit_parse;
  }
  if (!table_path.empty()) {
    cfg.input_path = table_path;
    cfg.input_kind = driver::InputKind::truth_table;
  } else {
    cfg.input_path = matrix_path;
  }
  cfg.variant = variant == 1 ? Variant::v1 : Variant::v2;
  cfg.residual_tol = tol;
  return driver::run(cfg, std::cerr);
}
