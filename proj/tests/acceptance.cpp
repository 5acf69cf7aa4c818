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

// Acceptance driver. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
// usage: acceptance <bzxz_compile> <samples dir> <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bzxz/bzxz.hpp"

namespace {

using namespace bzxz;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double max_entry_gap(const Matrix& x, const Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

// Largest gap over real and imaginary parts taken separately, the way
// two-decimal printed values are rounded.
double max_component_gap(const Matrix& x, const Matrix& y) {
  const Matrix d = x - y;
  return std::max(d.real().cwiseAbs().maxCoeff(), d.imag().cwiseAbs().maxCoeff());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Matrix example_one() {
  Matrix u(4, 4);
  u << 8.0, 0.0, Complex(4, 8), 0.0,
       Complex(2, 1), Complex(3, -9), Complex(0, -2), Complex(-3, -6),
       Complex(1, -7), 6.0, Complex(-6, 2), Complex(-3, 3),
       Complex(3, 4), Complex(3, -3), Complex(2, -4), Complex(0, 9);
  return u / 12.0;
}

// Printed two-decimal factors of the 4x4 example, both variants.
struct Printed {
  Matrix a, b, c, d;
};

Printed printed(Variant v) {
  using C = Complex;
  if (v == Variant::v1) {
    return {mat2(C(0.67, 0.72), C(-0.19, 0.03), C(0.18, 0.06), C(0.80, -0.57)),
            mat2(C(-0.33, -0.64), C(0.50, -0.47), C(0.69, 0.00), C(-0.20, -0.70)),
            mat2(C(-0.04, -0.95), C(-0.01, -0.30), C(-0.07, 0.29), C(0.25, -0.92)),
            mat2(C(0.87, -0.43), C(-0.15, 0.20), C(-0.08, -0.24), C(-0.68, -0.68))};
  }
  return {mat2(C(0.67, -0.72), C(0.19, -0.03), C(0.16, 0.10), C(-0.30, -0.93)),
          mat2(C(0.50, -0.52), C(0.50, 0.47), C(-0.19, 0.66), C(0.70, 0.20)),
          mat2(C(-0.04, 0.95), C(-0.07, -0.29), C(-0.01, 0.30), C(0.25, 0.92)),
          mat2(C(-0.87, 0.43), C(0.15, -0.20), C(0.08, 0.24), C(0.68, 0.68))};
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const UnitaryMatrix u = UnitaryMatrix::validate(example_one());
  double worst = 0.0;
  for (Variant v : {Variant::v1, Variant::v2}) {
    DecompositionOptions opts;
    opts.variant = v;
    opts.polar.max_iter = 10;
    opts.polar.strategy = PolarStrategy::heron_only;
    const BlockFactors f = block_zxz(u, opts);
    const Printed p = printed(v);
    for (double gap : {max_component_gap(f.a, p.a), max_component_gap(f.b, p.b),
                       max_component_gap(f.c, p.c), max_component_gap(f.d, p.d)}) {
      worst = std::max(worst, gap);
    }
  }
  const double t = seconds_since(t0);
  if (worst > 0.005) o.fail("largest entry gap " + num(worst));
  if (t >= 1.0) o.fail("took " + num(t) + " s");
  if (o.pass) o.detail = "largest entry gap " + num(worst) + ", " + num(t) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  Rng rng(2024);
  double worst_ratio = 0.0;
  int runs = 0;
  for (std::size_t w = 1; w <= 5; ++w) {
    const std::size_t n = std::size_t{1} << w;
    for (int k = 0; k < 20; ++k) {
      const UnitaryMatrix u = UnitaryMatrix::validate(random_unitary(n, rng), 1e-9);
      for (Form form : {Form::bzxz, Form::bxzx}) {
        for (Variant v : {Variant::v1, Variant::v2}) {
          SynthesisOptions opts;
          opts.form = form;
          opts.variant = v;
          const double r = frobenius_distance(evaluate_circuit(synthesize(u, opts)), u.matrix());
          const double limit = 1e-8 * static_cast<double>(n);
          worst_ratio = std::max(worst_ratio, r / limit);
          ++runs;
          if (!(r <= limit)) {
            o.fail("w=" + std::to_string(w) + " form " + to_string(form) + " variant " +
                   to_string(v) + ": residual " + num(r));
          }
        }
      }
    }
  }
  const double t = seconds_since(t0);
  if (t >= 30.0) o.fail("took " + num(t) + " s");
  if (o.pass) {
    o.detail = std::to_string(runs) + " circuits, worst residual/limit " + num(worst_ratio) + ", " +
               num(t) + " s";
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  Rng rng(7);
  int checked = 0;
  for (std::size_t w = 1; w <= 5; ++w) {
    const UnitaryMatrix u = UnitaryMatrix::validate(random_unitary(std::size_t{1} << w, rng), 1e-9);
    for (Form form : {Form::bzxz, Form::bxzx}) {
      for (Variant v : {Variant::v1, Variant::v2}) {
        SynthesisOptions opts;
        opts.form = form;
        opts.variant = v;
        opts.diagonal_fan = false;
        const SynthesisResult res = synthesize_with_report(u, opts);
        if (!res.fallbacks.empty()) continue;
        const GateCensus seen = census(res.circuit);
        const GateCensus law = gate_counts(w, form);
        const std::size_t g = std::size_t{1} << (2 * (w - 1));
        const std::size_t h_closed_form = 2 * (g - 1) / 3;
        const std::string where = "w=" + std::to_string(w) + " " + to_string(form);
        if (form == Form::bzxz && (seen.hadamard_count != h_closed_form || seen.generic_count != g)) {
          o.fail(where + ": h=" + std::to_string(seen.hadamard_count) + " g=" +
                 std::to_string(seen.generic_count));
        }
        if (seen.hadamard_count != law.hadamard_count || seen.generic_count != law.generic_count) {
          o.fail(where + ": census differs from gate_counts");
        }
        opts.lowering = Lowering::negator_phasor;
        const GateCensus low = census(synthesize(u, opts));
        const std::size_t h = law.hadamard_count;
        if (low.not_count != 2 * h + 2 * g || low.sqrt_not_count != h ||
            low.hadamard_count != 0 || low.generic_count != 0) {
          o.fail(where + ": lowered NOT=" + std::to_string(low.not_count) + " sqrtNOT=" +
                 std::to_string(low.sqrt_not_count));
        }
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " configurations match";
  return o;
}

Outcome criterion4() {
  Outcome o;
  double worst = 0.0;
  for (Variant v : {Variant::v1, Variant::v2}) {
    Circuit c(1);
    for (Gate& g : lower_u2_to_negator_phasor(hadamard_matrix(), v)) c.append(std::move(g));
    if (c.gates.size() != 6) o.fail("chain has " + std::to_string(c.gates.size()) + " gates");
    worst = std::max(worst, frobenius_distance(evaluate_circuit(c), hadamard_matrix()));
  }
  if (worst > 1e-12) o.fail("distance to H " + num(worst));
  if (o.pass) o.detail = "distance to H " + num(worst);
  return o;
}

Matrix spin(double t) {
  Matrix u = Matrix::Identity(4, 4);
  u(1, 1) = u(2, 2) = std::cos(t);
  u(1, 2) = std::sin(t);
  u(2, 1) = -std::sin(t);
  return u;
}

// Analytic factors with z = i. The D(1,2) entry is taken from the closed-form
// expressions; the product of the printed triple does not reproduce U with the
// sign shown in print.
Printed spin_factors(double t, Variant v) {
  const Complex e = std::polar(1.0, t);
  const Complex z = kI;
  if (v == Variant::v1) {
    return {mat2(1.0, 0.0, 0.0, e), mat2(0.0, kI * e, -kI * z, 0.0),
            mat2(1.0, 0.0, 0.0, 1.0 / (e * e)), mat2(0.0, kI / z, -kI, 0.0)};
  }
  return {mat2(1.0, 0.0, 0.0, 1.0 / e), mat2(0.0, -kI / e, kI * z, 0.0),
          mat2(1.0, 0.0, 0.0, e * e), mat2(0.0, -kI / z, kI, 0.0)};
}

Outcome criterion5() {
  Outcome o;
  double worst_gap = 0.0, worst_res = 0.0;
  for (double t : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
    const UnitaryMatrix u = UnitaryMatrix::validate(spin(t));
    for (Variant v : {Variant::v1, Variant::v2}) {
      DecompositionOptions opts;
      opts.variant = v;
      opts.polar.completion = CompletionRule::canonical_classical(SlotRole::x_type);
      const BlockFactors f = block_zxz(u, opts);
      const Printed p = spin_factors(t, v);
      BlockFactors analytic = f;
      analytic.a = p.a;
      analytic.b = p.b;
      analytic.c = p.c;
      analytic.d = p.d;
      for (double gap : {max_entry_gap(f.a, p.a), max_entry_gap(f.b, p.b),
                         max_entry_gap(f.c, p.c), max_entry_gap(f.d, p.d)}) {
        worst_gap = std::max(worst_gap, gap);
      }
      worst_res = std::max({worst_res, frobenius_distance(factor_product(f), u.matrix()),
                            frobenius_distance(factor_product(analytic), u.matrix())});
    }
  }
  if (worst_gap > 1e-10) o.fail("factor gap " + num(worst_gap));
  if (worst_res > 1e-10) o.fail("reconstruction " + num(worst_res));
  if (o.pass) o.detail = "factor gap " + num(worst_gap) + ", reconstruction " + num(worst_res);
  return o;
}

bool only_nots(const Circuit& c) {
  for (const Gate& g : c.gates)
    if (g.kind != GateKind::not_gate) return false;
  return true;
}

Outcome criterion6() {
  Outcome o;
  // Displayed factors: diag(A, B), N(C), diag(I, D).
  Matrix left(4, 4), middle(4, 4), right(4, 4);
  left << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
  middle << 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1;
  right << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  const UnitaryMatrix u = UnitaryMatrix::validate(permutation_matrix({2, 0, 3, 1}));

  DecompositionOptions canon;
  canon.polar.completion = CompletionRule::canonical_classical(SlotRole::x_type);
  for (const BlockFactors& f : {birkhoff_block_zxz(u), block_zxz(u, canon)}) {
    const Matrix id = Matrix::Identity(2, 2);
    if (block_diag(f.a, f.b) != left || block_negator(f.c) != middle ||
        block_diag(id, f.d) != right) {
      o.fail("displayed permutation factors not reproduced");
    }
  }
  if (!only_nots(classical_circuit(u)) ||
      evaluate_circuit(classical_circuit(u)) != u.matrix()) {
    o.fail("example circuit not an exact NOT network");
  }

  Rng rng(99);
  std::uniform_int_distribution<std::size_t> half(2, 32);
  std::uniform_int_distribution<std::size_t> wires(2, 6);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 * half(rng);
    const auto mapping = random_permutation(n, rng);
    const UnitaryMatrix p = UnitaryMatrix::validate(permutation_matrix(mapping));
    const BlockFactors f = birkhoff_block_zxz(p);
    for (const Matrix* m : {&f.a, &f.b, &f.d}) {
      if (!is_permutation(*m, 0.0).is_permutation) o.fail("non-permutation factor, n=" + std::to_string(n));
    }
    if (!is_permutation(block_negator(f.c), 0.0).is_permutation) o.fail("N(C) not a permutation");
    if (f.residual > 1e-12) o.fail("residual " + num(f.residual) + " at n=" + std::to_string(n));

    const std::size_t m = std::size_t{1} << wires(rng);
    const UnitaryMatrix q = UnitaryMatrix::validate(permutation_matrix(random_permutation(m, rng)));
    const Circuit c = classical_circuit(q);
    if (!only_nots(c)) o.fail("classical circuit has a non-NOT gate");
    if (frobenius_distance(evaluate_circuit(c), q.matrix()) > 1e-12) o.fail("NOT network inexact");
  }
  if (o.pass) o.detail = "example exact; 100 permutations of sizes 4..64 exact";
  return o;
}

Outcome criterion7() {
  Outcome o;
  Rng rng(31);
  std::uniform_int_distribution<std::size_t> half(1, 8);
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    const UnitaryMatrix u = UnitaryMatrix::validate(random_unitary(2 * half(rng), rng), 1e-9);
    const IdentityReport rep = check_block_identities(u, 1e-8);
    if (!rep.regular_blocks) continue;
    worst = std::max(worst, rep.max_residual());
    if (!rep.passed) o.fail("max residual " + num(rep.max_residual()));
    ++done;
  }
  if (o.pass) o.detail = "max residual " + num(worst);
  return o;
}

Outcome criterion8() {
  Outcome o;
  Rng rng(5);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Matrix2 m = random_unitary(2, rng);
    const UnitaryMatrix u = UnitaryMatrix::validate(m, 1e-12);
    for (Variant v : {Variant::v1, Variant::v2}) {
      DecompositionOptions opts;
      opts.variant = v;
      const BlockFactors f = block_zxz(u, opts);
      const ScalarFactors s = scalar_zxz(u2_parameters(m), v);
      worst = std::max({worst, std::abs(f.a(0, 0) - s.a), std::abs(f.b(0, 0) - s.b),
                        std::abs(f.c(0, 0) - s.c), std::abs(f.d(0, 0) - s.d)});
    }
  }
  if (worst > 1e-10) o.fail("largest scalar gap " + num(worst));
  if (o.pass) o.detail = "largest scalar gap " + num(worst);
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  double hom = 0.0, rec = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = size(rng);
    const Matrix v1 = random_unitary(m, rng);
    const Matrix v2 = random_unitary(m, rng);
    hom = std::max(hom, bxu_isomorphism_check(v1, v2).homomorphism_residual);

    const UnitaryMatrix u = UnitaryMatrix::validate(random_unitary(2 * m, rng), 1e-9);
    const BlockFactors f = block_zxz(u);
    Matrix prod = Matrix::Identity(static_cast<Eigen::Index>(2 * m), static_cast<Eigen::Index>(2 * m));
    for (const Matrix& x : expand_to_bxu_bzu(f)) prod = prod * x;
    rec = std::max(rec, frobenius_distance(prod, u.matrix()));
  }
  if (hom > 1e-12) o.fail("homomorphism residual " + num(hom));
  if (rec > 1e-10) o.fail("expansion residual " + num(rec));
  if (o.pass) o.detail = "homomorphism " + num(hom) + ", expansion " + num(rec);
  return o;
}

Outcome criterion10(const std::string& cli, const std::string& samples, const std::string& scratch) {
  Outcome o;
  {
    std::ofstream f(scratch + "/acceptance_random16.mat");
    io::write_matrix(f, random_unitary(16, 424242));
  }
  struct Job {
    std::string args;
  };
  const std::vector<Job> jobs = {
      {"--input '" + samples + "/example1.mat' --heron-iters 10 --check-identities"},
      {"--input '" + scratch + "/acceptance_random16.mat' --form bxzx --variant 2 --lowering negator-phasor"},
      {"--truth-table '" + samples + "/permutation.tt'"},
  };
  int idx = 0;
  for (const Job& job : jobs) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string stem = scratch + "/acceptance_det_" + std::to_string(idx) + "_" + std::to_string(rep);
      const std::string cmd = "'" + cli + "' " + job.args + " --seed 17 --output '" + stem +
                              ".circ' --report '" + stem + ".report' --qasm '" + stem + ".qasm'";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) o.fail("CLI exited with " + std::to_string(rc) + " for job " + std::to_string(idx));
      outputs[rep] = read_file(stem + ".circ") + read_file(stem + ".report") + read_file(stem + ".qasm");
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) o.fail("outputs differ for job " + std::to_string(idx));
    ++idx;
  }
  if (o.pass) o.detail = std::to_string(jobs.size()) + " jobs byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::fprintf(stderr, "usage: %s <bzxz_compile> <samples dir> <scratch dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1], samples = argv[2], scratch = argv[3];
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"C1 printed 4x4 factors, Heron 10 iterations", criterion1},
      {"C2 round-trip synthesis, w = 1..5", criterion2},
      {"C3 gate-count law", criterion3},
      {"C4 Hadamard cascade", criterion4},
      {"C5 spin-spin analytic factors", criterion5},
      {"C6 permutations and NOT networks", criterion6},
      {"C7 block identity suite", criterion7},
      {"C8 2x2 block vs scalar factors", criterion8},
      {"C9 block-negator homomorphism and expansion", criterion9},
      {"C10 CLI determinism", [&] { return criterion10(cli, samples, scratch); }},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", e.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failures, entries.size());
  return failures == 0 ? 0 : 1;
}
