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

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bzxz/block_zxz.hpp"
#include "bzxz/circuit.hpp"
#include "bzxz/linalg.hpp"

namespace bzxz::io {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Non-empty, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace_back(no, std::move(t));
  }
  return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] inline void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + msg);
}

inline double parse_double(const std::string& s, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) fail(line, "bad number '" + s + "'");
  return v;
}

inline std::size_t parse_index(const std::string& s, int line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    fail(line, "bad index '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

inline std::string fmt(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

}  // namespace detail

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` (decimal, optional exponent).
inline Complex parse_complex(const std::string& tok, int line = 0) {
  if (tok.empty()) detail::fail(line, "empty entry");
  if (tok.back() != 'i') return detail::parse_double(tok, line);
  const std::string body = tok.substr(0, tok.size() - 1);
  // Split at the last sign that is not the leading one or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return detail::parse_double(s, line);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {detail::parse_double(body.substr(0, split), line), imag_of(body.substr(split))};
}

inline std::string format_complex(Complex z, int precision = 17) {
  const bool neg = std::signbit(z.imag());
  return detail::fmt(z.real(), precision) + (neg ? "-" : "+") +
         detail::fmt(std::abs(z.imag()), precision) + "i";
}

// ---------------------------------------------------------------------------
// Matrix text format
// ---------------------------------------------------------------------------

/// n, then optionally `scale p/q`, then n rows of n entries. `#` lines are
/// comments.
inline Matrix read_matrix(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) detail::fail(0, "empty matrix file");
  std::size_t at = 0;
  const auto& [first_no, first] = lines[at++];
  const std::size_t n = detail::parse_index(first, first_no);
  if (n == 0) detail::fail(first_no, "dimension must be positive");
  double scale = 1.0;
  if (at < lines.size() && lines[at].second.rfind("scale", 0) == 0) {
    const auto toks = detail::split_ws(lines[at].second);
    const int no = lines[at].first;
    if (toks.size() != 2 || toks[0] != "scale") detail::fail(no, "expected 'scale p/q'");
    const auto slash = toks[1].find('/');
    if (slash == std::string::npos) {
      scale = detail::parse_double(toks[1], no);
    } else {
      const double p = detail::parse_double(toks[1].substr(0, slash), no);
      const double q = detail::parse_double(toks[1].substr(slash + 1), no);
      if (q == 0.0) detail::fail(no, "zero denominator in scale");
      scale = p / q;
    }
    ++at;
  }
  if (lines.size() - at != n) {
    detail::fail(lines.back().first, "expected " + std::to_string(n) + " rows, found " +
                                         std::to_string(lines.size() - at));
  }
  const auto d = static_cast<Eigen::Index>(n);
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r, ++at) {
    const auto toks = detail::split_ws(lines[at].second);
    if (toks.size() != n) {
      detail::fail(lines[at].first, "expected " + std::to_string(n) + " entries, found " +
                                        std::to_string(toks.size()));
    }
    for (Eigen::Index c = 0; c < d; ++c) {
      m(r, c) = scale * parse_complex(toks[static_cast<std::size_t>(c)], lines[at].first);
    }
  }
  return m;
}

inline Matrix read_matrix_string(const std::string& s) {
  std::istringstream is(s);
  return read_matrix(is);
}

inline void write_matrix(std::ostream& out, const Matrix& m, int precision = 17) {
  out << m.rows() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c == 0 ? "" : " ") << format_complex(m(r, c), precision);
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Truth tables
// ---------------------------------------------------------------------------

/// Lines `<input bits> <output bits>`; returns mapping[input] = output, i.e.
/// the column -> row map of the permutation matrix.
inline std::vector<std::size_t> read_truth_table(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) detail::fail(0, "empty truth table");
  std::size_t w = 0;
  std::vector<std::size_t> mapping;
  std::vector<bool> seen_in, seen_out;
  auto bits = [](const std::string& s, int no) {
    if (s.empty() || s.find_first_not_of("01") != std::string::npos) {
      detail::fail(no, "expected a binary string, got '" + s + "'");
    }
    std::size_t v = 0;
    for (char ch : s) v = (v << 1) | static_cast<std::size_t>(ch - '0');
    return v;
  };
  for (const auto& [no, text] : lines) {
    const auto toks = detail::split_ws(text);
    if (toks.size() != 2) detail::fail(no, "expected '<input bits> <output bits>'");
    if (w == 0) {
      w = toks[0].size();
      if (w > 12) detail::fail(no, "at most 12 bits are supported");
      mapping.assign(std::size_t{1} << w, 0);
      seen_in.assign(mapping.size(), false);
      seen_out.assign(mapping.size(), false);
    }
    if (toks[0].size() != w || toks[1].size() != w) detail::fail(no, "inconsistent bit width");
    const std::size_t a = bits(toks[0], no), b = bits(toks[1], no);
    if (seen_in[a]) detail::fail(no, "input " + toks[0] + " listed twice");
    if (seen_out[b]) {
      throw Error(ErrorCode::not_permutation, "output " + toks[1] + " produced twice");
    }
    seen_in[a] = seen_out[b] = true;
    mapping[a] = b;
  }
  if (lines.size() != mapping.size()) {
    throw Error(ErrorCode::not_permutation, "truth table lists " + std::to_string(lines.size()) +
                                                " of " + std::to_string(mapping.size()) + " inputs");
  }
  return mapping;
}

// ---------------------------------------------------------------------------
// Circuit text format
// ---------------------------------------------------------------------------

inline void write_circuit(std::ostream& out, const Circuit& c) {
  out << "wires " << c.wires << '\n';
  auto num = [](double x) { return detail::fmt(x, 17); };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::hadamard: out << "H"; break;
      case GateKind::not_gate: out << "NOT"; break;
      case GateKind::negator:
        out << "NEG " << num(g.param.real()) << ' ' << num(g.param.imag());
        break;
      case GateKind::phasor:
        out << "PH " << num(g.param.real()) << ' ' << num(g.param.imag());
        break;
      case GateKind::identity: out << "NEG 1 0"; break;
      case GateKind::u2:
        out << "U2";
        for (int r = 0; r < 2; ++r)
          for (int col = 0; col < 2; ++col)
            out << ' ' << num(g.payload(r, col).real()) << ' ' << num(g.payload(r, col).imag());
        break;
    }
    out << " t" << g.target;
    for (const Control& ctl : g.controls) {
      out << " c" << (ctl.polarity == Polarity::positive ? '+' : '-') << ctl.wire;
    }
    out << '\n';
  }
}

inline Circuit read_circuit(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) detail::fail(0, "empty circuit file");
  const auto head = detail::split_ws(lines[0].second);
  if (head.size() != 2 || head[0] != "wires") detail::fail(lines[0].first, "expected 'wires <w>'");
  Circuit c(detail::parse_index(head[1], lines[0].first));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [no, text] = lines[k];
    const auto toks = detail::split_ws(text);
    const std::string& op = toks[0];
    std::size_t params = 0;
    if (op == "H" || op == "NOT") params = 0;
    else if (op == "NEG" || op == "PH") params = 2;
    else if (op == "U2") params = 8;
    else detail::fail(no, "unknown gate '" + op + "'");
    if (toks.size() < params + 2) detail::fail(no, "missing operands");
    std::vector<double> v;
    for (std::size_t p = 1; p <= params; ++p) v.push_back(detail::parse_double(toks[p], no));
    const std::string& t = toks[params + 1];
    if (t.size() < 2 || t[0] != 't') detail::fail(no, "expected target 't<k>'");
    const std::size_t target = detail::parse_index(t.substr(1), no);
    Controls ctl;
    for (std::size_t p = params + 2; p < toks.size(); ++p) {
      const std::string& s = toks[p];
      if (s.size() < 3 || s[0] != 'c' || (s[1] != '+' && s[1] != '-')) {
        detail::fail(no, "expected control 'c+<k>' or 'c-<k>'");
      }
      ctl.push_back({detail::parse_index(s.substr(2), no),
                     s[1] == '+' ? Polarity::positive : Polarity::negative});
    }
    Gate g;
    if (op == "H") g = Gate::hadamard(target, std::move(ctl));
    else if (op == "NOT") g = Gate::not_gate(target, std::move(ctl));
    else if (op == "NEG") g = Gate::negator({v[0], v[1]}, target, std::move(ctl));
    else if (op == "PH") g = Gate::phasor({v[0], v[1]}, target, std::move(ctl));
    else {
      Matrix2 m;
      m << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7]);
      g = Gate::u2(m, target, std::move(ctl));
    }
    try {
      c.append(std::move(g));
    } catch (const Error& e) {
      detail::fail(no, e.what());
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// QASM-flavoured export
// ---------------------------------------------------------------------------

/// OpenQASM 2 text. Uncontrolled H, NOT and PHASOR map onto h, x and u1;
/// everything else becomes an opaque gate named after its kind and control
/// count (e.g. `c2neg(theta)`), with negative controls conjugated by x.
inline void write_qasm(std::ostream& out, const Circuit& c) {
  std::ostringstream body;
  std::set<std::string> decls;
  auto num = [](double x) { return detail::fmt(x, 17); };
  for (const Gate& g : c.gates) {
    for (const Control& ctl : g.controls)
      if (ctl.polarity == Polarity::negative) body << "x q[" << ctl.wire << "];\n";
    const std::size_t k = g.controls.size();
    const std::string prefix = k == 0 ? "" : "c" + std::to_string(k);
    std::string name, params, formals;
    switch (g.kind) {
      case GateKind::hadamard: name = k == 0 ? "h" : prefix + "h"; break;
      case GateKind::not_gate: name = k == 0 ? "x" : prefix + "x"; break;
      case GateKind::identity: name = prefix + "id"; break;
      case GateKind::phasor:
        name = k == 0 ? "u1" : prefix + "ph";
        params = "(" + num(std::arg(g.param)) + ")";
        formals = "(theta)";
        break;
      case GateKind::negator:
        name = prefix + "neg";
        params = "(" + num(std::arg(g.param)) + ")";
        formals = "(theta)";
        break;
      case GateKind::u2: {
        const U2Params p = u2_parameters(g.payload, 1e-8);
        name = prefix + "zxz";
        params = "(" + num(p.alpha) + "," + num(p.phi) + "," + num(p.psi) + "," + num(p.chi) + ")";
        formals = "(alpha,phi,psi,chi)";
        break;
      }
    }
    const bool builtin = k == 0 && (name == "h" || name == "x" || name == "u1");
    if (!builtin) {
      std::string args;
      for (std::size_t j = 0; j < k; ++j) args += "c" + std::to_string(j) + ",";
      decls.insert("opaque " + name + formals + " " + args + "t;");
    }
    body << name << params << ' ';
    for (const Control& ctl : g.controls) body << "q[" << ctl.wire << "],";
    body << "q[" << g.target << "];\n";
    for (const Control& ctl : g.controls)
      if (ctl.polarity == Polarity::negative) body << "x q[" << ctl.wire << "];\n";
  }
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (const std::string& d : decls) out << d << '\n';
  out << "qreg q[" << c.wires << "];\n" << body.str();
}

}  // namespace bzxz::io
