#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "moddiv/hardness/circuit.hpp"
#include "moddiv/hardness/instance.hpp"

namespace moddiv::hardness {

using Literal = int;
using Clause = std::vector<Literal>;

/// Tseitin definition out <-> (lhs op rhs), all as DIMACS variables.
struct GateDefinition {
  GateKind kind;
  int out;
  int lhs;
  int rhs;

  friend bool operator==(const GateDefinition&, const GateDefinition&) = default;
};

/// A DIMACS CNF with the wire annotations needed to map it back onto x.
struct CnfInstance {
  InversionInstance source;
  int num_vars = 0;
  std::vector<Clause> clauses;
  /// DIMACS variable of x_i, i = 0..m-1.
  std::vector<int> x_vars;
  /// Variable pinned false, present only when an observed output bit is constant.
  std::optional<int> false_var;
  /// One per gate, in topological order.
  std::vector<GateDefinition> definitions;

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

/// Tseitin-encodes the multiplier (AND: 3 clauses, XOR: 4 clauses), then pins
/// y_j to bit j - q of u for j in [q, p) and x_{m-1} to 1.
inline CnfInstance export_cnf(const InversionInstance& inst) {
  validate_instance(inst);
  auto circuit = build_circuit(inst.multiplier, inst.unknown_bits);
  CnfInstance cnf;
  cnf.source = inst;
  const BitCount m = inst.unknown_bits;
  // Wire w (w >= 1) maps to variable w; the constant wire has no variable
  // unless an observed output needs one.
  cnf.num_vars = static_cast<int>(circuit.wire_count() - 1);
  for (BitCount i = 0; i < m; ++i) cnf.x_vars.push_back(static_cast<int>(circuit.input_wire(i)));

  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    int o = static_cast<int>(circuit.gate_wire(g));
    int a = static_cast<int>(gate.lhs);
    int b = static_cast<int>(gate.rhs);
    cnf.definitions.push_back({gate.kind, o, a, b});
    if (gate.kind == GateKind::And) {
      cnf.clauses.push_back({-o, a});
      cnf.clauses.push_back({-o, b});
      cnf.clauses.push_back({o, -a, -b});
    } else {
      cnf.clauses.push_back({-o, a, b});
      cnf.clauses.push_back({-o, -a, -b});
      cnf.clauses.push_back({o, -a, b});
      cnf.clauses.push_back({o, a, -b});
    }
  }

  for (BitCount j = inst.window_low; j < inst.window_high; ++j) {
    Wire w = circuit.outputs[j];
    int v;
    if (w == kFalse) {
      if (!cnf.false_var) {
        cnf.false_var = ++cnf.num_vars;
        cnf.clauses.push_back({-*cnf.false_var});
      }
      v = *cnf.false_var;
    } else {
      v = static_cast<int>(w);
    }
    cnf.clauses.push_back({test_bit(inst.observed, j - inst.window_low) ? v : -v});
  }
  cnf.clauses.push_back({cnf.x_vars[m - 1]});
  return cnf;
}

/// nullopt when every clause holds; otherwise the index of the first violated
/// clause. x is extended to the gate variables by evaluating the definitions.
inline std::optional<std::size_t> check_assignment(const CnfInstance& cnf, const Nat& x) {
  if (bit_length(x) > cnf.x_vars.size()) throw RangeError("assignment has more bits than the instance has unknowns");
  std::vector<char> val(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  for (std::size_t i = 0; i < cnf.x_vars.size(); ++i) val[static_cast<std::size_t>(cnf.x_vars[i])] = test_bit(x, i);
  for (const auto& d : cnf.definitions) {
    bool a = val[static_cast<std::size_t>(d.lhs)], b = val[static_cast<std::size_t>(d.rhs)];
    val[static_cast<std::size_t>(d.out)] = d.kind == GateKind::And ? (a && b) : (a != b);
  }
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    bool sat = false;
    for (Literal lit : cnf.clauses[c]) {
      bool v = val[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
      if ((lit > 0) == v) {
        sat = true;
        break;
      }
    }
    if (!sat) return c;
  }
  return std::nullopt;
}

struct CnfStats {
  int vars = 0;
  std::size_t clauses = 0;
  double ratio = 0.0;
  /// XOR definitions, each a 4-clause group.
  std::size_t xor_chain_count = 0;
};

inline CnfStats instance_stats(const CnfInstance& cnf) {
  CnfStats s;
  s.vars = cnf.num_vars;
  s.clauses = cnf.clauses.size();
  s.ratio = s.vars ? static_cast<double>(s.clauses) / s.vars : 0.0;
  s.xor_chain_count = static_cast<std::size_t>(
      std::count_if(cnf.definitions.begin(), cnf.definitions.end(),
                    [](const GateDefinition& d) { return d.kind == GateKind::Xor; }));
  return s;
}

// ---- DIMACS ---------------------------------------------------------------
//
// Solvers see a plain `p cnf` file. Comment lines carry the instance and the
// wire map:
//   c moddiv-inversion n=<n> m=<m> p=<p> q=<q> u=<u>
//   c a=<a>
//   c x <var of x_0> ... <var of x_{m-1}>
//   c false <var>                      (optional)
//   c and|xor <out> <lhs> <rhs>        (one per gate)

inline std::string write_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  const auto& s = cnf.source;
  out << "c moddiv-inversion n=" << s.multiplier_bits << " m=" << s.unknown_bits << " p=" << s.window_high
      << " q=" << s.window_low << " u=" << s.observed.get_str(10) << '\n';
  out << "c a=" << s.multiplier.get_str(10) << '\n';
  out << "c x";
  for (int v : cnf.x_vars) out << ' ' << v;
  out << '\n';
  if (cnf.false_var) out << "c false " << *cnf.false_var << '\n';
  for (const auto& d : cnf.definitions)
    out << "c " << (d.kind == GateKind::And ? "and" : "xor") << ' ' << d.out << ' ' << d.lhs << ' ' << d.rhs << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (Literal lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace detail {
inline std::uint64_t take_keyed(std::istringstream& in, std::string_view key) {
  std::string tok;
  if (!(in >> tok) || tok.rfind(std::string(key) + "=", 0) != 0)
    throw FormatError("DIMACS header: expected " + std::string(key) + "=");
  return parse_decimal(std::string(key), tok.substr(key.size() + 1));
}
}  // namespace detail

inline CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_header = false, have_problem = false, have_a = false;
  std::size_t declared_clauses = 0;
  Clause current;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      std::string kind;
      if (!(ls >> kind)) continue;
      if (kind == "moddiv-inversion") {
        auto& s = cnf.source;
        s.multiplier_bits = detail::take_keyed(ls, "n");
        s.unknown_bits = detail::take_keyed(ls, "m");
        s.window_high = detail::take_keyed(ls, "p");
        s.window_low = detail::take_keyed(ls, "q");
        std::string u;
        if (!(ls >> u) || u.rfind("u=", 0) != 0) throw FormatError("DIMACS header: expected u=");
        s.observed = parse_nat(u.substr(2));
        have_header = true;
      } else if (kind.rfind("a=", 0) == 0) {
        cnf.source.multiplier = parse_nat(kind.substr(2));
        have_a = true;
      } else if (kind == "x") {
        int v;
        while (ls >> v) cnf.x_vars.push_back(v);
      } else if (kind == "false") {
        int v;
        if (!(ls >> v)) throw FormatError("malformed 'c false' line");
        cnf.false_var = v;
      } else if (kind == "and" || kind == "xor") {
        GateDefinition d{kind == "and" ? GateKind::And : GateKind::Xor, 0, 0, 0};
        if (!(ls >> d.out >> d.lhs >> d.rhs)) throw FormatError("malformed gate annotation");
        cnf.definitions.push_back(d);
      }
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      long long vars = -1, clauses = -1;
      if (!(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0)
        throw FormatError("malformed problem line");
      cnf.num_vars = static_cast<int>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      have_problem = true;
      continue;
    }
    if (!have_problem) throw FormatError("clause before problem line");
    std::istringstream cs(line);
    long long lit;
    while (cs >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (lit > cnf.num_vars || -lit > cnf.num_vars) throw FormatError("literal exceeds declared variable count");
        current.push_back(static_cast<Literal>(lit));
      }
    }
    if (!cs.eof()) throw FormatError("non-integer token in clause line");
  }
  if (!have_problem) throw FormatError("missing 'p cnf' line");
  if (!current.empty()) throw FormatError("last clause is not terminated by 0");
  if (cnf.clauses.size() != declared_clauses) throw FormatError("clause count does not match problem line");
  if (!have_header || !have_a) throw FormatError("missing moddiv-inversion annotation");
  if (cnf.x_vars.size() != cnf.source.unknown_bits) throw FormatError("x annotation does not list m variables");
  validate_instance(cnf.source);
  return cnf;
}

}  // namespace moddiv::hardness
