#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "moddiv/hardness/circuit.hpp"
#include "moddiv/hardness/instance.hpp"
#include "moddiv/text_format.hpp"

namespace moddiv::hardness {

/// A product of distinct variables, as a bitmask over x_0..x_31; 0 is the
/// constant monomial 1.
using Monomial = std::uint32_t;

/// Polynomial over F(2): a strictly increasing list of monomials.
using Polynomial = std::vector<Monomial>;

/// Each equation is implicitly `= 0`.
struct AnfSystem {
  BitCount num_vars = 0;
  std::vector<Polynomial> equations;

  friend bool operator==(const AnfSystem&, const AnfSystem&) = default;
};

struct AnfLimits {
  BitCount max_vars = 16;
  /// Upper bound on |A| * |B| for any single product.
  std::uint64_t max_product_terms = std::uint64_t{1} << 28;
};

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Multilinear product: x_i * x_i = x_i, so monomials combine by OR and
/// repeated terms cancel in pairs.
inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b, BitCount num_vars,
                           const AnfLimits& limits = {}) {
  if (a.empty() || b.empty()) return {};
  if (static_cast<std::uint64_t>(a.size()) * b.size() > limits.max_product_terms)
    throw GuardError("ANF expansion too large; export CNF instead");
  std::vector<std::uint64_t> seen((std::size_t{1} << num_vars) / 64 + 1, 0);
  for (Monomial x : a)
    for (Monomial y : b) {
      Monomial z = x | y;
      seen[z >> 6] ^= std::uint64_t{1} << (z & 63);
    }
  Polynomial out;
  for (std::size_t w = 0; w < seen.size(); ++w)
    for (std::uint64_t bits = seen[w]; bits; bits &= bits - 1)
      out.push_back(static_cast<Monomial>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
  return out;
}

inline bool poly_eval(const Polynomial& poly, std::uint64_t x) {
  bool acc = false;
  for (Monomial mono : poly) acc ^= (mono & ~x) == 0;
  return acc;
}

inline int poly_degree(const Polynomial& poly) {
  int d = -1;
  for (Monomial mono : poly) d = std::max(d, std::popcount(mono));
  return d;
}

inline int max_degree(const AnfSystem& sys) {
  int d = -1;
  for (const auto& eq : sys.equations) d = std::max(d, poly_degree(eq));
  return d;
}

/// True when every equation vanishes at x.
inline bool is_common_zero(const AnfSystem& sys, std::uint64_t x) {
  return std::none_of(sys.equations.begin(), sys.equations.end(),
                      [x](const Polynomial& eq) { return poly_eval(eq, x); });
}

/// Evaluates the multiplier symbolically over F(2)[x_0..x_{m-1}]. Emits
/// y_j(x) + bit_{j-q}(u) for j in [q, p), then x_{m-1} + 1 for the forced top
/// bit of x. Carry polynomials appear implicitly inside each y_j.
inline AnfSystem export_anf(const InversionInstance& inst, const AnfLimits& limits = {}) {
  validate_instance(inst);
  const BitCount m = inst.unknown_bits;
  if (m > limits.max_vars || m > 24)
    throw GuardError("ANF export is limited to m <= " + std::to_string(std::min<BitCount>(limits.max_vars, 24)) +
                     "; use CNF export for larger instances");
  auto circuit = build_circuit(inst.multiplier, m);

  std::vector<Polynomial> wire(circuit.wire_count());
  for (BitCount i = 0; i < m; ++i) wire[circuit.input_wire(i)] = {Monomial{1} << i};
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    const auto& a = wire[gate.lhs];
    const auto& b = wire[gate.rhs];
    wire[circuit.gate_wire(g)] = gate.kind == GateKind::And ? poly_mul(a, b, m, limits) : poly_add(a, b);
  }

  AnfSystem sys;
  sys.num_vars = m;
  const Polynomial one{0};
  for (BitCount j = inst.window_low; j < inst.window_high; ++j) {
    const auto& y = wire[circuit.outputs[j]];
    sys.equations.push_back(test_bit(inst.observed, j - inst.window_low) ? poly_add(y, one) : y);
  }
  sys.equations.push_back(poly_add({Monomial{1} << (m - 1)}, one));
  return sys;
}

// ---- text format ----------------------------------------------------------
//
//   vars <m>
//   <monomial> + <monomial> + ...      one equation per line, `= 0` implied
//
// Monomials are `1` or `x<i>*x<j>*...` with ascending indices; the zero
// polynomial is written `0`.

inline std::string format_polynomial(const Polynomial& poly) {
  if (poly.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < poly.size(); ++t) {
    if (t) out += " + ";
    Monomial mono = poly[t];
    if (mono == 0) {
      out += '1';
      continue;
    }
    bool first = true;
    for (Monomial bits = mono; bits; bits &= bits - 1) {
      if (!first) out += '*';
      out += 'x' + std::to_string(std::countr_zero(bits));
      first = false;
    }
  }
  return out;
}

inline std::string write_anf(const AnfSystem& sys) {
  std::string out = "vars " + std::to_string(sys.num_vars) + "\n";
  for (const auto& eq : sys.equations) out += format_polynomial(eq) + "\n";
  return out;
}

inline Polynomial parse_polynomial(std::string_view line, BitCount num_vars) {
  Polynomial terms;
  std::string text(line);
  text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return c == ' ' || c == '\t'; }), text.end());
  if (text == "0") return {};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('+', pos);
    std::string term = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (term.empty()) throw FormatError("empty monomial in '" + std::string(line) + "'");
    Monomial mono = 0;
    if (term != "1") {
      std::size_t f = 0;
      while (f <= term.size()) {
        auto star = term.find('*', f);
        std::string factor = term.substr(f, star == std::string::npos ? std::string::npos : star - f);
        if (factor.size() < 2 || factor[0] != 'x') throw FormatError("bad factor '" + factor + "'");
        auto idx = parse_decimal("variable index", factor.substr(1));
        if (idx >= num_vars) throw FormatError("variable x" + std::to_string(idx) + " out of range");
        mono |= Monomial{1} << idx;
        if (star == std::string::npos) break;
        f = star + 1;
      }
    }
    terms.push_back(mono);
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  // Normalise: sort and cancel repeated monomials in pairs.
  std::sort(terms.begin(), terms.end());
  Polynomial out;
  for (Monomial mono : terms) {
    if (!out.empty() && out.back() == mono) out.pop_back();
    else out.push_back(mono);
  }
  return out;
}

inline AnfSystem parse_anf(std::string_view text) {
  AnfSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty ANF file");
  if (line.rfind("vars ", 0) != 0) throw FormatError("ANF file must start with 'vars <m>'");
  sys.num_vars = parse_decimal("vars", line.substr(5));
  if (sys.num_vars > 31) throw FormatError("ANF variable count above 31 is not supported");
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    sys.equations.push_back(parse_polynomial(line, sys.num_vars));
  }
  return sys;
}

}  // namespace moddiv::hardness
