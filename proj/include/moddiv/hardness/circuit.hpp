#pragma once

#include <cstdint>
#include <vector>

#include "moddiv/errors.hpp"
#include "moddiv/nat.hpp"

namespace moddiv::hardness {

/// Wire 0 is constant false, wires 1..m are x_0..x_{m-1}, and gate i drives
/// wire m + 1 + i.
using Wire = std::uint32_t;
inline constexpr Wire kFalse = 0;

enum class GateKind : std::uint8_t { And, Xor };

struct Gate {
  GateKind kind;
  Wire lhs;
  Wire rhs;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Shifted-row ripple-carry multiplier computing a * x for an m-bit x.
struct MultiplierCircuit {
  Nat multiplier;
  BitCount input_bits = 0;
  std::vector<Gate> gates;
  /// y_0 .. y_{n+m-1}.
  std::vector<Wire> outputs;

  Wire input_wire(BitCount i) const { return static_cast<Wire>(1 + i); }
  Wire gate_wire(std::size_t gate) const { return static_cast<Wire>(1 + input_bits + gate); }
  std::size_t wire_count() const { return 1 + input_bits + gates.size(); }
  bool is_gate(Wire w) const { return w > input_bits; }
  std::size_t gate_index(Wire w) const { return w - 1 - input_bits; }
};

namespace detail {

class CircuitBuilder {
public:
  explicit CircuitBuilder(MultiplierCircuit& c) : c_(c) {}

  Wire op_and(Wire a, Wire b) {
    if (a == kFalse || b == kFalse) return kFalse;
    return emit(GateKind::And, a, b);
  }

  Wire op_xor(Wire a, Wire b) {
    if (a == kFalse) return b;
    if (b == kFalse) return a;
    return emit(GateKind::Xor, a, b);
  }

  /// Returns {sum, carry}. carry = (a & b) ^ (cin & (a ^ b)); the two terms
  /// are never both set, so XOR stands in for OR.
  std::pair<Wire, Wire> full_add(Wire a, Wire b, Wire cin) {
    Wire t = op_xor(a, b);
    Wire sum = op_xor(t, cin);
    Wire carry = op_xor(op_and(a, b), op_and(cin, t));
    return {sum, carry};
  }

private:
  Wire emit(GateKind kind, Wire a, Wire b) {
    c_.gates.push_back({kind, a, b});
    return c_.gate_wire(c_.gates.size() - 1);
  }

  MultiplierCircuit& c_;
};

}  // namespace detail

/// One row x << j for every set bit j of a, summed into an accumulator with
/// ripple-carry adders. Constant-false operands are folded away, so adding a
/// row costs a half adder where only two live inputs meet.
inline MultiplierCircuit build_circuit(const Nat& a, BitCount m) {
  if (sgn(a) <= 0) throw ParamError("build_circuit requires a >= 1");
  if (m == 0) throw ParamError("build_circuit requires m >= 1");
  MultiplierCircuit c;
  c.multiplier = a;
  c.input_bits = m;
  const BitCount n = bit_length(a);
  const BitCount width = n + m;
  detail::CircuitBuilder b(c);

  std::vector<Wire> acc(width, kFalse);
  bool first = true;
  for (BitCount j = 0; j < n; ++j) {
    if (!test_bit(a, j)) continue;
    std::vector<Wire> row(width, kFalse);
    for (BitCount i = 0; i < m; ++i) row[j + i] = c.input_wire(i);
    if (first) {
      acc = std::move(row);
      first = false;
      continue;
    }
    Wire carry = kFalse;
    for (BitCount k = 0; k < width; ++k) {
      auto [s, co] = b.full_add(acc[k], row[k], carry);
      acc[k] = s;
      carry = co;
    }
    // a * x < 2^(n+m), so the final carry is always false.
  }
  c.outputs = std::move(acc);
  return c;
}

/// Value of every wire for a concrete x (bits above m are ignored).
inline std::vector<bool> evaluate_wires(const MultiplierCircuit& c, const Nat& x) {
  std::vector<bool> val(c.wire_count(), false);
  for (BitCount i = 0; i < c.input_bits; ++i) val[c.input_wire(i)] = test_bit(x, i);
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const auto& gate = c.gates[g];
    bool a = val[gate.lhs], b = val[gate.rhs];
    val[c.gate_wire(g)] = gate.kind == GateKind::And ? (a && b) : (a != b);
  }
  return val;
}

/// The product read off the output wires.
inline Nat evaluate(const MultiplierCircuit& c, const Nat& x) {
  auto val = evaluate_wires(c, x);
  Nat y;
  for (std::size_t j = 0; j < c.outputs.size(); ++j)
    if (val[c.outputs[j]]) mpz_setbit(y.get_mpz_t(), static_cast<mp_bitcnt_t>(j));
  return y;
}

}  // namespace moddiv::hardness
