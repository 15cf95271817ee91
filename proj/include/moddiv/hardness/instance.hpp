#pragma once

#include <string>

#include "moddiv/errors.hpp"
#include "moddiv/keys.hpp"
#include "moddiv/nat.hpp"

namespace moddiv::hardness {

/// Find x of m bits (top bit set) with moddiv(a * x, p, q) = u, where a has
/// n bits.
struct InversionInstance {
  Nat multiplier;
  BitCount multiplier_bits = 0;
  BitCount unknown_bits = 0;
  BitCount window_high = 0;
  BitCount window_low = 0;
  Nat observed;

  friend bool operator==(const InversionInstance&, const InversionInstance&) = default;
};

inline const InversionInstance& validate_instance(const InversionInstance& inst) {
  if (sgn(inst.multiplier) <= 0) throw ParamError("instance multiplier must be >= 1");
  if (bit_length(inst.multiplier) != inst.multiplier_bits)
    throw ParamError("instance multiplier must be exactly n = " + std::to_string(inst.multiplier_bits) + " bits");
  if (inst.unknown_bits == 0) throw ParamError("instance requires m >= 1");
  if (inst.unknown_bits > inst.multiplier_bits) throw ParamError("instance requires m <= n");
  if (!(inst.window_low < inst.window_high)) throw ParamError("instance requires q < p");
  if (inst.window_high > inst.multiplier_bits + inst.unknown_bits)
    throw ParamError("instance requires p <= n + m");
  if (bit_length(inst.observed) > inst.window_high - inst.window_low)
    throw RangeError("observed window value does not fit in p - q bits");
  return inst;
}

inline InversionInstance make_instance(const Nat& a, BitCount m, BitCount p, BitCount q, const Nat& u) {
  InversionInstance inst{a, bit_length(a), m, p, q, u};
  return validate_instance(inst);
}

/// The instance an attacker faces for a published share U: a = Z, n = l.
inline InversionInstance instance_from_public_key(const PublicKey& key) {
  const auto& ps = key.params;
  return make_instance(ps.multiplier, ps.secret_bits, ps.window_high, ps.window_low, key.public_share);
}

}  // namespace moddiv::hardness
