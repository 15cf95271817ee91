#pragma once

#include <vector>

#include "moddiv/hardness/instance.hpp"

namespace moddiv::hardness {

inline constexpr BitCount kMaxBruteForceBits = 28;

/// Every x in [2^(m-1), 2^m) with moddiv(a * x, p, q) = u, ascending.
inline std::vector<Nat> brute_force_invert(const InversionInstance& inst) {
  validate_instance(inst);
  if (inst.unknown_bits > kMaxBruteForceBits)
    throw GuardError("brute force is limited to m <= " + std::to_string(kMaxBruteForceBits));
  std::vector<Nat> out;
  Nat x = pow2(inst.unknown_bits - 1);
  const Nat end = pow2(inst.unknown_bits);
  Nat product = inst.multiplier * x;
  for (; x < end; ++x, product += inst.multiplier)
    if (moddiv(product, inst.window_high, inst.window_low) == inst.observed) out.push_back(x);
  return out;
}

}  // namespace moddiv::hardness
