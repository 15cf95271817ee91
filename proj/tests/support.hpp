#pragma once

#include "moddiv/params.hpp"

namespace support {

inline moddiv::ParamSet params(std::size_t l, std::size_t m, std::size_t p, std::size_t q, std::size_t r,
                               moddiv::Nat z, moddiv::Variant v) {
  moddiv::ParamSet ps;
  ps.multiplier_bits = l;
  ps.secret_bits = m;
  ps.window_high = p;
  ps.window_low = q;
  ps.slack = r;
  ps.multiplier = std::move(z);
  ps.variant = v;
  return moddiv::validate_params(ps);
}

/// l=8, m=5, p=10, q=3, r=0 with the given Z.
inline moddiv::ParamSet kex_toy(moddiv::Nat z = 201) {
  return params(8, 5, 10, 3, 0, std::move(z), moddiv::Variant::KexEnc);
}

/// l=4, m=8, p=10, q=2, r=0, Z=13.
inline moddiv::ParamSet sig_toy() { return params(4, 8, 10, 2, 0, 13, moddiv::Variant::Sig); }

}  // namespace support
