#pragma once

#include <cstdint>
#include <vector>

#include "moddiv/entropy.hpp"
#include "moddiv/keys.hpp"
#include "moddiv/nat.hpp"
#include "moddiv/params.hpp"

namespace moddiv::kex {

/// A transmitted share (U or V), always < 2^(p-q).
struct KexShare {
  Nat value;
  ParamSet params;
};

/// W = moddiv(X*V, p-q, m+r), at most p-q-m-r bits wide.
struct SharedSecret {
  Nat value;
  BitCount width = 0;

  /// Big-endian, left-padded to ceil(width / 8) bytes.
  std::vector<std::uint8_t> bytes() const { return to_bytes_be(value, (width + 7) / 8); }

  friend bool operator==(const SharedSecret&, const SharedSecret&) = default;
};

namespace detail {
inline void require_kexenc(const ParamSet& ps) {
  validate_params(ps);
  if (ps.variant != Variant::KexEnc) throw ParamError("key exchange requires a kexenc parameter set");
}
}  // namespace detail

template <EntropySource R>
Nat kex_gen_private(const ParamSet& ps, R& rng) {
  detail::require_kexenc(ps);
  return random_nbit(ps.secret_bits, rng);
}

inline KexShare kex_share(const ParamSet& ps, const Nat& secret) {
  detail::require_kexenc(ps);
  require_secret_width(ps, secret, "private value");
  return {compute_share(ps, secret), ps};
}

/// Raw W, which may differ from the peer's by one carry unless r is large.
inline SharedSecret kex_derive(const ParamSet& ps, const Nat& secret, const KexShare& other) {
  detail::require_kexenc(ps);
  if (!(other.params == ps)) throw ParamError("share was produced under a different parameter set");
  require_secret_width(ps, secret, "private value");
  if (bit_length(other.value) > ps.share_bits()) throw RangeError("share does not fit in p - q bits");
  return {moddiv(secret * other.value, ps.share_bits(), ps.secret_shift()), ps.secret_width()};
}

struct AgreementStats {
  std::uint64_t trials = 0;
  std::uint64_t mismatches = 0;
  /// Largest plain |Wa - Wb|.
  Nat max_abs_diff;
  /// Largest distance modulo 2^width; differs from max_abs_diff only when a
  /// carry wraps the top of the window.
  Nat max_cyclic_diff;

  double mismatch_rate() const { return trials ? static_cast<double>(mismatches) / static_cast<double>(trials) : 0.0; }
};

inline Nat cyclic_distance(const Nat& a, const Nat& b, BitCount width) {
  Nat d = a > b ? Nat(a - b) : Nat(b - a);
  Nat wrap = pow2(width) - d;
  return wrap < d ? wrap : d;
}

/// Runs the six-step exchange `trials` times with Z fixed and fresh X, Y per
/// trial. Draw order per trial: X then Y.
template <EntropySource R>
AgreementStats agreement_experiment(const ParamSet& ps, std::uint64_t trials, R& rng) {
  detail::require_kexenc(ps);
  if (trials == 0) throw ParamError("agreement_experiment requires trials >= 1");
  AgreementStats st;
  st.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Nat x = kex_gen_private(ps, rng);
    Nat y = kex_gen_private(ps, rng);
    auto u = kex_share(ps, x);
    auto v = kex_share(ps, y);
    auto wa = kex_derive(ps, x, v);
    auto wb = kex_derive(ps, y, u);
    if (wa.value != wb.value) {
      ++st.mismatches;
      Nat d = wa.value > wb.value ? Nat(wa.value - wb.value) : Nat(wb.value - wa.value);
      if (d > st.max_abs_diff) st.max_abs_diff = d;
      Nat c = cyclic_distance(wa.value, wb.value, ps.secret_width());
      if (c > st.max_cyclic_diff) st.max_cyclic_diff = c;
    }
  }
  return st;
}

}  // namespace moddiv::kex
