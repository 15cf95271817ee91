#pragma once

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "moddiv/digest.hpp"
#include "moddiv/entropy.hpp"
#include "moddiv/keys.hpp"
#include "moddiv/kex.hpp"
#include "moddiv/text_format.hpp"

namespace moddiv::sig {

/// (S1, S2), both < 2^(p-q). S1 commits to the ephemeral Y; S2 binds the
/// digest to X + Y.
struct Signature {
  Nat commitment;
  Nat response;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Message digest H of exactly l bits: the first l bits of
/// SHA-256(msg || be32(0)) || SHA-256(msg || be32(1)) || ..., top bit forced.
inline Nat hash_to_l_bits(std::span<const std::uint8_t> message, BitCount l) {
  if (l < 2) throw ParamError("hash_to_l_bits requires l >= 2");
  std::size_t nbytes = (l + 7) / 8;
  std::vector<std::uint8_t> stream;
  stream.reserve(nbytes + 32);
  for (std::uint32_t block = 0; stream.size() < nbytes; ++block) {
    auto d = Sha256().update(message).update(be32(block)).finish();
    stream.insert(stream.end(), d.begin(), d.end());
  }
  stream.resize(nbytes);
  Nat h = from_bytes_be(stream);
  mpz_fdiv_q_2exp(h.get_mpz_t(), h.get_mpz_t(), static_cast<mp_bitcnt_t>(8 * nbytes - l));
  mpz_setbit(h.get_mpz_t(), static_cast<mp_bitcnt_t>(l - 1));
  return h;
}

namespace detail {
inline void require_sig(const ParamSet& ps) {
  validate_params(ps);
  if (ps.variant != Variant::Sig) throw ParamError("signatures require a sig parameter set");
}
}  // namespace detail

/// Signs a precomputed digest with a caller-chosen ephemeral Y.
/// X + Y may take m + 1 bits and is not reduced before multiplying.
inline Signature sign_digest(const KeyPair& key, const Nat& digest, const Nat& ephemeral) {
  const auto& ps = key.params;
  detail::require_sig(ps);
  require_secret_width(ps, ephemeral, "ephemeral Y");
  if (bit_length(digest) != ps.multiplier_bits) throw ParamError("digest must be exactly l bits");
  return {compute_share(ps, ephemeral),
          moddiv(digest * (key.private_key + ephemeral), ps.window_high, ps.window_low)};
}

template <EntropySource R>
Signature sign(const KeyPair& key, std::span<const std::uint8_t> message, R& rng) {
  detail::require_sig(key.params);
  Nat y = random_nbit(key.params.secret_bits, rng);
  return sign_digest(key, hash_to_l_bits(message, key.params.multiplier_bits), y);
}

enum class Outcome { Accept, Reject, OutOfRange };

/// Both verification windows are reported so callers can inspect near misses.
struct Verdict {
  Outcome outcome = Outcome::Reject;
  Nat wa;
  Nat wb;

  bool accepted() const { return outcome == Outcome::Accept; }
};

/// Wa = moddiv(H*(S1+U), p-q, l+r), Wb = moddiv(Z*S2, p-q, l+r).
/// Accepts iff the cyclic distance between Wa and Wb is at most `tolerance`;
/// the default 0 is strict equality. Only public values are used.
inline Verdict verify_digest(const PublicKey& pub, const Nat& digest, const Signature& s,
                             unsigned tolerance = 0) {
  const auto& ps = pub.params;
  detail::require_sig(ps);
  Verdict v;
  if (bit_length(s.commitment) > ps.share_bits() || bit_length(s.response) > ps.share_bits()) {
    v.outcome = Outcome::OutOfRange;
    return v;
  }
  v.wa = moddiv(digest * (s.commitment + pub.public_share), ps.share_bits(), ps.secret_shift());
  v.wb = moddiv(ps.multiplier * s.response, ps.share_bits(), ps.secret_shift());
  bool ok = tolerance == 0 ? v.wa == v.wb : kex::cyclic_distance(v.wa, v.wb, ps.secret_width()) <= tolerance;
  v.outcome = ok ? Outcome::Accept : Outcome::Reject;
  return v;
}

inline Verdict verify(const PublicKey& pub, std::span<const std::uint8_t> message, const Signature& s,
                      unsigned tolerance = 0) {
  detail::require_sig(pub.params);
  return verify_digest(pub, hash_to_l_bits(message, pub.params.multiplier_bits), s, tolerance);
}

// ---- detached signature file: `S1=0x<hex>`, `S2=0x<hex>` --------------------

inline std::string serialize(const Signature& s) {
  std::ostringstream out;
  out << "S1=" << to_hex(s.commitment) << '\n' << "S2=" << to_hex(s.response) << '\n';
  return out.str();
}

inline Signature parse_signature(std::string_view text) {
  auto rec = Record::parse(text);
  rec.expect_only({"S1", "S2"});
  return {from_hex(rec.get("S1")), from_hex(rec.get("S2"))};
}

}  // namespace moddiv::sig
