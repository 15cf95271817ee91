#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "moddiv/entropy.hpp"
#include "moddiv/nat.hpp"
#include "moddiv/params.hpp"
#include "moddiv/text_format.hpp"

namespace moddiv {

/// Public half of a key: parameters plus U = moddiv(X*Z, p, q).
struct PublicKey {
  ParamSet params;
  Nat public_share;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// Private X (exactly m bits) with its public share.
struct KeyPair {
  ParamSet params;
  Nat private_key;
  Nat public_share;

  PublicKey public_part() const { return {params, public_share}; }

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

/// moddiv(secret * Z, p, q); the same map produces U, V and S1.
inline Nat compute_share(const ParamSet& ps, const Nat& secret) {
  return moddiv(secret * ps.multiplier, ps.window_high, ps.window_low);
}

inline void require_secret_width(const ParamSet& ps, const Nat& secret, std::string_view what) {
  if (bit_length(secret) != ps.secret_bits)
    throw ParamError(std::string(what) + " must be exactly m = " + std::to_string(ps.secret_bits) +
                     " bits, got " + std::to_string(bit_length(secret)));
}

inline KeyPair make_keypair(const ParamSet& params, Nat private_key) {
  validate_params(params);
  require_secret_width(params, private_key, "private key X");
  Nat share = compute_share(params, private_key);
  return {params, std::move(private_key), std::move(share)};
}

template <EntropySource R>
KeyPair generate_keypair(const ParamSet& params, R& rng) {
  validate_params(params);
  return make_keypair(params, random_nbit(params.secret_bits, rng));
}

// ---- key file format -------------------------------------------------------

namespace detail {
inline void write_params(std::ostream& out, const ParamSet& ps) {
  out << "l=" << ps.multiplier_bits << '\n'
      << "m=" << ps.secret_bits << '\n'
      << "p=" << ps.window_high << '\n'
      << "q=" << ps.window_low << '\n'
      << "r=" << ps.slack << '\n'
      << "variant=" << to_string(ps.variant) << '\n'
      << "Z=" << to_hex(ps.multiplier) << '\n';
}
}  // namespace detail

inline std::string serialize(const ParamSet& ps) {
  std::ostringstream out;
  detail::write_params(out, ps);
  return out.str();
}

/// Never contains X.
inline std::string serialize(const PublicKey& key) {
  std::ostringstream out;
  detail::write_params(out, key.params);
  out << "U=" << to_hex(key.public_share) << '\n';
  return out.str();
}

inline std::string serialize(const KeyPair& key) {
  std::ostringstream out;
  detail::write_params(out, key.params);
  out << "U=" << to_hex(key.public_share) << '\n' << "X=" << to_hex(key.private_key) << '\n';
  return out.str();
}

/// Any key file: parameters plus whichever of U, X are present.
struct KeyFile {
  ParamSet params;
  std::optional<Nat> public_share;
  std::optional<Nat> private_key;
};

inline KeyFile parse_key_file(std::string_view text) {
  auto rec = Record::parse(text);
  rec.expect_only({"l", "m", "p", "q", "r", "variant", "Z", "U", "X"});
  KeyFile kf;
  auto& ps = kf.params;
  ps.multiplier_bits = parse_decimal("l", rec.get("l"));
  ps.secret_bits = parse_decimal("m", rec.get("m"));
  ps.window_high = parse_decimal("p", rec.get("p"));
  ps.window_low = parse_decimal("q", rec.get("q"));
  ps.slack = parse_decimal("r", rec.get("r"));
  ps.variant = parse_variant(rec.get("variant"));
  ps.multiplier = from_hex(rec.get("Z"));
  validate_params(ps);
  if (rec.has("U")) kf.public_share = from_hex(rec.get("U"));
  if (rec.has("X")) kf.private_key = from_hex(rec.get("X"));
  return kf;
}

inline ParamSet parse_params(std::string_view text) { return parse_key_file(text).params; }

inline PublicKey parse_public_key(std::string_view text) {
  auto kf = parse_key_file(text);
  if (!kf.public_share) throw FormatError("missing field 'U'");
  if (bit_length(*kf.public_share) > kf.params.share_bits())
    throw RangeError("U does not fit in p - q bits");
  return {kf.params, *kf.public_share};
}

/// Requires X and U, and checks U = moddiv(X*Z, p, q).
inline KeyPair parse_key_pair(std::string_view text) {
  auto kf = parse_key_file(text);
  if (!kf.private_key) throw FormatError("missing field 'X'");
  if (!kf.public_share) throw FormatError("missing field 'U'");
  auto kp = make_keypair(kf.params, *kf.private_key);
  if (kp.public_share != *kf.public_share) throw ParamError("U does not match X and Z");
  return kp;
}

}  // namespace moddiv
