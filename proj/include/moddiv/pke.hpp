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

namespace moddiv::pke {

/// Minimum width of W accepted for encryption.
inline constexpr BitCount kMinSecretBits = 128;

/// Ephemeral share V plus the XOR-stream body. No integrity tag: a wrong key
/// or a carry mismatch decrypts to garbage, and the body is malleable.
struct Ciphertext {
  Nat ephemeral_share;
  std::vector<std::uint8_t> body;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// block_i = SHA-256(W_bytes || be64(i)), concatenated and truncated.
inline std::vector<std::uint8_t> keystream(const kex::SharedSecret& secret, std::size_t length) {
  std::vector<std::uint8_t> out;
  out.reserve(length);
  auto key = secret.bytes();
  for (std::uint64_t block = 0; out.size() < length; ++block) {
    auto counter = be64(block);
    auto d = Sha256().update(key).update(counter).finish();
    std::size_t take = std::min(d.size(), length - out.size());
    out.insert(out.end(), d.begin(), d.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

inline std::vector<std::uint8_t> apply_keystream(const kex::SharedSecret& secret,
                                                 std::span<const std::uint8_t> data) {
  auto ks = keystream(secret, data.size());
  for (std::size_t i = 0; i < data.size(); ++i) ks[i] ^= data[i];
  return ks;
}

namespace detail {
inline void require_encryption_grade(const ParamSet& ps) {
  validate_params(ps);
  if (ps.variant != Variant::KexEnc) throw ParamError("encryption requires a kexenc parameter set");
  if (ps.secret_width() < kMinSecretBits)
    throw ParamError("parameters too small for encryption: p - q - m - r = " +
                     std::to_string(ps.secret_width()) + " < " + std::to_string(kMinSecretBits));
}
}  // namespace detail

/// Encryption with a caller-chosen ephemeral Y (m bits).
inline Ciphertext encrypt_with_ephemeral(const PublicKey& recipient, const Nat& ephemeral,
                                         std::span<const std::uint8_t> plaintext) {
  const auto& ps = recipient.params;
  detail::require_encryption_grade(ps);
  if (bit_length(recipient.public_share) > ps.share_bits()) throw RangeError("U does not fit in p - q bits");
  auto v = kex::kex_share(ps, ephemeral);
  auto w = kex::kex_derive(ps, ephemeral, kex::KexShare{recipient.public_share, ps});
  return {std::move(v.value), apply_keystream(w, plaintext)};
}

template <EntropySource R>
Ciphertext encrypt(const PublicKey& recipient, std::span<const std::uint8_t> plaintext, R& rng) {
  detail::require_encryption_grade(recipient.params);
  return encrypt_with_ephemeral(recipient, random_nbit(recipient.params.secret_bits, rng), plaintext);
}

inline std::vector<std::uint8_t> decrypt(const KeyPair& key, const Ciphertext& ct) {
  const auto& ps = key.params;
  validate_params(ps);
  if (bit_length(ct.ephemeral_share) > ps.share_bits()) throw RangeError("V does not fit in p - q bits");
  auto w = kex::kex_derive(ps, key.private_key, kex::KexShare{ct.ephemeral_share, ps});
  return apply_keystream(w, ct.body);
}

// ---- ciphertext file: `V=0x<hex>` then `body=<base64>` ----------------------

inline std::string serialize(const Ciphertext& ct) {
  std::ostringstream out;
  out << "V=" << to_hex(ct.ephemeral_share) << '\n' << "body=" << base64_encode(ct.body) << '\n';
  return out.str();
}

inline Ciphertext parse_ciphertext(std::string_view text) {
  auto rec = Record::parse(text);
  rec.expect_only({"V", "body"});
  return {from_hex(rec.get("V")), base64_decode(rec.get("body"))};
}

}  // namespace moddiv::pke
