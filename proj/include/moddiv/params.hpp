#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moddiv/entropy.hpp"
#include "moddiv/errors.hpp"
#include "moddiv/nat.hpp"

namespace moddiv {

/// Which inequality binds the window: key exchange / encryption use
/// p > m + q + r, signatures use p > l + q + r.
enum class Variant { KexEnc, Sig };

inline std::string_view to_string(Variant v) { return v == Variant::KexEnc ? "kexenc" : "sig"; }

inline Variant parse_variant(std::string_view text) {
  if (text == "kexenc") return Variant::KexEnc;
  if (text == "sig") return Variant::Sig;
  throw FormatError("unknown variant '" + std::string(text) + "' (expected kexenc or sig)");
}

/// Public domain parameters shared by both parties.
///
/// Field names follow their role; the conventional symbols are
/// l = multiplier_bits, m = secret_bits, p = window_high, q = window_low,
/// r = slack, Z = multiplier.
struct ParamSet {
  BitCount multiplier_bits = 0;
  BitCount secret_bits = 0;
  BitCount window_high = 0;
  BitCount window_low = 0;
  BitCount slack = 0;
  Nat multiplier;
  Variant variant = Variant::KexEnc;

  /// Width of a transmitted share, p - q.
  BitCount share_bits() const { return window_high - window_low; }

  /// Low bits discarded when deriving the secret: m + r (KexEnc) or l + r (Sig).
  BitCount secret_shift() const {
    return (variant == Variant::KexEnc ? secret_bits : multiplier_bits) + slack;
  }

  /// Width of the derived secret W (or the verification window for Sig).
  BitCount secret_width() const { return share_bits() - secret_shift(); }

  friend bool operator==(const ParamSet& a, const ParamSet& b) {
    return a.multiplier_bits == b.multiplier_bits && a.secret_bits == b.secret_bits &&
           a.window_high == b.window_high && a.window_low == b.window_low && a.slack == b.slack &&
           a.multiplier == b.multiplier && a.variant == b.variant;
  }
};

namespace detail {
inline std::string condition(std::string_view text) {
  return "Condition (" + std::string(text) + ") is not fulfilled !";
}

// Signed check over the raw widths, so that q = l + m - p <= 0 can be reported.
inline std::vector<std::string> violations(std::int64_t l, std::int64_t m, std::int64_t p,
                                           std::int64_t q, std::int64_t r, const Nat* z,
                                           Variant variant) {
  std::vector<std::string> out;
  if (l <= 0) out.push_back(condition("l > 0"));
  if (m <= 0) out.push_back(condition("m > 0"));
  if (p <= 0) out.push_back(condition("p > 0"));
  if (q <= 0) out.push_back(condition("q > 0"));
  if (r < 0) out.push_back(condition("r >= 0"));
  if (q != l + m - p) out.push_back(condition("q = l + m - p"));
  if (variant == Variant::KexEnc && !(p > m + q + r)) out.push_back(condition("p > m + q + r"));
  if (variant == Variant::Sig && !(p > l + q + r)) out.push_back(condition("p > l + q + r"));
  if (z && l > 0 && bit_length(*z) != static_cast<BitCount>(l)) out.push_back(condition("Z is l bits long"));
  return out;
}
}  // namespace detail

/// Returns `candidate` unchanged if every invariant of its variant holds;
/// otherwise throws ParamError listing each violated condition.
inline const ParamSet& validate_params(const ParamSet& candidate) {
  auto v = detail::violations(static_cast<std::int64_t>(candidate.multiplier_bits),
                              static_cast<std::int64_t>(candidate.secret_bits),
                              static_cast<std::int64_t>(candidate.window_high),
                              static_cast<std::int64_t>(candidate.window_low),
                              static_cast<std::int64_t>(candidate.slack), &candidate.multiplier,
                              candidate.variant);
  if (!v.empty()) throw ParamError(std::move(v));
  return candidate;
}

/// Checks (l, m, p, r) before a multiplier exists; q is derived as l + m - p.
inline void check_widths(std::int64_t l, std::int64_t m, std::int64_t p, std::int64_t r, Variant variant) {
  auto v = detail::violations(l, m, p, l + m - p, r, nullptr, variant);
  if (!v.empty()) throw ParamError(std::move(v));
}

/// Derives q = l + m - p, samples Z = random_nbit(l) and validates.
template <EntropySource R>
ParamSet generate_params(std::int64_t l, std::int64_t m, std::int64_t p, std::int64_t r, Variant variant,
                         R& rng) {
  check_widths(l, m, p, r, variant);
  ParamSet ps;
  ps.multiplier_bits = static_cast<BitCount>(l);
  ps.secret_bits = static_cast<BitCount>(m);
  ps.window_high = static_cast<BitCount>(p);
  ps.window_low = static_cast<BitCount>(l + m - p);
  ps.slack = static_cast<BitCount>(r);
  ps.variant = variant;
  ps.multiplier = random_nbit(ps.multiplier_bits, rng);
  return validate_params(ps);
}

}  // namespace moddiv
