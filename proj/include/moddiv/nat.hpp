#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moddiv/errors.hpp"

namespace moddiv {

/// Arbitrary-precision unsigned integer. Every protocol value lives here.
using Nat = mpz_class;

/// Width of a quantity in bits.
using BitCount = std::size_t;

/// bit_length(0) == 0, otherwise the index of the top set bit plus one.
inline BitCount bit_length(const Nat& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline bool test_bit(const Nat& v, BitCount i) {
  return mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0;
}

inline Nat pow2(BitCount k) {
  Nat out;
  mpz_setbit(out.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return out;
}

/// The ModDiv window: (a mod 2^high) div 2^low, i.e. bits [low, high) of a.
/// Implemented as mask-and-shift; no division is performed.
inline Nat moddiv(const Nat& a, BitCount high, BitCount low) {
  if (high <= low) throw ParamError("moddiv requires p > q");
  if (sgn(a) < 0) throw RangeError("moddiv operand must be non-negative");
  Nat out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(low));
  mpz_fdiv_r_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(high - low));
  return out;
}

/// Lowercase hex with 0x prefix.
inline std::string to_hex(const Nat& v) { return "0x" + v.get_str(16); }

/// Parses `0x<hex>`; rejects anything else, including a sign or empty digits.
inline Nat from_hex(std::string_view text) {
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
    throw FormatError("expected 0x-prefixed hex, got '" + std::string(text) + "'");
  std::string digits(text.substr(2));
  for (char c : digits) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    if (!ok) throw FormatError("non-hex digit in '" + std::string(text) + "'");
  }
  Nat out;
  out.set_str(digits, 16);
  return out;
}

/// Decimal or 0x-prefixed hex, for CLI arguments.
inline Nat parse_nat(std::string_view text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) return from_hex(text);
  if (text.empty()) throw FormatError("empty integer");
  for (char c : text)
    if (c < '0' || c > '9') throw FormatError("not a decimal integer: '" + std::string(text) + "'");
  Nat out;
  out.set_str(std::string(text), 10);
  return out;
}

/// Big-endian bytes, left-padded with zeros to exactly `width` bytes.
inline std::vector<std::uint8_t> to_bytes_be(const Nat& v, std::size_t width) {
  std::vector<std::uint8_t> out(width, 0);
  if (sgn(v) == 0) return out;
  std::size_t count = (bit_length(v) + 7) / 8;
  if (count > width) throw RangeError("integer does not fit in the requested byte width");
  mpz_export(out.data() + (width - count), nullptr, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

inline Nat from_bytes_be(std::span<const std::uint8_t> bytes) {
  Nat out;
  if (!bytes.empty()) mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return out;
}

}  // namespace moddiv
