#pragma once

#include <openssl/rand.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <span>

#include "moddiv/errors.hpp"
#include "moddiv/nat.hpp"

namespace moddiv {

/// Anything that can fill a byte buffer with random bytes.
template <class R>
concept EntropySource = requires(R& rng, std::span<std::uint8_t> out) {
  { rng.fill(out) };
};

/// Operating-system CSPRNG (via libcrypto). Default for every key-generating path.
class OsEntropy {
public:
  void fill(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
      throw Error("system entropy source failed");
  }
};

/// INSECURE. Deterministic generator for tests, demos and reproducible
/// statistics. Identical seeds give identical streams on every conforming
/// standard library.
class SeededDrbg {
public:
  explicit SeededDrbg(std::uint64_t seed) : engine_(seed) {}

  void fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
      std::uint64_t word = engine_();
      for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
        out[i] = static_cast<std::uint8_t>(word >> (8 * b));
      }
    }
  }

  /// Derives an independent generator, for handing to a parallel branch.
  SeededDrbg split() { return SeededDrbg(engine_()); }

private:
  std::mt19937_64 engine_;
};

static_assert(EntropySource<OsEntropy>);
static_assert(EntropySource<SeededDrbg>);

/// Uniform integer in [2^(n-1), 2^n): exactly n bits with the top bit set.
template <EntropySource R>
Nat random_nbit(BitCount n, R& rng) {
  if (n == 0) throw ParamError("random_nbit requires n >= 1");
  std::vector<std::uint8_t> buf((n + 7) / 8);
  rng.fill(buf);
  Nat v = from_bytes_be(buf);
  mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  mpz_setbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(n - 1));
  return v;
}

}  // namespace moddiv
