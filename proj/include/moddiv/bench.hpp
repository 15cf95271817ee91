#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

#include "moddiv/entropy.hpp"
#include "moddiv/errors.hpp"
#include "moddiv/kex.hpp"
#include "moddiv/nat.hpp"

namespace moddiv::bench {

/// Left-to-right square-and-multiply: base^exp mod modulus. `mults`, when
/// given, receives the number of modular multiplications (squarings included).
inline Nat modexp_baseline(const Nat& base, const Nat& exp, const Nat& modulus, std::uint64_t* mults = nullptr) {
  if (modulus < 2) throw ParamError("modexp_baseline requires modulus >= 2");
  if (sgn(base) < 0 || sgn(exp) < 0) throw RangeError("modexp_baseline operands must be non-negative");
  std::uint64_t count = 0;
  Nat b = base % modulus;
  Nat acc = 1;
  for (BitCount i = bit_length(exp); i-- > 0;) {
    acc *= acc;
    mpz_tdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
    ++count;
    if (test_bit(exp, i)) {
      acc *= b;
      mpz_tdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
      ++count;
    }
  }
  if (mults) *mults = count;
  return acc % modulus;
}

/// Timings at one operand width. Times are medians in nanoseconds per call.
struct WidthResult {
  BitCount width = 0;
  double share_ns = 0;
  double derive_ns = 0;
  double modexp_ns = 0;
  /// Machine-independent counts: big multiplications per call.
  std::uint64_t moddiv_mults = 1;
  std::uint64_t modexp_mults = 0;

  double speedup() const { return modexp_ns / derive_ns; }
};

struct BenchReport {
  std::vector<WidthResult> rows;
  std::size_t repeats = 0;
};

/// Key-exchange parameters used at width w: l = m = w, p = 7w/4, q = w/4,
/// r = 0, giving w-bit secrets multiplied against 3w/2-bit shares.
template <EntropySource R>
ParamSet bench_params(BitCount w, R& rng) {
  auto l = static_cast<std::int64_t>(w);
  return generate_params(l, l, 7 * l / 4, 0, Variant::KexEnc, rng);
}

namespace detail {
template <class F>
double median_ns_per_call(F&& f, std::size_t repeats, std::size_t inner) {
  std::vector<double> samples;
  samples.reserve(repeats);
  for (std::size_t r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < inner; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(inner));
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

// Batch size so one sample lasts about a millisecond.
template <class F>
std::size_t calibrate(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  double ns = std::max(1.0, std::chrono::duration<double, std::nano>(t1 - t0).count());
  return static_cast<std::size_t>(std::clamp(1e6 / ns, 1.0, 1e5));
}
}  // namespace detail

/// Times kex_share and kex_derive against modexp_baseline with a w-bit odd
/// modulus, w-bit base and w-bit exponent. Runs on the calling thread only.
template <EntropySource R>
BenchReport bench_run(const std::vector<BitCount>& widths, std::size_t repeats, R& rng) {
  if (repeats < 5) throw ParamError("bench requires repeats >= 5");
  BenchReport report;
  report.repeats = repeats;
  for (BitCount w : widths) {
    if (w < 256) throw ParamError("bench widths must be >= 256 bits");
    auto ps = bench_params(w, rng);
    Nat x = random_nbit(ps.secret_bits, rng);
    Nat y = random_nbit(ps.secret_bits, rng);
    auto v = kex::kex_share(ps, y);
    Nat modulus = random_nbit(w, rng);
    mpz_setbit(modulus.get_mpz_t(), 0);
    Nat base = random_nbit(w, rng) % modulus;
    Nat exp = random_nbit(w, rng);

    WidthResult row;
    row.width = w;
    volatile std::size_t sink = 0;
    auto share = [&] { sink = sink + mpz_size(kex::kex_share(ps, x).value.get_mpz_t()); };
    auto derive = [&] { sink = sink + mpz_size(kex::kex_derive(ps, x, v).value.get_mpz_t()); };
    auto modexp = [&] { sink = sink + mpz_size(modexp_baseline(base, exp, modulus).get_mpz_t()); };
    row.share_ns = detail::median_ns_per_call(share, repeats, detail::calibrate(share));
    row.derive_ns = detail::median_ns_per_call(derive, repeats, detail::calibrate(derive));
    row.modexp_ns = detail::median_ns_per_call(modexp, repeats, detail::calibrate(modexp));
    modexp_baseline(base, exp, modulus, &row.modexp_mults);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace moddiv::bench
