#include <gtest/gtest.h>

#include <bit>

#include "moddiv/pke.hpp"
#include "support.hpp"

using moddiv::Nat;
using namespace moddiv::pke;

namespace {
struct Fixture {
  moddiv::SeededDrbg rng{2718};
  moddiv::ParamSet ps = moddiv::generate_params(512, 300, 800, 128, moddiv::Variant::KexEnc, rng);
  moddiv::KeyPair key = moddiv::generate_keypair(ps, rng);

  std::vector<std::uint8_t> random_bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    rng.fill(out);
    return out;
  }
};
}  // namespace

TEST(Keystream, EmptyAndDeterministic) {
  moddiv::kex::SharedSecret w{12345, 200};
  EXPECT_TRUE(keystream(w, 0).empty());
  EXPECT_EQ(keystream(w, 100), keystream(w, 100));
  EXPECT_EQ(keystream(w, 100).size(), 100u);
  auto longer = keystream(w, 1000);
  EXPECT_TRUE(std::equal(longer.begin(), longer.begin() + 100, keystream(w, 100).begin()));
}

TEST(Keystream, FirstBlockIsHashOfSecretAndCounter) {
  moddiv::kex::SharedSecret w{0xabcd, 16};
  std::vector<std::uint8_t> input{0xab, 0xcd, 0, 0, 0, 0, 0, 0, 0, 1};
  auto expected = moddiv::sha256(input);
  auto ks = keystream(w, 64);
  EXPECT_TRUE(std::equal(expected.begin(), expected.end(), ks.begin() + 32));
}

TEST(Keystream, AdjacentSecretsDiverge) {
  moddiv::kex::SharedSecret a{Nat("123456789123456789123456789"), 360};
  moddiv::kex::SharedSecret b{a.value + 1, 360};
  auto ka = keystream(a, 1024), kb = keystream(b, 1024);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < ka.size(); ++i) differing += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(ka[i] ^ kb[i])));
  EXPECT_GE(differing, 1024u * 8u * 40u / 100u);
}

TEST(Encrypt, RoundTrip) {
  Fixture f;
  for (std::size_t len : {0u, 1u, 31u, 32u, 33u, 1000u, 65536u}) {
    auto pt = f.random_bytes(len);
    auto ct = encrypt(f.key.public_part(), pt, f.rng);
    EXPECT_EQ(ct.body.size(), len);
    EXPECT_LE(moddiv::bit_length(ct.ephemeral_share), f.ps.share_bits());
    EXPECT_EQ(decrypt(f.key, ct), pt);
  }
}

TEST(Encrypt, OneMebibyte) {
  Fixture f;
  auto pt = f.random_bytes(1 << 20);
  EXPECT_EQ(decrypt(f.key, encrypt(f.key.public_part(), pt, f.rng)), pt);
}

TEST(Encrypt, FreshEphemeralEachTime) {
  Fixture f;
  std::vector<std::uint8_t> pt{'h', 'i'};
  auto a = encrypt(f.key.public_part(), pt, f.rng);
  auto b = encrypt(f.key.public_part(), pt, f.rng);
  EXPECT_NE(a.ephemeral_share, b.ephemeral_share);
  EXPECT_NE(a.body, b.body);
}

TEST(Encrypt, EmptyPlaintextStillCarriesShare) {
  Fixture f;
  auto ct = encrypt(f.key.public_part(), {}, f.rng);
  EXPECT_TRUE(ct.body.empty());
  EXPECT_GT(ct.ephemeral_share, 0);
}

TEST(Encrypt, MatchesManualDerivation) {
  Fixture f;
  Nat y = moddiv::random_nbit(300, f.rng);
  std::vector<std::uint8_t> pt(77, 0x5a);
  auto ct = encrypt_with_ephemeral(f.key.public_part(), y, pt);
  EXPECT_EQ(ct.ephemeral_share, moddiv::moddiv(y * f.ps.multiplier, 800, 12));
  moddiv::kex::SharedSecret w{moddiv::moddiv(y * f.key.public_share, 788, 428), 360};
  auto ks = keystream(w, pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) EXPECT_EQ(ct.body[i], pt[i] ^ ks[i]);
}

TEST(Decrypt, WrongKeyGivesGarbage) {
  Fixture f;
  auto other = moddiv::generate_keypair(f.ps, f.rng);
  auto pt = f.random_bytes(256);
  auto ct = encrypt(f.key.public_part(), pt, f.rng);
  EXPECT_NE(decrypt(other, ct), pt);
}

TEST(Decrypt, BodyIsMalleable) {
  Fixture f;
  auto pt = f.random_bytes(64);
  auto ct = encrypt(f.key.public_part(), pt, f.rng);
  ct.body[10] ^= 0x04;
  auto out = decrypt(f.key, ct);
  pt[10] ^= 0x04;
  EXPECT_EQ(out, pt);
}

TEST(Decrypt, RejectsOversizedShare) {
  Fixture f;
  Ciphertext ct{moddiv::pow2(f.ps.share_bits()), {1, 2, 3}};
  EXPECT_THROW(decrypt(f.key, ct), moddiv::RangeError);
}

TEST(Encrypt, GuardsSmallSecretWidth) {
  moddiv::SeededDrbg rng(1);
  auto ps = moddiv::generate_params(512, 300, 800, 361, moddiv::Variant::KexEnc, rng);  // width 127
  auto key = moddiv::generate_keypair(ps, rng);
  try {
    encrypt(key.public_part(), std::vector<std::uint8_t>{1}, rng);
    FAIL() << "expected ParamError";
  } catch (const moddiv::ParamError& e) {
    EXPECT_NE(std::string(e.what()).find("parameters too small for encryption"), std::string::npos);
  }
  auto ok = moddiv::generate_params(512, 300, 800, 360, moddiv::Variant::KexEnc, rng);  // width 128
  auto key2 = moddiv::generate_keypair(ok, rng);
  EXPECT_NO_THROW(encrypt(key2.public_part(), std::vector<std::uint8_t>{1}, rng));
}

TEST(CiphertextFile, RoundTripAndFormat) {
  Ciphertext ct{0xbeef, {'a', 'b', 'c', 'd'}};
  EXPECT_EQ(serialize(ct), "V=0xbeef\nbody=YWJjZA==\n");
  EXPECT_EQ(parse_ciphertext(serialize(ct)), ct);
  Ciphertext empty{7, {}};
  EXPECT_EQ(parse_ciphertext(serialize(empty)), empty);
  Fixture f;
  for (std::size_t len = 0; len < 40; ++len) {
    Ciphertext c{moddiv::random_nbit(100, f.rng), f.random_bytes(len)};
    EXPECT_EQ(parse_ciphertext(serialize(c)), c);
  }
}

TEST(CiphertextFile, ParseErrors) {
  EXPECT_THROW(parse_ciphertext("V=0x1\n"), moddiv::FormatError);
  EXPECT_THROW(parse_ciphertext("body=AAAA\n"), moddiv::FormatError);
  EXPECT_THROW(parse_ciphertext("V=12\nbody=AAAA\n"), moddiv::FormatError);
  EXPECT_THROW(parse_ciphertext("V=0x1\nbody=AAA\n"), moddiv::FormatError);
  EXPECT_THROW(parse_ciphertext("V=0x1\nbody=AA*A\n"), moddiv::FormatError);
}
