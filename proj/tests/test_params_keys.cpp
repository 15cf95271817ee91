#include <gtest/gtest.h>

#include "moddiv/keys.hpp"
#include "moddiv/params.hpp"

using moddiv::Nat;
using moddiv::ParamSet;
using moddiv::Variant;

namespace {
ParamSet make(std::size_t l, std::size_t m, std::size_t p, std::size_t q, std::size_t r, Nat z, Variant v) {
  ParamSet ps;
  ps.multiplier_bits = l;
  ps.secret_bits = m;
  ps.window_high = p;
  ps.window_low = q;
  ps.slack = r;
  ps.multiplier = std::move(z);
  ps.variant = v;
  return ps;
}

std::vector<std::string> violations_of(const ParamSet& ps) {
  try {
    moddiv::validate_params(ps);
  } catch (const moddiv::ParamError& e) {
    return e.violations();
  }
  return {};
}
}  // namespace

TEST(ValidateParams, AcceptsKexToyParams) {
  auto ps = make(8, 5, 10, 3, 0, 201, Variant::KexEnc);
  EXPECT_EQ(moddiv::validate_params(ps), ps);
  EXPECT_EQ(ps.secret_width(), 2u);
}

TEST(ValidateParams, ReportsWindowCondition) {
  auto v = violations_of(make(8, 6, 10, 4, 0, 201, Variant::KexEnc));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "Condition (p > m + q + r) is not fulfilled !");
}

TEST(ValidateParams, AcceptsSigToyParams) {
  auto ps = make(4, 8, 10, 2, 0, 13, Variant::Sig);
  EXPECT_NO_THROW(moddiv::validate_params(ps));
  // The same widths violate the key-exchange inequality.
  auto v = violations_of(make(4, 8, 10, 2, 0, 13, Variant::KexEnc));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "Condition (p > m + q + r) is not fulfilled !");
}

TEST(ValidateParams, ReportsEachViolationByName) {
  auto v = violations_of(make(8, 5, 10, 4, 0, 100, Variant::KexEnc));
  // q = 4 is not l + m - p and Z = 100 has 7 bits; 10 > 5 + 4 + 0 still holds.
  std::vector<std::string> expected{"Condition (q = l + m - p) is not fulfilled !",
                                    "Condition (Z is l bits long) is not fulfilled !"};
  EXPECT_EQ(v, expected);
  EXPECT_EQ(violations_of(make(0, 5, 10, 3, 0, 1, Variant::KexEnc)).front(), "Condition (l > 0) is not fulfilled !");
  EXPECT_EQ(violations_of(make(4, 8, 10, 2, 5, 13, Variant::Sig)),
            std::vector<std::string>{"Condition (p > l + q + r) is not fulfilled !"});
}

// validate_params agrees with the reference script's guard (reject iff
// m + q + r >= p) on every small KexEnc tuple with q = l + m - p > 0.
TEST(ValidateParams, MatchesReferenceGuard) {
  int accepted = 0;
  for (std::size_t l = 1; l <= 12; ++l)
    for (std::size_t m = 1; m <= 12; ++m)
      for (std::size_t p = 1; p < l + m; ++p)
        for (std::size_t r = 0; r <= 6; ++r) {
          std::size_t q = l + m - p;
          auto ps = make(l, m, p, q, r, moddiv::pow2(l - 1), Variant::KexEnc);
          bool guard_rejects = m + q + r >= p;
          bool ok = violations_of(ps).empty();
          ASSERT_EQ(ok, !guard_rejects) << l << ' ' << m << ' ' << p << ' ' << r;
          accepted += ok;
        }
  EXPECT_GT(accepted, 0);
}

TEST(GenerateParams, DerivesWindowLowAndSamplesZ) {
  moddiv::SeededDrbg rng(11);
  auto ps = moddiv::generate_params(512, 300, 800, 3, Variant::KexEnc, rng);
  EXPECT_EQ(ps.window_low, 12u);
  EXPECT_EQ(moddiv::bit_length(ps.multiplier), 512u);
  EXPECT_THROW(moddiv::generate_params(8, 8, 20, 0, Variant::KexEnc, rng), moddiv::ParamError);  // q < 0
}

TEST(KeyPair, PublicShareInvariant) {
  moddiv::SeededDrbg rng(12);
  auto ps = moddiv::generate_params(64, 40, 90, 0, Variant::KexEnc, rng);
  auto kp = moddiv::generate_keypair(ps, rng);
  EXPECT_EQ(moddiv::bit_length(kp.private_key), 40u);
  EXPECT_EQ(kp.public_share, moddiv::moddiv(kp.private_key * ps.multiplier, 90, 14));
  EXPECT_LE(moddiv::bit_length(kp.public_share), ps.share_bits());
  EXPECT_THROW(moddiv::make_keypair(ps, Nat(5)), moddiv::ParamError);
}

TEST(KeyFile, RoundTripsEveryShape) {
  moddiv::SeededDrbg rng(13);
  for (int i = 0; i < 50; ++i) {
    auto variant = i % 2 ? Variant::Sig : Variant::KexEnc;
    std::int64_t l = 8 + i * 13, m = 8 + i * 7, r = 3;
    std::int64_t p = variant == Variant::KexEnc ? (l + 2 * m + r) / 2 + 1 : (2 * l + m + r) / 2 + 1;
    auto ps = moddiv::generate_params(l, m, p, r, variant, rng);
    auto kp = moddiv::generate_keypair(ps, rng);
    EXPECT_EQ(moddiv::parse_params(moddiv::serialize(ps)), ps);
    EXPECT_EQ(moddiv::parse_public_key(moddiv::serialize(kp.public_part())), kp.public_part());
    EXPECT_EQ(moddiv::parse_key_pair(moddiv::serialize(kp)), kp);
  }
}

TEST(KeyFile, PublicExportNeverCarriesPrivateKey) {
  moddiv::SeededDrbg rng(14);
  auto ps = moddiv::generate_params(32, 20, 44, 0, Variant::KexEnc, rng);
  auto kp = moddiv::generate_keypair(ps, rng);
  auto text = moddiv::serialize(kp.public_part());
  EXPECT_EQ(text.find("X="), std::string::npos);
  EXPECT_NE(moddiv::serialize(kp).find("X=" + moddiv::to_hex(kp.private_key)), std::string::npos);
}

TEST(KeyFile, Format) {
  auto ps = make(8, 5, 10, 3, 0, 201, Variant::KexEnc);
  EXPECT_EQ(moddiv::serialize(ps), "l=8\nm=5\np=10\nq=3\nr=0\nvariant=kexenc\nZ=0xc9\n");
}

TEST(KeyFile, ParseErrors) {
  const std::string good = "l=8\nm=5\np=10\nq=3\nr=0\nvariant=kexenc\nZ=0xc9\n";
  EXPECT_NO_THROW(moddiv::parse_params(good));
  EXPECT_THROW(moddiv::parse_params("l=8\nm=5\np=10\nq=4\nr=0\nvariant=kexenc\nZ=0xc9\n"), moddiv::ParamError);
  EXPECT_THROW(moddiv::parse_params("l=8\nm=5\np=10\nq=3\nr=0\nvariant=kexenc\nZ=0xc9g\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params("l=8\nm=5\np=10\nq=3\nr=0\nvariant=kexenc\nZ=201\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params("l=8\nm=5\np=10\nq=3\nvariant=kexenc\nZ=0xc9\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params(good + "l=9\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params(good + "extra=1\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params(good + "garbage\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params("l=-8\nm=5\np=10\nq=3\nr=0\nvariant=kexenc\nZ=0xc9\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_params("l=8\nm=5\np=10\nq=3\nr=0\nvariant=dh\nZ=0xc9\n"), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_public_key(good), moddiv::FormatError);
  EXPECT_THROW(moddiv::parse_key_pair(good + "U=0x5d\n"), moddiv::FormatError);
  // X = 19 gives U = 93 = 0x5d; a mismatching U is rejected.
  EXPECT_NO_THROW(moddiv::parse_key_pair(good + "U=0x5d\nX=0x13\n"));
  EXPECT_THROW(moddiv::parse_key_pair(good + "U=0x5e\nX=0x13\n"), moddiv::ParamError);
  EXPECT_THROW(moddiv::parse_key_pair(good + "U=0x5d\nX=0x3\n"), moddiv::ParamError);
}
