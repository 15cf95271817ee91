#include <gtest/gtest.h>

#include <random>

#include "moddiv/entropy.hpp"
#include "moddiv/hardness/circuit.hpp"

using moddiv::Nat;
using namespace moddiv::hardness;

TEST(BuildCircuit, IdentityForOne) {
  auto c = build_circuit(1, 5);
  EXPECT_TRUE(c.gates.empty());
  ASSERT_EQ(c.outputs.size(), 6u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(c.outputs[i], c.input_wire(i));
  EXPECT_EQ(c.outputs[5], kFalse);
}

TEST(BuildCircuit, ShiftForTwo) {
  auto c = build_circuit(2, 4);
  EXPECT_TRUE(c.gates.empty());
  EXPECT_EQ(c.outputs[0], kFalse);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(c.outputs[i + 1], c.input_wire(i));
}

TEST(BuildCircuit, ThreeTimesTwoBits) {
  auto c = build_circuit(3, 2);
  EXPECT_EQ(evaluate(c, 2), 6);
  EXPECT_EQ(evaluate(c, 3), 9);
  // Two half adders: columns 1 and 2.
  EXPECT_EQ(c.gates.size(), 4u);
}

TEST(BuildCircuit, RejectsZero) {
  EXPECT_THROW(build_circuit(0, 3), moddiv::ParamError);
  EXPECT_THROW(build_circuit(3, 0), moddiv::ParamError);
}

TEST(BuildCircuit, GatesAreTopological) {
  auto c = build_circuit(0xb7, 9);
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    EXPECT_LT(c.gates[g].lhs, c.gate_wire(g));
    EXPECT_LT(c.gates[g].rhs, c.gate_wire(g));
    EXPECT_NE(c.gates[g].lhs, kFalse);
    EXPECT_NE(c.gates[g].rhs, kFalse);
  }
}

TEST(Evaluate, ExhaustiveUpToEightBits) {
  for (unsigned long a = 1; a < 256; ++a)
    for (unsigned m : {1u, 3u, 5u, 8u}) {
      auto c = build_circuit(a, m);
      for (unsigned long x = 0; x < (1ul << m); ++x) ASSERT_EQ(evaluate(c, x), Nat(a * x)) << a << '*' << x;
    }
}

TEST(Evaluate, RandomUpToTwelveBits) {
  moddiv::SeededDrbg rng(31);
  std::mt19937 pick(1);
  for (int i = 0; i < 400; ++i) {
    unsigned n = 1 + pick() % 12, m = 1 + pick() % 12;
    Nat a = moddiv::random_nbit(n, rng);
    auto c = build_circuit(a, m);
    for (int k = 0; k < 20; ++k) {
      Nat x = moddiv::random_nbit(m, rng);
      ASSERT_EQ(evaluate(c, x), Nat(a * x));
    }
  }
}

TEST(Evaluate, LargeOperands) {
  moddiv::SeededDrbg rng(32);
  Nat a = moddiv::random_nbit(200, rng);
  auto c = build_circuit(a, 150);
  for (int k = 0; k < 10; ++k) {
    Nat x = moddiv::random_nbit(150, rng);
    EXPECT_EQ(evaluate(c, x), Nat(a * x));
  }
}
