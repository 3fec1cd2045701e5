#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tetracode/gf2.hpp"

using namespace tetracode;
using tetracode::test::code;

namespace {

BitMatrix identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1U);
  return m;
}

// Random element of the stabilizer group of the given type.
BitVector random_stabilizer(const BitMatrix& h, std::mt19937_64& rng) {
  BitVector v(h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r)
    if (rng() & 1U) v ^= h.row(r);
  return v;
}

}  // namespace

TEST_CASE("bit vectors") {
  BitVector v(130);
  v.set(0);
  v.set(129);
  CHECK(v.popcount() == 2);
  CHECK(v.indices() == std::vector<int>{0, 129});
  v.flip(129);
  CHECK(v.indices() == std::vector<int>{0});
  const std::vector<int> ids = {3, 64, 100};
  CHECK(BitVector::from_indices(130, ids).indices() == ids);
}

TEST_CASE("rank of identity and zero matrices") {
  CHECK(gf2_rank(identity(3)) == 3);
  CHECK(gf2_rank(BitMatrix(4, 5)) == 0);
  CHECK(gf2_rank(identity(70)) == 70);
}

TEST_CASE("rank of a matrix with dependent rows") {
  BitMatrix m = BitMatrix::from_supports(4, {{0, 1}, {1, 2}, {0, 2}, {3}});
  CHECK(gf2_rank(m) == 3);
  CHECK(gf2_rank(m.transpose()) == 3);
}

TEST_CASE("solve against identity returns b") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    BitVector b(40);
    for (std::size_t i = 0; i < 40; ++i) b.set(i, rng() & 1U);
    const auto x = gf2_solve(identity(40), b);
    REQUIRE(x);
    CHECK(*x == b);
  }
  const auto zero = gf2_solve(identity(5), BitVector(5));
  REQUIRE(zero);
  CHECK_FALSE(zero->any());
}

TEST_CASE("random systems verify by multiplication") {
  std::mt19937_64 rng(11);
  int solvable = 0, unsolvable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const BitMatrix m = random_matrix(20, 30, rng);
    BitVector b(20);
    if (trial % 2 == 0) {
      BitVector x(30);
      for (std::size_t i = 0; i < 30; ++i) x.set(i, rng() & 1U);
      b = m.multiply(x);
    } else {
      for (std::size_t i = 0; i < 20; ++i) b.set(i, rng() & 1U);
    }
    const auto x = gf2_solve(m, b);
    if (x) {
      CHECK(m.multiply(*x) == b);
      ++solvable;
    } else {
      ++unsolvable;
    }
    if (trial % 2 == 0) CHECK(x.has_value());
  }
  CHECK(solvable >= 100);
  // Rank-deficient tall systems exercise the unsolvable branch.
  const BitMatrix tall = random_matrix(40, 10, rng);
  BitVector b(40);
  b.set(0);
  b.set(39);
  const auto x = gf2_solve(tall, b);
  if (x) CHECK(tall.multiply(*x) == b);
  (void)unsolvable;
}

TEST_CASE("solve rejects mismatched dimensions") {
  CHECK_THROWS_AS(gf2_solve(identity(4), BitVector(5)), ContractError);
}

TEST_CASE("stabilizer membership basics") {
  const TetrahedralCode& c = code(3);
  const std::vector<int> empty;
  CHECK(stabilizer_membership(c, empty, PauliType::X) == Membership::Stabilizer);
  CHECK(stabilizer_membership(c, empty, PauliType::Z) == Membership::Stabilizer);
  CHECK(stabilizer_membership(c, c.x_stabilizers[0], PauliType::X) == Membership::Stabilizer);
  CHECK(stabilizer_membership(c, c.z_stabilizers[0], PauliType::Z) == Membership::Stabilizer);
  CHECK(stabilizer_membership(c, c.logical_x_support(), PauliType::X) == Membership::Logical);
  CHECK(stabilizer_membership(c, c.logical_z_support(), PauliType::Z) == Membership::Logical);
  const std::vector<int> one = {0};
  CHECK(stabilizer_membership(c, one, PauliType::X) == Membership::OutsideNormalizer);
  CHECK(stabilizer_membership(c, one, PauliType::Z) == Membership::OutsideNormalizer);
}

TEST_CASE("membership is invariant under stabilizer cosets") {
  const TetrahedralCode& c = code(5);
  const StabilizerOracle o(c);
  std::mt19937_64 rng(5);
  for (auto type : {PauliType::X, PauliType::Z}) {
    const BitMatrix& h = type == PauliType::X ? o.hx() : o.hz();
    for (int trial = 0; trial < 30; ++trial) {
      BitVector r(c.n_qubits());
      for (std::size_t i = 0; i < r.size(); ++i) r.set(i, rng() % 5 == 0);
      const Membership base = o.classify(r, type);
      for (std::size_t g = 0; g < h.rows(); g += 3) {
        BitVector shifted = r;
        shifted ^= h.row(g);
        CHECK(o.classify(shifted, type) == base);
      }
    }
  }
}

TEST_CASE("parity shortcut agrees with the oracle on zero-syndrome residuals") {
  for (int d : {3, 5}) {
    const TetrahedralCode& c = code(d);
    const StabilizerOracle o(c);
    std::mt19937_64 rng(static_cast<unsigned>(d));
    const BitVector all = BitVector::from_indices(c.n_qubits(), c.qubit_ids);
    for (auto type : {PauliType::X, PauliType::Z}) {
      const BitMatrix& h = type == PauliType::X ? o.hx() : o.hz();
      for (int trial = 0; trial < 100; ++trial) {
        BitVector r = random_stabilizer(h, rng);
        if (trial % 2) r ^= all;
        const BitVector syn = o.syndrome(r, type);
        CHECK_FALSE(syn.any());
        const bool odd = r.popcount() % 2 == 1;
        CHECK((o.classify(r, type) == Membership::Logical) == odd);
      }
    }
  }
}

TEST_CASE("exhaustive minimum logical weight at distance 3") {
  const TetrahedralCode& c = code(3);
  const auto x = min_logical_weight(c, PauliType::X, 15);
  const auto z = min_logical_weight(c, PauliType::Z, 15);
  REQUIRE(x.found);
  REQUIRE(z.found);
  CHECK(std::min(x.weight, z.weight) == 3);
  CHECK(z.weight == 3);
  // Measured: X logicals need weight 7 on the smallest code.
  CHECK(x.weight == 7);
  // Nothing of weight <= 2 is a logical.
  CHECK_FALSE(min_logical_weight(c, PauliType::X, 2).found);
  CHECK_FALSE(min_logical_weight(c, PauliType::Z, 2).found);
  const auto degenerate = min_logical_weight(c, PauliType::Z, 0);
  CHECK_FALSE(degenerate.found);
  CHECK(degenerate.weight == 0);
  CHECK_THROWS_AS(min_logical_weight(c, PauliType::Z, -1), ContractError);
}
