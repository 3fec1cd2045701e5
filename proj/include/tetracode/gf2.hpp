#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tetracode/code.hpp"

namespace tetracode {

/// Dense GF(2) vector packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    auto mask = std::uint64_t{1} << (i % 64);
    if (v)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool any() const noexcept;
  std::size_t popcount() const noexcept;
  BitVector& operator^=(const BitVector& o);
  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::span<std::uint64_t> words() noexcept { return words_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  static BitVector from_indices(std::size_t n, std::span<const int> indices);
  std::vector<int> indices() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row-major GF(2) matrix with packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  /// One row per support list.
  static BitMatrix from_supports(std::size_t cols, const std::vector<std::vector<int>>& supports);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }

  BitMatrix transpose() const;
  /// Matrix-vector product M x.
  BitVector multiply(const BitVector& x) const;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

std::size_t gf2_rank(const BitMatrix& m);

/// Solves M x = b; std::nullopt when b is outside the column space of M.
/// Throws ContractError on dimension mismatch.
std::optional<BitVector> gf2_solve(const BitMatrix& m, const BitVector& b);

enum class PauliType { X, Z };

enum class Membership { Stabilizer, Logical, OutsideNormalizer };

const char* to_string(Membership m) noexcept;

/// Parity-check matrices and classification helpers for one code.
///
/// Hx rows are vertex stars, Hz rows are edge cofaces. Building the oracle
/// once amortizes matrix construction over many classifications.
class StabilizerOracle {
 public:
  explicit StabilizerOracle(const TetrahedralCode& code);

  const BitMatrix& hx() const noexcept { return hx_; }
  const BitMatrix& hz() const noexcept { return hz_; }
  std::size_t n() const noexcept { return hx_.cols(); }

  Membership classify(std::span<const int> residual, PauliType type) const;
  Membership classify(const BitVector& residual, PauliType type) const;

  /// Syndrome of a Pauli of the given type: rows of the opposite-type matrix
  /// with odd overlap.
  BitVector syndrome(const BitVector& support, PauliType type) const;

 private:
  BitMatrix hx_, hz_;
  BitMatrix hx_t_, hz_t_;
};

Membership stabilizer_membership(const TetrahedralCode& code, std::span<const int> residual, PauliType type);

struct LogicalWeightReport {
  bool found = false;
  /// Exact minimum when found, otherwise the lower bound w_max.
  int weight = 0;
};

/// Exhaustive search for the lightest logical operator of the given type
/// with weight <= w_max.
LogicalWeightReport min_logical_weight(const TetrahedralCode& code, PauliType type, int w_max);

}  // namespace tetracode
