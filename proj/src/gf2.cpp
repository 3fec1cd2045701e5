#include "tetracode/gf2.hpp"

#include <bit>
#include <functional>

namespace tetracode {

bool BitVector::any() const noexcept {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.n_ != n_) throw ContractError("bit vector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

BitVector BitVector::from_indices(std::size_t n, std::span<const int> indices) {
  BitVector v(n);
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw ContractError("index out of range for bit vector");
    v.flip(static_cast<std::size_t>(i));
  }
  return v;
}

std::vector<int> BitVector::indices() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto word = words_[w];
    while (word) {
      out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
      word &= word - 1;
    }
  }
  return out;
}

BitMatrix BitMatrix::from_supports(std::size_t cols, const std::vector<std::vector<int>>& supports) {
  BitMatrix m(supports.size(), cols);
  for (std::size_t r = 0; r < supports.size(); ++r) m.rows_[r] = BitVector::from_indices(cols, supports[r]);
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (int c : rows_[r].indices()) t.set(static_cast<std::size_t>(c), r);
  return t;
}

BitVector BitMatrix::multiply(const BitVector& x) const {
  if (x.size() != cols_) throw ContractError("matrix-vector dimension mismatch");
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    std::uint64_t acc = 0;
    auto a = rows_[r].words();
    auto b = x.words();
    for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
    if (std::popcount(acc) % 2) out.set(r);
  }
  return out;
}

std::size_t gf2_rank(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r)
      if (rows[r].get(c)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

std::optional<BitVector> gf2_solve(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) throw ContractError("gf2_solve: right-hand side length does not match row count");
  // Augmented rows [M | b].
  const std::size_t n = m.cols();
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BitVector row(n + 1);
    for (int c : m.row(r).indices()) row.set(static_cast<std::size_t>(c));
    if (b.get(r)) row.set(n);
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    pivot_cols.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r].get(n)) return std::nullopt;
  BitVector x(n);
  for (std::size_t r = 0; r < rank; ++r)
    if (rows[r].get(n)) x.set(pivot_cols[r]);
  return x;
}

const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::Stabilizer: return "stabilizer";
    case Membership::Logical: return "logical";
    case Membership::OutsideNormalizer: return "outside-normalizer";
  }
  return "?";
}

StabilizerOracle::StabilizerOracle(const TetrahedralCode& code)
    : hx_(BitMatrix::from_supports(code.n_qubits(), code.x_stabilizers)),
      hz_(BitMatrix::from_supports(code.n_qubits(), code.z_stabilizers)),
      hx_t_(hx_.transpose()),
      hz_t_(hz_.transpose()) {}

BitVector StabilizerOracle::syndrome(const BitVector& support, PauliType type) const {
  return type == PauliType::X ? hz_.multiply(support) : hx_.multiply(support);
}

Membership StabilizerOracle::classify(const BitVector& residual, PauliType type) const {
  if (syndrome(residual, type).any()) return Membership::OutsideNormalizer;
  // Same-type stabilizer group membership: residual in the row space of H.
  const BitMatrix& ht = type == PauliType::X ? hx_t_ : hz_t_;
  return gf2_solve(ht, residual) ? Membership::Stabilizer : Membership::Logical;
}

Membership StabilizerOracle::classify(std::span<const int> residual, PauliType type) const {
  return classify(BitVector::from_indices(n(), residual), type);
}

Membership stabilizer_membership(const TetrahedralCode& code, std::span<const int> residual, PauliType type) {
  return StabilizerOracle(code).classify(residual, type);
}

LogicalWeightReport min_logical_weight(const TetrahedralCode& code, PauliType type, int w_max) {
  if (w_max < 0) throw ContractError("w_max must be non-negative");
  StabilizerOracle oracle(code);
  const int n = static_cast<int>(code.n_qubits());
  std::vector<int> support;
  for (int w = 1; w <= std::min(w_max, n); ++w) {
    support.assign(static_cast<std::size_t>(w), 0);
    // Enumerate w-subsets in lexicographic order.
    for (int i = 0; i < w; ++i) support[static_cast<std::size_t>(i)] = i;
    while (true) {
      if (oracle.classify(support, type) == Membership::Logical) return {true, w};
      int i = w - 1;
      while (i >= 0 && support[static_cast<std::size_t>(i)] == n - w + i) --i;
      if (i < 0) break;
      ++support[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < w; ++j) support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return {false, w_max};
}

}  // namespace tetracode
