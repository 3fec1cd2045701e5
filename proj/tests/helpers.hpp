#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "tetracode/code.hpp"

namespace tetracode::test {

// Codes are expensive enough at larger d to share across test cases.
inline const TetrahedralCode& code(int d) {
  static std::map<int, std::unique_ptr<TetrahedralCode>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<TetrahedralCode>(carve_tetrahedral_code(CodeSpec{d}));
  return *slot;
}

inline Chain qubits(std::initializer_list<int> ids) { return Chain(3, std::vector<int>(ids)); }

}  // namespace tetracode::test
