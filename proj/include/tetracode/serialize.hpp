#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "tetracode/code.hpp"

namespace tetracode {

/// Lattice JSON: arrays `vertices` (id, color, quasi, position), `edges`,
/// `faces`, `tetrahedra`; ids are array indices. One record per line and a
/// fixed key order, so equal lattices serialize to equal bytes.
std::string lattice_to_json(const DualLattice& lattice);
DualLattice lattice_from_json(std::string_view text);

/// Code sidecar: distance, counts, beta and stabilizer supports as id lists.
std::string code_to_json(const TetrahedralCode& code);

/// Integer ids, one per line; blank lines and lines starting with '#' are skipped.
std::vector<int> read_id_list(std::istream& in);

}  // namespace tetracode
