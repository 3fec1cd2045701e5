#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "tetracode/lattice.hpp"

namespace tetracode {

/// Thrown when a built lattice fails structural validation.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CodeSpec {
  int distance = 3;

  /// Throws ContractError unless distance is odd and >= 3.
  void validate() const;
};

/// Vertex 4-coloring of the bcc tetrahedral honeycomb: corners by
/// ((x+y+z)/2 mod 2) -> {r, g}, centers by (((x+y+z)-3)/2 mod 2) -> {b, y}.
Color honeycomb_color(const Point3& p);

/// The tetragonal-disphenoid honeycomb on the bcc point set, restricted to
/// cells whose corners lie in the cube [-extent, extent]^3. No quasivertices.
DualLattice build_honeycomb(int extent);

/// Outward facet normals of the carved tetrahedron.
inline constexpr std::array<Point3, 4> kFacetNormals = {Point3{1, 1, 1}, Point3{1, -1, -1}, Point3{-1, 1, -1},
                                                         Point3{-1, -1, 1}};

/// Plane offsets c_j of the half-spaces n_j . x <= c_j for a given distance.
std::array<std::int64_t, 4> carving_offsets(int distance);

struct TetrahedralCode {
  int distance = 0;
  std::shared_ptr<const DualLattice> lattice;
  /// Real (non-quasi) vertex ids; x_stabilizers[i] is the support of real_vertices[i].
  std::vector<int> real_vertices;
  std::vector<std::vector<int>> x_stabilizers;
  /// Edge ids with at least one real endpoint; z_stabilizers[i] is the support of stabilizer_edges[i].
  std::vector<int> stabilizer_edges;
  std::vector<std::vector<int>> z_stabilizers;
  /// Quasivertex id per color index.
  std::array<int, 4> quasi_by_color{};
  /// Facet index (into kFacetNormals) per color index.
  std::array<int, 4> facet_by_color{};
  /// True for edges that carry a Z stabilizer (lookup by edge id).
  std::vector<bool> edge_measured;

  std::size_t n_qubits() const { return lattice->count(3); }
  const std::vector<int>& logical_x_support() const { return qubit_ids; }
  const std::vector<int>& logical_z_support() const { return qubit_ids; }

  /// All qubit ids in order; both logical operators act on every qubit.
  std::vector<int> qubit_ids;
};

/// Builds the distance-d tetrahedral color code and validates it.
/// Throws ConstructionError naming the violated invariant on failure.
TetrahedralCode carve_tetrahedral_code(const CodeSpec& spec);

/// Structural checks on a built code; returns an empty list when valid.
std::vector<std::string> validate_code(const TetrahedralCode& code);

struct BoundaryRatio {
  std::size_t boundary = 0;  // tetrahedra touching a quasivertex
  std::size_t bulk = 0;
  /// +infinity when there are no bulk qubits.
  double value() const {
    return bulk == 0 ? std::numeric_limits<double>::infinity()
                     : static_cast<double>(boundary) / static_cast<double>(bulk);
  }
};

BoundaryRatio boundary_bulk_ratio(const TetrahedralCode& code);

}  // namespace tetracode
