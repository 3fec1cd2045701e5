#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "helpers.hpp"
#include "tetracode/gf2.hpp"

using namespace tetracode;
using tetracode::test::code;

TEST_CASE("honeycomb coloring on a reference cell") {
  const std::array<Point3, 4> cell = {Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{1, 1, 1}, Point3{1, -1, 1}};
  std::set<Color> colors;
  for (const auto& p : cell) colors.insert(honeycomb_color(p));
  CHECK(colors.size() == 4);

  const DualLattice h = build_honeycomb(4);
  std::map<Point3, int> at;
  for (const auto& v : h.vertices()) at[v.position] = v.id;
  for (const auto& p : cell) REQUIRE(at.count(p));
  std::array<int, 4> ids{};
  for (std::size_t i = 0; i < 4; ++i) ids[i] = at[cell[i]];
  std::sort(ids.begin(), ids.end());
  CHECK(std::find(h.tetrahedra().begin(), h.tetrahedra().end(), ids) != h.tetrahedra().end());
}

TEST_CASE("honeycomb edges join distinct colors and interior degree is uniform") {
  const int extent = 8;
  const DualLattice h = build_honeycomb(extent);
  for (const auto& e : h.edges()) CHECK(h.vertex(e[0]).color != h.vertex(e[1]).color);
  std::map<bool, std::set<std::size_t>> degree;  // corner? -> cell degrees seen
  for (const auto& v : h.vertices()) {
    bool interior = true;
    for (auto x : v.position) interior = interior && std::llabs(x) <= extent - 3;
    if (!interior) continue;
    degree[v.position[0] % 2 == 0].insert(h.cofaces(0, v.id, 3).size());
  }
  REQUIRE(degree[true].size() == 1);
  REQUIRE(degree[false].size() == 1);
  // Measured fixture: 24 cells meet at every interior vertex of either sublattice.
  CHECK(*degree[true].begin() == 24);
  CHECK(*degree[false].begin() == 24);
  CHECK_THROWS_AS(build_honeycomb(1), ContractError);
}

TEST_CASE("distance-3 code counts") {
  const TetrahedralCode& c = code(3);
  CHECK(c.n_qubits() == 15);
  CHECK(c.x_stabilizers.size() == 4);
  CHECK(c.z_stabilizers.size() == 18);
  CHECK(c.lattice->quasivertices().size() == 4);
}

TEST_CASE("code sizes follow the measured fixture") {
  // Measured n(d); equals (d^3 + d) / 2 on every built code.
  const std::map<int, std::size_t> n = {{3, 15}, {5, 65}, {7, 175}, {9, 369}, {11, 671}};
  for (auto [d, expected] : n) CHECK(code(d).n_qubits() == expected);
}

TEST_CASE("invalid distances are rejected") {
  CHECK_THROWS_AS(carve_tetrahedral_code(CodeSpec{4}), ContractError);
  CHECK_THROWS_AS(carve_tetrahedral_code(CodeSpec{1}), ContractError);
  CHECK_THROWS_AS(carve_tetrahedral_code(CodeSpec{-3}), ContractError);
}

TEST_CASE("codes validate and encode one qubit") {
  for (int d : {3, 5, 7}) {
    const TetrahedralCode& c = code(d);
    CHECK(validate_code(c).empty());
    const StabilizerOracle o(c);
    const auto k = static_cast<long>(c.n_qubits()) - static_cast<long>(gf2_rank(o.hx())) -
                   static_cast<long>(gf2_rank(o.hz()));
    CHECK(k == 1);
  }
  const StabilizerOracle o3(code(3));
  CHECK(gf2_rank(o3.hx()) == 4);
  CHECK(gf2_rank(o3.hz()) == 10);
}

TEST_CASE("stabilizer supports match stars and cofaces") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  for (std::size_t i = 0; i < c.real_vertices.size(); ++i)
    CHECK(c.x_stabilizers[i] == star(lat, c.real_vertices[i], 3));
  for (std::size_t i = 0; i < c.stabilizer_edges.size(); ++i) {
    const auto cof = lat.cofaces(1, c.stabilizer_edges[i], 3);
    CHECK(c.z_stabilizers[i] == std::vector<int>(cof.begin(), cof.end()));
    CHECK(c.edge_measured[static_cast<std::size_t>(c.stabilizer_edges[i])]);
  }
  // Only edges between two quasivertices carry no stabilizer.
  for (std::size_t e = 0; e < lat.count(1); ++e)
    CHECK(c.edge_measured[e] == !lat.all_quasi(1, static_cast<int>(e)));
}

TEST_CASE("stabilizers commute") {
  for (int d : {3, 5, 7}) {
    const TetrahedralCode& c = code(d);
    for (const auto& sx : c.x_stabilizers)
      for (const auto& sz : c.z_stabilizers) {
        std::size_t overlap = 0;
        for (int q : sz) overlap += std::binary_search(sx.begin(), sx.end(), q);
        CHECK(overlap % 2 == 0);
      }
  }
}

TEST_CASE("quasivertices carry one color each and no qubit joins them all") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  for (Color k : kAllColors) {
    const int q = c.quasi_by_color[static_cast<std::size_t>(index_of(k))];
    CHECK(lat.vertex(q).is_quasi);
    CHECK(lat.vertex(q).color == k);
  }
  for (std::size_t t = 0; t < lat.count(3); ++t) CHECK_FALSE(lat.all_quasi(3, static_cast<int>(t)));
  CHECK(c.logical_x_support().size() == c.n_qubits());
  CHECK(c.logical_z_support().size() == c.n_qubits());
}

TEST_CASE("boundary to bulk ratio") {
  CHECK(boundary_bulk_ratio(code(7)).value() > 1.0);
  CHECK(boundary_bulk_ratio(code(9)).value() > 1.0);
  CHECK(boundary_bulk_ratio(code(11)).value() < 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int d = 3; d <= 11; d += 2) {
    const double beta = boundary_bulk_ratio(code(d)).value();
    CHECK(beta < prev);
    prev = beta;
  }
  BoundaryRatio none;
  none.boundary = 3;
  CHECK(std::isinf(none.value()));
}

TEST_CASE("boundary ratio decays like 1/d" * doctest::timeout(120)) {
  double lo = 1e300, hi = 0;
  for (int d = 7; d <= 15; d += 2) {
    const double scaled = d * boundary_bulk_ratio(carve_tetrahedral_code(CodeSpec{d})).value();
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi / lo <= 2.0);
}
