#include "tetracode/code.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tetracode {

namespace {

std::int64_t dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

bool is_corner(const Point3& p) { return floor_mod(p[0], 2) == 0; }

// All cells of the disphenoid honeycomb that contain the corner edge
// (c, c + 2 e_axis). The four centers around the edge form a ring; each
// consecutive pair spans one cell.
void cells_around_corner_edge(const Point3& c, int axis, std::vector<std::array<Point3, 4>>& out) {
  Point3 c2 = c;
  c2[static_cast<std::size_t>(axis)] += 2;
  int o1 = (axis + 1) % 3;
  int o2 = (axis + 2) % 3;
  auto center = [&](int s, int t) {
    Point3 m = c;
    m[static_cast<std::size_t>(axis)] += 1;
    m[static_cast<std::size_t>(o1)] += s;
    m[static_cast<std::size_t>(o2)] += t;
    return m;
  };
  const std::array<Point3, 4> ring = {center(1, 1), center(1, -1), center(-1, -1), center(-1, 1)};
  for (std::size_t i = 0; i < 4; ++i) out.push_back({c, c2, ring[i], ring[(i + 1) % 4]});
}

std::vector<std::array<Point3, 4>> honeycomb_cells(std::int64_t lo, std::int64_t hi) {
  std::vector<std::array<Point3, 4>> cells;
  auto start = lo + floor_mod(lo, 2);
  for (std::int64_t x = start; x <= hi; x += 2)
    for (std::int64_t y = start; y <= hi; y += 2)
      for (std::int64_t z = start; z <= hi; z += 2)
        for (int axis = 0; axis < 3; ++axis) cells_around_corner_edge({x, y, z}, axis, cells);
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace

void CodeSpec::validate() const {
  if (distance < 3 || distance % 2 == 0)
    throw ContractError("distance must be an odd integer >= 3, got " + std::to_string(distance));
}

Color honeycomb_color(const Point3& p) {
  const std::int64_t s = p[0] + p[1] + p[2];
  if (is_corner(p)) return floor_mod(s / 2, 2) == 0 ? Color::R : Color::G;
  return floor_mod((s - 3) / 2, 2) == 0 ? Color::B : Color::Y;
}

DualLattice build_honeycomb(int extent) {
  if (extent < 2) throw ContractError("honeycomb extent must be at least 2");
  auto cells = honeycomb_cells(-extent, extent - 2);
  if (cells.empty()) throw ContractError("honeycomb extent too small to contain a cell");
  std::map<Point3, int> index;
  std::vector<Vertex> vertices;
  std::vector<std::array<int, 4>> tets;
  for (const auto& cell : cells) {
    std::array<int, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
      auto [it, inserted] = index.emplace(cell[i], static_cast<int>(vertices.size()));
      if (inserted) vertices.push_back(Vertex{it->second, honeycomb_color(cell[i]), false, cell[i]});
      t[i] = it->second;
    }
    tets.push_back(t);
  }
  return DualLattice(std::move(vertices), std::move(tets));
}

std::array<std::int64_t, 4> carving_offsets(int distance) {
  CodeSpec{distance}.validate();
  const std::int64_t m = (distance - 3) / 2;
  return {m, m + 1, m + 2, m + 3};
}

TetrahedralCode carve_tetrahedral_code(const CodeSpec& spec) {
  spec.validate();
  const auto offsets = carving_offsets(spec.distance);

  // Interior points satisfy n_j.x <= c_j; with n_0+..+n_3 = 0 each coordinate
  // is bounded by half the sum of two offsets. Exterior cell vertices stick
  // out by at most 3 in n_j.x.
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) bound = std::max(bound, (offsets[i] + offsets[j]) / 2 + 4);
  auto cells = honeycomb_cells(-bound - 2, bound);

  auto exterior_facets = [&](const Point3& p) {
    std::vector<int> out;
    for (std::size_t j = 0; j < 4; ++j)
      if (dot(kFacetNormals[j], p) > offsets[j]) out.push_back(static_cast<int>(j));
    return out;
  };

  // Facet color: the single color class on the plane n_j.x = c_j + 1.
  std::array<Color, 4> facet_color{};
  for (std::size_t j = 0; j < 4; ++j) {
    const std::int64_t level = offsets[j] + 1;
    // A representative point with n_j.x = level: corners have even level.
    Point3 p{};
    if (floor_mod(level, 2) == 0)
      p = {level, 0, 0};
    else
      p = {level - 2, 1, 1};
    // Rotate the representative onto plane j.
    Point3 q{p[0] * kFacetNormals[j][0], p[1] * kFacetNormals[j][1], p[2] * kFacetNormals[j][2]};
    facet_color[j] = honeycomb_color(q);
  }

  std::map<Point3, int> index;
  std::vector<Vertex> vertices;
  std::array<int, 4> quasi_of_facet{};
  const std::int64_t far = 4 * (offsets[3] + 4);
  for (std::size_t j = 0; j < 4; ++j) {
    quasi_of_facet[j] = static_cast<int>(vertices.size());
    Point3 pos{far * kFacetNormals[j][0], far * kFacetNormals[j][1], far * kFacetNormals[j][2]};
    vertices.push_back(Vertex{quasi_of_facet[j], facet_color[j], true, pos});
  }

  std::vector<std::array<int, 4>> tets;
  std::vector<std::string> purity_violations;
  for (const auto& cell : cells) {
    int interior = 0;
    bool keep = true;
    std::array<int, 4> t{};
    std::array<bool, 4> facet_used{};
    for (std::size_t i = 0; i < 4 && keep; ++i) {
      auto ext = exterior_facets(cell[i]);
      if (ext.empty()) {
        ++interior;
        auto [it, inserted] = index.emplace(cell[i], static_cast<int>(vertices.size()));
        if (inserted) vertices.push_back(Vertex{it->second, honeycomb_color(cell[i]), false, cell[i]});
        t[i] = it->second;
      } else if (ext.size() > 1 || facet_used[static_cast<std::size_t>(ext[0])]) {
        keep = false;
      } else {
        auto j = static_cast<std::size_t>(ext[0]);
        facet_used[j] = true;
        t[i] = quasi_of_facet[j];
      }
    }
    if (!keep || interior == 0) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!vertices[static_cast<std::size_t>(t[i])].is_quasi) continue;
      auto j = static_cast<std::size_t>(std::find(quasi_of_facet.begin(), quasi_of_facet.end(), t[i]) - quasi_of_facet.begin());
      if (honeycomb_color(cell[i]) != facet_color[j]) {
        std::ostringstream os;
        os << "vertex (" << cell[i][0] << "," << cell[i][1] << "," << cell[i][2] << ") replaced by quasivertex of facet "
           << j << " has the wrong color";
        purity_violations.push_back(os.str());
      }
    }
    tets.push_back(t);
  }
  if (!purity_violations.empty()) throw ConstructionError("facet color purity violated: " + purity_violations.front());

  TetrahedralCode code;
  code.distance = spec.distance;
  code.lattice = std::make_shared<const DualLattice>(std::move(vertices), std::move(tets));
  const DualLattice& lat = *code.lattice;
  for (std::size_t j = 0; j < 4; ++j) {
    code.quasi_by_color[static_cast<std::size_t>(index_of(facet_color[j]))] = quasi_of_facet[j];
    code.facet_by_color[static_cast<std::size_t>(index_of(facet_color[j]))] = static_cast<int>(j);
  }
  for (const auto& v : lat.vertices()) {
    if (v.is_quasi) continue;
    code.real_vertices.push_back(v.id);
    code.x_stabilizers.push_back(star(lat, v.id, 3));
  }
  code.edge_measured.assign(lat.count(1), false);
  for (std::size_t e = 0; e < lat.count(1); ++e) {
    if (lat.all_quasi(1, static_cast<int>(e))) continue;
    code.edge_measured[e] = true;
    code.stabilizer_edges.push_back(static_cast<int>(e));
    auto cof = lat.cofaces(1, static_cast<int>(e), 3);
    code.z_stabilizers.emplace_back(cof.begin(), cof.end());
  }
  code.qubit_ids.resize(lat.count(3));
  for (std::size_t i = 0; i < code.qubit_ids.size(); ++i) code.qubit_ids[i] = static_cast<int>(i);

  auto problems = validate_code(code);
  if (!problems.empty()) {
    std::string msg = "construction validation failed for d=" + std::to_string(spec.distance) + ":";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConstructionError(msg);
  }
  return code;
}

std::vector<std::string> validate_code(const TetrahedralCode& code) {
  std::vector<std::string> problems;
  const DualLattice& lat = *code.lattice;

  if (lat.quasivertices().size() != 4) problems.push_back("expected exactly 4 quasivertices");
  std::array<int, 4> per_color{};
  for (int q : lat.quasivertices()) ++per_color[static_cast<std::size_t>(index_of(lat.vertex(q).color))];
  for (int c : per_color)
    if (c != 1) problems.push_back("quasivertices must carry one color each");

  for (std::size_t t = 0; t < lat.count(3); ++t) {
    std::array<bool, 4> seen{};
    for (int v : lat.simplex_vertices(3, static_cast<int>(t))) seen[static_cast<std::size_t>(index_of(lat.vertex(v).color))] = true;
    if (!(seen[0] && seen[1] && seen[2] && seen[3])) {
      problems.push_back("tetrahedron " + std::to_string(t) + " does not carry all four colors");
      break;
    }
    if (lat.all_quasi(3, static_cast<int>(t))) problems.push_back("the all-quasivertex tetrahedron must not be a qubit");
  }
  for (std::size_t f = 0; f < lat.count(2); ++f) {
    auto n = lat.cofaces(2, static_cast<int>(f), 3).size();
    if (n < 1 || n > 2) {
      problems.push_back("face " + std::to_string(f) + " lies in " + std::to_string(n) + " tetrahedra");
      break;
    }
  }
  // CSS commutation: every vertex star meets every edge coface evenly. Only
  // edges at a vertex can overlap its star.
  std::size_t violations = 0;
  for (std::size_t i = 0; i < code.real_vertices.size(); ++i) {
    const auto& xs = code.x_stabilizers[i];
    for (std::size_t j = 0; j < code.stabilizer_edges.size(); ++j) {
      const auto& zs = code.z_stabilizers[j];
      std::size_t overlap = 0;
      auto a = xs.begin();
      auto b = zs.begin();
      while (a != xs.end() && b != zs.end()) {
        if (*a < *b)
          ++a;
        else if (*b < *a)
          ++b;
        else {
          ++overlap;
          ++a;
          ++b;
        }
      }
      if (overlap % 2 != 0) ++violations;
    }
  }
  if (violations != 0) problems.push_back(std::to_string(violations) + " X/Z stabilizer pairs anticommute");
  return problems;
}

BoundaryRatio boundary_bulk_ratio(const TetrahedralCode& code) {
  BoundaryRatio r;
  const DualLattice& lat = *code.lattice;
  for (std::size_t t = 0; t < lat.count(3); ++t) {
    bool touches = false;
    for (int v : lat.simplex_vertices(3, static_cast<int>(t))) touches = touches || lat.vertex(v).is_quasi;
    (touches ? r.boundary : r.bulk)++;
  }
  return r;
}

}  // namespace tetracode
