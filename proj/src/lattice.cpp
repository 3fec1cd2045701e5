#include "tetracode/lattice.hpp"

#include <algorithm>
#include <unordered_map>

namespace tetracode {

namespace {

std::uint64_t pack(std::span<const int> ids) {
  std::uint64_t key = 0;
  for (int id : ids) key = (key << 21) | static_cast<std::uint64_t>(id + 1);
  return key;
}

template <std::size_t K>
void sort_ids(std::array<int, K>& a) {
  std::sort(a.begin(), a.end());
}

}  // namespace

char color_char(Color c) noexcept {
  static constexpr char kChars[] = {'r', 'g', 'b', 'y'};
  return kChars[index_of(c)];
}

Color parse_color(std::string_view text) {
  if (text == "r" || text == "R" || text == "red") return Color::R;
  if (text == "g" || text == "G" || text == "green") return Color::G;
  if (text == "b" || text == "B" || text == "blue") return Color::B;
  if (text == "y" || text == "Y" || text == "yellow") return Color::Y;
  throw ContractError("unknown color '" + std::string(text) + "'");
}

std::array<ColorPair, 6> all_color_pairs() noexcept {
  return {ColorPair{Color::R, Color::G}, ColorPair{Color::R, Color::B}, ColorPair{Color::R, Color::Y},
          ColorPair{Color::G, Color::B}, ColorPair{Color::G, Color::Y}, ColorPair{Color::B, Color::Y}};
}

// ---------------------------------------------------------------------------
// Chain

Chain::Chain(int dimension, std::vector<int> ids) : dim_(dimension), ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  // Duplicates cancel in pairs.
  std::vector<int> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size();) {
    std::size_t j = i;
    while (j < ids_.size() && ids_[j] == ids_[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(ids_[i]);
    i = j;
  }
  ids_ = std::move(out);
}

bool Chain::contains(int id) const noexcept { return std::binary_search(ids_.begin(), ids_.end(), id); }

void Chain::toggle(int id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it != ids_.end() && *it == id)
    ids_.erase(it);
  else
    ids_.insert(it, id);
}

Chain& Chain::operator^=(const Chain& other) {
  if (other.dim_ != dim_ && !other.empty() && !empty())
    throw ContractError("chain union across dimensions " + std::to_string(dim_) + " and " +
                        std::to_string(other.dim_));
  if (empty()) dim_ = other.dim_;
  std::vector<int> out;
  out.reserve(ids_.size() + other.ids_.size());
  std::set_symmetric_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                                std::back_inserter(out));
  ids_ = std::move(out);
  return *this;
}

// ---------------------------------------------------------------------------
// DualLattice

DualLattice::DualLattice(std::vector<Vertex> vertices, std::vector<std::array<int, 4>> tetrahedra)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id != static_cast<int>(i)) throw ContractError("vertex ids must be dense indices");
    if (vertices_[i].is_quasi) quasi_.push_back(static_cast<int>(i));
  }
  for (auto& t : tetrahedra) {
    sort_ids(t);
    for (int v : t)
      if (v < 0 || v >= static_cast<int>(vertices_.size())) throw ContractError("tetrahedron vertex out of range");
  }
  std::sort(tetrahedra.begin(), tetrahedra.end());
  tetrahedra.erase(std::unique(tetrahedra.begin(), tetrahedra.end()), tetrahedra.end());
  tetras_ = std::move(tetrahedra);

  // Enumerate sub-simplices in sorted order so ids are reproducible.
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> faces;
  for (const auto& t : tetras_) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        edges.push_back({t[i], t[j]});
        for (int k = j + 1; k < 4; ++k) faces.push_back({t[i], t[j], t[k]});
      }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  edges_ = std::move(edges);
  faces_ = std::move(faces);

  std::unordered_map<std::uint64_t, int> edge_index, face_index;
  edge_index.reserve(edges_.size() * 2);
  face_index.reserve(faces_.size() * 2);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_index.emplace(pack(edges_[i]), static_cast<int>(i));
  for (std::size_t i = 0; i < faces_.size(); ++i) face_index.emplace(pack(faces_[i]), static_cast<int>(i));

  // Build down-incidence lists for every (dim, k<dim) pair.
  auto build_down = [&](int dim, int k, std::size_t n, auto&& faces_fn) {
    Csr& csr = down_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(k)];
    csr.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> f = faces_fn(i);
      std::sort(f.begin(), f.end());
      csr.values.insert(csr.values.end(), f.begin(), f.end());
      csr.offsets[i + 1] = static_cast<int>(csr.values.size());
    }
  };

  build_down(1, 0, edges_.size(), [&](std::size_t i) { return std::vector<int>(edges_[i].begin(), edges_[i].end()); });
  build_down(2, 0, faces_.size(), [&](std::size_t i) { return std::vector<int>(faces_[i].begin(), faces_[i].end()); });
  build_down(2, 1, faces_.size(), [&](std::size_t i) {
    const auto& f = faces_[i];
    return std::vector<int>{edge_index.at(pack(std::array{f[0], f[1]})), edge_index.at(pack(std::array{f[0], f[2]})),
                            edge_index.at(pack(std::array{f[1], f[2]}))};
  });
  build_down(3, 0, tetras_.size(), [&](std::size_t i) { return std::vector<int>(tetras_[i].begin(), tetras_[i].end()); });
  build_down(3, 1, tetras_.size(), [&](std::size_t i) {
    const auto& t = tetras_[i];
    std::vector<int> out;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) out.push_back(edge_index.at(pack(std::array{t[a], t[b]})));
    return out;
  });
  build_down(3, 2, tetras_.size(), [&](std::size_t i) {
    const auto& t = tetras_[i];
    std::vector<int> out;
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> f{};
      int w = 0;
      for (int a = 0; a < 4; ++a)
        if (a != skip) f[static_cast<std::size_t>(w++)] = t[a];
      out.push_back(face_index.at(pack(f)));
    }
    return out;
  });

  // Up-incidence is the transpose of down-incidence.
  for (int dim = 1; dim <= 3; ++dim)
    for (int k = 0; k < dim; ++k) {
      const Csr& down = down_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(k)];
      Csr& up = up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(dim)];
      std::size_t nk = count(k);
      std::size_t nd = count(dim);
      up.offsets.assign(nk + 1, 0);
      for (int f : down.values) ++up.offsets[static_cast<std::size_t>(f) + 1];
      for (std::size_t i = 0; i < nk; ++i) up.offsets[i + 1] += up.offsets[i];
      up.values.assign(down.values.size(), 0);
      std::vector<int> cursor(up.offsets.begin(), up.offsets.end() - 1);
      for (std::size_t s = 0; s < nd; ++s)
        for (int f : down.row(static_cast<int>(s)))
          up.values[static_cast<std::size_t>(cursor[static_cast<std::size_t>(f)]++)] = static_cast<int>(s);
    }
}

std::size_t DualLattice::count(int dim) const {
  switch (dim) {
    case 0: return vertices_.size();
    case 1: return edges_.size();
    case 2: return faces_.size();
    case 3: return tetras_.size();
    default: throw ContractError("simplex dimension must be in 0..3, got " + std::to_string(dim));
  }
}

void DualLattice::check_dim(int dim) const {
  if (dim < 0 || dim > 3) throw ContractError("simplex dimension must be in 0..3, got " + std::to_string(dim));
}

std::span<const int> DualLattice::simplex_vertices(int dim, int id) const {
  check_dim(dim);
  if (id < 0 || static_cast<std::size_t>(id) >= count(dim)) throw ContractError("simplex id out of range");
  switch (dim) {
    case 0: return {&vertices_[static_cast<std::size_t>(id)].id, 1};
    case 1: return edges_[static_cast<std::size_t>(id)];
    case 2: return faces_[static_cast<std::size_t>(id)];
    default: return tetras_[static_cast<std::size_t>(id)];
  }
}

std::span<const int> DualLattice::cofaces(int dim, int id, int k) const {
  check_dim(dim);
  check_dim(k);
  if (k <= dim) throw ContractError("coface dimension must exceed simplex dimension");
  if (id < 0 || static_cast<std::size_t>(id) >= count(dim)) throw ContractError("simplex id out of range");
  return up_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(k)].row(id);
}

std::span<const int> DualLattice::faces_of(int dim, int id, int k) const {
  check_dim(dim);
  check_dim(k);
  if (k >= dim) throw ContractError("face dimension must be below simplex dimension");
  if (id < 0 || static_cast<std::size_t>(id) >= count(dim)) throw ContractError("simplex id out of range");
  return down_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(k)].row(id);
}

int DualLattice::find_edge(int a, int b) const noexcept {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::array<int, 2>{a, b});
  if (it == edges_.end() || (*it)[0] != a || (*it)[1] != b) return -1;
  return static_cast<int>(it - edges_.begin());
}

int DualLattice::find_face(int a, int b, int c) const noexcept {
  std::array<int, 3> f{a, b, c};
  std::sort(f.begin(), f.end());
  auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
  if (it == faces_.end() || *it != f) return -1;
  return static_cast<int>(it - faces_.begin());
}

int DualLattice::edge_id(int a, int b) const {
  int e = find_edge(a, b);
  if (e < 0) throw ContractError("no edge between vertices " + std::to_string(a) + " and " + std::to_string(b));
  return e;
}

int DualLattice::face_id(int a, int b, int c) const {
  int f = find_face(a, b, c);
  if (f < 0) throw ContractError("no such face");
  return f;
}

bool DualLattice::all_quasi(int dim, int id) const {
  for (int v : simplex_vertices(dim, id))
    if (!vertices_[static_cast<std::size_t>(v)].is_quasi) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Operations

Chain boundary_project(const DualLattice& lattice, const Chain& chain, int target_dim) {
  const int n = chain.dimension();
  if (n < 1 || n > 3 || target_dim < 0 || target_dim >= n)
    throw ContractError("boundary_project needs 0 <= m < n <= 3, got n=" + std::to_string(n) +
                        " m=" + std::to_string(target_dim));
  std::vector<int> hits;
  for (int id : chain.ids()) {
    auto fs = lattice.faces_of(n, id, target_dim);
    hits.insert(hits.end(), fs.begin(), fs.end());
  }
  return Chain(target_dim, std::move(hits));
}

std::vector<int> star(const DualLattice& lattice, int v, int k) {
  if (k == 0) {
    (void)lattice.vertex(v);
    return {v};
  }
  auto s = lattice.cofaces(0, v, k);
  return {s.begin(), s.end()};
}

std::vector<int> link_surface(const DualLattice& lattice, int v) {
  std::vector<int> out;
  for (int t : lattice.cofaces(0, v, 3)) {
    for (int f : lattice.faces_of(3, t, 2)) {
      auto fv = lattice.simplex_vertices(2, f);
      if (std::find(fv.begin(), fv.end(), v) == fv.end()) {
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

ColorPair edge_label(const DualLattice& lattice, int edge) {
  auto ev = lattice.simplex_vertices(1, edge);
  Color a = lattice.vertex(ev[0]).color;
  Color b = lattice.vertex(ev[1]).color;
  Color out[2]{};
  int w = 0;
  for (Color c : kAllColors)
    if (c != a && c != b && w < 2) out[w++] = c;
  return ColorPair{out[0], out[1]};
}

Chain restrict_syndrome_by_sweep_color(const DualLattice& lattice, const Chain& sigma, Color sweep) {
  if (sigma.empty()) return Chain(1);
  if (sigma.dimension() != 1) throw ContractError("syndrome must be an edge chain");
  std::vector<int> kept;
  for (int e : sigma.ids())
    if (edge_label(lattice, e).contains(sweep)) kept.push_back(e);
  return Chain(1, std::move(kept));
}

RestrictedGraph twice_restricted_graph(const DualLattice& lattice, ColorPair keep) {
  if (keep.first == keep.second) throw ContractError("restriction needs two distinct colors");
  RestrictedGraph g{keep, {}, {}, {}};
  g.adjacency.resize(lattice.count(0));
  for (const auto& v : lattice.vertices())
    if (keep.contains(v.color)) g.nodes.push_back(v.id);
  for (std::size_t e = 0; e < lattice.count(1); ++e) {
    const auto& ev = lattice.edges()[e];
    if (keep.contains(lattice.vertex(ev[0]).color) && keep.contains(lattice.vertex(ev[1]).color)) {
      g.arcs.push_back(static_cast<int>(e));
      g.adjacency[static_cast<std::size_t>(ev[0])].push_back(ev[1]);
      g.adjacency[static_cast<std::size_t>(ev[1])].push_back(ev[0]);
    }
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

}  // namespace tetracode
