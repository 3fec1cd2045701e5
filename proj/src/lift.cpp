#include <algorithm>
#include <bit>
#include <queue>

#include "tetracode/x_decoder.hpp"

namespace tetracode {

namespace {

// Local view of the star of one vertex: tetrahedra, their link faces and
// the edges of the link surface.
struct StarView {
  std::vector<int> tetras;      // star(v, 3)
  std::vector<int> link_faces;  // link face of tetras[i]
  int min_face_slot = -1;       // slot whose link face has the smallest id

  explicit StarView(const DualLattice& lat, int v) : tetras(star(lat, v, 3)), link_faces(link_surface(lat, v)) {
    for (std::size_t i = 0; i < link_faces.size(); ++i)
      if (min_face_slot < 0 || link_faces[i] < link_faces[static_cast<std::size_t>(min_face_slot)])
        min_face_slot = static_cast<int>(i);
  }
};

// Opposite link edge of a face containing v.
int opposite_edge(const DualLattice& lat, int v, int face) {
  auto fv = lat.simplex_vertices(2, face);
  if (std::find(fv.begin(), fv.end(), v) == fv.end()) throw ContractError("lift input face does not contain the lift vertex");
  int other[2]{};
  int w = 0;
  for (int x : fv)
    if (x != v) other[w++] = x;
  return lat.edge_id(other[0], other[1]);
}

// Chooses between the lifted set and its complement within the star: the
// smaller one, ties resolved against the tetrahedron on the smallest link face.
// The complement is only an alternative when the whole star has no
// constrained boundary at v.
Chain canonical_lift(const StarView& sv, std::vector<std::uint8_t> in, bool complement_ok) {
  const std::size_t n = sv.tetras.size();
  std::size_t count = 0;
  for (auto b : in) count += b;
  const bool tie_flip = 2 * count == n && sv.min_face_slot >= 0 && in[static_cast<std::size_t>(sv.min_face_slot)];
  if (complement_ok && (2 * count > n || tie_flip))
    for (auto& b : in) b ^= 1;
  std::vector<int> ids;
  for (std::size_t i = 0; i < n; ++i)
    if (in[i]) ids.push_back(sv.tetras[i]);
  return Chain(3, std::move(ids));
}

}  // namespace

LiftResult lift_vertex_peel(const DualLattice& lat, int v, const Chain& gamma_v) {
  LiftResult result;
  if (gamma_v.empty()) {
    result.ok = true;
    return result;
  }
  if (gamma_v.dimension() != 2) throw ContractError("lift input must be a face chain");
  const bool quasi = lat.vertex(v).is_quasi;
  const StarView sv(lat, v);
  const std::size_t nf = sv.link_faces.size();

  // Local edge table of the link surface.
  std::vector<int> edge_ids;
  std::vector<std::array<int, 3>> face_edges(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    auto es = lat.faces_of(2, sv.link_faces[i], 1);
    for (std::size_t j = 0; j < 3; ++j) edge_ids.push_back(es[j]);
  }
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());
  auto local_edge = [&](int e) {
    auto it = std::lower_bound(edge_ids.begin(), edge_ids.end(), e);
    return (it != edge_ids.end() && *it == e) ? static_cast<int>(it - edge_ids.begin()) : -1;
  };
  const std::size_t ne = edge_ids.size();
  std::vector<std::vector<int>> edge_faces(ne);
  std::vector<int> alive_count(ne, 0);
  std::vector<std::uint8_t> free_edge(ne, 0), se(ne, 0);
  for (std::size_t i = 0; i < nf; ++i) {
    auto es = lat.faces_of(2, sv.link_faces[i], 1);
    for (std::size_t j = 0; j < 3; ++j) {
      const int le = local_edge(es[j]);
      face_edges[i][j] = le;
      edge_faces[static_cast<std::size_t>(le)].push_back(static_cast<int>(i));
      ++alive_count[static_cast<std::size_t>(le)];
    }
  }
  // On a quasivertex, link edges between two quasivertices correspond to
  // unmeasured faces; their parity is unconstrained.
  bool complement_ok = true;
  for (std::size_t le = 0; le < ne; ++le) {
    free_edge[le] = quasi && lat.all_quasi(1, edge_ids[le]);
    if (alive_count[le] == 1 && !free_edge[le]) complement_ok = false;
  }

  for (int f : gamma_v.ids()) {
    const int le = local_edge(opposite_edge(lat, v, f));
    if (le < 0) return result;  // face is not incident to any tetrahedron in the star
    se[static_cast<std::size_t>(le)] ^= 1;
  }

  std::vector<std::uint8_t> alive(nf, 1), chosen(nf, 0);
  std::size_t alive_faces = nf;
  auto remove_face = [&](std::size_t i) {
    alive[i] = 0;
    --alive_faces;
    for (int le : face_edges[i]) {
      --alive_count[static_cast<std::size_t>(le)];
      ++result.work;
    }
  };
  if (!quasi && nf > 0) remove_face(static_cast<std::size_t>(sv.min_face_slot));

  // Candidates ordered by (free, lattice edge id): constrained edges first.
  using Key = std::pair<int, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  auto push = [&](std::size_t le) { heap.push({free_edge[le] ? 1 : 0, edge_ids[le]}); };
  for (std::size_t le = 0; le < ne; ++le)
    if (alive_count[le] == 1) push(le);

  while (alive_faces > 0) {
    int current = -1;
    while (!heap.empty()) {
      const int le = local_edge(heap.top().second);
      heap.pop();
      if (alive_count[static_cast<std::size_t>(le)] == 1) {
        current = le;
        break;
      }
    }
    if (current < 0) return result;  // surface cannot be peeled
    ++result.work;
    std::size_t face = 0;
    for (int i : edge_faces[static_cast<std::size_t>(current)])
      if (alive[static_cast<std::size_t>(i)]) face = static_cast<std::size_t>(i);
    if (se[static_cast<std::size_t>(current)]) {
      chosen[face] = 1;
      for (int le : face_edges[face]) {
        se[static_cast<std::size_t>(le)] ^= 1;
        ++result.work;
      }
    }
    remove_face(face);
    for (int le : face_edges[face])
      if (alive_count[static_cast<std::size_t>(le)] == 1) push(static_cast<std::size_t>(le));
  }
  for (std::size_t le = 0; le < ne; ++le)
    if (se[le] && !free_edge[le]) return result;

  result.ok = true;
  result.tetrahedra = canonical_lift(sv, std::move(chosen), complement_ok);
  return result;
}

LiftResult lift_vertex_naive(const DualLattice& lat, int v, const Chain& gamma_v, int cap) {
  if (cap > 30) throw ContractError("naive lift cap must be at most 30");
  const StarView sv(lat, v);
  const std::size_t n = sv.tetras.size();
  if (static_cast<int>(n) > cap)
    throw ContractError("star of vertex " + std::to_string(v) + " has " + std::to_string(n) +
                        " tetrahedra, above the naive lift cap " + std::to_string(cap));
  if (!gamma_v.empty() && gamma_v.dimension() != 2) throw ContractError("lift input must be a face chain");

  // Bit positions for the constrained faces at v (quasivertex-only faces excluded).
  std::vector<int> vfaces;
  for (int t : sv.tetras)
    for (int f : lat.faces_of(3, t, 2)) {
      auto fv = lat.simplex_vertices(2, f);
      if (std::find(fv.begin(), fv.end(), v) != fv.end() && !lat.all_quasi(2, f)) vfaces.push_back(f);
    }
  std::sort(vfaces.begin(), vfaces.end());
  vfaces.erase(std::unique(vfaces.begin(), vfaces.end()), vfaces.end());
  if (vfaces.size() > 64) throw ContractError("naive lift supports at most 64 faces at a vertex");
  auto bit_of = [&](int f) {
    auto it = std::lower_bound(vfaces.begin(), vfaces.end(), f);
    return (it != vfaces.end() && *it == f) ? static_cast<int>(it - vfaces.begin()) : -1;
  };
  std::vector<std::uint64_t> tmask(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (int f : lat.faces_of(3, sv.tetras[i], 2)) {
      const int b = bit_of(f);
      if (b >= 0) tmask[i] ^= std::uint64_t{1} << b;
    }
  std::uint64_t target = 0;
  for (int f : gamma_v.ids()) {
    auto fv = lat.simplex_vertices(2, f);
    if (std::find(fv.begin(), fv.end(), v) == fv.end()) throw ContractError("lift input face does not contain the lift vertex");
    if (lat.all_quasi(2, f)) continue;  // unmeasured, no constraint
    const int b = bit_of(f);
    if (b < 0) return {};
    target ^= std::uint64_t{1} << b;
  }

  // Gray-code walk over all subsets of the star.
  const std::uint64_t min_bit = sv.min_face_slot >= 0 ? std::uint64_t{1} << sv.min_face_slot : 0;
  auto better = [&](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    const bool ma = (a & min_bit) != 0, mb = (b & min_bit) != 0;
    if (ma != mb) return !ma;
    return a < b;
  };
  bool found = target == 0;
  std::uint64_t best = 0;
  std::uint64_t boundary = 0, subset = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    boundary ^= tmask[static_cast<std::size_t>(bit)];
    subset ^= std::uint64_t{1} << bit;
    if (boundary == target && (!found || better(subset, best))) {
      best = subset;
      found = true;
    }
  }
  LiftResult result;
  if (!found) return result;
  std::vector<int> ids;
  for (std::size_t i = 0; i < n; ++i)
    if (best >> i & 1U) ids.push_back(sv.tetras[i]);
  result.ok = true;
  result.tetrahedra = Chain(3, std::move(ids));
  return result;
}

}  // namespace tetracode
