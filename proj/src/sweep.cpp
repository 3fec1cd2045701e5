#include <algorithm>
#include <deque>

#include "tetracode/gf2.hpp"
#include "tetracode/x_decoder.hpp"

namespace tetracode {

namespace {

std::int64_t direction_dot(const Point3& from, const Point3& to, const Point3& w) {
  return (to[0] - from[0]) * w[0] + (to[1] - from[1]) * w[1] + (to[2] - from[2]) * w[2];
}

bool face_in_restriction(const DualLattice& lat, int f, Color sweep) {
  for (int v : lat.simplex_vertices(2, f))
    if (lat.vertex(v).color == sweep) return false;
  return !lat.all_quasi(2, f);
}

}  // namespace

SweepEngine::SweepEngine(const TetrahedralCode& code) : code_(&code) {
  const DualLattice& lat = *code.lattice;
  const std::size_t nv = lat.count(0);
  for (Color sweep : kAllColors) {
    const auto k = static_cast<std::size_t>(index_of(sweep));
    for (std::size_t f = 0; f < lat.count(2); ++f)
      if (face_in_restriction(lat, static_cast<int>(f), sweep)) restricted_faces_[k].push_back(static_cast<int>(f));
    face_cycles_[k].assign(lat.count(2), {-1, -1});
    for (const auto& u : lat.vertices()) {
      if (u.color != sweep) continue;
      std::vector<int> cycle;
      for (int f : link_surface(lat, u.id))
        if (!lat.all_quasi(2, f)) cycle.push_back(f);
      std::sort(cycle.begin(), cycle.end());
      const int ci = static_cast<int>(link_cycles_[k].size());
      for (int f : cycle) {
        auto& slot = face_cycles_[k][static_cast<std::size_t>(f)];
        (slot[0] < 0 ? slot[0] : slot[1]) = ci;
      }
      link_cycles_[k].push_back(std::move(cycle));
    }

    for (std::size_t dir = 0; dir < kSweepDirections; ++dir) {
      Table& table = tables_[k][dir];
      table.assign(nv, {});
      const Point3 w = sweep_direction(static_cast<int>(dir));
      for (const auto& v : lat.vertices()) {
        if (v.color == sweep) continue;
        Neighborhood& h = table[static_cast<std::size_t>(v.id)];
        for (int e : lat.cofaces(0, v.id, 1)) {
          auto ev = lat.simplex_vertices(1, e);
          const int u = ev[0] == v.id ? ev[1] : ev[0];
          const Vertex& uu = lat.vertex(u);
          if (uu.color == sweep) continue;
          const bool free = v.is_quasi && uu.is_quasi;
          if (free || direction_dot(v.position, uu.position, w) > 0) h.future.push_back({u, e, free});
        }
        auto is_future = [&](int u) {
          return std::any_of(h.future.begin(), h.future.end(), [&](const FutureNeighbor& n) { return n.vertex == u; });
        };
        for (int f : lat.cofaces(0, v.id, 2)) {
          if (!face_in_restriction(lat, f, sweep)) continue;
          auto fv = lat.simplex_vertices(2, f);
          int other[2]{};
          int w2 = 0;
          for (int x : fv)
            if (x != v.id) other[w2++] = x;
          if (is_future(other[0]) && is_future(other[1])) h.link.push_back({other[0], other[1], f});
        }
      }
    }
  }
}

// Sweep rule at one vertex: when every syndrome edge at v points to the
// future, flip faces in the future of v whose boundary at v reproduces the
// local syndrome.
bool SweepEngine::fire(int v, const Neighborhood& h, const std::vector<std::uint8_t>& sigma,
                       std::vector<int>& flips) const {
  const DualLattice& lat = *code_->lattice;
  int local_syndrome = 0;
  for (int e : lat.cofaces(0, v, 1)) local_syndrome += sigma[static_cast<std::size_t>(e)];
  if (local_syndrome == 0) return false;

  std::vector<int> terminal;
  std::vector<std::uint8_t> is_free;
  terminal.reserve(h.future.size());
  int future_syndrome = 0;
  for (const auto& n : h.future) {
    const bool hit = sigma[static_cast<std::size_t>(n.edge)] != 0;
    future_syndrome += hit;
    terminal.push_back(hit ? 1 : 0);
    is_free.push_back(n.free ? 1 : 0);
  }
  if (future_syndrome != local_syndrome) return false;

  // Local graph on future neighbors, edges from future link faces.
  const std::size_t m = h.future.size();
  auto local_of = [&](int vertex) {
    for (std::size_t i = 0; i < m; ++i)
      if (h.future[i].vertex == vertex) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<std::pair<int, int>>> adj(m);  // (neighbor, face)
  for (const auto& le : h.link) {
    const int a = local_of(le.a);
    const int b = local_of(le.b);
    adj[static_cast<std::size_t>(a)].push_back({b, le.face});
    adj[static_cast<std::size_t>(b)].push_back({a, le.face});
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());

  // Greedy T-join: pair each terminal with the nearest other terminal or
  // free node along shortest link paths.
  std::vector<int> chosen;
  std::vector<int> parent_face(m), parent(m), dist(m);
  for (std::size_t t = 0; t < m; ++t) {
    if (!terminal[t]) continue;
    terminal[t] = 0;
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{static_cast<int>(t)};
    dist[t] = 0;
    int target = -1;
    while (!queue.empty() && target < 0) {
      const int x = queue.front();
      queue.pop_front();
      for (auto [y, f] : adj[static_cast<std::size_t>(x)]) {
        const auto yi = static_cast<std::size_t>(y);
        if (dist[yi] >= 0) continue;
        dist[yi] = dist[static_cast<std::size_t>(x)] + 1;
        parent[yi] = x;
        parent_face[yi] = f;
        if (terminal[yi] || is_free[yi]) {
          target = y;
          break;
        }
        queue.push_back(y);
      }
    }
    if (target < 0) return false;
    terminal[static_cast<std::size_t>(target)] = 0;
    for (int x = target; x != static_cast<int>(t); x = parent[static_cast<std::size_t>(x)])
      chosen.push_back(parent_face[static_cast<std::size_t>(x)]);
  }
  std::sort(chosen.begin(), chosen.end());
  for (std::size_t i = 0; i < chosen.size();) {
    std::size_t j = i;
    while (j < chosen.size() && chosen[j] == chosen[i]) ++j;
    if ((j - i) % 2) flips.push_back(chosen[i]);
    i = j;
  }
  return true;
}

SweepResult SweepEngine::run(const Chain& sigma_k, Color sweep, const LiftConfig& cfg) const {
  if (cfg.gf2_fallback) return solve_gf2(sigma_k, sweep);
  const DualLattice& lat = *code_->lattice;
  const int d = code_->distance;
  const int per = cfg.rounds_per_direction > 0 ? cfg.rounds_per_direction : (d + 1) / 2;
  const int max_rounds = cfg.max_sweep_rounds > 0 ? cfg.max_sweep_rounds : 32 * d;
  const auto& schedule = cfg.sweep_direction_schedule;

  std::vector<std::uint8_t> sigma(lat.count(1), 0);
  std::vector<std::uint8_t> gamma(lat.count(2), 0);
  std::size_t remaining = 0;
  for (int e : sigma_k.ids()) {
    for (int v : lat.simplex_vertices(1, e))
      if (lat.vertex(v).color == sweep) throw ContractError("sweep input edge touches the sweep color");
    if (!code_->edge_measured[static_cast<std::size_t>(e)]) continue;
    sigma[static_cast<std::size_t>(e)] = 1;
    ++remaining;
  }

  SweepResult result;
  int idle_rounds = 0;
  std::vector<int> active, flips;
  for (int round = 0; round < max_rounds && remaining > 0; ++round) {
    const int dir = schedule[static_cast<std::size_t>((round / per) % static_cast<int>(schedule.size()))];
    active.clear();
    for (std::size_t e = 0; e < sigma.size(); ++e)
      if (sigma[e])
        for (int v : lat.simplex_vertices(1, static_cast<int>(e))) active.push_back(v);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    flips.clear();
    for (int v : active) fire(v, hood(sweep, dir, v), sigma, flips);
    result.rounds = round + 1;
    if (flips.empty()) {
      // A full pass over the schedule without any flip means the state is frozen.
      if (++idle_rounds >= per * static_cast<int>(schedule.size())) break;
      continue;
    }
    idle_rounds = 0;
    for (int f : flips) {
      gamma[static_cast<std::size_t>(f)] ^= 1;
      for (int e : lat.faces_of(2, f, 1)) {
        if (!code_->edge_measured[static_cast<std::size_t>(e)]) continue;
        auto& s = sigma[static_cast<std::size_t>(e)];
        remaining = s ? remaining - 1 : remaining + 1;
        s ^= 1;
      }
    }
  }
  if (remaining == 0) reduce(gamma, static_cast<std::size_t>(index_of(sweep)));
  std::vector<int> ids;
  for (std::size_t f = 0; f < gamma.size(); ++f)
    if (gamma[f]) ids.push_back(static_cast<int>(f));
  // On failure the partial face set is kept for diagnostics.
  result.ok = remaining == 0;
  result.faces = Chain(2, std::move(ids));
  return result;
}

void SweepEngine::reduce(std::vector<std::uint8_t>& gamma, std::size_t k) const {
  const auto& cycles = link_cycles_[k];
  const auto& owners = face_cycles_[k];
  std::vector<std::uint8_t> queued(cycles.size(), 0);
  std::deque<int> work;
  auto enqueue_face = [&](std::size_t f) {
    for (int ci : owners[f])
      if (ci >= 0 && !queued[static_cast<std::size_t>(ci)]) {
        queued[static_cast<std::size_t>(ci)] = 1;
        work.push_back(ci);
      }
  };
  for (std::size_t f = 0; f < gamma.size(); ++f)
    if (gamma[f]) enqueue_face(f);
  while (!work.empty()) {
    const auto ci = static_cast<std::size_t>(work.front());
    work.pop_front();
    queued[ci] = 0;
    const auto& cycle = cycles[ci];
    std::size_t overlap = 0;
    for (int f : cycle) overlap += gamma[static_cast<std::size_t>(f)];
    if (2 * overlap <= cycle.size()) continue;
    // Strictly lowers the weight, so the loop terminates.
    for (int f : cycle) {
      gamma[static_cast<std::size_t>(f)] ^= 1;
      enqueue_face(static_cast<std::size_t>(f));
    }
  }
}

SweepResult SweepEngine::solve_gf2(const Chain& sigma_k, Color sweep) const {
  const DualLattice& lat = *code_->lattice;
  const auto k = static_cast<std::size_t>(index_of(sweep));
  const auto& faces = restricted_faces_[k];

  std::vector<int> row_of(lat.count(1), -1);
  int rows = 0;
  for (std::size_t e = 0; e < lat.count(1); ++e) {
    if (!code_->edge_measured[e]) continue;
    bool ok = true;
    for (int v : lat.simplex_vertices(1, static_cast<int>(e))) ok = ok && lat.vertex(v).color != sweep;
    if (ok) row_of[e] = rows++;
  }
  BitMatrix m(static_cast<std::size_t>(rows), faces.size());
  for (std::size_t c = 0; c < faces.size(); ++c)
    for (int e : lat.faces_of(2, faces[c], 1))
      if (row_of[static_cast<std::size_t>(e)] >= 0) m.set(static_cast<std::size_t>(row_of[static_cast<std::size_t>(e)]), c);
  BitVector b(static_cast<std::size_t>(rows));
  for (int e : sigma_k.ids()) {
    if (row_of[static_cast<std::size_t>(e)] < 0) throw ContractError("sweep input edge outside the restricted lattice");
    b.flip(static_cast<std::size_t>(row_of[static_cast<std::size_t>(e)]));
  }
  auto x = gf2_solve(m, b);
  SweepResult result;
  if (!x) return result;

  std::vector<std::uint8_t> gamma(lat.count(2), 0);
  for (int c : x->indices()) gamma[static_cast<std::size_t>(faces[static_cast<std::size_t>(c)])] = 1;
  reduce(gamma, k);
  std::vector<int> ids;
  for (std::size_t f = 0; f < gamma.size(); ++f)
    if (gamma[f]) ids.push_back(static_cast<int>(f));
  result.ok = true;
  result.faces = Chain(2, std::move(ids));
  return result;
}

SweepResult sweep_find_faces(const TetrahedralCode& code, const Chain& sigma_k, Color sweep, const LiftConfig& cfg) {
  if (sweep == cfg.lift_color) throw ContractError("sweep color must differ from the lift color");
  return SweepEngine(code).run(sigma_k, sweep, cfg);
}

}  // namespace tetracode
