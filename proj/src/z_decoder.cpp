#include "tetracode/z_decoder.hpp"

#include <algorithm>
#include <deque>

namespace tetracode {

std::vector<int> extract_z_syndrome(const TetrahedralCode& code, const Chain& error) {
  if (!error.empty() && error.dimension() != 3) throw ContractError("Z error must be a tetrahedron chain");
  const DualLattice& lat = *code.lattice;
  std::vector<std::uint8_t> parity(lat.count(0), 0);
  for (int t : error.ids()) {
    if (t < 0 || static_cast<std::size_t>(t) >= code.n_qubits()) throw ContractError("qubit id out of range");
    for (int v : lat.simplex_vertices(3, t)) parity[static_cast<std::size_t>(v)] ^= 1;
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < parity.size(); ++v)
    if (parity[v] && !lat.vertex(static_cast<int>(v)).is_quasi) out.push_back(static_cast<int>(v));
  return out;
}

std::int64_t MatchingProblem::weight(int a, int b) const {
  const auto m = static_cast<int>(real_count());
  if (a < 0 || b < 0 || a >= 2 * m || b >= 2 * m || a == b) throw ContractError("matching node out of range");
  if (a > b) std::swap(a, b);
  if (b < m) return pair_weight[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  if (a >= m) return 0;
  return b - m == a ? boundary_weight[static_cast<std::size_t>(a)] : kUnreachable;
}

std::vector<WeightedEdge> MatchingProblem::edges() const {
  const auto m = static_cast<int>(real_count());
  std::vector<WeightedEdge> out;
  for (int a = 0; a < 2 * m; ++a)
    for (int b = a + 1; b < 2 * m; ++b) {
      const auto w = weight(a, b);
      if (w != kUnreachable) out.push_back({a, b, w});
    }
  return out;
}

std::optional<Matching> mwpm_exact(const MatchingProblem& problem) {
  return min_weight_perfect_matching(static_cast<int>(problem.node_count()), problem.edges());
}

RestrictedLattice::RestrictedLattice(const TetrahedralCode& code, ColorPair keep)
    : lattice_(code.lattice.get()), graph_(twice_restricted_graph(*code.lattice, keep)) {
  const DualLattice& lat = *lattice_;
  to_boundary_.assign(lat.count(0), -1);
  std::deque<int> queue;
  for (int q : lat.quasivertices())
    if (keep.contains(lat.vertex(q).color)) {
      to_boundary_[static_cast<std::size_t>(q)] = 0;
      queue.push_back(q);
    }
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int y : graph_.adjacency[static_cast<std::size_t>(x)]) {
      if (to_boundary_[static_cast<std::size_t>(y)] >= 0) continue;
      to_boundary_[static_cast<std::size_t>(y)] = to_boundary_[static_cast<std::size_t>(x)] + 1;
      queue.push_back(y);
    }
  }
}

std::vector<int> RestrictedLattice::distances_from(int source) const {
  const DualLattice& lat = *lattice_;
  std::vector<int> dist(lat.count(0), -1);
  dist[static_cast<std::size_t>(source)] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    if (x != source && lat.vertex(x).is_quasi) continue;
    for (int y : graph_.adjacency[static_cast<std::size_t>(x)]) {
      if (dist[static_cast<std::size_t>(y)] >= 0) continue;
      dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

std::vector<int> RestrictedLattice::descend(int from, const std::vector<int>& dist) const {
  const DualLattice& lat = *lattice_;
  if (dist[static_cast<std::size_t>(from)] < 0) throw ContractError("no path in the restricted lattice");
  std::vector<int> path{from};
  int x = from;
  while (dist[static_cast<std::size_t>(x)] > 0) {
    const int want = dist[static_cast<std::size_t>(x)] - 1;
    int next = -1;
    // Adjacency is sorted, so the first admissible neighbor is the smallest.
    for (int y : graph_.adjacency[static_cast<std::size_t>(x)])
      if (dist[static_cast<std::size_t>(y)] == want && (want == 0 || !lat.vertex(y).is_quasi)) {
        next = y;
        break;
      }
    if (next < 0) throw ContractError("inconsistent distance table");
    path.push_back(next);
    x = next;
  }
  return path;
}

std::vector<int> RestrictedLattice::path_between(int a, int b) const { return descend(a, distances_from(b)); }

std::vector<int> RestrictedLattice::path_to_boundary(int a) const { return descend(a, to_boundary_); }

MatchingProblem build_matching_graph(const RestrictedLattice& restricted, const std::vector<int>& syndrome) {
  const DualLattice& lat = restricted.lattice();
  MatchingProblem p;
  p.keep = restricted.keep();
  for (int v : syndrome) {
    const Vertex& vv = lat.vertex(v);
    if (vv.is_quasi) throw ContractError("quasivertices carry no syndrome");
    if (!p.keep.contains(vv.color)) throw ContractError("syndrome vertex outside the restriction");
  }
  p.vertices = syndrome;
  std::sort(p.vertices.begin(), p.vertices.end());
  const std::size_t m = p.vertices.size();
  p.pair_weight.assign(m, std::vector<std::int64_t>(m, 0));
  p.boundary_weight.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto dist = restricted.distances_from(p.vertices[i]);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const int dj = dist[static_cast<std::size_t>(p.vertices[j])];
      p.pair_weight[i][j] = dj < 0 ? kUnreachable : dj;
    }
    const int db = restricted.boundary_distances()[static_cast<std::size_t>(p.vertices[i])];
    p.boundary_weight[i] = db < 0 ? kUnreachable : db;
  }
  return p;
}

MatchingProblem build_matching_graph(const TetrahedralCode& code, ColorPair keep, const std::vector<int>& syndrome) {
  return build_matching_graph(RestrictedLattice(code, keep), syndrome);
}

Chain pairs_to_edge_chain(const TetrahedralCode& code, const std::vector<RestrictionMatching>& matchings) {
  const DualLattice& lat = *code.lattice;
  std::vector<std::uint8_t> parity(lat.count(1), 0);
  auto add_path = [&](const std::vector<int>& path) {
    for (std::size_t i = 1; i < path.size(); ++i) parity[static_cast<std::size_t>(lat.edge_id(path[i - 1], path[i]))] ^= 1;
  };
  for (const auto& rm : matchings) {
    if (rm.restricted == nullptr) throw ContractError("restriction matching without a lattice");
    const auto m = static_cast<int>(rm.problem.real_count());
    for (auto [a, b] : rm.matching.pairs) {
      if (a > b) std::swap(a, b);
      if (a >= m) continue;  // two boundary partners
      const int va = rm.problem.vertices[static_cast<std::size_t>(a)];
      if (b < m)
        add_path(rm.restricted->path_between(va, rm.problem.vertices[static_cast<std::size_t>(b)]));
      else if (b - m == a)
        add_path(rm.restricted->path_to_boundary(va));
      else
        throw ContractError("node matched to a foreign boundary partner");
    }
  }
  std::vector<int> ids;
  for (std::size_t e = 0; e < parity.size(); ++e)
    if (parity[e]) ids.push_back(static_cast<int>(e));
  return Chain(1, std::move(ids));
}

ZDecoder::ZDecoder(const TetrahedralCode& code, LiftConfig cfg, ZConfig zcfg)
    : code_(&code), x_(code, std::move(cfg)), zcfg_(zcfg) {
  for (ColorPair pair : all_color_pairs())
    if (zcfg_.all_restrictions || pair.contains(x_.config().lift_color)) restricted_.emplace_back(code, pair);
}

DecodeOutcome ZDecoder::decode(const std::vector<int>& syndrome, XDecodeStats* stats) const {
  const DualLattice& lat = *code_->lattice;
  std::vector<int> flagged = syndrome;
  std::sort(flagged.begin(), flagged.end());
  if (std::adjacent_find(flagged.begin(), flagged.end()) != flagged.end())
    throw ContractError("syndrome lists a vertex twice");
  for (int v : flagged) {
    if (v < 0 || static_cast<std::size_t>(v) >= lat.count(0)) throw ContractError("vertex id out of range");
    if (lat.vertex(v).is_quasi) throw ContractError("quasivertices carry no syndrome");
  }
  if (flagged.empty()) return {};

  std::vector<RestrictionMatching> matchings;
  for (const auto& r : restricted_) {
    std::vector<int> part;
    for (int v : flagged)
      if (r.keep().contains(lat.vertex(v).color)) part.push_back(v);
    if (part.empty()) continue;
    RestrictionMatching rm;
    rm.restricted = &r;
    rm.problem = build_matching_graph(r, part);
    auto m = mwpm_exact(rm.problem);
    if (!m) return DecodeOutcome::failure(FailureStage::Matching);
    rm.matching = std::move(*m);
    matchings.push_back(std::move(rm));
  }
  DecodeOutcome out = x_.decode(pairs_to_edge_chain(*code_, matchings), stats);
  if (!out.heralded_failure && extract_z_syndrome(*code_, out.correction) != flagged)
    return DecodeOutcome::failure(FailureStage::Lift);
  return out;
}

DecodeOutcome decode_z(const TetrahedralCode& code, const std::vector<int>& syndrome, const LiftConfig& cfg,
                       const ZConfig& zcfg) {
  return ZDecoder(code, cfg, zcfg).decode(syndrome);
}

}  // namespace tetracode
