#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "tetracode/matching.hpp"
#include "tetracode/x_decoder.hpp"

namespace tetracode {

/// Sentinel for vertex pairs with no connecting path.
inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

/// Real vertices flagged by a Z error: odd incidence with the error set.
std::vector<int> extract_z_syndrome(const TetrahedralCode& code, const Chain& error);

/// Matching instance on one twice-restricted lattice. Nodes 0..m-1 are the
/// syndrome vertices, node m+i is the boundary partner of node i.
struct MatchingProblem {
  ColorPair keep{Color::R, Color::G};
  std::vector<int> vertices;
  std::vector<std::vector<std::int64_t>> pair_weight;  // hop distance avoiding quasivertices
  std::vector<std::int64_t> boundary_weight;           // hop distance to the nearest quasivertex

  std::size_t real_count() const noexcept { return vertices.size(); }
  std::size_t node_count() const noexcept { return 2 * vertices.size(); }
  /// Weight between two nodes; kUnreachable when no edge exists.
  std::int64_t weight(int a, int b) const;
  std::vector<WeightedEdge> edges() const;
};

/// Exact minimum-weight perfect matching of a problem. Throws ContractError
/// on an odd node count; returns nullopt when no finite matching exists.
std::optional<Matching> mwpm_exact(const MatchingProblem& problem);

/// Breadth-first distances on one twice-restricted lattice.
class RestrictedLattice {
 public:
  RestrictedLattice(const TetrahedralCode& code, ColorPair keep);

  ColorPair keep() const noexcept { return graph_.keep; }
  const DualLattice& lattice() const noexcept { return *lattice_; }
  const RestrictedGraph& graph() const noexcept { return graph_; }

  /// Hop distances from `source`; quasivertices are reached but not crossed.
  std::vector<int> distances_from(int source) const;
  /// Hop distances to the nearest kept quasivertex.
  const std::vector<int>& boundary_distances() const noexcept { return to_boundary_; }

  /// Lexicographically smallest shortest vertex sequence from a to b.
  std::vector<int> path_between(int a, int b) const;
  /// Lexicographically smallest shortest vertex sequence from a to a quasivertex.
  std::vector<int> path_to_boundary(int a) const;

 private:
  std::vector<int> descend(int from, const std::vector<int>& dist) const;

  const DualLattice* lattice_;
  RestrictedGraph graph_;
  std::vector<int> to_boundary_;
};

MatchingProblem build_matching_graph(const RestrictedLattice& restricted, const std::vector<int>& syndrome);
MatchingProblem build_matching_graph(const TetrahedralCode& code, ColorPair keep, const std::vector<int>& syndrome);

struct RestrictionMatching {
  const RestrictedLattice* restricted = nullptr;
  MatchingProblem problem;
  Matching matching;
};

/// Edges along the matched paths, accumulated mod 2 over all restrictions.
Chain pairs_to_edge_chain(const TetrahedralCode& code, const std::vector<RestrictionMatching>& matchings);

struct ZConfig {
  /// Match on all six color pairs; false keeps only the three containing the lift color.
  bool all_restrictions = true;
};

class ZDecoder {
 public:
  ZDecoder(const TetrahedralCode& code, LiftConfig cfg = {}, ZConfig zcfg = {});

  DecodeOutcome decode(const std::vector<int>& syndrome, XDecodeStats* stats = nullptr) const;

  const XDecoder& x_decoder() const noexcept { return x_; }
  const std::vector<RestrictedLattice>& restrictions() const noexcept { return restricted_; }

 private:
  const TetrahedralCode* code_;
  XDecoder x_;
  ZConfig zcfg_;
  std::vector<RestrictedLattice> restricted_;
};

DecodeOutcome decode_z(const TetrahedralCode& code, const std::vector<int>& syndrome, const LiftConfig& cfg = {},
                       const ZConfig& zcfg = {});

}  // namespace tetracode
