#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "tetracode/gf2.hpp"
#include "tetracode/z_decoder.hpp"

using namespace tetracode;
using tetracode::test::code;
using tetracode::test::qubits;

namespace {

// Exhaustive minimum perfect matching by recursion on the lowest free node.
std::optional<std::int64_t> brute_force(int n, const std::vector<std::vector<std::int64_t>>& w) {
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::optional<std::int64_t> best;
  std::function<void(std::int64_t)> rec = [&](std::int64_t acc) {
    int a = 0;
    while (a < n && used[static_cast<std::size_t>(a)]) ++a;
    if (a == n) {
      if (!best || acc < *best) best = acc;
      return;
    }
    used[static_cast<std::size_t>(a)] = true;
    for (int b = a + 1; b < n; ++b) {
      if (used[static_cast<std::size_t>(b)] || w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] < 0) continue;
      used[static_cast<std::size_t>(b)] = true;
      rec(acc + w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      used[static_cast<std::size_t>(b)] = false;
    }
    used[static_cast<std::size_t>(a)] = false;
  };
  rec(0);
  return best;
}

int bulk_qubit(const TetrahedralCode& c) {
  const DualLattice& lat = *c.lattice;
  for (std::size_t t = 0; t < c.n_qubits(); ++t) {
    bool quasi = false;
    for (int v : lat.simplex_vertices(3, static_cast<int>(t))) quasi |= lat.vertex(v).is_quasi;
    if (!quasi) return static_cast<int>(t);
  }
  return -1;
}

std::vector<int> filter(const DualLattice& lat, const std::vector<int>& syndrome, ColorPair keep) {
  std::vector<int> out;
  for (int v : syndrome)
    if (keep.contains(lat.vertex(v).color)) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("Z syndromes of single qubits") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  const int bulk = bulk_qubit(c);
  REQUIRE(bulk >= 0);
  CHECK(extract_z_syndrome(c, qubits({bulk})).size() == 4);
  for (std::size_t t = 0; t < c.n_qubits(); ++t) {
    int quasi = 0;
    for (int v : lat.simplex_vertices(3, static_cast<int>(t))) quasi += lat.vertex(v).is_quasi;
    CHECK(extract_z_syndrome(c, qubits({static_cast<int>(t)})).size() == static_cast<std::size_t>(4 - quasi));
  }
  CHECK(extract_z_syndrome(c, Chain(3)).empty());
  CHECK_THROWS_AS(extract_z_syndrome(c, qubits({100000})), ContractError);
}

TEST_CASE("matching prefers the cheaper of two options") {
  MatchingProblem p;
  p.vertices = {10, 20};
  p.pair_weight = {{0, 5}, {5, 0}};
  p.boundary_weight = {3, 4};
  const auto m = mwpm_exact(p);
  REQUIRE(m);
  CHECK(m->total_weight == 5);
  CHECK(std::find(m->pairs.begin(), m->pairs.end(), std::pair<int, int>{0, 1}) != m->pairs.end());
  CHECK(p.weight(2, 3) == 0);
  CHECK(p.weight(0, 3) == kUnreachable);

  p.pair_weight = {{0, 9}, {9, 0}};
  const auto b = mwpm_exact(p);
  REQUIRE(b);
  CHECK(b->total_weight == 7);
}

TEST_CASE("blossom matching equals brute force on random small graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 * static_cast<int>(1 + rng() % 5);
    std::vector<std::vector<std::int64_t>> w(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), -1));
    std::vector<WeightedEdge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 4 == 0) continue;
        const auto x = static_cast<std::int64_t>(rng() % 20);
        w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = x;
        edges.push_back({a, b, x});
      }
    const auto expected = brute_force(n, w);
    const auto got = min_weight_perfect_matching(n, edges);
    REQUIRE(got.has_value() == expected.has_value());
    if (!got) continue;
    CHECK(got->total_weight == *expected);
    CHECK(got->pairs.size() == static_cast<std::size_t>(n / 2));
  }
}

TEST_CASE("matching contract errors") {
  CHECK_THROWS_AS(min_weight_perfect_matching(3, {}), ContractError);
  CHECK_THROWS_AS(min_weight_perfect_matching(2, {{0, 1, -1}}), ContractError);
  CHECK_FALSE(min_weight_perfect_matching(2, {}).has_value());
  const auto empty = min_weight_perfect_matching(0, {});
  REQUIRE(empty);
  CHECK(empty->pairs.empty());
}

TEST_CASE("matching graph of a single bulk error") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  const int t = bulk_qubit(c);
  const ColorPair keep(Color::R, Color::G);
  const auto syndrome = filter(lat, extract_z_syndrome(c, qubits({t})), keep);
  const MatchingProblem p = build_matching_graph(c, keep, syndrome);
  REQUIRE(p.real_count() == 2);
  CHECK(p.pair_weight[0][1] == 1);
  CHECK(p.node_count() == 4);
  const auto m = mwpm_exact(p);
  REQUIRE(m);
  // Symmetric weights and a zero-weight boundary pair.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) CHECK(p.weight(a, b) == p.weight(b, a));
  CHECK(m->total_weight <= 1);
}

TEST_CASE("empty restricted syndrome gives an empty problem") {
  const MatchingProblem p = build_matching_graph(code(3), ColorPair(Color::B, Color::Y), {});
  CHECK(p.node_count() == 0);
  const auto m = mwpm_exact(p);
  REQUIRE(m);
  CHECK(m->pairs.empty());
  CHECK(pairs_to_edge_chain(code(3), {}).empty());
}

TEST_CASE("vertices next to a facet are one hop from the boundary") {
  const TetrahedralCode& c = code(7);
  const DualLattice& lat = *c.lattice;
  int checked = 0;
  for (ColorPair keep : all_color_pairs()) {
    const RestrictedLattice r(c, keep);
    for (int v : r.graph().nodes) {
      if (lat.vertex(v).is_quasi) continue;
      bool next_to_quasi = false;
      for (int u : r.graph().adjacency[static_cast<std::size_t>(v)]) next_to_quasi |= lat.vertex(u).is_quasi;
      const MatchingProblem p = build_matching_graph(r, {v});
      CHECK((p.boundary_weight[0] == 1) == next_to_quasi);
      checked += next_to_quasi;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("matching graph rejects foreign vertices") {
  const TetrahedralCode& c = code(3);
  const DualLattice& lat = *c.lattice;
  const ColorPair keep(Color::R, Color::G);
  for (int v : c.real_vertices)
    if (!keep.contains(lat.vertex(v).color)) CHECK_THROWS_AS(build_matching_graph(c, keep, {v}), ContractError);
  CHECK_THROWS_AS(build_matching_graph(c, keep, {c.quasi_by_color[0]}), ContractError);
}

TEST_CASE("matched paths of a bulk error rebuild its tetrahedron boundary") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  const int t = bulk_qubit(c);
  const auto syndrome = extract_z_syndrome(c, qubits({t}));
  std::vector<RestrictedLattice> restricted;
  for (ColorPair keep : all_color_pairs()) restricted.emplace_back(c, keep);
  std::vector<RestrictionMatching> matchings;
  for (const auto& r : restricted) {
    RestrictionMatching rm;
    rm.restricted = &r;
    rm.problem = build_matching_graph(r, filter(lat, syndrome, r.keep()));
    rm.matching = *mwpm_exact(rm.problem);
    matchings.push_back(rm);
  }
  CHECK(pairs_to_edge_chain(c, matchings) == boundary_project(lat, qubits({t}), 1));
  // The same restriction counted twice cancels.
  std::vector<RestrictionMatching> doubled = {matchings[0], matchings[0]};
  CHECK(pairs_to_edge_chain(c, doubled).empty());
}

TEST_CASE("shortest paths prefer the smallest vertex sequence") {
  const TetrahedralCode& c = code(7);
  const RestrictedLattice r(c, ColorPair(Color::R, Color::G));
  const auto& nodes = r.graph().nodes;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int a = nodes[rng() % nodes.size()], b = nodes[rng() % nodes.size()];
    if (c.lattice->vertex(a).is_quasi || c.lattice->vertex(b).is_quasi) continue;
    const auto dist = r.distances_from(a);
    if (dist[static_cast<std::size_t>(b)] < 0) continue;
    const auto path = r.path_between(a, b);
    REQUIRE(path.size() == static_cast<std::size_t>(dist[static_cast<std::size_t>(b)]) + 1);
    CHECK(path.front() == a);
    CHECK(path.back() == b);
    CHECK(r.path_between(a, b) == path);
  }
}

TEST_CASE("Z decoder corrects every single-qubit error at distances 3 and 5") {
  for (int d : {3, 5}) {
    const TetrahedralCode& c = code(d);
    const ZDecoder dec(c);
    for (std::size_t t = 0; t < c.n_qubits(); ++t) {
      const Chain err = qubits({static_cast<int>(t)});
      const auto syndrome = extract_z_syndrome(c, err);
      const DecodeOutcome out = dec.decode(syndrome);
      REQUIRE_FALSE(out.heralded_failure);
      CHECK(extract_z_syndrome(c, out.correction) == syndrome);
      CHECK(stabilizer_membership(c, (err ^ out.correction).ids(), PauliType::Z) == Membership::Stabilizer);
    }
  }
}

TEST_CASE("empty Z syndrome decodes to nothing") {
  const DecodeOutcome out = decode_z(code(5), {});
  CHECK_FALSE(out.heralded_failure);
  CHECK(out.correction.empty());
}

TEST_CASE("Z decoding round-trips random syndromes and never fails silently") {
  const TetrahedralCode& c = code(7);
  for (bool all : {true, false}) {
    ZConfig z;
    z.all_restrictions = all;
    const ZDecoder dec(c, LiftConfig{}, z);
    CHECK(dec.restrictions().size() == (all ? 6U : 3U));
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      Chain err(3);
      for (std::size_t t = 0; t < c.n_qubits(); ++t)
        if (rng() % 100 == 0) err.toggle(static_cast<int>(t));
      const auto syndrome = extract_z_syndrome(c, err);
      const DecodeOutcome out = dec.decode(syndrome);
      if (out.heralded_failure) continue;
      CHECK(extract_z_syndrome(c, out.correction) == syndrome);
    }
  }
}

TEST_CASE("smallest Z error the decoder turns into a logical at distance 3") {
  const TetrahedralCode& c = code(3);
  const ZDecoder dec(c);
  const int n = static_cast<int>(c.n_qubits());
  int smallest = 0;
  for (int w = 1; w <= 3 && smallest == 0; ++w) {
    std::vector<int> pick(static_cast<std::size_t>(w));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      const Chain err(3, pick);
      const DecodeOutcome out = dec.decode(extract_z_syndrome(c, err));
      if (out.heralded_failure ||
          stabilizer_membership(c, (err ^ out.correction).ids(), PauliType::Z) != Membership::Stabilizer) {
        smallest = w;
        break;
      }
      int i = w - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - w + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < w; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  MESSAGE("smallest failing Z weight at d=3: " << smallest);
  CHECK(smallest >= 1);
  // Measured fixture: the first failures appear at weight 2, i.e. (d + 1) / 2.
  CHECK(smallest == 2);
}
