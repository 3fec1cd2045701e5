#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "tetracode/gf2.hpp"
#include "tetracode/x_decoder.hpp"

using namespace tetracode;
using tetracode::test::code;
using tetracode::test::qubits;

namespace {

Chain measured_boundary(const TetrahedralCode& c, const Chain& faces) {
  Chain out(1);
  for (int e : boundary_project(*c.lattice, faces, 1).ids())
    if (c.edge_measured[static_cast<std::size_t>(e)]) out.toggle(e);
  return out;
}

// Faces at v of the boundary of a tetrahedron set inside star(v).
Chain gamma_at(const DualLattice& lat, int v, const std::vector<int>& tets) {
  Chain out(2);
  for (int f : boundary_project(lat, Chain(3, tets), 2).ids()) {
    const auto verts = lat.simplex_vertices(2, f);
    if (std::find(verts.begin(), verts.end(), v) != verts.end()) out.toggle(f);
  }
  return out;
}

Membership residual_class(const TetrahedralCode& c, const Chain& error, const Chain& correction, PauliType type) {
  return stabilizer_membership(c, (error ^ correction).ids(), type);
}

LiftConfig gf2_config() {
  LiftConfig cfg;
  cfg.gf2_fallback = true;
  return cfg;
}

}  // namespace

TEST_CASE("lift configuration") {
  LiftConfig cfg;
  cfg.lift_color = Color::B;
  const auto sweep = cfg.sweep_colors();
  CHECK(std::find(sweep.begin(), sweep.end(), Color::B) == sweep.end());
  CHECK(std::set<Color>(sweep.begin(), sweep.end()).size() == 3);
  cfg.sweep_direction_schedule = {0, 9};
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg.sweep_direction_schedule = {};
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  CHECK_THROWS_AS(XDecoder(code(3), cfg), ContractError);
  CHECK(sweep_direction(4) == Point3{-1, -1, -1});
}

TEST_CASE("X syndromes of single qubits") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  bool bulk = false, boundary = false;
  for (std::size_t t = 0; t < c.n_qubits(); ++t) {
    const Chain s = extract_x_syndrome(c, qubits({static_cast<int>(t)}));
    int quasi = 0;
    for (int v : lat.simplex_vertices(3, static_cast<int>(t))) quasi += lat.vertex(v).is_quasi;
    // Edges between two quasivertices carry no stabilizer.
    const std::size_t unmeasured = static_cast<std::size_t>(quasi * (quasi - 1) / 2);
    CHECK(s.size() == 6 - unmeasured);
    if (quasi == 1) CHECK(s.size() == 6);
    (quasi ? boundary : bulk) = true;
  }
  CHECK(bulk);
  CHECK(boundary);
  CHECK(extract_x_syndrome(c, Chain(3)).empty());
}

TEST_CASE("X syndrome of face-adjacent qubits matches the boundary projection") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  int checked = 0;
  for (std::size_t f = 0; f < lat.count(2); ++f) {
    const auto cof = lat.cofaces(2, static_cast<int>(f), 3);
    if (cof.size() != 2) continue;
    const Chain err(3, {cof[0], cof[1]});
    const Chain s = extract_x_syndrome(c, err);
    Chain expected(1);
    for (int e : boundary_project(lat, err, 1).ids())
      if (c.edge_measured[static_cast<std::size_t>(e)]) expected.toggle(e);
    CHECK(s == expected);
    // Shared-face edges cancel: 6 + 6 - 2 * 3.
    CHECK(boundary_project(lat, err, 1).size() == 6);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("sweep recovers a single face from its boundary") {
  const TetrahedralCode& c = code(3);
  const DualLattice& lat = *c.lattice;
  for (bool exact : {false, true}) {
    LiftConfig cfg;
    cfg.gf2_fallback = exact;
    for (Color k : cfg.sweep_colors())
      for (std::size_t f = 0; f < lat.count(2); ++f) {
        bool missing = true;
        for (int v : lat.simplex_vertices(2, static_cast<int>(f))) missing &= lat.vertex(v).color != k;
        if (!missing || lat.all_quasi(2, static_cast<int>(f))) continue;
        const Chain face(2, {static_cast<int>(f)});
        const Chain sigma = measured_boundary(c, face);
        const SweepResult r = sweep_find_faces(c, sigma, k, cfg);
        CHECK(r.ok);
        CHECK(r.faces == face);
      }
  }
}

TEST_CASE("sweep of an empty syndrome is empty") {
  const SweepResult r = sweep_find_faces(code(3), Chain(1), Color::G, LiftConfig{});
  CHECK(r.ok);
  CHECK(r.faces.empty());
  CHECK_THROWS_AS(sweep_find_faces(code(3), Chain(1), Color::R, LiftConfig{}), ContractError);
}

TEST_CASE("sweep output bounds restricted single-qubit syndromes") {
  const TetrahedralCode& c = code(7);
  const DualLattice& lat = *c.lattice;
  const LiftConfig cfg;
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int t = static_cast<int>(rng() % c.n_qubits());
    const Chain sigma = extract_x_syndrome(c, qubits({t}));
    for (Color k : cfg.sweep_colors()) {
      const Chain sk = restrict_syndrome_by_sweep_color(lat, sigma, k);
      const SweepResult r = sweep_find_faces(c, sk, k, cfg);
      REQUIRE(r.ok);
      CHECK(measured_boundary(c, r.faces) == sk);
      for (int f : r.faces.ids()) {
        int lift_vertices = 0;
        for (int v : lat.simplex_vertices(2, f)) {
          CHECK(lat.vertex(v).color != k);
          lift_vertices += lat.vertex(v).color == cfg.lift_color;
        }
        CHECK(lift_vertices == 1);
      }
    }
  }
}

TEST_CASE("peel lift of a single tetrahedron") {
  const TetrahedralCode& c = code(5);
  const DualLattice& lat = *c.lattice;
  for (int v : {c.real_vertices.front(), c.real_vertices.back(), c.quasi_by_color[0]}) {
    for (int t : star(lat, v, 3)) {
      const Chain g = gamma_at(lat, v, {t});
      const LiftResult peel = lift_vertex_peel(lat, v, g);
      REQUIRE(peel.ok);
      CHECK(peel.tetrahedra == Chain(3, {t}));
    }
    const LiftResult empty = lift_vertex_peel(lat, v, Chain(2));
    CHECK(empty.ok);
    CHECK(empty.tetrahedra.empty());
  }
}

TEST_CASE("a single face cannot be lifted") {
  const TetrahedralCode& c = code(3);
  const DualLattice& lat = *c.lattice;
  const int v = c.real_vertices.front();
  const int t = star(lat, v, 3).front();
  Chain one(2);
  for (int f : lat.faces_of(3, t, 2)) {
    const auto verts = lat.simplex_vertices(2, f);
    if (std::find(verts.begin(), verts.end(), v) != verts.end()) {
      one.toggle(f);
      break;
    }
  }
  CHECK_FALSE(lift_vertex_naive(lat, v, one).ok);
  CHECK_FALSE(lift_vertex_peel(lat, v, one).ok);
}

TEST_CASE("naive lift takes the smaller complementary solution") {
  const TetrahedralCode& c = code(3);
  const DualLattice& lat = *c.lattice;
  for (int v : c.real_vertices) {
    const auto s = star(lat, v, 3);
    // Alternate tetrahedra around the star give a face set at v solved by S and by its complement.
    std::vector<int> half;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i % 2 == 0) half.push_back(s[i]);
    const Chain g = gamma_at(lat, v, half);
    const LiftResult naive = lift_vertex_naive(lat, v, g);
    REQUIRE(naive.ok);
    CHECK(2 * naive.tetrahedra.size() <= s.size());
    CHECK(gamma_at(lat, v, naive.tetrahedra.ids()) == g);
    const LiftResult peel = lift_vertex_peel(lat, v, g);
    CHECK(peel.tetrahedra == naive.tetrahedra);
  }
}

TEST_CASE("naive lift refuses large stars") {
  const TetrahedralCode& c = code(7);
  const DualLattice& lat = *c.lattice;
  const int q = c.quasi_by_color[0];
  REQUIRE(star(lat, q, 3).size() > 24);
  CHECK_THROWS_AS(lift_vertex_naive(lat, q, Chain(2)), ContractError);
  CHECK_THROWS_AS(lift_vertex_naive(lat, q, Chain(2), 31), ContractError);
}

TEST_CASE("peel and naive lifts agree on random instances") {
  for (int d : {3, 5}) {
    const TetrahedralCode& c = code(d);
    const DualLattice& lat = *c.lattice;
    std::mt19937_64 rng(static_cast<unsigned>(100 + d));
    std::vector<int> vertices;
    for (std::size_t v = 0; v < lat.count(0); ++v)
      if (star(lat, static_cast<int>(v), 3).size() <= 24) vertices.push_back(static_cast<int>(v));
    for (int trial = 0; trial < 200; ++trial) {
      const int v = vertices[rng() % vertices.size()];
      const auto s = star(lat, v, 3);
      std::vector<int> pick;
      for (int t : s)
        if (rng() % 3 == 0) pick.push_back(t);
      Chain g = gamma_at(lat, v, pick);
      // Every fourth instance gets a stray face, which is usually unliftable.
      if (trial % 4 == 3) {
        const auto faces = lat.faces_of(3, s[rng() % s.size()], 2);
        for (int f : faces) {
          const auto verts = lat.simplex_vertices(2, f);
          if (std::find(verts.begin(), verts.end(), v) != verts.end()) {
            g.toggle(f);
            break;
          }
        }
      }
      const LiftResult a = lift_vertex_peel(lat, v, g);
      const LiftResult b = lift_vertex_naive(lat, v, g);
      CHECK(a.ok == b.ok);
      if (a.ok && b.ok) CHECK(a.tetrahedra == b.tetrahedra);
    }
  }
}

TEST_CASE("X decoder corrects every single-qubit error at distance 3") {
  const TetrahedralCode& c = code(3);
  for (Color lift : kAllColors)
    for (bool exact : {false, true}) {
      LiftConfig cfg;
      cfg.lift_color = lift;
      cfg.gf2_fallback = exact;
      const XDecoder dec(c, cfg);
      for (std::size_t t = 0; t < c.n_qubits(); ++t) {
        const Chain err = qubits({static_cast<int>(t)});
        const DecodeOutcome out = dec.decode(extract_x_syndrome(c, err));
        REQUIRE_FALSE(out.heralded_failure);
        CHECK(out.failure_stage == FailureStage::None);
        CHECK(residual_class(c, err, out.correction, PauliType::X) == Membership::Stabilizer);
      }
    }
}

TEST_CASE("empty X syndrome decodes to nothing") {
  const DecodeOutcome out = decode_x(code(5), Chain(1));
  CHECK_FALSE(out.heralded_failure);
  CHECK(out.correction.empty());
}

TEST_CASE("X decoder rejects unmeasured syndrome edges") {
  const TetrahedralCode& c = code(3);
  int qq = -1;
  for (std::size_t e = 0; e < c.lattice->count(1); ++e)
    if (!c.edge_measured[e]) qq = static_cast<int>(e);
  REQUIRE(qq >= 0);
  CHECK_THROWS_AS(decode_x(c, Chain(1, {qq})), ContractError);
  CHECK_THROWS_AS(decode_x(c, Chain(1, {100000})), ContractError);
}

TEST_CASE("X decoder never leaves a logical after a weight-2 error at distance 5" * doctest::timeout(300)) {
  const TetrahedralCode& c = code(5);
  for (bool exact : {false, true}) {
    const XDecoder dec(c, exact ? gf2_config() : LiftConfig{});
    const int n = static_cast<int>(c.n_qubits());
    int failures = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const Chain err = qubits({a, b});
        const Chain sigma = extract_x_syndrome(c, err);
        const DecodeOutcome out = dec.decode(sigma);
        if (out.heralded_failure || residual_class(c, err, out.correction, PauliType::X) != Membership::Stabilizer)
          ++failures;
        else
          CHECK(extract_x_syndrome(c, out.correction) == sigma);
      }
    CHECK(failures == 0);
  }
}

TEST_CASE("X decoding round-trips random syndromes") {
  const TetrahedralCode& c = code(7);
  const XDecoder dec(c);
  std::mt19937_64 rng(8);
  int successes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Chain err(3);
    for (std::size_t t = 0; t < c.n_qubits(); ++t)
      if (rng() % 50 == 0) err.toggle(static_cast<int>(t));
    const Chain sigma = extract_x_syndrome(c, err);
    XDecodeStats stats;
    const DecodeOutcome out = dec.decode(sigma, &stats);
    if (out.heralded_failure) continue;
    ++successes;
    CHECK(extract_x_syndrome(c, out.correction) == sigma);
    CHECK(residual_class(c, err, out.correction, PauliType::X) != Membership::OutsideNormalizer);
  }
  CHECK(successes >= 190);
}
