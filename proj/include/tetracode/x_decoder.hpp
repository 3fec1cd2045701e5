#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tetracode/code.hpp"

namespace tetracode {

/// Sweep directions: labels 0..3 are the facet normals, 4..7 their negatives.
inline constexpr std::size_t kSweepDirections = 8;
Point3 sweep_direction(int label);

struct LiftConfig {
  Color lift_color = Color::R;
  /// Sweep direction labels, cycled in order. Alternating each normal with
  /// its negative lets strings ending on quasivertices drain into a corner.
  std::vector<int> sweep_direction_schedule = {0, 4, 1, 5, 2, 6, 3, 7};
  /// Rounds spent on each direction before switching; 0 means ceil(d/2).
  int rounds_per_direction = 0;
  /// Total round budget per sweep color; 0 means 32 d.
  int max_sweep_rounds = 0;
  /// Replace the sweep rule by an exact GF(2) solve.
  bool gf2_fallback = false;

  std::array<Color, 3> sweep_colors() const;
  void validate() const;
};

enum class FailureStage { None, Sweep, Lift, Matching };

const char* to_string(FailureStage s) noexcept;

struct DecodeOutcome {
  Chain correction{3};
  bool heralded_failure = false;
  FailureStage failure_stage = FailureStage::None;

  static DecodeOutcome failure(FailureStage stage) {
    DecodeOutcome o;
    o.heralded_failure = true;
    o.failure_stage = stage;
    return o;
  }
};

/// Syndrome of an X error: measured edges with odd overlap.
Chain extract_x_syndrome(const TetrahedralCode& code, const Chain& error);

struct LiftResult {
  bool ok = false;
  Chain tetrahedra{3};
  /// Peel loop iterations plus parity updates; zero for the naive lift.
  std::uint64_t work = 0;
};

/// Efficient lift on one vertex by peeling its link surface.
LiftResult lift_vertex_peel(const DualLattice& lattice, int v, const Chain& gamma_v);

/// Exhaustive lift over all subsets of star(v, 3). Throws ContractError when
/// the star is larger than `cap` (at most 30).
LiftResult lift_vertex_naive(const DualLattice& lattice, int v, const Chain& gamma_v, int cap = 24);

struct SweepResult {
  bool ok = false;
  Chain faces{2};
  int rounds = 0;
};

/// Precomputed sweep-rule neighborhoods for one code.
class SweepEngine {
 public:
  explicit SweepEngine(const TetrahedralCode& code);

  /// Finds faces missing `sweep` whose measured boundary equals sigma_k. The
  /// result is then reduced by vertex-link cycles while that lowers its weight.
  SweepResult run(const Chain& sigma_k, Color sweep, const LiftConfig& cfg) const;

  /// Exact alternative: solves the restricted boundary system over GF(2),
  /// then greedily removes vertex-link cycles while that lowers the weight.
  SweepResult solve_gf2(const Chain& sigma_k, Color sweep) const;

 private:
  struct FutureNeighbor {
    int vertex;
    int edge;
    bool free;  // unmeasured quasivertex-quasivertex edge
  };
  struct LinkEdge {
    int a;
    int b;
    int face;
  };
  struct Neighborhood {
    std::vector<FutureNeighbor> future;
    std::vector<LinkEdge> link;
  };
  // [sweep color][direction][vertex]
  using Table = std::vector<Neighborhood>;
  const Neighborhood& hood(Color sweep, int direction, int v) const {
    return tables_[static_cast<std::size_t>(index_of(sweep))][static_cast<std::size_t>(direction)]
                  [static_cast<std::size_t>(v)];
  }
  bool fire(int v, const Neighborhood& h, const std::vector<std::uint8_t>& sigma, std::vector<int>& flips) const;
  // Flips vertex-link cycles of the sweep color while that lowers |gamma|.
  void reduce(std::vector<std::uint8_t>& gamma, std::size_t k) const;

  const TetrahedralCode* code_;
  std::array<std::array<Table, kSweepDirections>, 4> tables_;
  // Restricted faces per sweep color, the link cycles of sweep-colored
  // vertices and, per face, the (at most two) cycles containing it.
  std::array<std::vector<int>, 4> restricted_faces_;
  std::array<std::vector<std::vector<int>>, 4> link_cycles_;
  std::array<std::vector<std::array<int, 2>>, 4> face_cycles_;
};

SweepResult sweep_find_faces(const TetrahedralCode& code, const Chain& sigma_k, Color sweep, const LiftConfig& cfg);

struct XDecodeStats {
  int sweep_rounds = 0;
  std::uint64_t lift_work = 0;
};

/// Restriction decoder for loop-like syndromes: sweep per sweep color, then
/// lift per lift-colored vertex including the lift-colored quasivertex.
class XDecoder {
 public:
  explicit XDecoder(const TetrahedralCode& code, LiftConfig cfg = {});

  DecodeOutcome decode(const Chain& sigma, XDecodeStats* stats = nullptr) const;

  const TetrahedralCode& code() const noexcept { return *code_; }
  const LiftConfig& config() const noexcept { return cfg_; }
  const SweepEngine& sweep_engine() const noexcept { return sweep_; }

 private:
  const TetrahedralCode* code_;
  LiftConfig cfg_;
  SweepEngine sweep_;
};

DecodeOutcome decode_x(const TetrahedralCode& code, const Chain& sigma, const LiftConfig& cfg = {});

}  // namespace tetracode
