#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tetracode {

/// Thrown when a caller violates an operation's preconditions.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Color : std::uint8_t { R = 0, G = 1, B = 2, Y = 3 };

inline constexpr std::array<Color, 4> kAllColors = {Color::R, Color::G, Color::B, Color::Y};

constexpr int index_of(Color c) noexcept { return static_cast<int>(c); }
constexpr Color color_from_index(int i) { return static_cast<Color>(i & 3); }

char color_char(Color c) noexcept;
Color parse_color(std::string_view text);

/// Unordered pair of colors, stored with first < second.
struct ColorPair {
  Color first;
  Color second;

  constexpr ColorPair(Color a, Color b) noexcept
      : first(index_of(a) < index_of(b) ? a : b), second(index_of(a) < index_of(b) ? b : a) {}

  constexpr bool contains(Color c) const noexcept { return c == first || c == second; }
  friend constexpr bool operator==(ColorPair, ColorPair) = default;
};

/// The six unordered color pairs in lexicographic order.
std::array<ColorPair, 6> all_color_pairs() noexcept;

using Point3 = std::array<std::int64_t, 3>;

struct Vertex {
  int id = 0;
  Color color = Color::R;
  bool is_quasi = false;
  Point3 position{};
};

/// A set of simplex ids of one dimension with mod-2 union.
///
/// Members are kept sorted and unique so two chains compare equal iff they
/// hold the same simplices.
class Chain {
 public:
  Chain() = default;
  explicit Chain(int dimension) : dim_(dimension) {}
  Chain(int dimension, std::vector<int> ids);

  int dimension() const noexcept { return dim_; }
  const std::vector<int>& ids() const& noexcept { return ids_; }
  // Rvalue chains hand over their ids so range-for over a temporary stays valid.
  std::vector<int> ids() && noexcept { return std::move(ids_); }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(int id) const noexcept;

  /// Flips membership of one simplex.
  void toggle(int id);

  Chain& operator^=(const Chain& other);
  friend Chain operator^(Chain a, const Chain& b) { return a ^= b; }
  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  int dim_ = 0;
  std::vector<int> ids_;
};

/// Immutable colored simplicial 3-complex.
///
/// Tetrahedra are the maximal simplices; every edge, face and vertex of a
/// tetrahedron is present. Ids are dense indices into the tables.
class DualLattice {
 public:
  DualLattice(std::vector<Vertex> vertices, std::vector<std::array<int, 4>> tetrahedra);

  std::size_t count(int dim) const;
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const Vertex& vertex(int id) const { return vertices_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::array<int, 2>>& edges() const noexcept { return edges_; }
  const std::vector<std::array<int, 3>>& faces() const noexcept { return faces_; }
  const std::vector<std::array<int, 4>>& tetrahedra() const noexcept { return tetras_; }

  /// Vertex ids of a simplex of dimension `dim`.
  std::span<const int> simplex_vertices(int dim, int id) const;

  /// Simplices of dimension `k` containing the simplex (`dim`, `id`), sorted.
  std::span<const int> cofaces(int dim, int id, int k) const;

  /// Simplices of dimension `k` < `dim` contained in the simplex, sorted.
  std::span<const int> faces_of(int dim, int id, int k) const;

  int edge_id(int a, int b) const;
  int face_id(int a, int b, int c) const;
  /// Returns -1 when the simplex is not part of the complex.
  int find_edge(int a, int b) const noexcept;
  int find_face(int a, int b, int c) const noexcept;

  /// True when every vertex of the simplex is a quasivertex.
  bool all_quasi(int dim, int id) const;

  std::span<const int> quasivertices() const noexcept { return quasi_; }

 private:
  void check_dim(int dim) const;

  std::vector<Vertex> vertices_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::array<int, 4>> tetras_;
  std::vector<int> quasi_;

  // CSR incidence: down_[dim][k] lists k-faces of each dim-simplex,
  // up_[dim][k] lists k-cofaces.
  struct Csr {
    std::vector<int> offsets;
    std::vector<int> values;
    std::span<const int> row(int i) const {
      auto b = static_cast<std::size_t>(offsets[static_cast<std::size_t>(i)]);
      auto e = static_cast<std::size_t>(offsets[static_cast<std::size_t>(i) + 1]);
      return {values.data() + b, e - b};
    }
  };
  std::array<std::array<Csr, 4>, 4> down_;
  std::array<std::array<Csr, 4>, 4> up_;
};

/// Mod-2 projection of an n-chain onto its m-dimensional boundary.
Chain boundary_project(const DualLattice& lattice, const Chain& chain, int target_dim);

/// k-simplices containing vertex v.
std::vector<int> star(const DualLattice& lattice, int v, int k);

/// Faces of star(v, 3) opposite v, in the order of star(v, 3).
std::vector<int> link_surface(const DualLattice& lattice, int v);

/// Colors absent from the endpoints of an edge.
ColorPair edge_label(const DualLattice& lattice, int edge);

/// Edges of sigma whose label contains the sweep color.
Chain restrict_syndrome_by_sweep_color(const DualLattice& lattice, const Chain& sigma, Color sweep);

struct RestrictedGraph {
  ColorPair keep;
  std::vector<int> nodes;                    // lattice vertex ids, sorted
  std::vector<std::vector<int>> adjacency;   // lattice vertex id -> neighbor ids (empty if not kept)
  std::vector<int> arcs;                     // lattice edge ids, all weight 1
};

RestrictedGraph twice_restricted_graph(const DualLattice& lattice, ColorPair keep);

}  // namespace tetracode
