#pragma once

// Closed simplicial 3-complexes, admissible edge colorings, and the
// level-1 normal surface machinery used by the odd-level splitting.

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace quantum3::complex3 {

using Tetra = std::array<int, 4>;

struct Edge {
  int u = 0;
  int v = 0;  // u < v
};

struct Face {
  std::array<int, 3> vertices{};  // sorted
  std::array<int, 3> edges{};     // edge indices of v0v1, v1v2, v0v2
};

/// Tetrahedron on sorted vertices (a,b,c,d). `edges` lists the six edge
/// indices in the order (i,j,k,l,m,n) = (ab, bc, ac, cd, ad, bd): the faces
/// are then (i,j,k), (i,m,n), (j,l,n), (k,l,m), and i/l, j/m, k/n are the
/// opposite pairs.
struct Tet {
  Tetra vertices{};
  std::array<int, 6> edges{};
  std::array<int, 4> faces{};  // abc, abd, bcd, acd
};

class Triangulation {
 public:
  /// Builds incidence data and validates a closed simplicial complex.
  /// Throws Error(kTopology) for degenerate or duplicate tetrahedra,
  /// non-consecutive vertex labels, or faces not shared by exactly two
  /// tetrahedra.
  static Triangulation from_tetrahedra(const std::vector<Tetra>& tetrahedra);

  /// Disjoint union; the second complex's vertices are shifted.
  static Triangulation disjoint_union(const Triangulation& a, const Triangulation& b);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Tet>& tetrahedra() const { return tets_; }

  /// Face indices containing edge e.
  const std::vector<int>& faces_of_edge(int e) const { return edge_faces_[e]; }
  /// Tetrahedron indices containing edge e.
  const std::vector<int>& tets_of_edge(int e) const { return edge_tets_[e]; }

  int edge_index(int u, int v) const;
  int component_count() const;

  std::vector<Tetra> tetrahedra_vertices() const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<Tet> tets_;
  std::vector<std::vector<int>> edge_faces_;
  std::vector<std::vector<int>> edge_tets_;
};

/// Parses `{"tetrahedra": [[a,b,c,d], ...]}`.
Triangulation load_triangulation(std::istream& source);
Triangulation load_triangulation_file(const std::string& path);
std::string to_json(const Triangulation& t);

struct ManifoldReport {
  bool manifold = true;
  std::vector<int> bad_vertices;  // link is not a 2-sphere
  std::vector<int> bad_edges;     // link is not a single circle
};

/// Link conditions: every vertex link has Euler characteristic 2 and is a
/// connected closed surface, and every edge link is one circle.
ManifoldReport check_manifold(const Triangulation& t);

// -- colorings --------------------------------------------------------------

/// i+j+k even, triangle inequalities, and i+j+k <= 2(r-2).
constexpr bool admissible(int i, int j, int k, int r) {
  if ((i + j + k) % 2 != 0) return false;
  if (i > j + k || j > i + k || k > i + j) return false;
  return i + j + k <= 2 * (r - 2);
}

/// Edge coloring of level r-2 indexed by edge index.
struct Coloring {
  int level_r = 3;
  std::vector<int> colors;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

bool is_admissible(const Triangulation& t, const Coloring& c);

/// Greedy edge order for backtracking: repeatedly take the edge that
/// completes the most faces, breaking ties by faces already touched.
std::vector<int> enumeration_order(const Triangulation& t);

/// Visits every admissible coloring exactly once. With `even_only` (odd r
/// only) colors are restricted to {0, 2, ..., r-3}. If `first_color` is
/// non-negative the first edge of the enumeration order is pinned to it,
/// which partitions the stream across workers.
void enumerate_admissible(const Triangulation& t, int r, bool even_only,
                          const std::function<void(const Coloring&)>& visit,
                          int first_color = -1);

std::uint64_t count_admissible(const Triangulation& t, int r, bool even_only);

/// Odd-level splitting c -> (c3, c'): even colors go to (0, c), odd colors
/// go to (1, r-2-c).
std::pair<Coloring, Coloring> split_coloring(const Coloring& c);
Coloring merge_coloring(const Coloring& c3, const Coloring& even, int r);

struct NormalCellCounts {
  int vertices = 0;       // edges colored 1
  int arcs = 0;           // faces colored (1,1,0)
  int triangles = 0;      // tets with three edges colored 1
  int quads = 0;          // tets with four edges colored 1
};

NormalCellCounts normal_cells(const Triangulation& t, const Coloring& c3);

/// chi(S(c3)) mod 2 from (vertices + arcs + quads) mod 2; the triangle
/// count is always even on a closed complex.
int normal_surface_euler_parity(const Triangulation& t, const Coloring& c3);

}  // namespace quantum3::complex3
