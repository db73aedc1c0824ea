#include "quantum3/complex3.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "quantum3/error.hpp"

namespace quantum3::complex3 {

namespace {

// Union-find over small integer ranges.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) n += find(i) == i;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::string tet_str(const Tetra& t) {
  return "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
         std::to_string(t[3]) + "]";
}

}  // namespace

Triangulation Triangulation::from_tetrahedra(const std::vector<Tetra>& tetrahedra) {
  if (tetrahedra.empty()) fail(ErrorKind::kTopology, "triangulation has no tetrahedra");
  Triangulation t;
  std::set<Tetra> seen;
  int max_vertex = -1;
  std::vector<Tetra> sorted;
  sorted.reserve(tetrahedra.size());
  for (const auto& raw : tetrahedra) {
    Tetra s = raw;
    std::sort(s.begin(), s.end());
    if (s[0] < 0) fail(ErrorKind::kTopology, "negative vertex index in tetrahedron " + tet_str(raw));
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      fail(ErrorKind::kTopology, "degenerate tetrahedron " + tet_str(raw));
    }
    if (!seen.insert(s).second) fail(ErrorKind::kTopology, "duplicate tetrahedron " + tet_str(raw));
    max_vertex = std::max(max_vertex, s[3]);
    sorted.push_back(s);
  }
  t.vertex_count_ = max_vertex + 1;
  std::vector<bool> used(static_cast<std::size_t>(t.vertex_count_), false);
  for (const auto& s : sorted) {
    for (int v : s) used[v] = true;
  }
  for (int v = 0; v < t.vertex_count_; ++v) {
    if (!used[v]) fail(ErrorKind::kTopology, "vertex labels are not consecutive: " + std::to_string(v) + " unused");
  }

  std::map<std::pair<int, int>, int> edge_ids;
  std::map<std::array<int, 3>, int> face_ids;
  auto edge_id = [&](int u, int v) {
    auto [it, fresh] = edge_ids.try_emplace({u, v}, static_cast<int>(t.edges_.size()));
    if (fresh) t.edges_.push_back({u, v});
    return it->second;
  };
  std::vector<int> face_use;
  auto face_id = [&](int a, int b, int c) {
    auto [it, fresh] = face_ids.try_emplace({a, b, c}, static_cast<int>(t.faces_.size()));
    if (fresh) {
      t.faces_.push_back({{a, b, c}, {edge_id(a, b), edge_id(b, c), edge_id(a, c)}});
      face_use.push_back(0);
    }
    ++face_use[it->second];
    return it->second;
  };

  for (const auto& s : sorted) {
    const auto [a, b, c, d] = s;
    Tet tet;
    tet.vertices = s;
    tet.edges = {edge_id(a, b), edge_id(b, c), edge_id(a, c), edge_id(c, d), edge_id(a, d), edge_id(b, d)};
    tet.faces = {face_id(a, b, c), face_id(a, b, d), face_id(b, c, d), face_id(a, c, d)};
    t.tets_.push_back(tet);
  }
  for (std::size_t f = 0; f < t.faces_.size(); ++f) {
    if (face_use[f] != 2) {
      const auto& v = t.faces_[f].vertices;
      fail(ErrorKind::kTopology, "face [" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                                     std::to_string(v[2]) + "] belongs to " + std::to_string(face_use[f]) +
                                     " tetrahedra; a closed complex needs exactly 2");
    }
  }

  t.edge_faces_.assign(t.edges_.size(), {});
  t.edge_tets_.assign(t.edges_.size(), {});
  for (std::size_t f = 0; f < t.faces_.size(); ++f) {
    for (int e : t.faces_[f].edges) t.edge_faces_[e].push_back(static_cast<int>(f));
  }
  for (std::size_t i = 0; i < t.tets_.size(); ++i) {
    for (int e : t.tets_[i].edges) t.edge_tets_[e].push_back(static_cast<int>(i));
  }
  return t;
}

Triangulation Triangulation::disjoint_union(const Triangulation& a, const Triangulation& b) {
  auto tets = a.tetrahedra_vertices();
  for (auto s : b.tetrahedra_vertices()) {
    for (int& v : s) v += a.vertex_count();
    tets.push_back(s);
  }
  return from_tetrahedra(tets);
}

int Triangulation::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].u == u && edges_[e].v == v) return static_cast<int>(e);
  }
  return -1;
}

int Triangulation::component_count() const {
  DisjointSets sets(static_cast<std::size_t>(vertex_count_));
  for (const auto& e : edges_) sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
  return static_cast<int>(sets.classes());
}

std::vector<Tetra> Triangulation::tetrahedra_vertices() const {
  std::vector<Tetra> out;
  out.reserve(tets_.size());
  for (const auto& t : tets_) out.push_back(t.vertices);
  return out;
}

Triangulation load_triangulation(std::istream& source) {
  nlohmann::json doc;
  try {
    source >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("triangulation JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tetrahedra") || !doc["tetrahedra"].is_array()) {
    fail(ErrorKind::kParse, "triangulation JSON needs a \"tetrahedra\" array");
  }
  std::vector<Tetra> tets;
  for (const auto& entry : doc["tetrahedra"]) {
    if (!entry.is_array() || entry.size() != 4) fail(ErrorKind::kParse, "each tetrahedron must list 4 vertices");
    Tetra t{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!entry[i].is_number_integer()) fail(ErrorKind::kParse, "vertex indices must be integers");
      t[i] = entry[i].get<int>();
    }
    tets.push_back(t);
  }
  return Triangulation::from_tetrahedra(tets);
}

Triangulation load_triangulation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kParse, "cannot open triangulation file " + path);
  return load_triangulation(in);
}

std::string to_json(const Triangulation& t) {
  nlohmann::json doc;
  doc["tetrahedra"] = nlohmann::json::array();
  for (const auto& s : t.tetrahedra_vertices()) doc["tetrahedra"].push_back(s);
  return doc.dump();
}

ManifoldReport check_manifold(const Triangulation& t) {
  ManifoldReport report;
  const int nv = t.vertex_count();

  // Vertex links: triangles are the faces opposite v in tets containing v.
  std::vector<std::set<int>> link_vertices(static_cast<std::size_t>(nv));
  std::vector<std::set<std::pair<int, int>>> link_edges(static_cast<std::size_t>(nv));
  std::vector<int> link_triangles(static_cast<std::size_t>(nv), 0);
  for (const auto& tet : t.tetrahedra()) {
    for (int v : tet.vertices) {
      std::vector<int> rest;
      for (int w : tet.vertices) {
        if (w != v) rest.push_back(w);
      }
      ++link_triangles[v];
      for (int w : rest) link_vertices[v].insert(w);
      link_edges[v].insert({rest[0], rest[1]});
      link_edges[v].insert({rest[1], rest[2]});
      link_edges[v].insert({rest[0], rest[2]});
    }
  }
  for (int v = 0; v < nv; ++v) {
    const int chi = static_cast<int>(link_vertices[v].size()) - static_cast<int>(link_edges[v].size()) +
                    link_triangles[v];
    std::map<int, std::size_t> local;
    for (int w : link_vertices[v]) local.emplace(w, local.size());
    DisjointSets sets(local.size());
    for (const auto& [a, b] : link_edges[v]) sets.unite(local[a], local[b]);
    if (chi != 2 || sets.classes() != 1) {
      report.manifold = false;
      report.bad_vertices.push_back(v);
    }
  }

  // Edge links: the opposite edges of the tets around e form one cycle.
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    std::map<int, std::size_t> local;
    std::vector<std::pair<int, int>> arcs;
    const auto& edge = t.edges()[e];
    for (int ti : t.tets_of_edge(static_cast<int>(e))) {
      std::vector<int> rest;
      for (int w : t.tetrahedra()[ti].vertices) {
        if (w != edge.u && w != edge.v) rest.push_back(w);
      }
      arcs.emplace_back(rest[0], rest[1]);
      local.emplace(rest[0], local.size());
      local.emplace(rest[1], local.size());
    }
    DisjointSets sets(local.size());
    for (const auto& [a, b] : arcs) sets.unite(local[a], local[b]);
    if (sets.classes() != 1 || arcs.size() != local.size()) {
      report.manifold = false;
      report.bad_edges.push_back(static_cast<int>(e));
    }
  }
  return report;
}

bool is_admissible(const Triangulation& t, const Coloring& c) {
  if (c.colors.size() != t.edges().size()) return false;
  for (int col : c.colors) {
    if (col < 0 || col > c.level_r - 2) return false;
  }
  return std::all_of(t.faces().begin(), t.faces().end(), [&](const Face& f) {
    return admissible(c.colors[f.edges[0]], c.colors[f.edges[1]], c.colors[f.edges[2]], c.level_r);
  });
}

std::vector<int> enumeration_order(const Triangulation& t) {
  const std::size_t ne = t.edges().size();
  std::vector<bool> placed(ne, false);
  std::vector<int> assigned_in_face(t.faces().size(), 0);
  std::vector<int> order;
  order.reserve(ne);
  for (std::size_t step = 0; step < ne; ++step) {
    int best = -1;
    std::pair<int, int> best_score{-1, -1};
    for (std::size_t e = 0; e < ne; ++e) {
      if (placed[e]) continue;
      int completes = 0;
      int touches = 0;
      for (int f : t.faces_of_edge(static_cast<int>(e))) {
        completes += assigned_in_face[f] == 2;
        touches += assigned_in_face[f] > 0;
      }
      const std::pair<int, int> score{completes, touches};
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(e);
      }
    }
    placed[best] = true;
    order.push_back(best);
    for (int f : t.faces_of_edge(best)) ++assigned_in_face[f];
  }
  return order;
}

void enumerate_admissible(const Triangulation& t, int r, bool even_only,
                          const std::function<void(const Coloring&)>& visit, int first_color) {
  require(r >= 3, "admissible colorings need r >= 3");
  require(!even_only || r % 2 == 1, "even-only colorings are defined for odd r");
  const auto order = enumeration_order(t);
  const std::size_t ne = order.size();
  std::vector<int> position(ne);
  for (std::size_t d = 0; d < ne; ++d) position[order[d]] = static_cast<int>(d);
  // Faces checked at the step that assigns their last edge.
  std::vector<std::vector<int>> checks(ne);
  for (std::size_t f = 0; f < t.faces().size(); ++f) {
    const auto& fe = t.faces()[f].edges;
    const int last = std::max({position[fe[0]], position[fe[1]], position[fe[2]]});
    checks[last].push_back(static_cast<int>(f));
  }
  std::vector<int> palette;
  for (int c = 0; c <= r - 2; c += even_only ? 2 : 1) palette.push_back(c);

  Coloring current{r, std::vector<int>(ne, 0)};
  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == ne) {
      visit(current);
      return;
    }
    const int e = order[depth];
    for (int c : palette) {
      if (depth == 0 && first_color >= 0 && c != first_color) continue;
      current.colors[e] = c;
      bool ok = true;
      for (int f : checks[depth]) {
        const auto& fe = t.faces()[f].edges;
        if (!admissible(current.colors[fe[0]], current.colors[fe[1]], current.colors[fe[2]], r)) {
          ok = false;
          break;
        }
      }
      if (ok) descend(depth + 1);
    }
    current.colors[e] = 0;
  };
  descend(0);
}

std::uint64_t count_admissible(const Triangulation& t, int r, bool even_only) {
  std::uint64_t n = 0;
  enumerate_admissible(t, r, even_only, [&](const Coloring&) { ++n; });
  return n;
}

std::pair<Coloring, Coloring> split_coloring(const Coloring& c) {
  const int r = c.level_r;
  require(r % 2 == 1, "coloring splitting needs odd r, got r=" + std::to_string(r));
  Coloring c3{3, std::vector<int>(c.colors.size())};
  Coloring even{r, std::vector<int>(c.colors.size())};
  for (std::size_t e = 0; e < c.colors.size(); ++e) {
    const int col = c.colors[e];
    if (col % 2 == 0) {
      c3.colors[e] = 0;
      even.colors[e] = col;
    } else {
      c3.colors[e] = 1;
      even.colors[e] = r - 2 - col;
    }
  }
  return {c3, even};
}

Coloring merge_coloring(const Coloring& c3, const Coloring& even, int r) {
  require(r % 2 == 1, "coloring merge needs odd r");
  require(c3.colors.size() == even.colors.size(), "colorings have different edge counts");
  Coloring c{r, std::vector<int>(c3.colors.size())};
  for (std::size_t e = 0; e < c.colors.size(); ++e) {
    require(even.colors[e] % 2 == 0, "second coloring must be even-valued");
    c.colors[e] = c3.colors[e] == 0 ? even.colors[e] : r - 2 - even.colors[e];
  }
  return c;
}

NormalCellCounts normal_cells(const Triangulation& t, const Coloring& c3) {
  require(c3.level_r == 3 && is_admissible(t, c3), "normal surface needs an admissible level-1 coloring");
  NormalCellCounts n;
  for (int col : c3.colors) n.vertices += col;
  for (const auto& f : t.faces()) {
    n.arcs += c3.colors[f.edges[0]] + c3.colors[f.edges[1]] + c3.colors[f.edges[2]] == 2;
  }
  for (const auto& tet : t.tetrahedra()) {
    int ones = 0;
    for (int e : tet.edges) ones += c3.colors[e];
    n.triangles += ones == 3;
    n.quads += ones == 4;
  }
  return n;
}

int normal_surface_euler_parity(const Triangulation& t, const Coloring& c3) {
  const auto n = normal_cells(t, c3);
  return (n.vertices + n.arcs + n.quads) % 2;
}

}  // namespace quantum3::complex3
