#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "quantum3/complex3.hpp"
#include "quantum3/error.hpp"
#include "support.hpp"

using namespace quantum3;
using complex3::Coloring;
using complex3::Triangulation;

namespace {

// Every map E -> palette, filtered by face admissibility.
std::uint64_t brute_force_count(const Triangulation& t, int r, const std::vector<int>& palette) {
  const std::size_t n = t.edges().size();
  std::vector<std::size_t> digits(n, 0);
  Coloring c{r, std::vector<int>(n, palette[0])};
  std::uint64_t count = 0;
  while (true) {
    for (std::size_t e = 0; e < n; ++e) c.colors[e] = palette[digits[e]];
    count += complex3::is_admissible(t, c);
    std::size_t e = 0;
    while (e < n && ++digits[e] == palette.size()) digits[e++] = 0;
    if (e == n) break;
  }
  return count;
}

std::vector<int> range_palette(int r) {
  std::vector<int> p;
  for (int c = 0; c <= r - 2; ++c) p.push_back(c);
  return p;
}

// chi of S(c3) by building the normal surface: corners are the edges
// colored 1, one arc per (face, corner pair), one polygon per tetrahedron
// meeting the surface. Also checks that every arc bounds two polygons.
int assembled_euler_characteristic(const Triangulation& t, const Coloring& c3) {
  std::set<int> corners;
  std::map<std::pair<int, std::pair<int, int>>, int> arc_use;
  int polygons = 0;
  for (const auto& tet : t.tetrahedra()) {
    std::vector<int> hit;
    for (int e : tet.edges) {
      if (c3.colors[e] == 1) hit.push_back(e);
    }
    if (hit.empty()) continue;
    REQUIRE((hit.size() == 3 || hit.size() == 4));
    ++polygons;
    for (int f : tet.faces) {
      const auto& fe = t.faces()[f].edges;
      std::vector<int> in_face;
      for (int e : fe) {
        if (c3.colors[e] == 1) in_face.push_back(e);
      }
      if (in_face.empty()) continue;
      REQUIRE(in_face.size() == 2);
      ++arc_use[{f, {std::min(in_face[0], in_face[1]), std::max(in_face[0], in_face[1])}}];
    }
    corners.insert(hit.begin(), hit.end());
  }
  for (const auto& [arc, uses] : arc_use) CHECK(uses == 2);
  return static_cast<int>(corners.size()) - static_cast<int>(arc_use.size()) + polygons;
}

}  // namespace

TEST_CASE("boundary of the 4-simplex loads as a closed 3-manifold") {
  const auto t = testing::sphere();
  CHECK(t.vertex_count() == 5);
  CHECK(t.edges().size() == 10);
  CHECK(t.faces().size() == 10);
  CHECK(t.tetrahedra().size() == 5);
  CHECK(t.component_count() == 1);
  CHECK(complex3::check_manifold(t).manifold);
  for (const auto& tet : t.tetrahedra()) {
    // opposite edges share no vertex
    for (int a = 0; a < 3; ++a) {
      const auto& e1 = t.edges()[tet.edges[a]];
      const auto& e2 = t.edges()[tet.edges[a + 3]];
      const std::set<int> vs{e1.u, e1.v, e2.u, e2.v};
      CHECK(vs.size() == 4);
    }
  }
}

TEST_CASE("shipped S2 x S1 triangulations are closed manifolds") {
  for (const auto& t : {testing::asset("s2xs1.json"), testing::data("s2xs1_neighborly10.json")}) {
    CHECK(complex3::check_manifold(t).manifold);
    CHECK(t.component_count() == 1);
    CHECK(2 * t.faces().size() == 4 * t.tetrahedra().size());
  }
}

TEST_CASE("malformed triangulations are rejected") {
  std::istringstream single(R"({"tetrahedra": [[0,1,2,3]]})");
  CHECK_THROWS_AS(complex3::load_triangulation(single), Error);
  std::istringstream degenerate(R"({"tetrahedra": [[0,1,2,2]]})");
  CHECK_THROWS_AS(complex3::load_triangulation(degenerate), Error);
  std::istringstream not_json("{tetrahedra");
  CHECK_THROWS_AS(complex3::load_triangulation(not_json), Error);
  std::istringstream duplicate(
      R"({"tetrahedra": [[0,1,2,3],[0,1,2,4],[0,1,3,4],[0,2,3,4],[1,2,3,4],[0,1,2,3]]})");
  CHECK_THROWS_AS(complex3::load_triangulation(duplicate), Error);
}

TEST_CASE("json round trip") {
  const auto t = testing::asset("s2xs1.json");
  std::istringstream in(complex3::to_json(t));
  const auto u = complex3::load_triangulation(in);
  CHECK(u.tetrahedra_vertices() == t.tetrahedra_vertices());
}

TEST_CASE("disjoint union has two components and multiplies counts") {
  const auto s = testing::sphere();
  const auto u = Triangulation::disjoint_union(s, s);
  CHECK(u.component_count() == 2);
  CHECK(u.vertex_count() == 10);
  for (int r : {3, 4, 5}) {
    const auto n = complex3::count_admissible(s, r, false);
    CHECK(complex3::count_admissible(u, r, false) == n * n);
  }
}

TEST_CASE("backtracking agrees with the brute-force filter") {
  const auto t = testing::sphere();
  CHECK(complex3::count_admissible(t, 3, false) == 16);
  CHECK(brute_force_count(t, 3, range_palette(3)) == 16);
  for (int r : {4, 5}) CHECK(complex3::count_admissible(t, r, false) == brute_force_count(t, r, range_palette(r)));
  CHECK(brute_force_count(t, 5, {0, 2}) == 52);
  CHECK(complex3::count_admissible(t, 5, true) == 52);
  CHECK(complex3::count_admissible(t, 7, true) == brute_force_count(t, 7, {0, 2, 4}));
}

TEST_CASE("enumeration visits distinct colorings including zero") {
  const auto t = testing::sphere();
  std::set<std::vector<int>> seen;
  complex3::enumerate_admissible(t, 5, false, [&](const Coloring& c) {
    CHECK(complex3::is_admissible(t, c));
    seen.insert(c.colors);
  });
  CHECK(seen.size() == complex3::count_admissible(t, 5, false));
  CHECK(seen.count(std::vector<int>(10, 0)) == 1);

  std::uint64_t pinned = 0;
  for (int c = 0; c <= 3; ++c) {
    complex3::enumerate_admissible(t, 5, false, [&](const Coloring&) { ++pinned; }, c);
  }
  CHECK(pinned == seen.size());
}

TEST_CASE("odd-level splitting is a bijection") {
  const auto t = testing::sphere();
  for (int r : {5, 7}) {
    CHECK(complex3::count_admissible(t, r, false) ==
          complex3::count_admissible(t, 3, false) * complex3::count_admissible(t, r, true));
  }
  std::set<std::pair<std::vector<int>, std::vector<int>>> images;
  std::uint64_t n = 0;
  complex3::enumerate_admissible(t, 7, false, [&](const Coloring& c) {
    ++n;
    const auto [c3, even] = complex3::split_coloring(c);
    CHECK(c3.level_r == 3);
    CHECK(complex3::is_admissible(t, c3));
    CHECK(complex3::is_admissible(t, even));
    for (int x : even.colors) CHECK(x % 2 == 0);
    CHECK(complex3::merge_coloring(c3, even, 7) == c);
    images.insert({c3.colors, even.colors});
  });
  CHECK(images.size() == n);

  const Coloring zero{7, std::vector<int>(10, 0)};
  const auto [z3, zeven] = complex3::split_coloring(zero);
  CHECK(z3.colors == zero.colors);
  CHECK(zeven.colors == zero.colors);
  CHECK_THROWS_AS(complex3::split_coloring(Coloring{6, std::vector<int>(10, 0)}), Error);
}

TEST_CASE("normal surface parity") {
  const auto t = testing::sphere();
  CHECK(complex3::normal_surface_euler_parity(t, Coloring{3, std::vector<int>(10, 0)}) == 0);

  // vertex link of vertex 0: a normal 2-sphere
  Coloring link{3, std::vector<int>(10, 0)};
  for (std::size_t e = 0; e < t.edges().size(); ++e) link.colors[e] = t.edges()[e].u == 0 ? 1 : 0;
  const auto cells = complex3::normal_cells(t, link);
  CHECK(cells.vertices == 4);
  CHECK(cells.arcs == 6);
  CHECK(cells.triangles == 4);
  CHECK(cells.quads == 0);
  CHECK(assembled_euler_characteristic(t, link) == 2);
  CHECK(complex3::normal_surface_euler_parity(t, link) == 0);

  for (const auto& tri : {t, testing::asset("s2xs1.json")}) {
    int nonempty = 0;
    complex3::enumerate_admissible(tri, 3, false, [&](const Coloring& c3) {
      const int chi = assembled_euler_characteristic(tri, c3);
      nonempty += chi != 0;
      CHECK(complex3::normal_surface_euler_parity(tri, c3) == (chi % 2 + 2) % 2);
    });
    CHECK(nonempty > 0);
  }
}
