#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "quantum3/error.hpp"
#include "quantum3/statesum.hpp"

namespace quantum3::statesum {

namespace {

// [n]! and 1/[n]! for 0 <= n <= r-1, shared per level.
struct FactorialTable {
  std::vector<CycloNum> fact;
  std::vector<CycloNum> inv_fact;
};

std::shared_ptr<const FactorialTable> factorials(int r, Branch branch) {
  static std::map<std::pair<int, Branch>, std::shared_ptr<const FactorialTable>> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({r, branch}); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<FactorialTable>();
  for (int n = 0; n <= r - 1; ++n) {
    table->fact.push_back(cyclo::quantum_factorial(n, r, branch));
    table->inv_fact.push_back(table->fact.back().inverse());
  }
  std::lock_guard lock(mu);
  return cache.emplace(std::make_pair(r, branch), std::move(table)).first->second;
}

int sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

CycloNum weight_edge(int color, int r, Branch branch) {
  require(color >= 0 && color <= r - 2, "edge color out of range");
  CycloNum w = cyclo::quantum_int(color + 1, r, branch);
  return sign(color) > 0 ? w : -w;
}

CycloNum weight_face(int i, int j, int k, int r, Branch branch) {
  require(complex3::admissible(i, j, k, r), "face weight needs an admissible triple");
  const auto table = factorials(r, branch);
  const int s = (i + j + k) / 2;
  // (-1)^{-S} = (-1)^S.
  CycloNum w = table->fact[s - i] * table->fact[s - j] * table->fact[s - k] * table->inv_fact[s + 1];
  return sign(s) > 0 ? w : -w;
}

CycloNum weight_tet(const std::array<int, 6>& c, int r, Branch branch) {
  const auto [i, j, k, l, m, n] = c;
  require(complex3::admissible(i, j, k, r) && complex3::admissible(i, m, n, r) &&
              complex3::admissible(j, l, n, r) && complex3::admissible(k, l, m, r),
          "tetrahedron weight needs admissible faces");
  const auto table = factorials(r, branch);
  const std::array<int, 4> t{(i + j + k) / 2, (i + m + n) / 2, (j + l + n) / 2, (k + l + m) / 2};
  const std::array<int, 3> q{(i + j + l + m) / 2, (i + k + l + n) / 2, (j + k + m + n) / 2};
  const int lo = *std::max_element(t.begin(), t.end());
  const int hi = *std::min_element(q.begin(), q.end());
  CycloNum sum(r, branch);
  for (int z = lo; z <= hi; ++z) {
    // [z+1]! vanishes once z+1 reaches r.
    if (z + 1 > r - 1) break;
    CycloNum term = table->fact[z + 1];
    for (int ta : t) term *= table->inv_fact[z - ta];
    for (int qb : q) term *= table->inv_fact[qb - z];
    if (sign(z) > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

CycloNum weight_edge(const Coloring& c, int edge, Branch branch) {
  return weight_edge(c.colors.at(edge), c.level_r, branch);
}

CycloNum weight_face(const Triangulation& t, const Coloring& c, int face, Branch branch) {
  const auto& e = t.faces().at(face).edges;
  return weight_face(c.colors[e[0]], c.colors[e[1]], c.colors[e[2]], c.level_r, branch);
}

CycloNum weight_tet(const Triangulation& t, const Coloring& c, int tet, Branch branch) {
  const auto& e = t.tetrahedra().at(tet).edges;
  std::array<int, 6> colors{};
  for (std::size_t a = 0; a < 6; ++a) colors[a] = c.colors[e[a]];
  return weight_tet(colors, c.level_r, branch);
}

CycloNum vertex_factor(int r, bool refined, Branch branch) {
  const CycloNum diff = CycloNum::zeta_power(r, 1, branch) - CycloNum::zeta_power(r, -1, branch);
  return diff * diff * CycloNum(r, mpq_class(-1, refined ? r : 2 * r), branch);
}

CycloNum term(const Triangulation& t, const Coloring& c, Branch branch) {
  const int r = c.level_r;
  CycloNum product(r, 1L, branch);
  for (std::size_t e = 0; e < t.edges().size(); ++e) product *= weight_edge(c, static_cast<int>(e), branch);
  for (std::size_t f = 0; f < t.faces().size(); ++f) product *= weight_face(t, c, static_cast<int>(f), branch);
  for (std::size_t x = 0; x < t.tetrahedra().size(); ++x) product *= weight_tet(t, c, static_cast<int>(x), branch);
  return product;
}

const CycloNum& WeightTable::edge(int color) {
  auto it = edges_.find(color);
  if (it == edges_.end()) it = edges_.emplace(color, weight_edge(color, r_, branch_)).first;
  return it->second;
}

const CycloNum& WeightTable::face(int i, int j, int k) {
  const auto key = std::make_tuple(i, j, k);
  auto it = faces_.find(key);
  if (it == faces_.end()) it = faces_.emplace(key, weight_face(i, j, k, r_, branch_)).first;
  return it->second;
}

const CycloNum& WeightTable::tet(const std::array<int, 6>& colors) {
  auto it = tets_.find(colors);
  if (it == tets_.end()) it = tets_.emplace(colors, weight_tet(colors, r_, branch_)).first;
  return it->second;
}

}  // namespace quantum3::statesum
