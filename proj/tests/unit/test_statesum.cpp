#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "quantum3/error.hpp"
#include "quantum3/statesum.hpp"
#include "support.hpp"

using namespace quantum3;
using complex3::Coloring;
using cyclo::Branch;
using statesum::Arithmetic;
using statesum::Options;

namespace {

double ev_real(const cyclo::CycloNum& x, long s) { return cyclo::ev(x, s).real(); }

// Weights from the sine quotient.
double trig_edge(int i, int r, long s) { return (i % 2 ? -1.0 : 1.0) * testing::qint(i + 1, r, s); }

double trig_face(int i, int j, int k, int r, long s) {
  const int S = (i + j + k) / 2;
  return (S % 2 ? -1.0 : 1.0) * testing::qfact(S - i, r, s) * testing::qfact(S - j, r, s) *
         testing::qfact(S - k, r, s) / testing::qfact(S + 1, r, s);
}

double trig_tet(const std::array<int, 6>& c, int r, long s) {
  const auto [i, j, k, l, m, n] = c;
  const int t[4] = {(i + j + k) / 2, (i + m + n) / 2, (j + l + n) / 2, (k + l + m) / 2};
  const int q[3] = {(i + j + l + m) / 2, (i + k + l + n) / 2, (j + k + m + n) / 2};
  double sum = 0;
  for (int z = *std::max_element(t, t + 4); z <= *std::min_element(q, q + 3); ++z) {
    if (z + 1 >= r) break;
    double term = (z % 2 ? -1.0 : 1.0) * testing::qfact(z + 1, r, s);
    for (int a : t) term /= testing::qfact(z - a, r, s);
    for (int b : q) term /= testing::qfact(b - z, r, s);
    sum += term;
  }
  return sum;
}

bool tet_admissible(const std::array<int, 6>& c, int r) {
  const auto [i, j, k, l, m, n] = c;
  return complex3::admissible(i, j, k, r) && complex3::admissible(i, m, n, r) &&
         complex3::admissible(j, l, n, r) && complex3::admissible(k, l, m, r);
}

std::vector<std::array<int, 6>> admissible_tets(int r) {
  std::vector<std::array<int, 6>> out;
  std::array<int, 6> c{};
  const int top = r - 1;
  for (int x = 0; x < static_cast<int>(std::pow(top, 6)); ++x) {
    int y = x;
    for (int& v : c) {
      v = y % top;
      y /= top;
    }
    if (tet_admissible(c, r)) out.push_back(c);
  }
  return out;
}

std::vector<long> coprime(int r) {
  std::vector<long> out;
  for (long s = 1; s < r; ++s) {
    if (std::gcd(s, static_cast<long>(r)) == 1) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("edge and face weights") {
  CHECK(statesum::weight_edge(0, 5) == cyclo::CycloNum(5, 1L));
  CHECK(ev_real(statesum::weight_edge(1, 5), 1) == doctest::Approx(-1.618034).epsilon(1e-6));
  CHECK(ev_real(statesum::weight_edge(3, 5), 1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(statesum::weight_face(0, 0, 0, 5) == cyclo::CycloNum(5, 1L));
  CHECK(ev_real(statesum::weight_face(1, 1, 0, 3), 1) == doctest::Approx(-1.0).epsilon(1e-12));
  const double q2 = testing::qint(2, 5, 1), q3 = testing::qint(3, 5, 1), q4 = testing::qint(4, 5, 1);
  CHECK(ev_real(statesum::weight_face(2, 2, 2, 5), 1) == doctest::Approx(-1.0 / (q2 * q3 * q4)).epsilon(1e-12));
}

TEST_CASE("weights agree with trigonometric evaluation") {
  for (int r : {4, 5, 6, 7}) {
    for (long s : coprime(r)) {
      const Branch b = cyclo::branch_for(r, s);
      for (int i = 0; i <= r - 2; ++i) {
        CHECK(ev_real(statesum::weight_edge(i, r, b), s) == doctest::Approx(trig_edge(i, r, s)).epsilon(1e-11));
        for (int j = 0; j <= r - 2; ++j) {
          for (int k = 0; k <= r - 2; ++k) {
            if (!complex3::admissible(i, j, k, r)) continue;
            CHECK(ev_real(statesum::weight_face(i, j, k, r, b), s) ==
                  doctest::Approx(trig_face(i, j, k, r, s)).epsilon(1e-11));
          }
        }
      }
    }
  }
  for (int r : {4, 5, 6}) {
    const auto tets = admissible_tets(r);
    for (long s : coprime(r)) {
      statesum::WeightTable table(r, cyclo::branch_for(r, s));
      for (const auto& c : tets) {
        const auto v = cyclo::ev(table.tet(c), s);
        CHECK(std::abs(v.imag()) < 1e-10);
        CHECK(v.real() == doctest::Approx(trig_tet(c, r, s)).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("tetrahedron weight edge cases and symmetry") {
  CHECK(statesum::weight_tet({0, 0, 0, 0, 0, 0}, 5) == cyclo::CycloNum(5, 1L));
  CHECK_THROWS_AS(statesum::weight_tet({1, 1, 1, 1, 1, 1}, 4), Error);
  // All T_a equal all Q_b: a one-term sum.
  const std::array<int, 6> flat{1, 1, 0, 1, 1, 0};
  CHECK(ev_real(statesum::weight_tet(flat, 4), 1) == doctest::Approx(trig_tet(flat, 4, 1)).epsilon(1e-12));

  // Relabelling vertices permutes (i..n) but fixes the weight. With
  // vertices 0..3: i=01, j=02, k=12, l=23, m=13, n=03 matches the face
  // triples (i,j,k)=012, (i,m,n)=013, (j,l,n)=023, (k,l,m)=123.
  const std::array<std::pair<int, int>, 6> edge_of{{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {0, 3}}};
  auto slot = [&](int a, int b) {
    for (int x = 0; x < 6; ++x) {
      if (edge_of[x] == std::pair{std::min(a, b), std::max(a, b)}) return x;
    }
    return -1;
  };
  for (const auto& c : admissible_tets(6)) {
    std::array<int, 4> perm{0, 1, 2, 3};
    const auto base = statesum::weight_tet(c, 6);
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::array<int, 6> moved{};
      for (int x = 0; x < 6; ++x) moved[slot(perm[edge_of[x].first], perm[edge_of[x].second])] = c[x];
      CHECK(statesum::weight_tet(moved, 6) == base);
    }
  }
}

TEST_CASE("memoized weights equal direct computation") {
  for (Branch b : {Branch::kOdd, Branch::kEven}) {
    statesum::WeightTable table(5, b);
    for (const auto& c : admissible_tets(5)) {
      CHECK(table.tet(c) == statesum::weight_tet(c, 5, b));
      CHECK(table.tet(c) == statesum::weight_tet(c, 5, b));
      CHECK(table.face(c[0], c[1], c[2]) == statesum::weight_face(c[0], c[1], c[2], 5, b));
    }
    for (int i = 0; i <= 3; ++i) CHECK(table.edge(i) == statesum::weight_edge(i, 5, b));
  }
}

TEST_CASE("3-sphere values") {
  const auto t = testing::sphere();
  for (int r = 3; r <= 6; ++r) {
    const auto res = statesum::tv(t, r, 1);
    CHECK(res.value == doctest::Approx(testing::s3_tv(r)).epsilon(1e-12));
    CHECK(std::abs(res.raw.imag()) < 1e-9 * (1 + std::abs(res.raw)));
    CHECK(res.coloring_count == complex3::count_admissible(t, r, false));
  }
  CHECK(statesum::tv(t, 5, 1).value == doctest::Approx(0.138197).epsilon(1e-6));
  for (int r : {5, 7}) {
    const auto res = statesum::tv_prime(t, r, r - 1);
    CHECK(res.value == doctest::Approx(2 * testing::s3_tv(r)).epsilon(1e-12));
    CHECK(res.coloring_count == complex3::count_admissible(t, r, true));
  }
}

TEST_CASE("S2 x S1 values") {
  const auto layered = testing::asset("s2xs1.json");
  const auto neighborly = testing::data("s2xs1_neighborly10.json");
  for (int r : {3, 4}) {
    CHECK(statesum::tv(layered, r, 1).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(statesum::tv(neighborly, r, 1).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(statesum::tv(layered, 5, 2).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(statesum::tv_prime(layered, 5, 4).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(statesum::tv_prime(neighborly, 5, 2).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("refined values at conjugate indices are galois conjugates") {
  const auto t = testing::sphere();
  const auto inv = statesum::abstract_tv(t, 5, true, {}, Branch::kEven);
  // zeta -> zeta^2 maps the s = 2 embedding onto s = 4.
  const auto conj = inv.value.galois(2);
  CHECK(cyclo::ev(conj, 2).real() == doctest::Approx(statesum::tv_prime(t, 5, 4).value).epsilon(1e-12));
  CHECK(cyclo::ev(inv.value, 2).real() == doctest::Approx(statesum::tv_prime(t, 5, 2).value).epsilon(1e-12));
}

TEST_CASE("index symmetries") {
  const auto t = testing::sphere();
  for (int r : {5, 6, 7}) {
    for (long s : coprime(r)) {
      const double v = statesum::tv(t, r, s).value;
      CHECK(statesum::tv(t, r, -s).value == doctest::Approx(v).epsilon(1e-12));
      CHECK(statesum::tv(t, r, s + 2 * r).value == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("disjoint union multiplies") {
  const auto s = testing::sphere();
  const auto u = complex3::Triangulation::disjoint_union(s, testing::asset("s2xs1.json"));
  const auto ss = complex3::Triangulation::disjoint_union(s, s);
  for (int r : {3, 4}) {
    CHECK(statesum::tv(u, r, 1).value == doctest::Approx(testing::s3_tv(r)).epsilon(1e-12));
    CHECK(statesum::tv(ss, r, 1).value == doctest::Approx(std::pow(testing::s3_tv(r), 2)).epsilon(1e-12));
  }
  CHECK(statesum::tv(ss, 5, 2).value ==
        doctest::Approx(std::pow(statesum::tv(s, 5, 2).value, 2)).epsilon(1e-12));
}

TEST_CASE("frontier sum equals per-coloring enumeration exactly") {
  const auto t = testing::sphere();
  for (int r : {3, 4, 5, 6}) {
    for (bool refined : {false, true}) {
      if (refined && r % 2 == 0) continue;
      for (Branch b : {Branch::kOdd, Branch::kEven}) {
        if (b == Branch::kEven && r % 2 == 0) continue;
        const auto fast = statesum::abstract_tv(t, r, refined, {}, b);
        const auto slow = statesum::abstract_tv_by_enumeration(t, r, refined, b);
        CHECK(fast.value == slow.value);
        CHECK(fast.coloring_count == slow.coloring_count);
      }
    }
  }
  const auto tiny = testing::asset("s2xs1.json");
  CHECK(statesum::abstract_tv(tiny, 3, false).value == statesum::abstract_tv_by_enumeration(tiny, 3, false).value);
}

TEST_CASE("results do not depend on the worker count") {
  const auto t = testing::asset("s2xs1.json");
  Options one, many;
  many.jobs = 3;
  const auto a = statesum::abstract_tv(t, 4, false, one);
  const auto b = statesum::abstract_tv(t, 4, false, many);
  CHECK(a.value == b.value);
  CHECK(a.coloring_count == b.coloring_count);
  one.arithmetic = many.arithmetic = Arithmetic::kFloat;
  const auto x = statesum::tv(t, 5, 2, one);
  const auto y = statesum::tv(t, 5, 2, many);
  CHECK(x.raw == y.raw);
  CHECK(x.coloring_count == y.coloring_count);
}

TEST_CASE("float path agrees with the exact path") {
  const auto t = testing::sphere();
  Options fl;
  fl.arithmetic = Arithmetic::kFloat;
  for (int r : {5, 6, 7}) {
    for (long s : coprime(r)) {
      CHECK(statesum::tv(t, r, s, fl).value == doctest::Approx(statesum::tv(t, r, s).value).epsilon(1e-11));
    }
  }
  const auto batch = statesum::tv_float_batch(t, 7, false, coprime(7), fl);
  REQUIRE(batch.size() == 6);
  for (const auto& res : batch) {
    CHECK(res.value == doctest::Approx(statesum::tv(t, 7, res.s, fl).value).epsilon(1e-12));
  }
  const auto refined = statesum::tv_float_batch(t, 7, true, {2, 4, 6}, fl);
  for (const auto& res : refined) {
    CHECK(res.value == doctest::Approx(statesum::tv_prime(t, 7, res.s).value).epsilon(1e-11));
  }
}

TEST_CASE("terms factor through the odd-level splitting at even s") {
  const auto t = testing::sphere();
  const int r = 5;
  for (long s : {2L, 4L}) {
    complex3::enumerate_admissible(t, r, false, [&](const Coloring& c) {
      const auto [c3, even] = complex3::split_coloring(c);
      for (std::size_t e = 0; e < t.edges().size(); ++e) {
        const int x = static_cast<int>(e);
        CHECK(ev_real(statesum::weight_edge(c, x, Branch::kEven), s) ==
              doctest::Approx(ev_real(statesum::weight_edge(c3, x, Branch::kEven), 2) *
                              ev_real(statesum::weight_edge(even, x, Branch::kEven), s))
                  .epsilon(1e-10));
      }
      for (std::size_t f = 0; f < t.faces().size(); ++f) {
        const int x = static_cast<int>(f);
        CHECK(ev_real(statesum::weight_face(t, c, x, Branch::kEven), s) ==
              doctest::Approx(ev_real(statesum::weight_face(t, c3, x, Branch::kEven), 2) *
                              ev_real(statesum::weight_face(t, even, x, Branch::kEven), s))
                  .epsilon(1e-10));
      }
      for (std::size_t k = 0; k < t.tetrahedra().size(); ++k) {
        const int x = static_cast<int>(k);
        CHECK(ev_real(statesum::weight_tet(t, c, x, Branch::kEven), s) ==
              doctest::Approx(ev_real(statesum::weight_tet(t, c3, x, Branch::kEven), 2) *
                              ev_real(statesum::weight_tet(t, even, x, Branch::kEven), s))
                  .epsilon(1e-10));
      }
    });
  }
}

TEST_CASE("domain errors") {
  const auto t = testing::sphere();
  CHECK_THROWS_AS(statesum::tv(t, 6, 3), Error);
  CHECK_THROWS_AS(statesum::tv(t, 2, 1), Error);
  CHECK_THROWS_AS(statesum::tv_prime(t, 5, 1), Error);
  CHECK_THROWS_AS(statesum::tv_prime(t, 6, 1), Error);
  const auto inv = statesum::abstract_tv(t, 5, false);
  CHECK_THROWS_AS(statesum::specialize(inv, 5, 2, false), Error);
  CHECK_THROWS_AS(statesum::specialize(inv, 7, 1, false), Error);
}
