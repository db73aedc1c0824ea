#include <doctest.h>

#include <numeric>
#include <sstream>

#include "quantum3/error.hpp"
#include "quantum3/hempel.hpp"
#include "support.hpp"

using namespace quantum3;
using hempel::VerdictKind;
using seifert::SeifertSymbol;

namespace {

SeifertSymbol sym(const char* text) { return seifert::parse_symbol(text); }

// 2 - 2 genus = d * (orbifold Euler characteristic of the base).
long genus_from_orbifold_chi(const SeifertSymbol& s) {
  const long d = seifert::order_lcm(s);
  mpq_class chi = 2 - 2 * s.g;
  for (const auto& p : s.pairs) chi -= 1 - mpq_class(1, p.a);
  mpq_class genus = (2 - d * chi) / 2;
  genus.canonicalize();
  REQUIRE(genus.get_den() == 1);
  return genus.get_num().get_si();
}

}  // namespace

TEST_CASE("order and genus of the fiber surface") {
  const auto a = hempel::periodic_class(sym("0; 5/1, 5/1, 5/-2"));
  CHECK(a.order_d == 5);
  CHECK(a.surface_genus == 2);
  const auto b = hempel::periodic_class(sym("0; 7/1, 7/1, 7/-1, 7/-1"));
  CHECK(b.order_d == 7);
  CHECK(b.surface_genus == 6);
  const auto c = hempel::periodic_class(sym("1;"));
  CHECK(c.order_d == 1);
  CHECK(c.surface_genus == 1);
  for (const char* text : {"0; 5/1, 5/1, 5/-2", "0; 7/1, 7/1, 7/-1, 7/-1", "2; 3/1, 3/-1", "0; 2/1, 3/1, 6/-5",
                           "1; 9/2, 9/-2", "3;"}) {
    CHECK(hempel::periodic_class(sym(text)).surface_genus == genus_from_orbifold_chi(sym(text)));
  }
  CHECK_THROWS_AS(hempel::periodic_class(sym("0; 5/1")), Error);
}

TEST_CASE("iterates") {
  CHECK(hempel::iterate(sym("0; 5/1, 5/1, 5/-2"), 1) == sym("0; 5/1, 5/1, 5/-2"));
  CHECK(hempel::iterate(sym("0; 5/1, 5/1, 5/-2"), 2) == sym("0; 5/3, 5/3, 5/-6"));
  CHECK(hempel::iterate(sym("0; 7/1, 7/1, 7/-1, 7/-1"), 2) == sym("0; 7/4, 7/4, 7/-4, 7/-4"));
  CHECK(hempel::k_star(2, 7) == 4);
  CHECK(hempel::k_star(-1, 5) == 4);
  CHECK(hempel::k_star(3, 1) == 1);
  CHECK_THROWS_AS(hempel::iterate(sym("0; 5/1, 5/1, 5/-2"), 5), Error);
  for (const char* text : {"0; 5/1, 5/1, 5/-2", "0; 7/1, 7/1, 7/-1, 7/-1", "0; 2/1, 3/1, 6/-5", "1; 9/2, 9/-2"}) {
    const auto s = sym(text);
    const long d = seifert::order_lcm(s);
    for (long k = 1; k < 2 * d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      const auto back = hempel::iterate(hempel::iterate(s, k), hempel::k_star(k, d));
      CHECK(seifert::same_manifold(back, s));
      CHECK(seifert::euler_number(hempel::iterate(s, k)) == 0);
    }
  }
}

TEST_CASE("trivial pairs") {
  const auto seven = sym("0; 7/1, 7/1, 7/-1, 7/-1");
  CHECK(hempel::is_trivial_pair(seven, 6));
  CHECK_FALSE(hempel::is_trivial_pair(seven, 2));
  CHECK(hempel::is_trivial_pair(sym("0; 5/1, 5/1, 5/-2"), 4));
  CHECK(hempel::is_trivial_pair(seven, -1));
  CHECK(hempel::is_trivial_pair(sym("1;"), 3));
}

TEST_CASE("distinguishable pair of order 7") {
  const auto rep = hempel::report(sym("0; 7/1, 7/1, 7/-1, 7/-1"), 2, 7);
  CHECK(rep.k_star == 4);
  CHECK(rep.symbol_b == sym("0; 7/4, 7/4, 7/-4, 7/-4"));
  CHECK(rep.verdict.kind == VerdictKind::kDistinguishable);
  CHECK(rep.verdict.r == 7);
  CHECK(rep.verdict.s == 1);
  CHECK(hempel::to_string(rep.verdict, 7) == "distinguishable(r=7,s=1)");
  const auto& row = *std::find_if(rep.rows.begin(), rep.rows.end(), [](const auto& x) { return x.r == 7 && x.s == 1; });
  CHECK(*row.value_a == doctest::Approx(86.409).epsilon(1e-4));
  CHECK(*row.value_b == doctest::Approx(8.197).epsilon(1e-4));
  CHECK(*row.value_a / *row.value_b ==
        doctest::Approx(std::pow(std::sin(2 * testing::kPi / 7) / std::sin(testing::kPi / 7), 4)).epsilon(1e-8));
  // Levels below 7 are coprime to d: integers, equal on both sides.
  for (const auto& x : rep.rows) {
    if (x.r < 7) {
      CHECK(x.status == "ok");
      CHECK(x.equal);
      CHECK(x.int_a.has_value());
    }
  }
}

TEST_CASE("closed form ratios for the family (g; (d,1), (d,1), (d,-1), (d,-1))") {
  for (long d : {5L, 7L, 8L, 9L}) {
    for (long g : {0L, 1L}) {
      SeifertSymbol s{g, {{d, 1}, {d, 1}, {d, -1}, {d, -1}}};
      for (long k = 2; k < d - 1; ++k) {
        if (std::gcd(k, d) != 1) continue;
        const auto b = hempel::iterate(s, k);
        const double va = seifert::tv_seifert(s, static_cast<int>(d));
        const double vb = seifert::tv_seifert(b, static_cast<int>(d));
        const double ratio = std::pow(std::sin(testing::kPi * k / d) / std::sin(testing::kPi / d), 4 + 4 * g);
        CHECK(va / vb == doctest::Approx(ratio).epsilon(1e-8));
        CHECK_FALSE(hempel::is_trivial_pair(s, k));
      }
    }
  }
}

TEST_CASE("indistinguishable pair of order 5") {
  const auto rep = hempel::report(sym("0; 5/1, 5/1, 5/-2"), 2, 12);
  CHECK(rep.verdict.kind == VerdictKind::kIndistinguishable);
  CHECK(hempel::to_string(rep.verdict, 12) == "indistinguishable_up_to(12)");
  int ok = 0;
  for (const auto& row : rep.rows) {
    CHECK(row.status == "ok");
    if (row.status != "ok") continue;
    ++ok;
    CHECK(row.equal);
    if (row.r % 5 == 0) {
      CHECK(*row.value_a == 0.0);
      CHECK(*row.value_b == 0.0);
    } else {
      CHECK(row.int_a.has_value());
      CHECK(row.int_a == row.int_b);
    }
  }
  CHECK(ok == static_cast<int>(rep.rows.size()));
}

TEST_CASE("trivial pair has identical rows") {
  const auto rep = hempel::report(sym("0; 7/1, 7/1, 7/-1, 7/-1"), 1, 9);
  CHECK(rep.verdict.kind == VerdictKind::kTrivial);
  CHECK(hempel::to_string(rep.verdict, 9) == "trivial");
  for (const auto& row : rep.rows) {
    if (row.status == "ok") CHECK(*row.value_a == *row.value_b);
  }
}

TEST_CASE("rows without a formula are marked") {
  // d = 6, levels sharing a factor with 6 and no uniform cone order.
  const auto rep = hempel::report(sym("0; 2/1, 3/1, 6/-5"), 5, 8);
  bool saw_out_of_scope = false;
  for (const auto& row : rep.rows) {
    if (std::gcd(row.r, 6) != 1) {
      CHECK(row.status == "out_of_scope");
      CHECK_FALSE(row.value_a.has_value());
      saw_out_of_scope = true;
    }
  }
  CHECK(saw_out_of_scope);
  // r = 10 = 2a with a certificate: only s = 1 has a formula.
  const auto multi = hempel::report(sym("0; 5/1, 5/1, 5/-1, 5/-1"), 2, 10);
  for (const auto& row : multi.rows) {
    if (row.r == 10) CHECK(row.status == (row.s == 1 ? "ok" : "out_of_scope"));
  }
  CHECK_THROWS_AS(hempel::report(sym("0; 5/1, 5/1, 5/-2"), 2, 2), Error);
}

TEST_CASE("csv layout") {
  const auto rep = hempel::report(sym("0; 5/1, 5/1, 5/-2"), 2, 6);
  const auto csv = hempel::to_csv(rep);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,s,refined,value_A,value_B,equal,int_A,int_B,status");
  std::getline(in, line);
  CHECK(line == "3,1,false,1,1,true,1,1,ok");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows + 1 == rep.rows.size());
  CHECK(csv.find("5,1,false,0,0,true,,,ok") != std::string::npos);
}
