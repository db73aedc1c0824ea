#pragma once

// Periodic mapping classes through their mapping-torus Seifert symbols,
// iterates f -> f^k, and TV comparison reports for the pair (f, f^k).

#include <optional>
#include <string>
#include <vector>

#include "quantum3/seifert.hpp"

namespace quantum3::hempel {

using seifert::SeifertSymbol;

struct PeriodicClass {
  SeifertSymbol symbol;
  long order_d = 1;
  long surface_genus = 0;
};

/// Order d = lcm(a_j) and genus 1 + (g-1)d + sum_j (1 - 1/a_j) d/2 of the
/// fiber surface. Requires Euler number 0; throws if the genus is not a
/// non-negative integer.
PeriodicClass periodic_class(const SeifertSymbol& sym);

/// Least positive k* with k k* = 1 mod d (1 when d = 1).
long k_star(long k, long d);

/// Symbol of the mapping torus of f^k: (g; (a_j, b_j k*)).
SeifertSymbol iterate(const SeifertSymbol& sym, long k);

/// k = +-1 mod d.
bool is_trivial_pair(const SeifertSymbol& sym, long k);

struct ReportRow {
  int r = 0;
  long s = 0;
  bool refined = false;
  std::optional<double> value_a;
  std::optional<double> value_b;
  bool equal = false;
  std::optional<long long> int_a;  // set on rows with gcd(r, d) = 1
  std::optional<long long> int_b;
  std::string status;  // "ok" or "out_of_scope"
  std::string route;   // "closed_form", "vanishing", "hansen", or why not computed
};

enum class VerdictKind { kTrivial, kDistinguishable, kIndistinguishable };

struct Verdict {
  VerdictKind kind = VerdictKind::kIndistinguishable;
  int r = 0;  // first distinguishing row, or r_max
  long s = 0;
  bool refined = false;
};

struct HempelReport {
  SeifertSymbol symbol_a;
  SeifertSymbol symbol_b;
  long k = 1;
  long k_star = 1;
  long order_d = 1;
  int r_max = 3;
  double tol = 1e-8;
  std::vector<ReportRow> rows;  // sorted by (r, s, refined)
  Verdict verdict;
};

/// Computes TV rows for 3 <= r <= r_max:
///  - uniform cone order a with a | r under the closed-form hypotheses:
///    every s coprime to r (TV' too for odd r and even s) from the closed
///    form at r = a or from vanishing; at r = ka with a certificate only
///    s = 1 through Hansen's formula, other s out of scope;
///  - gcd(r, d) = 1: s = 1 through Hansen's formula, plus TV' at s = r-1
///    for odd r and odd cone orders, with near-integer flags;
///  - anything else: one out_of_scope row.
/// Values are equal when |A - B| < tol (1 + max(|A|, |B|)).
HempelReport report(const SeifertSymbol& sym, long k, int r_max, double tol = 1e-8,
                    double integer_tol = 1e-6);

std::string to_string(const Verdict& verdict, int r_max);

/// Header r,s,refined,value_A,value_B,equal,int_A,int_B,status; 12
/// significant digits.
std::string to_csv(const HempelReport& report);

}  // namespace quantum3::hempel
