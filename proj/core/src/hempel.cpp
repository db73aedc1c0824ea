#include "quantum3/hempel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "quantum3/cyclo.hpp"
#include "quantum3/error.hpp"

namespace quantum3::hempel {

namespace {

struct Cell {
  std::optional<double> value;
  std::string route;
};

bool uniform_hypotheses(const SeifertSymbol& sym) {
  try {
    seifert::check_uniform_hypotheses(sym);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kHypothesis) return false;
    throw;
  }
}

bool all_orders_odd(const SeifertSymbol& sym) {
  return std::all_of(sym.pairs.begin(), sym.pairs.end(), [](const auto& p) { return p.a % 2 == 1; });
}

Cell evaluate(const SeifertSymbol& sym, int r, long s, bool refined) {
  const auto a = seifert::uniform_order(sym);
  if (a && r % *a == 0 && uniform_hypotheses(sym)) {
    if (!seifert::check_unit_criterion(sym)) return {0.0, "vanishing"};
    if (r == *a) return {seifert::tv_closed_form(sym, s, refined).value, "closed_form"};
    if (!refined && s == 1) return {seifert::tv_seifert(sym, r), "hansen"};
    return {std::nullopt, "no formula at a proper multiple of a"};
  }
  if (std::gcd(static_cast<long>(r), seifert::order_lcm(sym)) == 1) {
    if (refined) return {seifert::tv_prime_seifert(sym, r, s), "hansen"};
    if (s == 1) return {seifert::tv_seifert(sym, r), "hansen"};
    return {std::nullopt, "hansen covers s = 1 only"};
  }
  return {std::nullopt, "r neither a multiple of a uniform a nor coprime to d"};
}

std::string format_value(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", *v == 0.0 ? 0.0 : *v);
  return buf;
}

}  // namespace

PeriodicClass periodic_class(const SeifertSymbol& sym) {
  if (seifert::euler_number(sym) != 0) {
    fail(ErrorKind::kPrecondition, "a periodic mapping torus needs Euler number 0");
  }
  PeriodicClass out;
  out.symbol = sym;
  out.order_d = seifert::order_lcm(sym);
  const long d = out.order_d;
  mpq_class genus = 1 + mpq_class((sym.g - 1) * d);
  for (const auto& p : sym.pairs) genus += (1 - mpq_class(1, p.a)) * mpq_class(d, 2);
  genus.canonicalize();
  if (genus.get_den() != 1 || genus < 0) {
    fail(ErrorKind::kNumerical, "surface genus " + genus.get_str() + " is not a non-negative integer");
  }
  out.surface_genus = genus.get_num().get_si();
  return out;
}

long k_star(long k, long d) {
  require(d >= 1, "order must be positive");
  require(std::gcd(k, d) == 1, "k must be coprime to the order d");
  return d == 1 ? 1 : seifert::inverse_mod(k, d);
}

SeifertSymbol iterate(const SeifertSymbol& sym, long k) {
  seifert::validate(sym);
  const long ks = k_star(k, seifert::order_lcm(sym));
  SeifertSymbol out = sym;
  for (auto& p : out.pairs) p.b *= ks;
  return out;
}

bool is_trivial_pair(const SeifertSymbol& sym, long k) {
  const long d = seifert::order_lcm(sym);
  k_star(k, d);
  const long m = ((k % d) + d) % d;
  return m == 1 % d || m == d - 1;
}

HempelReport report(const SeifertSymbol& sym, long k, int r_max, double tol, double integer_tol) {
  require(r_max >= 3, "r_max must be at least 3");
  require(tol > 0 && integer_tol > 0, "tolerances must be positive");
  const PeriodicClass pc = periodic_class(sym);
  HempelReport rep;
  rep.symbol_a = sym;
  rep.symbol_b = iterate(sym, k);
  rep.k = k;
  rep.k_star = k_star(k, pc.order_d);
  rep.order_d = pc.order_d;
  rep.r_max = r_max;
  rep.tol = tol;

  const auto a = seifert::uniform_order(sym);
  const bool closed_form_family = a && uniform_hypotheses(sym);
  for (int r = 3; r <= r_max; ++r) {
    std::vector<std::pair<long, bool>> requests;
    bool integrality = false;
    if (closed_form_family && r % *a == 0) {
      for (long s = 1; s < r; ++s) {
        if (std::gcd(s, static_cast<long>(r)) == 1) requests.emplace_back(s, false);
      }
      if (r % 2 == 1) {
        for (long s = 2; s < r; s += 2) {
          if (std::gcd(s, static_cast<long>(r)) == 1) requests.emplace_back(s, true);
        }
      }
    } else if (std::gcd(static_cast<long>(r), pc.order_d) == 1) {
      integrality = true;
      requests.emplace_back(1, false);
      if (r % 2 == 1 && all_orders_odd(sym)) requests.emplace_back(r - 1, true);
    } else {
      requests.emplace_back(1, false);
    }
    for (const auto& [s, refined] : requests) {
      ReportRow row;
      row.r = r;
      row.s = s;
      row.refined = refined;
      const Cell ca = evaluate(rep.symbol_a, r, s, refined);
      const Cell cb = evaluate(rep.symbol_b, r, s, refined);
      row.value_a = ca.value;
      row.value_b = cb.value;
      row.route = ca.route == cb.route ? ca.route : ca.route + "/" + cb.route;
      if (ca.value && cb.value) {
        row.status = "ok";
        const double x = *ca.value, y = *cb.value;
        row.equal = std::abs(x - y) < tol * (1.0 + std::max(std::abs(x), std::abs(y)));
        if (integrality) {
          row.int_a = cyclo::is_near_integer({x, 0.0}, integer_tol);
          row.int_b = cyclo::is_near_integer({y, 0.0}, integer_tol);
        }
      } else {
        row.status = "out_of_scope";
      }
      rep.rows.push_back(std::move(row));
    }
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const ReportRow& x, const ReportRow& y) {
    return std::tie(x.r, x.s, x.refined) < std::tie(y.r, y.s, y.refined);
  });

  if (is_trivial_pair(sym, k)) {
    rep.verdict = {VerdictKind::kTrivial, 0, 0, false};
  } else {
    rep.verdict = {VerdictKind::kIndistinguishable, r_max, 0, false};
    for (const auto& row : rep.rows) {
      if (row.status == "ok" && !row.equal) {
        rep.verdict = {VerdictKind::kDistinguishable, row.r, row.s, row.refined};
        break;
      }
    }
  }
  return rep;
}

std::string to_string(const Verdict& v, int r_max) {
  switch (v.kind) {
    case VerdictKind::kTrivial:
      return "trivial";
    case VerdictKind::kDistinguishable:
      return "distinguishable(r=" + std::to_string(v.r) + ",s=" + std::to_string(v.s) +
             (v.refined ? ",refined" : "") + ")";
    case VerdictKind::kIndistinguishable:
      break;
  }
  return "indistinguishable_up_to(" + std::to_string(r_max) + ")";
}

std::string to_csv(const HempelReport& rep) {
  std::ostringstream os;
  os << "r,s,refined,value_A,value_B,equal,int_A,int_B,status\n";
  auto opt_int = [](const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& row : rep.rows) {
    os << row.r << ',' << row.s << ',' << (row.refined ? "true" : "false") << ',' << format_value(row.value_a)
       << ',' << format_value(row.value_b) << ',' << (row.status == "ok" ? (row.equal ? "true" : "false") : "")
       << ',' << opt_int(row.int_a) << ',' << opt_int(row.int_b) << ',' << row.status << '\n';
  }
  return os.str();
}

}  // namespace quantum3::hempel
