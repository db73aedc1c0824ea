#include "quantum3/seifert.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "quantum3/error.hpp"

namespace quantum3::seifert {

namespace {

using i128 = __int128;

long mod(long x, long m) {
  const long r = x % m;
  return r < 0 ? r + m : r;
}

i128 mod128(i128 x, i128 m) {
  const i128 r = x % m;
  return r < 0 ? r + m : r;
}

// exp(i * pi * num / den), with num reduced into (-den, den] first.
std::complex<double> unit_pi(i128 num, i128 den) {
  num = mod128(num, 2 * den);
  if (num > den) num -= 2 * den;
  const double angle = std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

// exp(i * pi * x) for exact rational x, x reduced into (-1, 1] first.
std::complex<double> unit_pi(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), mpz_class(2 * x.get_den()).get_mpz_t());
  mpq_class frac = x - mpq_class(2 * q);  // in [0, 2)
  if (frac > 1) frac -= 2;
  const double angle = std::numbers::pi * frac.get_d();
  return {std::cos(angle), std::sin(angle)};
}

double sin_pi(long num, long den) {
  // sin(pi * num / den) with num reduced mod 2*den.
  const long n = mod(num, 2 * den);
  return std::sin(std::numbers::pi * static_cast<double>(n) / static_cast<double>(den));
}

std::vector<long> default_inverses(const SeifertSymbol& sym) {
  std::vector<long> out;
  out.reserve(sym.pairs.size());
  for (const auto& p : sym.pairs) out.push_back(inverse_mod(p.b, p.a));
  return out;
}

void check_inverses(const SeifertSymbol& sym, const std::vector<long>& b_star) {
  require(b_star.size() == sym.pairs.size(), "one congruence inverse per pair is needed");
  for (std::size_t j = 0; j < b_star.size(); ++j) {
    const auto& p = sym.pairs[j];
    require(mod(static_cast<long>(mod128(static_cast<i128>(p.b) * b_star[j], p.a)), p.a) == mod(1, p.a),
            "b* is not an inverse of b modulo a");
  }
}

double prefactor(const SeifertSymbol& sym, int r) {
  const auto n = static_cast<double>(sym.pairs.size());
  const auto g = static_cast<double>(sym.g);
  double sqrt_prod = 1.0;
  for (const auto& p : sym.pairs) sqrt_prod *= std::sqrt(static_cast<double>(p.a));
  return std::pow(static_cast<double>(r), g - 1.0) / (std::pow(2.0, n + g - 1.0) * sqrt_prod);
}

void check_level(int r) { require(r >= 3, "level r must be at least 3"); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long parse_long(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::kParse, "bad " + std::string(what) + " '" + std::string(s) + "' in Seifert symbol");
  }
  return value;
}

}  // namespace

// -- symbols ----------------------------------------------------------------

SeifertSymbol parse_symbol(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) fail(ErrorKind::kParse, "Seifert symbol needs 'g; a/b, ...'");
  SeifertSymbol sym;
  sym.g = parse_long(text.substr(0, semi), "genus");
  std::string_view rest = trim(text.substr(semi + 1));
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    const auto slash = item.find('/');
    if (slash == std::string_view::npos) {
      fail(ErrorKind::kParse, "fiber pair '" + std::string(item) + "' is not of the form a/b");
    }
    sym.pairs.push_back({parse_long(item.substr(0, slash), "cone order"), parse_long(item.substr(slash + 1), "slope")});
    if (comma == std::string_view::npos) break;
    rest = trim(rest.substr(comma + 1));
    if (rest.empty()) fail(ErrorKind::kParse, "trailing comma in Seifert symbol");
  }
  validate(sym);
  return sym;
}

std::string to_string(const SeifertSymbol& sym) {
  std::ostringstream os;
  os << sym.g << ";";
  for (std::size_t j = 0; j < sym.pairs.size(); ++j) {
    os << (j == 0 ? " " : ", ") << sym.pairs[j].a << "/" << sym.pairs[j].b;
  }
  return os.str();
}

void validate(const SeifertSymbol& sym) {
  require(sym.g >= 0, "base genus must be non-negative");
  for (const auto& p : sym.pairs) {
    require(p.a >= 1, "cone orders must be positive");
    require(std::gcd(p.a, p.b) == 1,
            "fiber pair " + std::to_string(p.a) + "/" + std::to_string(p.b) + " is not coprime");
  }
}

mpq_class euler_number(const SeifertSymbol& sym) {
  validate(sym);
  mpq_class e = 0;
  for (const auto& p : sym.pairs) e -= mpq_class(p.b, p.a);
  e.canonicalize();
  return e;
}

long order_lcm(const SeifertSymbol& sym) {
  long d = 1;
  for (const auto& p : sym.pairs) d = std::lcm(d, p.a);
  return d;
}

std::optional<long> uniform_order(const SeifertSymbol& sym) {
  if (sym.pairs.empty()) return std::nullopt;
  const long a = sym.pairs.front().a;
  for (const auto& p : sym.pairs) {
    if (p.a != a) return std::nullopt;
  }
  return a;
}

SeifertSymbol canonical_form(const SeifertSymbol& sym) {
  validate(sym);
  SeifertSymbol out;
  out.g = sym.g;
  long e = 0;
  for (const auto& p : sym.pairs) {
    if (p.a == 1) {
      e += p.b;
      continue;
    }
    const long reduced = mod(p.b, p.a);
    e += (p.b - reduced) / p.a;
    out.pairs.push_back({p.a, reduced});
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  if (e != 0) out.pairs.push_back({1, e});
  return out;
}

SeifertSymbol negate(const SeifertSymbol& sym) {
  SeifertSymbol out = sym;
  for (auto& p : out.pairs) p.b = -p.b;
  return out;
}

bool same_manifold(const SeifertSymbol& lhs, const SeifertSymbol& rhs) {
  const auto a = canonical_form(lhs);
  return a == canonical_form(rhs) || a == canonical_form(negate(rhs));
}

// -- number theory ----------------------------------------------------------

long inverse_mod(long b, long m) {
  require(m >= 1, "modulus must be positive");
  require(std::gcd(b, m) == 1, "no inverse: " + std::to_string(b) + " is not coprime to " + std::to_string(m));
  if (m == 1) return 0;
  // Extended Euclid on (b mod m, m).
  long old_r = mod(b, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return mod(old_s, m);
}

mpq_class dedekind_sum(long b, long a) {
  require(a >= 1, "Dedekind sum needs a >= 1");
  require(std::gcd(a, b) == 1, "Dedekind sum needs coprime arguments");
  // s(b, a) depends on b mod a; reciprocity
  // s(b, a) + s(a, b) = -1/4 + (a/b + b/a + 1/(ab)) / 12 for coprime a, b > 0.
  mpq_class total = 0;
  int sign = 1;
  long x = mod(b, a);
  long y = a;
  while (y > 1 && x != 0) {
    const mpq_class rec = mpq_class(-1, 4) + (mpq_class(y, x) + mpq_class(x, y) + mpq_class(1, x * y)) / 12;
    total += sign * rec;
    sign = -sign;
    const long next = mod(y, x);
    y = x;
    x = next;
  }
  total.canonicalize();
  return total;
}

// -- Hansen's formula -------------------------------------------------------

std::complex<double> hansen_u(const SeifertSymbol& sym, int r) {
  check_level(r);
  const mpq_class e = euler_number(sym);
  const int sgn = ::sgn(e);
  mpq_class dedekind_total = 0;
  for (const auto& p : sym.pairs) dedekind_total += dedekind_sum(p.b, p.a);
  mpq_class x = sgn * (mpq_class(3, 2 * r) - mpq_class(3, 4)) + (e + 12 * dedekind_total) / (2 * r);
  x.canonicalize();
  const std::complex<double> u = unit_pi(x);
  return sym.pairs.size() % 2 == 0 ? u : -u;
}

std::complex<double> hansen_z(const SeifertSymbol& sym, int r) { return hansen_z(sym, r, default_inverses(sym)); }

std::complex<double> hansen_z(const SeifertSymbol& sym, int r, const std::vector<long>& b_star) {
  check_level(r);
  validate(sym);
  check_inverses(sym, b_star);
  const mpq_class e = euler_number(sym);
  const long sin_power = static_cast<long>(sym.pairs.size()) + 2 * sym.g - 2;
  std::complex<double> z{0.0, 0.0};
  for (long gamma = 1; gamma <= r - 1; ++gamma) {
    // exp(i pi gamma^2 E / (2r)), angle reduced exactly.
    mpz_class num = mpz_class(gamma * gamma) * e.get_num();
    mpz_class den = mpz_class(2 * r) * e.get_den();
    mpz_class reduced;
    mpz_fdiv_r(reduced.get_mpz_t(), num.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    std::complex<double> term = unit_pi(mpq_class(reduced, den));
    term /= std::pow(sin_pi(gamma, r), static_cast<double>(sin_power));
    for (std::size_t j = 0; j < sym.pairs.size(); ++j) {
      const i128 a = sym.pairs[j].a;
      const i128 bs = b_star[j];
      std::complex<double> factor{0.0, 0.0};
      for (int mu : {1, -1}) {
        for (i128 m = 0; m < a; ++m) {
          // -(2rm + mu) gamma / (a r) - 2 (r m^2 + mu m) b* / a, over pi.
          const i128 numer = -(2 * r * m + mu) * gamma - 2 * static_cast<i128>(r) * (r * m * m + mu * m) * bs;
          factor += static_cast<double>(mu) * unit_pi(numer, a * r);
        }
      }
      term *= factor;
    }
    z += term;
  }
  return z;
}

std::complex<double> hansen_z_simplified(const SeifertSymbol& sym, int r) {
  check_level(r);
  validate(sym);
  for (const auto& p : sym.pairs) {
    if (r % p.a != 0) fail(ErrorKind::kHypothesis, "simplified Z_r needs every cone order to divide r");
  }
  if (euler_number(sym) != 0) fail(ErrorKind::kHypothesis, "simplified Z_r needs Euler number 0");
  const std::size_t n = sym.pairs.size();
  if (n > 20) fail(ErrorKind::kOutOfScope, "simplified Z_r enumerates 2^n sign vectors; n too large");
  const auto b_star = default_inverses(sym);
  const long sin_power = static_cast<long>(n) + 2 * sym.g - 2;
  std::complex<double> z{0.0, 0.0};
  for (long gamma = 1; gamma <= r - 1; ++gamma) {
    const double denom = std::pow(sin_pi(gamma, r), static_cast<double>(sin_power));
    for (std::uint32_t signs = 0; signs < (1U << n); ++signs) {
      // exp(-i pi gamma sum_j mu_j / (a_j r)) * prod mu_j * prod_j sum_m ...
      std::complex<double> term{1.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        const long mu = (signs >> j) & 1U ? -1 : 1;
        const long a = sym.pairs[j].a;
        term *= static_cast<double>(mu) * unit_pi(-static_cast<i128>(gamma) * mu, static_cast<i128>(a) * r);
        std::complex<double> geometric{0.0, 0.0};
        for (long m = 0; m < a; ++m) {
          geometric += unit_pi(-2 * (static_cast<i128>(gamma) + static_cast<i128>(b_star[j]) * mu) * m, a);
        }
        term *= geometric;
      }
      z += term / denom;
    }
  }
  return z;
}

std::complex<double> hansen_ratio(const SeifertSymbol& sym, int r) {
  return hansen_ratio(sym, r, default_inverses(sym));
}

std::complex<double> hansen_ratio(const SeifertSymbol& sym, int r, const std::vector<long>& b_star) {
  return prefactor(sym, r) * hansen_u(sym, r) * hansen_z(sym, r, b_star);
}

double tv_seifert(const SeifertSymbol& sym, int r) { return std::norm(hansen_ratio(sym, r)); }

// -- closed forms -----------------------------------------------------------

bool UnitCertificate::verify(const SeifertSymbol& sym, long a) const {
  if (a < 2 || std::gcd(b_star, a) != 1 || nu.size() != sym.pairs.size()) return false;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] != 1 && nu[j] != -1) return false;
    if (mod(static_cast<long>(mod128(static_cast<i128>(b_star) * sym.pairs[j].b, a)) - nu[j], a) != 0) return false;
  }
  return true;
}

long check_uniform_hypotheses(const SeifertSymbol& sym, long a) {
  validate(sym);
  if (a == 0) {
    const auto u = uniform_order(sym);
    if (!u) {
      fail(ErrorKind::kHypothesis, sym.pairs.empty() ? "no cone order: give a explicitly for an empty pair list"
                                                     : "cone orders are not all equal");
    }
    a = *u;
  }
  if (a < 3) fail(ErrorKind::kHypothesis, "uniform cone order must be at least 3");
  for (const auto& p : sym.pairs) {
    if (p.a != a) fail(ErrorKind::kHypothesis, "cone orders are not all equal to a");
    if (std::gcd(p.b, a) != 1) fail(ErrorKind::kHypothesis, "slopes must be coprime to a");
  }
  if (static_cast<long>(sym.pairs.size()) >= a) fail(ErrorKind::kHypothesis, "needs fewer than a exceptional fibers");
  long sum = 0;
  for (const auto& p : sym.pairs) sum += p.b;
  if (sum != 0) fail(ErrorKind::kHypothesis, "slopes must sum to 0");
  return a;
}

std::optional<UnitCertificate> check_unit_criterion(const SeifertSymbol& sym, long a) {
  a = check_uniform_hypotheses(sym, a);
  for (long b_star = 1; b_star < a; ++b_star) {
    if (std::gcd(b_star, a) != 1) continue;
    UnitCertificate cert{b_star, {}};
    bool ok = true;
    for (const auto& p : sym.pairs) {
      const long x = mod(b_star * mod(p.b, a), a);
      if (x == 1) {
        cert.nu.push_back(1);
      } else if (x == a - 1) {
        cert.nu.push_back(-1);
      } else {
        ok = false;
        break;
      }
    }
    if (ok) return cert;
  }
  return std::nullopt;
}

bool vanishing_criterion(const SeifertSymbol& sym, long a) {
  a = check_uniform_hypotheses(sym, a);
  if (sym.pairs.empty()) return false;
  // mu_1 may be fixed to +1: negating every mu preserves the congruences.
  const long target = inverse_mod(sym.pairs.front().b, a);
  for (std::size_t j = 1; j < sym.pairs.size(); ++j) {
    const long inv = inverse_mod(sym.pairs[j].b, a);
    if (inv != target && mod(-inv, a) != target) return true;
  }
  return false;
}

double closed_form_value(long a, long n, long g, long b_star, long s, bool refined) {
  require(a >= 3 && n >= 0 && g >= 0, "closed form needs a >= 3, n >= 0, g >= 0");
  require(std::gcd(s, a) == 1 && std::gcd(b_star, a) == 1, "s and b* must be coprime to a");
  if (refined) require(a % 2 == 1 && s % 2 == 0, "the refined closed form needs a odd and s even");
  const double two_power = static_cast<double>(refined ? 2 * n + 4 * g - 4 : 2 * n + 2 * g - 4);
  const double sin_b = sin_pi(mod(b_star * s, 2 * a), a);
  return std::pow(static_cast<double>(a), static_cast<double>(n + 2 * g - 2)) / std::pow(2.0, two_power) /
         std::pow(sin_b, static_cast<double>(2 * n + 4 * g - 4));
}

ClosedForm tv_closed_form(const SeifertSymbol& sym, long s, bool refined) {
  const long a = check_uniform_hypotheses(sym);
  require(std::gcd(s, a) == 1, "s must be coprime to a");
  if (refined) require(a % 2 == 1 && s % 2 == 0, "the refined closed form needs a odd and s even");
  ClosedForm out;
  out.certificate = check_unit_criterion(sym, a);
  if (!out.certificate) {
    out.vanishing = true;
    return out;
  }
  out.value = closed_form_value(a, static_cast<long>(sym.pairs.size()), sym.g, out.certificate->b_star, s, refined);
  return out;
}

std::pair<double, double> tv3_seifert(const SeifertSymbol& sym) {
  validate(sym);
  for (const auto& p : sym.pairs) {
    if (p.a % 2 == 0) fail(ErrorKind::kHypothesis, "level-3 values need odd cone orders");
  }
  if (euler_number(sym) != 0) fail(ErrorKind::kHypothesis, "level-3 values need Euler number 0");
  const double v = std::pow(4.0, static_cast<double>(sym.g));
  return {v, v};
}

double tv_prime_seifert(const SeifertSymbol& sym, int r, long s) {
  require(r >= 3 && r % 2 == 1, "the SO(3) invariant needs odd r >= 3");
  require(s % 2 == 0 && std::gcd(s, static_cast<long>(r)) == 1, "the SO(3) invariant needs even s coprime to r");
  const double tv32 = tv3_seifert(sym).second;
  const auto a = uniform_order(sym);
  if (a && r % *a == 0) {
    const auto cert = check_unit_criterion(sym, *a);
    if (!cert) return 0.0;
    if (r == *a) return tv_closed_form(sym, s, true).value;
    fail(ErrorKind::kOutOfScope, "no closed form for TV' at a proper multiple of a with a certificate");
  }
  if (std::gcd(static_cast<long>(r), order_lcm(sym)) == 1) return tv_seifert(sym, r) / tv32;
  fail(ErrorKind::kOutOfScope, "TV' at this level is neither a multiple of a uniform a nor coprime to the order");
}

}  // namespace quantum3::seifert
