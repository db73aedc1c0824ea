#pragma once

// Seifert fiber spaces with orientable base and fibration: symbols and
// their moves, Dedekind sums, Hansen's formula for tau_r, and the closed
// forms for TV at levels divisible by a uniform cone order.

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quantum3::seifert {

struct FiberPair {
  long a = 1;  // cone order, >= 1
  long b = 0;  // gcd(a, b) = 1

  friend bool operator==(const FiberPair&, const FiberPair&) = default;
  friend auto operator<=>(const FiberPair&, const FiberPair&) = default;
};

/// (g; (a_1,b_1), ..., (a_n,b_n)).
struct SeifertSymbol {
  long g = 0;
  std::vector<FiberPair> pairs;

  friend bool operator==(const SeifertSymbol&, const SeifertSymbol&) = default;
};

/// Parses "g; a1/b1, a2/b2, ..." (pairs optional, e.g. "1;"). Throws
/// Error(kParse) on malformed text and Error(kPrecondition) on invalid data.
SeifertSymbol parse_symbol(std::string_view text);
std::string to_string(const SeifertSymbol& sym);

/// g >= 0, a_j >= 1, gcd(a_j, b_j) = 1.
void validate(const SeifertSymbol& sym);

/// E = -sum b_j / a_j.
mpq_class euler_number(const SeifertSymbol& sym);

/// lcm of the cone orders (1 for no pairs).
long order_lcm(const SeifertSymbol& sym);

/// The common a_j if all pairs share one, else nullopt (also for n = 0).
std::optional<long> uniform_order(const SeifertSymbol& sym);

/// Normal form under reordering, (1,0) insertion and b-transfer: every
/// b_j with a_j > 1 reduced into [0, a_j), the integer overflow collected
/// into one trailing (1, e) pair (dropped when e = 0), pairs sorted.
SeifertSymbol canonical_form(const SeifertSymbol& sym);

/// All b_j negated (orientation reversal).
SeifertSymbol negate(const SeifertSymbol& sym);

/// Related by the symbol moves, including global negation.
bool same_manifold(const SeifertSymbol& lhs, const SeifertSymbol& rhs);

// -- number theory ----------------------------------------------------------

/// Least positive x with b*x = 1 mod m (x = 0 when m = 1). Throws unless
/// gcd(b, m) = 1.
long inverse_mod(long b, long m);

/// Dedekind sum s(b, a) by Euclidean reciprocity, exact.
mpq_class dedekind_sum(long b, long a);

// -- Hansen's formula -------------------------------------------------------

/// Framing factor U_r, with sgn(0) = 0.
std::complex<double> hansen_u(const SeifertSymbol& sym, int r);

/// The sum Z_r over (gamma, mu, m). For fixed gamma the (mu_j, m_j) sums
/// are independent, so Z_r is evaluated as a sum over gamma of products of
/// per-fiber sums. `b_star` holds one inverse of b_j mod a_j per pair;
/// by default the least positive ones.
std::complex<double> hansen_z(const SeifertSymbol& sym, int r);
std::complex<double> hansen_z(const SeifertSymbol& sym, int r, const std::vector<long>& b_star);

/// Z_r with the r*m^2 and gamma^2 E terms dropped and the m_j sums taken
/// as geometric sums; valid when every a_j divides r and E = 0 (throws
/// Error(kHypothesis) otherwise).
std::complex<double> hansen_z_simplified(const SeifertSymbol& sym, int r);

/// tau_r(M) / tau_r(S^2 x S^1) = r^{g-1} U_r Z_r / (2^{n+g-1} sqrt(prod a_j)).
/// The orientation is the one induced by the base and fibers; only
/// |ratio|^2 is orientation independent.
std::complex<double> hansen_ratio(const SeifertSymbol& sym, int r);
std::complex<double> hansen_ratio(const SeifertSymbol& sym, int r, const std::vector<long>& b_star);

/// TV_{r,1}(M) = |hansen_ratio|^2. Other s are not covered by this route.
double tv_seifert(const SeifertSymbol& sym, int r);

// -- closed forms for a uniform cone order ----------------------------------

struct UnitCertificate {
  long b_star = 1;
  std::vector<int> nu;  // +-1 per pair

  /// b_star coprime to a and b_star * b_j = nu_j mod a for every j.
  bool verify(const SeifertSymbol& sym, long a) const;
};

/// Checks a >= 3, all a_j = a, b_j coprime to a, 0 <= n < a and
/// sum b_j = 0; throws Error(kHypothesis) naming the failed condition.
/// `a` may be given explicitly, which is required when n = 0.
long check_uniform_hypotheses(const SeifertSymbol& sym, long a = 0);

/// First b* in 1..a-1 (coprime to a) with b* b_j = +-1 mod a for all j.
std::optional<UnitCertificate> check_unit_criterion(const SeifertSymbol& sym, long a = 0);

/// No mu in {+-1}^n with b*_1 mu_1 = ... = b*_n mu_n mod a, where b*_j
/// inverts b_j mod a. Then Z_r = 0 for every r divisible by a.
bool vanishing_criterion(const SeifertSymbol& sym, long a = 0);

/// a^{n+2g-2} / 2^{2n+2g-4} / sin^{2n+4g-4}(pi b* s / a); the refined
/// (TV') form has 2^{2n+4g-4} in the denominator.
double closed_form_value(long a, long n, long g, long b_star, long s, bool refined);

struct ClosedForm {
  double value = 0.0;
  bool vanishing = false;
  std::optional<UnitCertificate> certificate;
};

/// TV_{a,s} (or TV'_{a,s} when refined: a odd, s even) from the uniform
/// cone order closed forms; vanishing when no certificate exists, in which
/// case the value 0 holds at every level divisible by a. Needs n >= 1 so
/// that a is determined by the symbol.
ClosedForm tv_closed_form(const SeifertSymbol& sym, long s, bool refined);

/// (TV_{3,1}, TV_{3,2}) = (4^g, 4^g) for odd cone orders and E = 0.
std::pair<double, double> tv3_seifert(const SeifertSymbol& sym);

/// TV'_{r,s} for odd r, even s, odd cone orders and E = 0, as
/// TV_{r,s} / TV_{3,2}. Uses the closed form when the uniform hypotheses
/// hold and a divides r (only r = a, or any such r when vanishing), and
/// TV_{r,1} / 4^g when gcd(r, lcm a_j) = 1 (there TV_{r,s} is rational,
/// hence the same for all s). Other levels throw Error(kOutOfScope).
double tv_prime_seifert(const SeifertSymbol& sym, int r, long s);

}  // namespace quantum3::seifert
