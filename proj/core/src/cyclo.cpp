#include "quantum3/cyclo.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "quantum3/error.hpp"

namespace quantum3::cyclo {

namespace {

using Poly = std::vector<long>;

// Exact division of integer polynomials; the divisor must be monic.
Poly divide_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    quot[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return quot;
}

Poly cyclotomic(int n) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic(d));
  }
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// RAII wrapper for an MPFR scalar.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

Branch branch_for(int r, long s) {
  require(std::gcd(s, static_cast<long>(r)) == 1,
          "evaluation exponent s=" + std::to_string(s) + " must be coprime to r=" + std::to_string(r));
  return mod(s, 2) == 1 ? Branch::kOdd : Branch::kEven;
}

Field::Field(int r, Branch branch) : r_(r), branch_(branch) {
  const int n = order();
  phi_ = cyclotomic(n);
  degree_ = static_cast<int>(phi_.size()) - 1;
  powers_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<long> v(static_cast<std::size_t>(degree_), 0);
    if (k < degree_) {
      v[k] = 1;
    } else {
      const auto& prev = powers_[k - 1];
      const long top = prev[degree_ - 1];
      for (int i = degree_ - 1; i > 0; --i) v[i] = prev[i - 1];
      v[0] = 0;
      for (int i = 0; i < degree_; ++i) v[i] -= top * phi_[i];
    }
    powers_[k] = std::move(v);
  }
}

std::shared_ptr<const Field> Field::of(int r, Branch branch) {
  require(r >= 2, "cyclotomic level r must be >= 2, got " + std::to_string(r));
  if (branch == Branch::kEven) require(r % 2 == 1, "the even branch needs odd r");
  static std::map<std::pair<int, Branch>, std::shared_ptr<const Field>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[{r, branch}];
  if (!slot) slot = std::shared_ptr<const Field>(new Field(r, branch));
  return slot;
}

const std::vector<long>& Field::power(int k) const {
  return powers_.at(static_cast<std::size_t>(mod(k, order())));
}

CycloNum::CycloNum(int r, Branch branch)
    : field_(Field::of(r, branch)),
      num_(static_cast<std::size_t>(field_->degree())),
      den_(1) {}

CycloNum::CycloNum(int r, const mpq_class& value, Branch branch) : CycloNum(r, branch) {
  num_[0] = value.get_num();
  den_ = value.get_den();
}

CycloNum CycloNum::zeta_power(int r, long k, Branch branch) {
  CycloNum out(r, branch);
  const auto& p = out.field_->power(static_cast<int>(mod(k, out.order())));
  for (std::size_t i = 0; i < p.size(); ++i) out.num_[i] = p[i];
  return out;
}

std::vector<mpq_class> CycloNum::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (const auto& n : num_) {
    mpq_class q(n, den_);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

bool CycloNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& n) { return n == 0; });
}

bool CycloNum::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& n) { return n == 0; });
}

std::size_t CycloNum::bit_size() const {
  std::size_t bits = mpz_sizeinbase(den_.get_mpz_t(), 2);
  for (const auto& n : num_) bits = std::max(bits, mpz_sizeinbase(n.get_mpz_t(), 2));
  return bits;
}

void CycloNum::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& n : num_) n = -n;
  }
  mpz_class g = den_;
  for (const auto& n : num_) {
    if (g == 1) break;
    if (n != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (auto& n : num_) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
  }
}

CycloNum& CycloNum::operator+=(const CycloNum& other) {
  require(field_ == other.field_, "cyclotomic levels differ in addition");
  if (den_ == other.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += other.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) {
      num_[i] *= other.den_;
      num_[i] += other.num_[i] * den_;
    }
    den_ *= other.den_;
  }
  normalize();
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& other) { return *this += -other; }

CycloNum CycloNum::operator-() const {
  CycloNum out = *this;
  for (auto& n : out.num_) n = -n;
  return out;
}

CycloNum& CycloNum::operator*=(const CycloNum& other) {
  require(field_ == other.field_, "cyclotomic levels differ in multiplication");
  const int d = field_->degree();
  std::vector<mpz_class> conv(static_cast<std::size_t>(2 * d - 1));
  for (int i = 0; i < d; ++i) {
    if (num_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (other.num_[j] == 0) continue;
      mpz_addmul(conv[i + j].get_mpz_t(), num_[i].get_mpz_t(), other.num_[j].get_mpz_t());
    }
  }
  for (int i = 0; i < d; ++i) num_[i] = conv[i];
  for (int k = d; k < 2 * d - 1; ++k) {
    if (conv[k] == 0) continue;
    const auto& p = field_->power(k);
    for (int i = 0; i < d; ++i) {
      if (p[i] > 0) {
        mpz_addmul_ui(num_[i].get_mpz_t(), conv[k].get_mpz_t(), static_cast<unsigned long>(p[i]));
      } else if (p[i] < 0) {
        mpz_submul_ui(num_[i].get_mpz_t(), conv[k].get_mpz_t(), static_cast<unsigned long>(-p[i]));
      }
    }
  }
  den_ *= other.den_;
  normalize();
  return *this;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  return a.field_ == b.field_ && a.den_ == b.den_ && a.num_ == b.num_;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) fail(ErrorKind::kPrecondition, "inverse of zero in Q(zeta)");
  const int d = field_->degree();
  // Column k of the multiplication-by-this matrix is this * zeta^k.
  std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(d),
                                        std::vector<mpq_class>(static_cast<std::size_t>(d) + 1));
  for (int k = 0; k < d; ++k) {
    const CycloNum col = *this * zeta_power(level(), k, branch());
    const auto c = col.coeffs();
    for (int i = 0; i < d; ++i) m[i][k] = c[i];
  }
  m[0][d] = 1;
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) fail(ErrorKind::kNumerical, "singular multiplication matrix in Q(zeta)");
    std::swap(m[col], m[pivot]);
    const mpq_class lead = m[col][col];
    for (int j = col; j <= d; ++j) m[col][j] /= lead;
    for (int i = 0; i < d; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const mpq_class f = m[i][col];
      for (int j = col; j <= d; ++j) m[i][j] -= f * m[col][j];
    }
  }
  CycloNum out(level(), branch());
  mpz_class lcm = 1;
  for (int i = 0; i < d; ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m[i][d].get_den_mpz_t());
  for (int i = 0; i < d; ++i) {
    mpz_class scaled = lcm / m[i][d].get_den();
    out.num_[i] = m[i][d].get_num() * scaled;
  }
  out.den_ = lcm;
  out.normalize();
  return out;
}

CycloNum CycloNum::pow(unsigned exponent) const {
  CycloNum result(level(), 1L, branch());
  CycloNum base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

CycloNum CycloNum::galois(long t) const {
  require(std::gcd(t, static_cast<long>(order())) == 1,
          "Galois exponent must be coprime to the root order");
  CycloNum out(level(), branch());
  for (int k = 0; k < degree(); ++k) {
    if (num_[k] == 0) continue;
    const auto& p = field_->power(static_cast<int>(mod(static_cast<long>(k) * t, order())));
    for (int i = 0; i < degree(); ++i) {
      if (p[i] != 0) out.num_[i] += num_[k] * p[i];
    }
  }
  out.den_ = den_;
  out.normalize();
  return out;
}

std::complex<double> CycloNum::ev(long s) const {
  const long r = level();
  require(branch_for(level(), s) == branch(), "evaluation exponent s has the wrong parity for this branch");
  if (is_zero()) return {0.0, 0.0};
  // Enough working bits that cancellation among large coefficients cannot
  // reach the leading 53 bits of the result.
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bit_size()) + 160;
  MpfrValue pi(prec), angle(prec), c(prec), sn(prec), term(prec), re(prec), im(prec), den(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_zero(re.get(), 1);
  mpfr_set_zero(im.get(), 1);
  for (int k = 0; k < degree(); ++k) {
    if (num_[k] == 0) continue;
    // zeta^k -> exp(i*pi*m/r), m = s*k reduced mod 2r.
    const long m = mod(s * k, 2 * r);
    mpfr_mul_si(angle.get(), pi.get(), m, MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), r, MPFR_RNDN);
    mpfr_sin_cos(sn.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_mul_z(term.get(), c.get(), num_[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
    mpfr_mul_z(term.get(), sn.get(), num_[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
  }
  mpfr_set_z(den.get(), den_.get_mpz_t(), MPFR_RNDN);
  mpfr_div(re.get(), re.get(), den.get(), MPFR_RNDN);
  mpfr_div(im.get(), im.get(), den.get(), MPFR_RNDN);
  return {mpfr_get_d(re.get(), MPFR_RNDN), mpfr_get_d(im.get(), MPFR_RNDN)};
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  const auto c = coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c[k].get_str() << ")";
    if (k > 0) os << "*z^" << k;
  }
  if (first) os << "0";
  return os.str();
}

CycloNum quantum_int(int n, int r, Branch branch) {
  require(r >= 3, "quantum integers need r >= 3");
  require(n >= 0 && n <= r - 1,
          "quantum integer index " + std::to_string(n) + " outside 0.." + std::to_string(r - 1));
  CycloNum out(r, branch);
  // Laurent sum zeta^{n-1} + zeta^{n-3} + ... + zeta^{1-n}.
  for (int e = n - 1; e >= 1 - n; e -= 2) out += CycloNum::zeta_power(r, e, branch);
  return out;
}

CycloNum quantum_factorial(int n, int r, Branch branch) {
  require(r >= 3, "quantum factorials need r >= 3");
  require(n >= 0 && n <= r - 1,
          "quantum factorial index " + std::to_string(n) + " outside 0.." + std::to_string(r - 1));
  CycloNum out(r, 1L, branch);
  for (int k = 2; k <= n; ++k) out *= quantum_int(k, r, branch);
  return out;
}

std::complex<double> ev(const CycloNum& x, long s) { return x.ev(s); }

std::optional<long long> is_near_integer(std::complex<double> z, double tol) {
  require(tol > 0, "integrality tolerance must be positive");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
  const double nearest = std::round(z.real());
  if (std::abs(z.real() - nearest) < tol && std::abs(z.imag()) < tol) {
    return static_cast<long long>(nearest);
  }
  return std::nullopt;
}

}  // namespace quantum3::cyclo
