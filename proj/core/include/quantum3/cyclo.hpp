#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta), zeta an abstract root of
// unity playing the role of q^{1/2}, together with the complex
// specializations zeta -> exp(i*pi*s/r).
//
// exp(i*pi*s/r) with gcd(s, r) = 1 is a primitive 2r-th root of unity when s
// is odd, but only a primitive r-th root when s is even (then r is odd).
// The two cases need different minimal polynomials, so every element
// carries a Branch and can only be specialized at s of matching parity.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace quantum3::cyclo {

/// kOdd: zeta of order 2r (odd s). kEven: zeta of order r, r odd (even s).
enum class Branch { kOdd, kEven };

/// Branch whose specializations include s; requires gcd(s, r) = 1.
Branch branch_for(int r, long s);

/// Shared per-level context: the cyclotomic polynomial of the root order
/// N and the expansion of every power zeta^k, 0 <= k < N, in the power
/// basis 1, zeta, ..., zeta^{phi(N)-1}. Immutable once built.
class Field {
 public:
  static std::shared_ptr<const Field> of(int r, Branch branch = Branch::kOdd);

  int level() const { return r_; }
  Branch branch() const { return branch_; }
  int order() const { return branch_ == Branch::kOdd ? 2 * r_ : r_; }
  int degree() const { return degree_; }
  const std::vector<long>& cyclotomic_polynomial() const { return phi_; }
  const std::vector<long>& power(int k) const;

 private:
  Field(int r, Branch branch);

  int r_;
  Branch branch_;
  int degree_;
  std::vector<long> phi_;                 // monic, lowest degree first
  std::vector<std::vector<long>> powers_; // powers_[k] = zeta^k in the basis
};

/// Element of Q(zeta) on one branch. The representation is canonical:
/// integer numerators over one positive denominator with overall gcd 1, in
/// the power basis reduced modulo the cyclotomic polynomial, so structural
/// equality is field equality.
class CycloNum {
 public:
  explicit CycloNum(int r, Branch branch = Branch::kOdd);
  CycloNum(int r, const mpq_class& value, Branch branch = Branch::kOdd);
  CycloNum(int r, long value, Branch branch = Branch::kOdd) : CycloNum(r, mpq_class(value), branch) {}

  /// zeta^k for any integer k.
  static CycloNum zeta_power(int r, long k, Branch branch = Branch::kOdd);

  int level() const { return field_->level(); }
  Branch branch() const { return field_->branch(); }
  int order() const { return field_->order(); }
  int degree() const { return field_->degree(); }

  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Largest bit length over numerators and denominator; a cost proxy.
  std::size_t bit_size() const;

  CycloNum& operator+=(const CycloNum& other);
  CycloNum& operator-=(const CycloNum& other);
  CycloNum& operator*=(const CycloNum& other);
  CycloNum& operator/=(const CycloNum& other) { return *this *= other.inverse(); }
  CycloNum operator-() const;

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// Multiplicative inverse; throws on zero.
  CycloNum inverse() const;
  CycloNum pow(unsigned exponent) const;

  /// Field automorphism zeta -> zeta^t, t coprime to the root order.
  CycloNum galois(long t) const;

  /// Specialization zeta -> exp(i*pi*s/r). Requires gcd(s, r) = 1 and
  /// branch_for(r, s) == branch().
  std::complex<double> ev(long s) const;

  std::string to_string() const;

 private:
  void normalize();

  std::shared_ptr<const Field> field_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

/// Quantum integer [n] = (zeta^n - zeta^-n)/(zeta - zeta^-1), 0 <= n <= r-1.
CycloNum quantum_int(int n, int r, Branch branch = Branch::kOdd);

/// [n]! = [1][2]...[n], with [0]! = 1; 0 <= n <= r-1.
CycloNum quantum_factorial(int n, int r, Branch branch = Branch::kOdd);

/// Free-function form of CycloNum::ev.
std::complex<double> ev(const CycloNum& x, long s);

/// Nearest integer to z when both |z - n| < tol and |Im z| < tol.
std::optional<long long> is_near_integer(std::complex<double> z, double tol);

}  // namespace quantum3::cyclo
