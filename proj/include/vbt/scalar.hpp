#pragma once
// Exact arithmetic in Q(A)[sqrt(Delta)], the coefficient field of the
// recoupling calculus.  Delta = d^2 - 1 with d = -A^2 - A^{-2}, i.e.
// Delta = A^4 + 1 + A^{-4}.  Elements are stored as ordered pairs
// (p, q) ~ p + q*sqrt(Delta) with p, q reduced rational functions of A.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace vbt {

using BigInt = boost::multiprecision::cpp_int;

struct DivisionByZero : std::runtime_error {
  DivisionByZero() : std::runtime_error("division by zero in Q(A)[sqrt(Delta)]") {}
};
struct PoleAtA : std::runtime_error {
  PoleAtA() : std::runtime_error("denominator vanishes at the requested A") {}
};

// Laurent polynomial in A with integer coefficients; canonical form keeps
// no zero coefficients, so equality is map equality.
class LaurentPoly {
 public:
  using Terms = std::map<long, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(const BigInt& c) { if (c != 0) terms_[0] = c; }
  static LaurentPoly monomial(const BigInt& c, long e) {
    LaurentPoly p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  long min_exp() const;  // requires nonzero
  long max_exp() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

  LaurentPoly shifted(long k) const;        // multiply by A^k
  BigInt content() const;                   // gcd of coefficients (>= 0)
  LaurentPoly divided_by_int(const BigInt& c) const;  // exact division
  std::complex<double> eval(std::complex<double> A) const;
  std::string str() const;

 private:
  Terms terms_;
};

// Polynomial gcd over Q of two Laurent polynomials, returned as a primitive
// integer polynomial with nonnegative exponents and positive leading content.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);
// Exact division a / b; throws if not divisible.
LaurentPoly laurent_divexact(const LaurentPoly& a, const LaurentPoly& b);

// Reduced rational function num/den.  Canonical form: den nonzero with no
// negative exponents, lowest-exponent coefficient positive and minimal
// exponent zero; num/den coprime as polynomials; integer contents coprime.
class RationalFn {
 public:
  RationalFn() : num_(), den_(LaurentPoly(BigInt(1))) {}
  explicit RationalFn(const BigInt& c) : num_(LaurentPoly(c)), den_(LaurentPoly(BigInt(1))) {}
  RationalFn(LaurentPoly num, LaurentPoly den);
  static RationalFn monomial(const BigInt& c, long e) {
    return RationalFn(LaurentPoly::monomial(c, e), LaurentPoly(BigInt(1)));
  }
  static RationalFn fraction(const BigInt& n, const BigInt& d) {
    return RationalFn(LaurentPoly(n), LaurentPoly(d));
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  RationalFn operator-() const;
  bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  std::complex<double> eval(std::complex<double> A) const;
  std::string str() const;

 private:
  void normalize();
  LaurentPoly num_, den_;
};

// The fixed quadratic Delta = A^4 + 1 + A^{-4} (as a rational function).
const RationalFn& delta_poly();

class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const BigInt& c) : p_(c) {}
  Scalar(RationalFn p, RationalFn q) : p_(std::move(p)), q_(std::move(q)) {}
  static Scalar from_int(long c) { return Scalar(BigInt(c)); }
  static Scalar fraction(long n, long d) { return Scalar(RationalFn::fraction(BigInt(n), BigInt(d)), RationalFn()); }
  static Scalar A_pow(long e) { return Scalar(RationalFn::monomial(BigInt(1), e), RationalFn()); }
  static Scalar sqrt_delta() { return Scalar(RationalFn(), RationalFn(BigInt(1))); }

  const RationalFn& p() const { return p_; }
  const RationalFn& q() const { return q_; }
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
  bool is_one() const { return q_.is_zero() && p_.is_one(); }

  Scalar operator+(const Scalar& o) const { return Scalar(p_ + o.p_, q_ + o.q_); }
  Scalar operator-(const Scalar& o) const { return Scalar(p_ - o.p_, q_ - o.q_); }
  Scalar operator-() const { return Scalar(-p_, -q_); }
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const { return p_ == o.p_ && q_ == o.q_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::complex<double> eval(std::complex<double> A) const;
  std::string str() const;

 private:
  RationalFn p_, q_;  // value = p + q*sqrt(Delta)
};

inline Scalar operator*(long c, const Scalar& s) { return Scalar(BigInt(c)) * s; }

struct NamedConstants {
  Scalar d, Delta, Theta, T, a, b, g, h, c1, c2, c3, c4;
};

// All named constants of the calculus, in canonical form.
const NamedConstants& constants();

// p(A) + q(A) * sqrt(Delta(A)), principal square-root branch.
std::complex<double> eval_numeric(const Scalar& x, std::complex<double> A);

// The Fibonacci evaluation point A = exp(3*pi*i/5).
std::complex<double> fibonacci_A();

}  // namespace vbt
