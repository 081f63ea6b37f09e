#include "vbt/scalar.hpp"

#include <cmath>
#include <sstream>

namespace vbt {

namespace {
BigInt int_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}
}  // namespace

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

long LaurentPoly::min_exp() const { return terms_.begin()->first; }
long LaurentPoly::max_exp() const { return terms_.rbegin()->first; }

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r(*this);
  for (const auto& [e, c] : o.terms_) {
    BigInt v = (r.terms_.count(e) ? r.terms_[e] : BigInt(0)) + c;
    if (v == 0)
      r.terms_.erase(e);
    else
      r.terms_[e] = v;
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      long e = e1 + e2;
      BigInt v = (r.terms_.count(e) ? r.terms_[e] : BigInt(0)) + c1 * c2;
      if (v == 0)
        r.terms_.erase(e);
      else
        r.terms_[e] = v;
    }
  return r;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
  return r;
}

BigInt LaurentPoly::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : terms_) g = int_gcd(g, c);
  return g;
}

LaurentPoly LaurentPoly::divided_by_int(const BigInt& c) const {
  LaurentPoly r;
  for (const auto& [e, v] : terms_) {
    if (v % c != 0) throw std::runtime_error("non-exact integer division of polynomial");
    r.terms_[e] = v / c;
  }
  return r;
}

std::complex<double> LaurentPoly::eval(std::complex<double> A) const {
  std::complex<double> s = 0.0;
  for (const auto& [e, c] : terms_) s += static_cast<double>(c) * std::pow(A, static_cast<double>(e));
  return s;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (a != 1 || e == 0) os << a.str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "A^" << e;
    }
    first = false;
  }
  return os.str();
}

// --- polynomial gcd over Q -------------------------------------------------

namespace {
using boost::multiprecision::cpp_rational;
using Dense = std::vector<cpp_rational>;  // coefficients from degree 0 upward

Dense to_dense(const LaurentPoly& p) {
  long lo = p.min_exp(), hi = p.max_exp();
  Dense d(static_cast<size_t>(hi - lo + 1));
  for (const auto& [e, c] : p.terms()) d[static_cast<size_t>(e - lo)] = cpp_rational(c);
  return d;
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// remainder of a mod b (b nonzero)
Dense poly_rem(Dense a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    cpp_rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    trim(a);
  }
  return a;
}

LaurentPoly from_dense_primitive(const Dense& d) {
  // clear rational denominators, divide by integer content, make the
  // lowest nonzero coefficient positive
  BigInt lcm = 1;
  for (const auto& c : d) {
    BigInt den = denominator(c);
    lcm = lcm / int_gcd(lcm, den) * den;
  }
  LaurentPoly p;
  for (size_t i = 0; i < d.size(); ++i) {
    cpp_rational v = d[i] * lcm;
    if (v != 0) p = p + LaurentPoly::monomial(numerator(v), static_cast<long>(i));
  }
  if (p.is_zero()) return p;
  BigInt ct = p.content();
  p = p.divided_by_int(ct);
  if (p.terms().begin()->second < 0) p = -p;
  return p;
}
}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b.is_zero() ? LaurentPoly(BigInt(1)) : from_dense_primitive(to_dense(b));
  if (b.is_zero()) return from_dense_primitive(to_dense(a));
  Dense x = to_dense(a), y = to_dense(b);
  while (!y.empty()) {
    Dense r = poly_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return from_dense_primitive(x);
}

LaurentPoly laurent_divexact(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return a;
  long shift = a.min_exp() - b.min_exp();
  Dense x = to_dense(a), y = to_dense(b);
  Dense q(x.size() - y.size() + 1);
  while (x.size() >= y.size() && !x.empty()) {
    cpp_rational f = x.back() / y.back();
    q[x.size() - y.size()] = f;
    size_t off = x.size() - y.size();
    for (size_t i = 0; i < y.size(); ++i) x[off + i] -= f * y[i];
    trim(x);
  }
  if (!x.empty()) throw std::runtime_error("laurent_divexact: not divisible");
  LaurentPoly r;
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    if (denominator(q[i]) != 1) throw std::runtime_error("laurent_divexact: non-integer quotient");
    r = r + LaurentPoly::monomial(numerator(q[i]), static_cast<long>(i) + shift);
  }
  return r;
}

// --- RationalFn ------------------------------------------------------------

RationalFn::RationalFn(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(BigInt(1));
    return;
  }
  // move the denominator's monomial exponent content into the numerator
  long dshift = den_.min_exp();
  den_ = den_.shifted(-dshift);
  num_ = num_.shifted(-dshift);
  // divide out the polynomial gcd (computed on exponent-shifted copies)
  long nshift = num_.min_exp();
  LaurentPoly n0 = num_.shifted(-nshift);
  LaurentPoly g = laurent_gcd(n0, den_);
  if (!g.is_one()) {
    n0 = laurent_divexact(n0, g);
    den_ = laurent_divexact(den_, g);
    long ds = den_.min_exp();  // gcd division may reintroduce a shift
    den_ = den_.shifted(-ds);
    num_ = n0.shifted(nshift - ds);
  }
  // coprime integer contents; positive lowest denominator coefficient
  BigInt cn = num_.content(), cd = den_.content();
  BigInt c = int_gcd(cn, cd);
  if (c > 1) {
    num_ = num_.divided_by_int(c);
    den_ = den_.divided_by_int(c);
  }
  if (den_.terms().begin()->second < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFn RationalFn::operator-(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFn RationalFn::operator*(const RationalFn& o) const {
  return RationalFn(num_ * o.num_, den_ * o.den_);
}
RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.is_zero()) throw DivisionByZero();
  return RationalFn(num_ * o.den_, den_ * o.num_);
}
RationalFn RationalFn::operator-() const {
  RationalFn r(*this);
  r.num_ = -r.num_;
  return r;
}

std::complex<double> RationalFn::eval(std::complex<double> A) const {
  std::complex<double> d = den_.eval(A);
  if (std::abs(d) < 1e-12) throw PoleAtA();
  return num_.eval(A) / d;
}

std::string RationalFn::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

const RationalFn& delta_poly() {
  static const RationalFn delta = [] {
    LaurentPoly p = LaurentPoly::monomial(BigInt(1), 4) + LaurentPoly(BigInt(1)) +
                    LaurentPoly::monomial(BigInt(1), -4);
    return RationalFn(p, LaurentPoly(BigInt(1)));
  }();
  return delta;
}

// --- Scalar ----------------------------------------------------------------

Scalar Scalar::operator*(const Scalar& o) const {
  const RationalFn& D = delta_poly();
  return Scalar(p_ * o.p_ + q_ * o.q_ * D, p_ * o.q_ + q_ * o.p_);
}

Scalar Scalar::inverse() const {
  const RationalFn& D = delta_poly();
  RationalFn n = p_ * p_ - q_ * q_ * D;
  if (n.is_zero()) throw DivisionByZero();
  return Scalar(p_ / n, -(q_ / n));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

std::complex<double> Scalar::eval(std::complex<double> A) const {
  std::complex<double> sd = std::sqrt(delta_poly().eval(A));
  return p_.eval(A) + q_.eval(A) * sd;
}

std::string Scalar::str() const {
  if (q_.is_zero()) return p_.str();
  std::string s = "[" + p_.str() + "] + [" + q_.str() + "]*sqrtD";
  return s;
}

const NamedConstants& constants() {
  static const NamedConstants k = [] {
    NamedConstants c;
    Scalar one = Scalar::from_int(1), two = Scalar::from_int(2);
    c.d = -(Scalar::A_pow(2) + Scalar::A_pow(-2));
    c.Delta = c.d * c.d - one;
    c.Theta = (c.d * c.d - one) * (c.d * c.d - two) / c.d;
    c.T = two * (c.d * c.d - one) * (c.d * c.d - one) * (c.d * c.d - two) * c.Theta / (c.d * c.d * c.d);
    c.a = one / c.Delta;
    c.b = one / Scalar::sqrt_delta();
    c.g = c.b;
    c.h = -c.a;
    c.c1 = c.h * c.h * c.h - c.d * c.g * c.h;
    c.c2 = (c.d - one) * (c.h - c.h * c.h * c.h);
    c.c3 = c.h * c.h * c.g - c.d * c.g * c.g;
    c.c4 = (c.d - one) * (c.g - c.g * c.h * c.h);
    return c;
  }();
  return k;
}

std::complex<double> eval_numeric(const Scalar& x, std::complex<double> A) { return x.eval(A); }

std::complex<double> fibonacci_A() {
  const double pi = 3.14159265358979323846;
  return std::polar(1.0, 3.0 * pi / 5.0);
}

}  // namespace vbt
