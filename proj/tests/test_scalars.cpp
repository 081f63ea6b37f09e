#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "vbt/scalar.hpp"

using namespace vbt;

namespace {
Scalar S(long c) { return Scalar::from_int(c); }
const Scalar one = Scalar::from_int(1);
}  // namespace

TEST_CASE("Laurent polynomial arithmetic is exact and canonical") {
  LaurentPoly a = LaurentPoly::monomial(BigInt(2), 3) + LaurentPoly::monomial(BigInt(-1), -1);
  LaurentPoly b = LaurentPoly::monomial(BigInt(1), 1);
  CHECK((a * b).terms().at(4) == BigInt(2));
  CHECK((a * b).terms().at(0) == BigInt(-1));
  CHECK((a - a).is_zero());
  CHECK(a.shifted(2) == a * LaurentPoly::monomial(BigInt(1), 2));
  CHECK(a.min_exp() == -1);
  CHECK(a.max_exp() == 3);
  // cancellation never leaves explicit zero terms
  LaurentPoly c = a + (-a) + b;
  CHECK(c == b);
  CHECK(c.terms().size() == 1);
}

TEST_CASE("rational function normal form makes equality structural") {
  // (A^2 - A^-2) / (A - A^-1) reduces to A + A^-1
  LaurentPoly num = LaurentPoly::monomial(BigInt(1), 2) + LaurentPoly::monomial(BigInt(-1), -2);
  LaurentPoly den = LaurentPoly::monomial(BigInt(1), 1) + LaurentPoly::monomial(BigInt(-1), -1);
  RationalFn r(num, den);
  RationalFn expect =
      RationalFn(LaurentPoly::monomial(BigInt(1), 1) + LaurentPoly::monomial(BigInt(1), -1),
                 LaurentPoly(BigInt(1)));
  CHECK(r == expect);
  CHECK(r.den().is_one());
  CHECK((r - expect).is_zero());
  CHECK(r / r == RationalFn(BigInt(1)));
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(one / Scalar(), DivisionByZero);
  CHECK_THROWS_AS(Scalar().inverse(), DivisionByZero);
}

TEST_CASE("sqrt(Delta) adjoins a genuine square root of Delta") {
  const auto& cn = constants();
  Scalar s = Scalar::sqrt_delta();
  CHECK(s * s == cn.Delta);
  CHECK((one / s) * s == one);
  // (p + q sqrtD)(p - q sqrtD) = p^2 - q^2 Delta
  Scalar x = S(3) + S(2) * s;
  Scalar conj = S(3) - S(2) * s;
  CHECK(x * conj == S(9) - S(4) * cn.Delta);
}

TEST_CASE("named constants satisfy their defining relations") {
  const auto& cn = constants();
  Scalar A2 = Scalar::A_pow(2), Am2 = Scalar::A_pow(-2);
  CHECK(cn.d == -A2 - Am2);
  CHECK(cn.Delta == cn.d * cn.d - one);
  CHECK(cn.Delta == Scalar::A_pow(4) + one + Scalar::A_pow(-4));
  CHECK(cn.a == one / cn.Delta);
  CHECK(cn.h == -(one / cn.Delta));
  CHECK(cn.b == cn.g);
  CHECK(cn.g * cn.g == one / cn.Delta);            // g = 1/sqrt(Delta)
  CHECK(cn.g * Scalar::sqrt_delta() == one);
  CHECK(cn.c1 == cn.h * cn.h * cn.h - cn.d * cn.g * cn.h);
  CHECK(cn.c2 == (cn.d - one) * (cn.h - cn.h * cn.h * cn.h));
  CHECK(cn.c3 == cn.h * cn.h * cn.g - cn.d * cn.g * cn.g);
  CHECK(cn.c4 == (cn.d - one) * (cn.g - cn.g * cn.h * cn.h));
}

TEST_CASE("spot values at A = 1") {
  const auto& cn = constants();
  std::complex<double> A(1.0, 0.0);
  CHECK(eval_numeric(cn.d, A).real() == doctest::Approx(-2.0));
  CHECK(eval_numeric(cn.Delta, A).real() == doctest::Approx(3.0));
  CHECK(eval_numeric(cn.Theta, A).real() == doctest::Approx(-3.0));
  CHECK(eval_numeric(cn.T, A).real() == doctest::Approx(13.5));
  // c2 is rational in A: exactly 8/9 at A = 1
  CHECK(cn.c2.q().is_zero());
  CHECK(eval_numeric(cn.c2, A).real() == doctest::Approx(8.0 / 9.0));
  // the other decorated coefficients at A = 1 (sqrtD branch = +sqrt(3))
  double s3 = std::sqrt(3.0);
  CHECK(eval_numeric(cn.c1, A).real() == doctest::Approx(-1.0 / 27.0 - 2.0 / (3.0 * s3)));
  CHECK(eval_numeric(cn.c3, A).real() == doctest::Approx(2.0 / 3.0 + 1.0 / (9.0 * s3)));
  CHECK(eval_numeric(cn.c4, A).real() == doctest::Approx(-8.0 * s3 / 9.0));
}

TEST_CASE("canonical printed forms of the constants stay pinned") {
  const auto& cn = constants();
  CHECK(cn.d.str() == "-A^-2 - A^2");
  CHECK(cn.Delta.str() == "A^-4 + 1 + A^4");
  CHECK(cn.a.str() == "(A^4) / (1 + A^4 + A^8)");
  CHECK(cn.h.str() == "(-A^4) / (1 + A^4 + A^8)");
  CHECK(cn.g.str() == "[0] + [(A^4) / (1 + A^4 + A^8)]*sqrtD");
  CHECK(cn.Theta.str() == "(-A^-6 - A^-2 - 2*A^2 - A^6 - A^10) / (1 + A^4)");
  CHECK(cn.c2.str() ==
        "(A^2 + 2*A^6 + 2*A^10 + 2*A^14 + A^18) / (1 - A^2 + 3*A^4 - 2*A^6 + 5*A^8 - "
        "3*A^10 + 5*A^12 - 2*A^14 + 3*A^16 - A^18 + A^20)");
}

TEST_CASE("numeric evaluation agrees with exact arithmetic at a generic point") {
  const auto& cn = constants();
  std::complex<double> A(0.83, 0.41);
  Scalar lhs = cn.c1 * cn.c3 + cn.c2 * cn.c4;
  std::complex<double> direct = eval_numeric(cn.c1, A) * eval_numeric(cn.c3, A) +
                                eval_numeric(cn.c2, A) * eval_numeric(cn.c4, A);
  CHECK(std::abs(eval_numeric(lhs, A) - direct) < 1e-9 * (1.0 + std::abs(direct)));
}

TEST_CASE("Fibonacci point: d is the golden ratio and (Delta+1)/Delta^2 = 1") {
  const auto& cn = constants();
  std::complex<double> A = fibonacci_A();
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(eval_numeric(cn.d, A) - std::complex<double>(phi, 0)) < 1e-12);
  Scalar k = (cn.Delta + one) / (cn.Delta * cn.Delta);
  CHECK(std::abs(eval_numeric(k, A) - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("evaluation at a pole of the denominator throws") {
  const auto& cn = constants();
  // 1 + A^4 vanishes at A = exp(i pi/4)
  Scalar theta = cn.Theta;
  std::complex<double> A = std::polar(1.0, M_PI / 4.0);
  CHECK_THROWS_AS(eval_numeric(theta, A), PoleAtA);
}
