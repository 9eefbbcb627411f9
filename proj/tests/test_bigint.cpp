#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kirbycalc/bigint.hpp"
#include "kirbycalc/laurent.hpp"

using namespace kirbycalc;

TEST_CASE("bigint agrees with long long on small values") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> d(-1000000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    long long a = d(rng), b = d(rng);
    BigInt A(a), B(b);
    CHECK((A + B).to_longlong() == a + b);
    CHECK((A - B).to_longlong() == a - b);
    CHECK((A * B).to_longlong() == a * b);
    if (b != 0) {
      CHECK((A / B).to_longlong() == a / b);
      CHECK((A % B).to_longlong() == a % b);
    }
    CHECK((A < B) == (a < b));
    CHECK((A == B) == (a == b));
  }
}

TEST_CASE("bigint multi-limb round trips and identities") {
  BigInt a = BigInt::from_string("123456789012345678901234567890");
  BigInt b = BigInt::from_string("-987654321098765432109876543210987");
  CHECK(a.to_string() == "123456789012345678901234567890");
  CHECK(b.to_string() == "-987654321098765432109876543210987");
  BigInt q, r;
  BigInt::divmod(b, a, q, r);
  CHECK(q * a + r == b);
  CHECK(r.abs() < a.abs());
  CHECK((a * b) / b == a);
  CHECK(((a * a) - (a * a)).is_zero());
  CHECK(BigInt::gcd(BigInt(48), BigInt(-36)) == BigInt(12));
  CHECK(BigInt::gcd(a * BigInt(30), a * BigInt(42)) == a * BigInt(6));
}

TEST_CASE("bigint division stress against reconstruction") {
  std::mt19937_64 rng(99);
  auto rand_big = [&](int limbs) {
    BigInt x(0);
    for (int i = 0; i < limbs; ++i)
      x = x * BigInt(1LL << 32) + BigInt(static_cast<long long>(rng() & 0xffffffffULL));
    if (rng() & 1) x = -x;
    return x;
  };
  for (int i = 0; i < 300; ++i) {
    BigInt a = rand_big(1 + static_cast<int>(rng() % 5));
    BigInt b = rand_big(1 + static_cast<int>(rng() % 3));
    if (b.is_zero()) continue;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    CHECK(r.sign() * a.sign() >= 0);
  }
}

TEST_CASE("rational arithmetic stays reduced") {
  Rational x(BigInt(6), BigInt(-4));
  CHECK(x.num() == BigInt(-3));
  CHECK(x.den() == BigInt(2));
  Rational y = x + Rational(BigInt(1), BigInt(2));
  CHECK(y == Rational(BigInt(-1), BigInt(1)));
  CHECK((x * Rational(BigInt(-2), BigInt(3))) == Rational(BigInt(1), BigInt(1)));
  CHECK((Rational(1) / x).to_string() == "-2/3");
}

TEST_CASE("laurent basic algebra") {
  // (t - 1 + t^-1)
  auto tre = LaurentPolynomial::from_coeffs(-1, {BigInt(1), BigInt(-1), BigInt(1)});
  CHECK(tre.is_symmetric());
  CHECK(tre.eval_at_one() == BigInt(1));
  CHECK(tre.span() == 2);
  auto sq = tre * tre;
  CHECK(sq.coeff(0) == BigInt(3));
  CHECK(sq.coeff(2) == BigInt(1));
  CHECK(sq.coeff(1) == BigInt(-2));
  CHECK(sq.is_symmetric());
  CHECK(LaurentPolynomial::divide_exact(sq, tre) == tre);
  CHECK(LaurentPolynomial::equal_up_to_units(tre.shifted(3), -tre));
  CHECK_FALSE(LaurentPolynomial::equal_up_to_units(tre, sq));
  auto z = tre - tre;
  CHECK(z.is_zero());
  CHECK((tre * z).is_zero());
}

TEST_CASE("laurent division detects inexactness") {
  auto a = LaurentPolynomial::from_coeffs(0, {BigInt(2), BigInt(0), BigInt(1)});
  auto b = LaurentPolynomial::from_coeffs(0, {BigInt(1), BigInt(1)});
  CHECK_THROWS(LaurentPolynomial::divide_exact(a, b));
  CHECK(LaurentPolynomial::divide_exact(a * b, b) == a);
}
