#include "mathieu/exact_scalar.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mathieu;

TEST(RadicalNormalize, MatchesFactorizationOracle) {
  for (long n = 1; n <= 2000; ++n) {
    auto [k, r] = oracle::square_part(n);
    auto [q, radicand] = radical_normalize(Rational(1), Integer(n));
    EXPECT_EQ(q, Rational(k)) << n;
    EXPECT_EQ(radicand, Integer(r)) << n;
  }
}

TEST(RadicalNormalize, Examples) {
  EXPECT_EQ(radical_normalize(Rational(1), Integer(8)), std::make_pair(Rational(2), Integer(2)));
  EXPECT_EQ(radical_normalize(Rational(3, 2), Integer(1)), std::make_pair(Rational(3, 2), Integer(1)));
  EXPECT_EQ(radical_normalize(Rational(1), Integer(12)), std::make_pair(Rational(2), Integer(3)));
}

TEST(RadicalNormalize, RejectsNonPositiveRadicand) {
  EXPECT_THROW(radical_normalize(Rational(1), Integer(0)), std::invalid_argument);
  EXPECT_THROW(radical_normalize(Rational(1), Integer(-3)), std::invalid_argument);
}

TEST(RadicalNormalize, PreservesValue) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> n(1, 1'000'000);
  for (int t = 0; t < 500; ++t) {
    const long radicand = n(rng);
    const Rational coeff = oracle::random_rational(rng);
    auto [q, r] = radical_normalize(coeff, Integer(radicand));
    const double before = coeff.get_d() * std::sqrt(static_cast<double>(radicand));
    const double after = q.get_d() * std::sqrt(r.get_d());
    EXPECT_NEAR(after, before, 1e-12 * std::max(1.0, std::abs(before)));
  }
}

TEST(RadicalScalar, Addition) {
  const auto s2 = RadicalScalar::sqrt(Integer(2));
  const auto s3 = RadicalScalar::sqrt(Integer(3));
  EXPECT_TRUE((s2 + (-s2)).is_zero());
  EXPECT_EQ((RadicalScalar(1) + s2).real_part().size(), 2u);
  const RadicalScalar half_s3 = RadicalScalar(Rational(1, 2)) * s3;
  EXPECT_EQ(half_s3 + RadicalScalar(1) + half_s3, RadicalScalar(1) + s3);
}

TEST(RadicalScalar, Multiplication) {
  const auto s2 = RadicalScalar::sqrt(Integer(2));
  const auto s3 = RadicalScalar::sqrt(Integer(3));
  EXPECT_EQ(s2 * s2, RadicalScalar(2));
  EXPECT_EQ(s2 * s3, RadicalScalar::sqrt(Integer(6)));
  const auto i_s2 = RadicalScalar::term(Rational(1), Integer(2), true);
  EXPECT_EQ(i_s2 * i_s2, RadicalScalar(-2));
  EXPECT_EQ(RadicalScalar::sqrt(Integer(6)) * RadicalScalar::sqrt(Integer(10)),
            RadicalScalar(2) * RadicalScalar::sqrt(Integer(15)));
}

TEST(RadicalScalar, ZeroTest) {
  const auto s2 = RadicalScalar::sqrt(Integer(2));
  EXPECT_TRUE(is_zero(s2 - s2));
  EXPECT_FALSE(is_zero(RadicalScalar(1) - s2));
  EXPECT_TRUE(is_zero(RadicalScalar()));
}

TEST(RadicalScalar, CanonicalFormIsIdempotent) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_radical(rng);
    const auto again = RadicalScalar::from_terms(x.real_part(), x.imag_part());
    EXPECT_EQ(again, x);
    for (const auto& [n, q] : x.real_part()) {
      EXPECT_NE(q, 0);
      EXPECT_EQ(squarefree_split(n).second, n);
    }
  }
}

TEST(RadicalScalar, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_radical(rng);
    const auto y = oracle::random_radical(rng);
    const auto z = oracle::random_radical(rng);
    EXPECT_EQ((x + y) * z, x * z + y * z);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE(is_zero(x - x));
    const auto prod = (x * y).to_complex();
    const auto expected = x.to_complex() * y.to_complex();
    EXPECT_NEAR(std::abs(prod - expected), 0.0, 1e-9 * (1.0 + std::abs(expected)));
  }
}

TEST(RadicalScalar, RationalViews) {
  EXPECT_EQ(RadicalScalar(Rational(3, 4)).as_rational(), Rational(3, 4));
  EXPECT_FALSE(RadicalScalar::sqrt(Integer(2)).as_rational().has_value());
  EXPECT_EQ(RadicalScalar().as_rational(), Rational(0));
  EXPECT_EQ(RadicalScalar(GaussianRational(Rational(1), Rational(-2))).as_gaussian_rational(),
            GaussianRational(Rational(1), Rational(-2)));
}

TEST(HalfInt, ParseAndPrint) {
  EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
  EXPECT_EQ(HalfInt::parse("-1/2").twice(), -1);
  EXPECT_EQ(HalfInt::parse("2").twice(), 4);
  EXPECT_EQ(HalfInt::from_twice(-3).to_string(), "-3/2");
  EXPECT_EQ(HalfInt(2).to_string(), "2");
  EXPECT_THROW(HalfInt::parse("1/3"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse("0.5"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse(""), std::invalid_argument);
}

TEST(HalfInt, ArithmeticAgreesWithRationals) {
  for (std::int64_t a = -7; a <= 7; ++a)
    for (std::int64_t b = -7; b <= 7; ++b) {
      const auto x = HalfInt::from_twice(a), y = HalfInt::from_twice(b);
      EXPECT_EQ((x + y).to_rational(), x.to_rational() + y.to_rational());
      EXPECT_EQ((x - y).to_rational(), x.to_rational() - y.to_rational());
      EXPECT_EQ((x * b).to_rational(), x.to_rational() * b);
      EXPECT_EQ(x < y, x.to_rational() < y.to_rational());
    }
}

TEST(HalfInt, OverflowIsDetected) {
  const auto big = HalfInt::from_twice(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + HalfInt::from_twice(1), std::overflow_error);
  EXPECT_THROW(big * 2, std::overflow_error);
  EXPECT_THROW(HalfInt::parse("99999999999999999999"), std::overflow_error);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rational("5")), "5");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(GaussianRational, BinaryPower) {
  const GaussianRational z(Rational(1), Rational(1));  // 1 + i
  EXPECT_EQ(pow(z, 2), GaussianRational(Rational(0), Rational(2)));
  EXPECT_EQ(pow(z, 8), GaussianRational(16));
  EXPECT_EQ(pow(GaussianRational::i(), 3), GaussianRational(Rational(0), Rational(-1)));
  EXPECT_EQ(pow(z, 0), GaussianRational(1));
  GaussianRational naive(1);
  for (int k = 0; k < 13; ++k) naive *= GaussianRational(Rational(1, 2), Rational(-3));
  EXPECT_EQ(pow(GaussianRational(Rational(1, 2), Rational(-3)), 13), naive);
}
