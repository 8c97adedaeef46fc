#include <gtest/gtest.h>

#include <gmpxx.h>

#include <limits>
#include <random>

#include "hilbperv/errors.hpp"
#include "hilbperv/rational.hpp"
#include "hilbperv/series.hpp"

using namespace hilbperv;

namespace {

mpq_class q(std::int64_t n, std::int64_t d = 1) {
  mpq_class r(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)));
  r.canonicalize();
  return r;
}

// Dense convolution oracle: coefficients indexed [e_s][e_q][e_t] with small bounds.
using Dense = std::vector<std::vector<std::vector<mpq_class>>>;

Dense dense_of(const TruncatedSeries& a, std::size_t S, std::size_t Q, std::size_t T) {
  Dense d(S, std::vector<std::vector<mpq_class>>(Q, std::vector<mpq_class>(T, 0)));
  for (const auto& [e, c] : a.terms()) d.at(e[0]).at(e[1]).at(e[2]) = c.to_mpq();
  return d;
}

TruncatedSeries random_series(std::mt19937_64& rng, std::uint32_t s_bound, int terms) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<std::uint32_t> es(0, s_bound);
  std::uniform_int_distribution<std::uint32_t> small(0, 3);
  TruncatedSeries r(s_bound);
  for (int i = 0; i < terms; ++i) r.add_term({es(rng), small(rng), small(rng)}, Rational(coeff(rng), den(rng)));
  return r;
}

}  // namespace

TEST(Rational, ArithmeticMatchesGmp) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> big(std::numeric_limits<std::int64_t>::min() / 2,
                                                  std::numeric_limits<std::int64_t>::max() / 2);
  std::uniform_int_distribution<std::int64_t> den(1, 1'000'000'007);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t an = big(rng), ad = den(rng), bn = big(rng), bd = den(rng);
    Rational a(an, ad), b(bn, bd);
    mpq_class ma = q(an, ad), mb = q(bn, bd);
    EXPECT_EQ((a + b).to_mpq(), ma + mb);
    EXPECT_EQ((a - b).to_mpq(), ma - mb);
    EXPECT_EQ((a * b).to_mpq(), ma * mb);
    if (bn != 0) EXPECT_EQ((a / b).to_mpq(), ma / mb);
    EXPECT_EQ(a < b, ma < mb);
  }
}

TEST(Rational, OverflowPromotesAndDemotes) {
  Rational x(std::numeric_limits<std::int64_t>::max());
  Rational y = x * x;
  EXPECT_EQ(y.to_mpq(), q(std::numeric_limits<std::int64_t>::max()) * q(std::numeric_limits<std::int64_t>::max()));
  Rational back = y / x;
  EXPECT_EQ(back, x);
  EXPECT_EQ(back.str(), std::to_string(std::numeric_limits<std::int64_t>::max()));
  Rational m(std::numeric_limits<std::int64_t>::min());
  EXPECT_EQ((-m).to_mpq(), -q(std::numeric_limits<std::int64_t>::min()));
}

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.fraction_str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).fraction_str(), "2/1");
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational(1, 0), UsageError);
  EXPECT_THROW(Rational::parse("1/x"), ParseError);
  EXPECT_THROW(Rational(1) / Rational(0), UsageError);
}

TEST(Rational, BinomialMatchesPascal) {
  std::vector<std::vector<mpz_class>> pascal(30, std::vector<mpz_class>(30, 0));
  for (int n = 0; n < 30; ++n) {
    pascal[n][0] = 1;
    for (int k = 1; k <= n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + (k < n ? pascal[n - 1][k] : mpz_class(0));
  }
  for (int n = 0; n < 30; ++n) {
    for (int k = 0; k < 30; ++k) EXPECT_EQ(binomial(n, k).to_mpq(), mpq_class(pascal[n][k])) << n << " " << k;
  }
}

TEST(Series, MultiplicationMatchesDenseConvolution) {
  std::mt19937_64 rng(11);
  const std::uint32_t N = 4;
  for (int round = 0; round < 50; ++round) {
    TruncatedSeries a = random_series(rng, N, 12);
    TruncatedSeries b = random_series(rng, N, 12);
    Dense da = dense_of(a, N + 1, 4, 4), db = dense_of(b, N + 1, 4, 4);
    Dense expect = dense_of(TruncatedSeries(N), N + 1, 7, 7);
    for (std::size_t s1 = 0; s1 <= N; ++s1)
      for (std::size_t q1 = 0; q1 < 4; ++q1)
        for (std::size_t t1 = 0; t1 < 4; ++t1)
          for (std::size_t s2 = 0; s1 + s2 <= N; ++s2)
            for (std::size_t q2 = 0; q2 < 4; ++q2)
              for (std::size_t t2 = 0; t2 < 4; ++t2) expect[s1 + s2][q1 + q2][t1 + t2] += da[s1][q1][t1] * db[s2][q2][t2];
    EXPECT_EQ(dense_of(series_mul(a, b), N + 1, 7, 7), expect);
  }
}

TEST(Series, RingLaws) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    TruncatedSeries a = random_series(rng, 3, 8), b = random_series(rng, 3, 8), c = random_series(rng, 3, 8);
    EXPECT_EQ(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)));
    EXPECT_EQ(series_mul(a, b), series_mul(b, a));
    EXPECT_EQ(series_mul(a, series_add(b, c)), series_add(series_mul(a, b), series_mul(a, c)));
    EXPECT_EQ(series_mul(a, TruncatedSeries::one(3)), a);
    EXPECT_TRUE(series_sub(a, a).is_zero());
  }
}

TEST(Series, TruncationDropsHighTerms) {
  TruncatedSeries a(2);
  a.add_term({3, 0, 0}, Rational(1));
  EXPECT_TRUE(a.is_zero());
  a.add_term({1, 1, 0}, Rational(2));
  TruncatedSeries sq = series_mul(a, series_mul(a, a));
  EXPECT_TRUE(sq.is_zero());
  a.add_term({1, 1, 0}, Rational(-2));
  EXPECT_EQ(a.size(), 0u);
}

TEST(Series, GeometricFactorMatchesRepeatedProducts) {
  const std::uint32_t N = 6;
  TruncatedSeries base = TruncatedSeries::one(N);
  base.add_term({1, 1, 2}, Rational(-3));  // 1 - 3 s q t^2
  TruncatedSeries power = TruncatedSeries::one(N);
  for (int k = 1; k <= 5; ++k) {
    power = series_mul(power, base);
    EXPECT_EQ(geometric_factor(Rational(3), 1, 1, 2, -1, k, N), power);
  }
  // (1 - y)^{-1} (1 - y) = 1
  TruncatedSeries inv = geometric_factor(Rational(3), 1, 1, 2, -1, -1, N);
  EXPECT_EQ(series_mul(inv, base), TruncatedSeries::one(N));
  TruncatedSeries inv4 = geometric_factor(Rational(3), 1, 1, 2, -1, -4, N);
  EXPECT_EQ(series_mul(inv4, power.truncate(N)), geometric_factor(Rational(3), 1, 1, 2, -1, 1, N));
  EXPECT_THROW(geometric_factor(Rational(1), 0, 1, 0, -1, -1, N), DivergenceError);
}

TEST(Series, SpecializeSetsVariables) {
  TruncatedSeries a(2);
  a.add_term({1, 2, 3}, Rational(5));
  a.add_term({1, 0, 3}, Rational(-1));
  a.add_term({2, 1, 1}, Rational(1, 2));
  TruncatedSeries at_q1 = specialize(a, Rational(1), std::nullopt);
  EXPECT_EQ(at_q1.coefficient({1, 0, 3}), Rational(4));
  EXPECT_EQ(at_q1.coefficient({2, 0, 1}), Rational(1, 2));
  TruncatedSeries at_t2 = specialize(a, std::nullopt, Rational(2));
  EXPECT_EQ(at_t2.coefficient({1, 2, 0}), Rational(40));
  EXPECT_EQ(at_t2.coefficient({2, 1, 0}), Rational(1));
}

TEST(Series, SerializationRoundTrip) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 20; ++round) {
    TruncatedSeries a = random_series(rng, 5, 15);
    std::string text = format_series(a);
    EXPECT_EQ(text.rfind("series s_bound=5\n", 0), 0u);
    EXPECT_EQ(parse_series(text), a);
    EXPECT_EQ(format_series(parse_series(text)), text);
  }
}

TEST(Series, ParserRejectsMalformedInput) {
  EXPECT_THROW(parse_series(""), ParseError);
  EXPECT_THROW(parse_series("series s_bound=2\n1/2 1 0\n"), ParseError);
  EXPECT_THROW(parse_series("series s_bound=2\n1/2 1 1/2 0\n"), ParseError);
  EXPECT_THROW(parse_series("series s_bound=2\n1/2 1 -1 0\n"), ParseError);
  EXPECT_THROW(parse_series("series s_bound=2\n1/2 3 0 0\n"), ParseError);
  EXPECT_THROW(parse_series("polynomial s_bound=2\n"), ParseError);
}
