#include <gtest/gtest.h>

#include "hilbperv/errors.hpp"
#include "hilbperv/generating_series.hpp"
#include "hilbperv/presets.hpp"

using namespace hilbperv;

namespace {

TruncatedSeries poly(std::initializer_list<std::pair<std::array<std::uint32_t, 2>, std::int64_t>> terms) {
  TruncatedSeries r(0);
  for (const auto& [e, c] : terms) r.add_term({0, e[0], e[1]}, Rational(c));
  return r;
}

// Coefficients of Π_m (1 - s^m)^{-c}, from the recursion n a_n = c Σ_{k=1}^{n} σ(k) a_{n-k}.
std::vector<Rational> power_of_eta(std::int64_t c, std::size_t N) {
  std::vector<Rational> a(N + 1);
  a[0] = Rational(1);
  for (std::size_t n = 1; n <= N; ++n) {
    Rational acc;
    for (std::size_t k = 1; k <= n; ++k) {
      std::int64_t sigma = 0;
      for (std::size_t d = 1; d <= k; ++d) sigma += k % d == 0 ? static_cast<std::int64_t>(d) : 0;
      acc += Rational(sigma) * a[n - k];
    }
    a[n] = Rational(c) * acc / Rational(static_cast<std::int64_t>(n));
  }
  return a;
}

}  // namespace

TEST(SeriesSpec, ParseLabels) {
  EXPECT_EQ(SeriesSpec::parse("a0", 3).kind, SeriesSpec::Case::a0);
  SeriesSpec d = SeriesSpec::parse("dynkin7", 3);
  EXPECT_EQ(d.kind, SeriesSpec::Case::dynkin);
  EXPECT_EQ(d.k, 7);
  EXPECT_EQ(d.label(), "dynkin7");
  EXPECT_THROW(SeriesSpec::parse("dynkin5", 3), UsageError);
  EXPECT_THROW(SeriesSpec::parse("", 3), UsageError);
}

TEST(ClosedForm, OnePointCoefficients) {
  EXPECT_EQ(s_coefficient(closed_form(SeriesSpec::parse("a0", 2)), 1), poly({{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}}));
  for (int k : {4, 6, 7, 8}) {
    TruncatedSeries c = closed_form(SeriesSpec::parse("dynkin" + std::to_string(k), 2));
    EXPECT_EQ(s_coefficient(c, 1), poly({{{0, 0}, 1}, {{1, 2}, k}, {{2, 2}, 1}})) << k;
  }
}

TEST(ClosedForm, AgreesWithRefinedProductOfPresets) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"a0", "a0"}, {"dynkin4", "d4"}, {"dynkin6", "e6"}, {"dynkin7", "e7"}, {"dynkin8", "e8"}};
  for (const auto& [label, name] : cases) {
    EXPECT_EQ(closed_form(SeriesSpec::parse(label, 6)), refined_goettsche(perverse_table(preset(name)), 6)) << label;
  }
}

TEST(ClosedForm, OraclesAgreeForFewPoints) {
  const std::vector<std::pair<std::string, std::string>> cases = {{"a0", "a0"}, {"dynkin4", "d4"}, {"dynkin8", "e8"}};
  for (const auto& [label, name] : cases) {
    TruncatedSeries c = closed_form(SeriesSpec::parse(label, 3));
    SurfaceRing r = preset(name);
    for (std::size_t n = 1; n <= 3; ++n) {
      TruncatedSeries expect = s_coefficient(c, static_cast<std::uint32_t>(n));
      EXPECT_EQ(brute_force_poincare(r, n), expect) << label << " n=" << n;
      EXPECT_EQ(partition_sum(perverse_table(r), n), expect) << label << " n=" << n;
    }
  }
}

TEST(Refined, CompactSurfacesMatchBruteForce) {
  for (const char* name : {"k3", "abelian"}) {
    SurfaceRing r = preset(name);
    TruncatedSeries ref = refined_goettsche(perverse_table(r), 2);
    for (std::size_t n = 1; n <= 2; ++n) {
      EXPECT_EQ(brute_force_poincare(r, n), s_coefficient(ref, static_cast<std::uint32_t>(n))) << name;
    }
  }
}

TEST(Refined, SpecializesToBettiProduct) {
  for (const auto& name : preset_names()) {
    BigradedDims dims = perverse_table(preset(name));
    TruncatedSeries lhs = specialize(refined_goettsche(dims, 6), Rational(1), std::nullopt);
    EXPECT_EQ(lhs, betti_goettsche(betti_numbers(dims), 6)) << name;
  }
}

TEST(Refined, EulerCharacteristics) {
  // q = 1, t = -1 gives Π (1 - s^m)^{-χ}.
  for (const auto& [name, chi] : std::vector<std::pair<const char*, std::int64_t>>{{"k3", 24}, {"abelian", 0}, {"d4", 6}}) {
    TruncatedSeries e = specialize(refined_goettsche(perverse_table(preset(name)), 6), Rational(1), Rational(-1));
    auto expect = power_of_eta(chi, 6);
    for (std::uint32_t n = 0; n <= 6; ++n) EXPECT_EQ(e.coefficient({n, 0, 0}), expect[n]) << name << " " << n;
  }
  auto k3 = power_of_eta(24, 4);
  EXPECT_EQ(k3[2], Rational(324));
  EXPECT_EQ(k3[3], Rational(3200));
  EXPECT_EQ(k3[4], Rational(25650));
}

TEST(PartitionSum, MatchesRefinedOnArbitraryTables) {
  const BigradedDims dims = {{{0, 0}, 1}, {{0, 1}, 3}, {{1, 2}, 2}, {{2, 3}, 1}, {{1, 1}, 1}};
  TruncatedSeries ref = refined_goettsche(dims, 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(partition_sum(dims, n), s_coefficient(ref, static_cast<std::uint32_t>(n))) << n;
  }
  EXPECT_EQ(partition_sum(dims, 0), TruncatedSeries::one(0));
}

TEST(BruteForce, ResourceLimit) {
  EXPECT_THROW(brute_force_poincare(preset("k3"), 3, 1000), ResourceError);
}

TEST(DimsOfPolynomial, RoundTrip) {
  BigradedDims dims = {{{0, 0}, 1}, {{1, 2}, 4}, {{2, 2}, 1}};
  TruncatedSeries p = s_coefficient(refined_goettsche(dims, 1), 1);
  EXPECT_EQ(dims_of_polynomial(p), dims);
  TruncatedSeries bad(0);
  bad.add_term({0, 1, 1}, Rational(1, 2));
  EXPECT_THROW(dims_of_polynomial(bad), DataError);
}

TEST(Compare, EqualAndFirstDifference) {
  TruncatedSeries a = closed_form(SeriesSpec::parse("dynkin4", 4));
  SeriesComparison self = compare_series(a, a, 4);
  EXPECT_TRUE(self.equal);
  EXPECT_TRUE(self.report().passed());
  TruncatedSeries b = a;
  b.add_term({3, 2, 4}, Rational(1));
  b.add_term({2, 1, 2}, Rational(-1));
  SeriesComparison diff = compare_series(a, b, 4);
  ASSERT_FALSE(diff.equal);
  ASSERT_TRUE(diff.first_difference);
  EXPECT_EQ(diff.first_difference->term, (Exponents{2, 1, 2}));
  EXPECT_EQ(diff.first_difference->left - diff.first_difference->right, Rational(1));
  EXPECT_FALSE(diff.report().passed());
  EXPECT_TRUE(compare_series(a, b, 1).equal);
  EXPECT_THROW(compare_series(a, b.truncate(2), 3), UsageError);
}
