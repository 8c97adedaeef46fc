#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hilbperv/check_options.hpp"
#include "hilbperv/perversity.hpp"
#include "hilbperv/report.hpp"
#include "hilbperv/series.hpp"
#include "hilbperv/surface_ring.hpp"

namespace hilbperv {

/// dim Gr_p H^d keyed by (p, d).
using BigradedDims = BigradedTable;

/// Which product to expand in closed_form.
struct SeriesSpec {
  enum class Case { a0, dynkin, ring };

  Case kind = Case::a0;
  int k = 0;           // dynkin: number of exceptional classes, one of 4, 6, 7, 8
  BigradedDims dims;   // ring: the bigraded dimensions of the surface
  std::uint32_t s_bound = 0;

  /// "a0", "dynkin4", "dynkin6", "dynkin7", "dynkin8" (UsageError otherwise).
  static SeriesSpec parse(std::string_view label, std::uint32_t s_bound);
  std::string label() const;
};

/// The displayed product for the A0 or Dynkin case; the refined product for a generic ring.
TruncatedSeries closed_form(const SeriesSpec& spec);

/// Π_{m>=1} Π_{(p,d)} (1 - (-1)^d s^m q^{p+m-1} t^{d+2m-2})^{-(-1)^d dims(p,d)}.
TruncatedSeries refined_goettsche(const BigradedDims& dims, std::uint32_t s_bound);

/// Π_{m>=1} Π_d (1 - (-1)^d s^m t^{d+2m-2})^{-(-1)^d b_d}, from Betti numbers alone.
TruncatedSeries betti_goettsche(const std::map<int, std::int64_t>& betti, std::uint32_t s_bound);

/// Betti numbers b_d = Σ_p dims(p, d).
std::map<int, std::int64_t> betti_numbers(const BigradedDims& dims);

/// P_n(q, t) by summing over partitions of n, with the super-symmetric power of the bigraded
/// space counted by binomials (Sym on even degrees, Λ on odd). Returned with s_bound 0.
TruncatedSeries partition_sum(const BigradedDims& dims, std::size_t n);

/// P_n(q, t) counted from the 𝔖ₙ-orbits of the wreath basis, skipping orbits on which a stabilizer
/// element acts by -1. Returned with s_bound 0. ResourceError when |A{𝔖ₙ}| · n! exceeds the limit.
TruncatedSeries brute_force_poincare(const SurfaceRing& ring, std::size_t n, std::uint64_t limit = kDefaultWorkLimit);

/// Coefficient of s^n as a polynomial in q, t (s_bound 0).
TruncatedSeries s_coefficient(const TruncatedSeries& a, std::uint32_t n);

/// Reads a polynomial in q, t back as dims keyed by (q-exponent, t-exponent).
/// Throws DataError if a coefficient is not a nonnegative integer.
BigradedDims dims_of_polynomial(const TruncatedSeries& poly);

struct SeriesDifference {
  Exponents term{};
  Rational left;
  Rational right;
};

struct SeriesComparison {
  bool equal = true;
  std::optional<SeriesDifference> first_difference;  // lexicographically first differing term
  std::uint32_t up_to = 0;

  CheckReport report() const;
};

/// Compares the terms with e_s <= up_to. UsageError if either series is truncated below up_to.
SeriesComparison compare_series(const TruncatedSeries& a, const TruncatedSeries& b, std::uint32_t up_to);

/// Renders s^a q^b t^c.
std::string monomial_str(const Exponents& e);

}  // namespace hilbperv
