#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hilbperv/rational.hpp"

namespace hilbperv {

/// Exponents (e_s, e_q, e_t) of a monomial s^a q^b t^c.
using Exponents = std::array<std::uint32_t, 3>;

/// Sparse polynomial in s, q, t with rational coefficients, truncated above
/// a fixed s-degree. Terms iterate in lexicographic order of (e_s, e_q, e_t).
class TruncatedSeries {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit TruncatedSeries(std::uint32_t s_bound = 0) : s_bound_(s_bound) {}

  static TruncatedSeries one(std::uint32_t s_bound);
  static TruncatedSeries monomial(const Rational& c, Exponents e, std::uint32_t s_bound);

  std::uint32_t s_bound() const noexcept { return s_bound_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of s^a q^b t^c (zero when absent).
  Rational coefficient(Exponents e) const;

  /// Adds c to the coefficient of the given monomial; ignored above s_bound.
  void add_term(Exponents e, const Rational& c);

  /// The part of s-degree exactly e_s, with the same s_bound.
  TruncatedSeries s_part(std::uint32_t e_s) const;

  /// Same terms, lower truncation bound.
  TruncatedSeries truncate(std::uint32_t s_bound) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries operator-() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.s_bound_ == b.s_bound_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  /// Human-readable rendering such as "1 + 4*s*q*t^2".
  std::string str() const;

 private:
  std::uint32_t s_bound_;
  TermMap terms_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c);

/// Expansion of (1 + sign * c * s^e_s q^e_q t^e_t)^exponent up to s_bound.
TruncatedSeries geometric_factor(const Rational& c, std::uint32_t e_s, std::uint32_t e_q, std::uint32_t e_t,
                                 int sign, std::int64_t exponent, std::uint32_t s_bound);

/// Substitutes values for q and/or t; std::nullopt keeps the variable.
TruncatedSeries specialize(const TruncatedSeries& a, const std::optional<Rational>& q_value,
                           const std::optional<Rational>& t_value);

/// Text serialization: header "series s_bound=N", then "num/den e_s e_q e_t" per term.
std::string format_series(const TruncatedSeries& a);
TruncatedSeries parse_series(std::string_view text);

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& a);

}  // namespace hilbperv
