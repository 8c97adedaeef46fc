#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbperv/check_options.hpp"
#include "hilbperv/report.hpp"
#include "hilbperv/wreath.hpp"

namespace hilbperv {

/// A perversity, or bottom (-∞) for the zero class. Bottom compares below every value.
class PerversityValue {
 public:
  PerversityValue() = default;  // bottom
  explicit PerversityValue(int value) : value_(value) {}
  static PerversityValue bottom() { return PerversityValue(); }

  bool is_bottom() const noexcept { return !value_; }
  /// Throws std::bad_optional_access on bottom.
  int value() const { return value_.value(); }
  /// "-inf" or the integer.
  std::string str() const;

  friend bool operator==(const PerversityValue& a, const PerversityValue& b) { return a.value_ == b.value_; }
  friend bool operator<(const PerversityValue& a, const PerversityValue& b) {
    if (!a.value_) return b.value_.has_value();
    return b.value_ && *a.value_ < *b.value_;
  }
  friend bool operator<=(const PerversityValue& a, const PerversityValue& b) { return !(b < a); }

 private:
  std::optional<int> value_;
};

/// Σ p(factors) + Σ (i-1) a_i for the cycle type of σ.
PerversityValue perversity(const WreathAlgebra& algebra, const WreathElement& x);
/// Largest perversity over the support; bottom for zero.
PerversityValue perversity_class(const WreathAlgebra& algebra, const WreathClass& x);

/// p(x·y) <= p(x) + p(y) over basis pairs of A{𝔖ₙ}. Pairs above the top degree multiply to zero and
/// satisfy the bound trivially; they are counted but not multiplied.
CheckReport check_multiplicativity(const WreathAlgebra& algebra, const CheckOptions& options = {});

/// Every term of Δ_m(γ) has perversity sum at most p(γ) + 2(m - 1), for basis γ and 2 <= m <= m_max.
CheckReport check_diagonal_bound(const SurfaceRing& ring, std::size_t m_max);

/// Graded dimensions keyed by (filtration index, degree).
using BigradedTable = std::map<std::pair<int, int>, std::int64_t>;

/// Dimensions dim Gr_p H^d of a ring, read off its filtered basis.
BigradedTable perverse_table(const SurfaceRing& ring);

/// Gr^W_{2k} H^d = Gr^P_k H^d and Gr^W_{2k+1} = 0; returns only nonzero entries keyed by (w, d).
BigradedTable pw_transport(const BigradedTable& perverse);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Passes iff det(M - I) != 0 for a 2x2 integer monodromy matrix. Wrong shape: UsageError.
CheckReport check_monodromy_vanishing(const IntMatrix& m);

/// Passes iff det M != 0; the determinant is recorded under "determinant". Non-square: UsageError.
CheckReport check_intersection_nondegenerate(const IntMatrix& m);

/// Local monodromies of the rank-2 local systems for the D4, E6, E7, E8 families, in that order.
std::vector<std::pair<std::string, IntMatrix>> family_monodromies();

/// Intersection matrix of the three lines of the removed triangle.
IntMatrix triangle_intersection_matrix();

}  // namespace hilbperv
