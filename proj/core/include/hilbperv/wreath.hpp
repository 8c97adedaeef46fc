#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hilbperv/perm.hpp"
#include "hilbperv/rational.hpp"
#include "hilbperv/surface_ring.hpp"

namespace hilbperv {

/// Basis element a·σ of A{S_n}: one ring basis element per <σ>-orbit, orbits in canonical order.
struct WreathElement {
  Perm sigma;
  std::array<std::uint8_t, kMaxPoints> factors{};  // entries past the orbit count are zero

  friend bool operator==(const WreathElement& a, const WreathElement& b) {
    return a.sigma == b.sigma && a.factors == b.factors;
  }
  friend bool operator!=(const WreathElement& a, const WreathElement& b) { return !(a == b); }
  friend bool operator<(const WreathElement& a, const WreathElement& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return a.factors < b.factors;
  }
};

struct SignedElement {
  WreathElement element;
  int sign = 1;
};

/// Rational combination of wreath basis elements; terms sorted, no zero coefficients.
class WreathClass {
 public:
  using Term = std::pair<WreathElement, Rational>;

  WreathClass() = default;
  static WreathClass of(const WreathElement& x, const Rational& c = Rational(1));

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const WreathElement& x) const;

  void add(const WreathElement& x, const Rational& c);
  WreathClass& operator+=(const WreathClass& rhs);
  WreathClass& operator-=(const WreathClass& rhs);
  WreathClass& operator*=(const Rational& c);

  /// Builds from unsorted terms, merging duplicates.
  static WreathClass from_terms(std::vector<Term> terms);

  friend bool operator==(const WreathClass& a, const WreathClass& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const WreathClass& a, const WreathClass& b) { return !(a == b); }

 private:
  std::vector<Term> terms_;
};

/// Tensor over the orbits of a partition: one slot per block, blocks in canonical order.
struct OrbitTensor {
  OrbitPartition partition;
  TensorClass tensor;
};

/// Lehn's algebra A{S_n} over a fixed surface ring.
///
/// Holds per-permutation orbit data and the iterated diagonal tables needed by the cup product.
/// Immutable after construction and safe to share between threads.
class WreathAlgebra {
 public:
  WreathAlgebra(SurfaceRing ring, std::size_t n);
  ~WreathAlgebra();
  WreathAlgebra(const WreathAlgebra&) = delete;
  WreathAlgebra& operator=(const WreathAlgebra&) = delete;

  const SurfaceRing& ring() const noexcept { return ring_; }
  std::size_t n() const noexcept { return n_; }
  const std::vector<Perm>& perms() const noexcept { return perms_; }

  std::size_t orbit_count(const Perm& s) const;
  const OrbitPartition& orbit_partition(const Perm& s) const;

  /// Number of basis elements of A{S_n}.
  std::uint64_t dimension() const noexcept { return total_dim_; }
  /// Position of x in the enumeration order of basis().
  std::uint64_t index_of(const WreathElement& x) const;
  WreathElement element_at(std::uint64_t index) const;
  /// All basis elements: permutations in lexicographic order, factor tuples lexicographically.
  std::vector<WreathElement> basis() const;

  int degree(const WreathElement& x) const;
  /// Σ p(factors) + Σ (i-1) a_i for the cycle type 1^{a_1}...n^{a_n} of σ.
  int perversity(const WreathElement& x) const;
  bool parity_odd(const WreathElement& x) const { return (degree(x) & 1) != 0; }

  /// 1·id.
  WreathElement unit() const;
  /// Element with the given factor on each orbit (canonical order). Throws UsageError on size mismatch.
  WreathElement make(const Perm& sigma, const std::vector<std::size_t>& factors) const;

  /// τ·(aσ) = ±τ^*(a)·τστ^{-1}, sign from reordering odd factors.
  SignedElement act(const Perm& tau, const WreathElement& x) const;
  WreathClass act(const Perm& tau, const WreathClass& x) const;

  /// Lehn's product m_{σ,τ}.
  WreathClass cup(const WreathElement& x, const WreathElement& y) const;
  WreathClass cup(const WreathClass& x, const WreathClass& y) const;

  /// (1/n!) Σ_τ τ·x.
  WreathClass invariant_project(const WreathClass& x) const;

  /// Orbit sum of x if the orbit survives (no stabilizer element acts by -1), else zero.
  WreathClass orbit_sum(const WreathElement& x) const;

  /// Parses "factor@point,...;cycles". Orbits without an explicit factor carry the unit;
  /// factors without "@point" fill the remaining orbits in canonical order.
  WreathElement parse_element(std::string_view spec) const;
  /// "E1{1} ⊗ E2{2,3}" style rendering of the factors with their orbits.
  std::string render_factors(const WreathElement& x) const;
  /// "<coeff> * [<factors>] * <cycles>" per term, joined by " + ".
  std::string render(const WreathElement& x) const;
  std::string render(const WreathClass& x) const;
  /// Compact spec syntax accepted by parse_element.
  std::string spec_string(const WreathElement& x) const;

  /// Per-(σ, τ) data for repeated products with the same permutations; cached for small n.
  class Plan;
  std::shared_ptr<const Plan> plan(const Perm& s, const Perm& t) const;
  WreathClass cup(const Plan& plan, const WreathElement& x, const WreathElement& y) const;

  /// Iterated diagonal Δ_m of a ring basis element, as cached by the algebra.
  const std::vector<std::pair<std::vector<std::uint8_t>, Rational>>& diagonal(std::size_t m, std::size_t g) const;

 private:
  struct PermData;
  const PermData& data(const Perm& s) const;
  std::shared_ptr<const Plan> build_plan(const Perm& s, const Perm& t) const;

  SurfaceRing ring_;
  std::size_t n_;
  std::vector<Perm> perms_;
  std::vector<PermData> perm_data_;
  std::uint64_t total_dim_ = 0;
  // ring products in compact form: index i * dim + j
  std::vector<std::vector<std::pair<std::uint8_t, Rational>>> products_;
  std::vector<bool> odd_;
  std::vector<std::pair<std::uint8_t, Rational>> euler_;
  // diag_[m][g]: Δ_m(b_g) for 2 <= m <= n
  std::vector<std::vector<std::vector<std::pair<std::vector<std::uint8_t>, Rational>>>> diag_;
  // plans_[rank σ * n! + rank τ], filled for n <= kPlanCacheMaxN
  std::vector<std::shared_ptr<const Plan>> plans_;
  static constexpr std::size_t kPlanCacheMaxN = 5;
};

/// f^{H,K}: multiplies the factors of the H-blocks inside each K-block, in canonical order with Koszul signs.
OrbitTensor pullback_merge(const SurfaceRing& ring, const OrbitTensor& x, const OrbitPartition& target);

/// f_{K,H}: applies Δ_m to each K-block splitting into m H-blocks and reorders into canonical H order.
OrbitTensor pushforward_split(const SurfaceRing& ring, const OrbitTensor& x, const OrbitPartition& target);

}  // namespace hilbperv
