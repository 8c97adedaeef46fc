#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbperv/matrix.hpp"
#include "hilbperv/rational.hpp"
#include "hilbperv/report.hpp"

namespace hilbperv {

struct BasisElement {
  std::string name;
  int degree = 0;      // cohomological degree, 0..4
  int perversity = 0;  // 0..2

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

enum class RingMode { compact, open };

std::string to_string(RingMode mode);

/// Sparse rational combination of ring basis elements, sorted by index.
class RingClass {
 public:
  using Term = std::pair<std::size_t, Rational>;

  RingClass() = default;
  static RingClass basis(std::size_t index, const Rational& coeff = Rational(1));

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(std::size_t index) const;

  void add(std::size_t index, const Rational& coeff);
  RingClass& operator+=(const RingClass& rhs);
  RingClass& operator*=(const Rational& c);
  friend RingClass operator*(const Rational& c, RingClass x) { return x *= c; }
  friend bool operator==(const RingClass& a, const RingClass& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
};

/// Element of A^{⊗m}: map from slot tuples of basis indices to coefficients.
class TensorClass {
 public:
  using Slots = std::vector<std::size_t>;

  explicit TensorClass(std::size_t arity = 0) : arity_(arity) {}

  std::size_t arity() const noexcept { return arity_; }
  const std::map<Slots, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Slots& slots) const;

  void add(const Slots& slots, const Rational& coeff);
  TensorClass& operator+=(const TensorClass& rhs);
  friend bool operator==(const TensorClass& a, const TensorClass& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t arity_;
  std::map<Slots, Rational> terms_;
};

/// Finite graded-commutative Q-algebra with perversity data: the input ring A.
///
/// Construction does not validate; use validate() or load_ring() for checked input.
class SurfaceRing {
 public:
  SurfaceRing() = default;
  /// products holds b_i * b_j at index i * dim + j.
  SurfaceRing(std::string name, RingMode mode, std::vector<BasisElement> basis, std::size_t unit,
              std::vector<RingClass> products, std::optional<Matrix> pairing, RingClass euler,
              std::optional<std::vector<TensorClass>> diag2);

  const std::string& name() const noexcept { return name_; }
  RingMode mode() const noexcept { return mode_; }
  bool is_compact() const noexcept { return mode_ == RingMode::compact; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  const BasisElement& basis(std::size_t i) const { return basis_[i]; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  int perversity(std::size_t i) const { return basis_[i].perversity; }
  bool is_odd(std::size_t i) const { return (basis_[i].degree & 1) != 0; }
  bool has_odd_classes() const noexcept { return has_odd_; }
  std::size_t unit() const noexcept { return unit_; }

  const RingClass& product(std::size_t i, std::size_t j) const { return products_[i * basis_.size() + j]; }
  RingClass multiply(const RingClass& x, const RingClass& y) const;

  const std::optional<Matrix>& pairing() const noexcept { return pairing_; }
  /// <x, y> through the pairing matrix; ModeError when the ring has none.
  Rational pair(const RingClass& x, const RingClass& y) const;
  /// Row i holds the coordinates of the dual basis element α_i, <α_i, b_j> = δ_ij.
  /// Empty unless the pairing is present and invertible.
  const std::optional<Matrix>& dual_basis() const noexcept { return dual_; }

  const RingClass& euler() const noexcept { return euler_; }
  const std::optional<std::vector<TensorClass>>& diag2() const noexcept { return diag2_; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws ParseError for unknown names.
  std::size_t index_of(const std::string& name) const;

  /// Parity of a homogeneous class given by its support; false for zero.
  bool is_odd(const RingClass& x) const { return !x.is_zero() && is_odd(x.terms().front().first); }

  std::string render(const RingClass& x) const;
  std::string render(const TensorClass& x) const;

  friend bool operator==(const SurfaceRing& a, const SurfaceRing& b);

 private:
  std::string name_;
  RingMode mode_ = RingMode::compact;
  std::vector<BasisElement> basis_;
  std::size_t unit_ = 0;
  std::vector<RingClass> products_;
  std::optional<Matrix> pairing_;
  std::optional<Matrix> dual_;
  RingClass euler_;
  std::optional<std::vector<TensorClass>> diag2_;
  bool has_odd_ = false;
};

/// Runs every structural check on the ring; violations become report entries.
CheckReport validate(const SurfaceRing& ring);

/// Δ_{m,*}(γ) in A^{⊗m}. Compact rings use the dual-basis formula, open rings the diag2 table.
TensorClass diagonal_push(const SurfaceRing& ring, std::size_t m, const RingClass& gamma);

/// Sign (-1)^{Σ_{i<j, order[i] > order[j]} odd_i odd_j} for putting factors in the given order.
/// order[k] is the target position of the k-th factor.
int koszul_sign(const std::vector<std::size_t>& order, const std::vector<bool>& odd);

}  // namespace hilbperv
