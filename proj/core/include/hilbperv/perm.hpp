#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hilbperv {

/// Largest n for which a Perm can be represented.
inline constexpr std::size_t kMaxPoints = 12;
/// Default cap on n for full enumeration of the symmetric group.
inline constexpr std::size_t kDefaultEnumerationLimit = 8;

/// Permutation of {0, ..., n-1}; rendered 1-based in cycle notation.
class Perm {
 public:
  Perm() = default;

  static Perm identity(std::size_t n);
  /// Images given 1-based, e.g. {2, 1, 3} for (1 2) in S_3. Throws UsageError if not a bijection.
  static Perm from_images(const std::vector<std::size_t>& one_based);
  /// Parses cycle notation such as "(1 2)(3 4 5)" or "id" as an element of S_n.
  static Perm parse_cycles(std::string_view text, std::size_t n);
  /// The r-th permutation of S_n in lexicographic order of image sequences.
  static Perm unrank(std::size_t n, std::uint64_t r);

  std::size_t size() const noexcept { return n_; }
  std::size_t operator()(std::size_t i) const noexcept { return img_[i]; }
  std::vector<std::size_t> images() const;  // 1-based

  bool is_identity() const noexcept;
  Perm inverse() const;
  /// Position of this permutation in the lexicographic enumeration of S_n.
  std::uint64_t rank() const noexcept;

  /// "(1 2)(3 4 5)"; "id" for the identity. Fixed points are omitted.
  std::string cycle_notation() const;

  friend bool operator==(const Perm& a, const Perm& b) noexcept {
    return a.n_ == b.n_ && a.img_ == b.img_;
  }
  friend bool operator!=(const Perm& a, const Perm& b) noexcept { return !(a == b); }
  friend bool operator<(const Perm& a, const Perm& b) noexcept {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.img_ < b.img_;
  }

  friend Perm compose(const Perm& a, const Perm& b);
  friend Perm conjugate(const Perm& t, const Perm& s);

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxPoints> img_{};
};

/// (a ∘ b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
/// t s t^{-1}.
Perm conjugate(const Perm& t, const Perm& s);

/// Cycle type 1^{a_1} 2^{a_2} ... n^{a_n}; multiplicities()[i-1] = a_i.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::size_t> multiplicities);

  const std::vector<std::size_t>& multiplicities() const noexcept { return a_; }
  std::size_t multiplicity(std::size_t part) const noexcept {
    return part >= 1 && part <= a_.size() ? a_[part - 1] : 0;
  }
  /// Σ i a_i.
  std::size_t weight() const noexcept;
  /// Σ a_i.
  std::size_t length() const noexcept;
  /// Σ (i-1) a_i.
  std::size_t shift() const noexcept { return weight() - length(); }
  /// "1^0 2^1 3^1" style, all parts up to n listed.
  std::string str() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.a_ == b.a_; }

 private:
  std::vector<std::size_t> a_;
};

/// All partitions of n, as multiplicity vectors of length n.
std::vector<Partition> partitions_of(std::size_t n);

/// Set partition of {0..n-1}: blocks sorted internally and ordered by minimal element.
class OrbitPartition {
 public:
  OrbitPartition() = default;
  /// Builds from a block label per point; labels are renumbered canonically.
  static OrbitPartition from_labels(const std::vector<std::size_t>& labels);

  std::size_t points() const noexcept { return block_of_.size(); }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t k) const { return blocks_[k]; }
  std::size_t block_of(std::size_t point) const { return block_of_[point]; }

  /// True if every block of this partition lies inside a block of other.
  bool refines(const OrbitPartition& other) const;

  /// "{1,2},{3}" style, 1-based.
  std::string str() const;

  friend bool operator==(const OrbitPartition& a, const OrbitPartition& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Orbits of the group generated by gens acting on {0..n-1}.
OrbitPartition orbits(const std::vector<Perm>& gens, std::size_t n);
/// Orbits restricted to a carrier subset; throws UsageError if a generator does not preserve it.
/// Block indices of the result refer to positions within the sorted carrier.
std::vector<std::vector<std::size_t>> orbits_on(const std::vector<Perm>& gens, std::size_t n,
                                                const std::vector<std::size_t>& carrier);

/// Values of the graph defect on the orbits of <s, t>.
struct GraphDefect {
  OrbitPartition orbits;     // orbits of <s, t>
  std::vector<int> values;   // values[k] for block k
};

/// g(E) = (|E| + 2 - |<s>\E| - |<t>\E| - |<st>\E|) / 2 on each orbit E of <s, t>.
/// Throws InvariantViolation on a negative or half-integral value.
GraphDefect graph_defect(const Perm& s, const Perm& t);

Partition cycle_type(const Perm& s);

/// All of S_n in lexicographic order. Throws ResourceError when n > limit.
std::vector<Perm> enumerate_sn(std::size_t n, std::size_t limit = kDefaultEnumerationLimit);
/// Streaming variant; visits each permutation once in lexicographic order.
void for_each_perm(std::size_t n, const std::function<void(const Perm&)>& visit,
                   std::size_t limit = kDefaultEnumerationLimit);

std::uint64_t factorial(std::size_t n);

}  // namespace hilbperv
