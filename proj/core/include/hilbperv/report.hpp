#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hilbperv {

/// One violating input of a check.
struct Witness {
  std::string check;                  // property that failed
  std::vector<std::string> inputs;    // rendered inputs
  std::string expected;
  std::string actual;
  std::optional<std::int64_t> bound;  // perversity bound, when the check is a bound
  std::optional<std::int64_t> value;  // observed perversity

  /// value - bound when both are present; used to put the worst violation first.
  std::int64_t excess() const;
};

/// Outcome of a property suite.
class CheckReport {
 public:
  CheckReport() = default;
  explicit CheckReport(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const noexcept { return suite_; }
  bool passed() const noexcept { return violations_ == 0 && !forced_failure_; }
  std::uint64_t violations() const noexcept { return violations_; }
  std::uint64_t checked() const noexcept { return checked_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }
  const std::vector<std::pair<std::string, std::string>>& details() const noexcept { return details_; }

  void add_checked(std::uint64_t count = 1) noexcept { checked_ += count; }
  /// Records a violation; only the first max_witnesses are stored, all are counted.
  void add_violation(Witness w);
  /// Marks the suite failed without a per-input witness (the reason goes in the details).
  void fail(const std::string& reason);
  /// Appends or replaces a key/value line (mode, seed, determinant, ...).
  void set_detail(const std::string& key, const std::string& value);
  std::optional<std::string> detail(const std::string& key) const;

  /// Adds counts and witnesses of another partial report of the same suite.
  void merge(const CheckReport& other);
  /// Sorts witnesses by decreasing excess, then lexicographically by inputs.
  void sort_witnesses();

  std::string to_text() const;
  std::string to_json() const;

  static constexpr std::size_t max_witnesses = 64;

 private:
  std::string suite_;
  std::uint64_t checked_ = 0;
  std::uint64_t violations_ = 0;
  bool forced_failure_ = false;
  std::vector<Witness> witnesses_;
  std::vector<std::pair<std::string, std::string>> details_;
};

}  // namespace hilbperv
