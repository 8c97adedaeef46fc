#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hilbperv {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 63 bits are stored inline;
/// anything larger moves to a GMP rational and moves back as soon as it fits
/// again. The stored form is always reduced with a positive denominator.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(std::int64_t value) noexcept : num_(value) {  // NOLINT(google-explicit-constructor)
    if (value == kMin) set_min();
  }
  Rational(int value) noexcept : Rational(static_cast<std::int64_t>(value)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) copy_big(other);
  }
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "a", "-a", "a/b" with decimal integers of any size.
  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const noexcept;
  bool is_small() const noexcept { return !big_; }

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  /// Integer value; throws if not an integer fitting in 64 bits.
  std::int64_t to_int64() const;

  /// "n" for integers, "n/d" otherwise.
  std::string str() const;
  /// Always "n/d", also for integers.
  std::string fraction_str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs) {
    std::int64_t out;
    if (small_integers(rhs) && !__builtin_add_overflow(num_, rhs.num_, &out) && out != kMin) {
      num_ = out;
      return *this;
    }
    return add_slow(rhs);
  }
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs) {
    std::int64_t out;
    if (small_integers(rhs) && !__builtin_mul_overflow(num_, rhs.num_, &out) && out != kMin) {
      num_ = out;
      return *this;
    }
    return mul_slow(rhs);
  }
  Rational& operator/=(const Rational& rhs);
  void negate() noexcept;

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return big_equal(a, b);
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static constexpr std::int64_t kMin = INT64_MIN;

  bool small_integers(const Rational& rhs) const noexcept {
    return !big_ && !rhs.big_ && den_ == 1 && rhs.den_ == 1;
  }
  void copy_big(const Rational& other);
  void set_min() noexcept;
  Rational& add_slow(const Rational& rhs);
  Rational& mul_slow(const Rational& rhs);
  static bool big_equal(const Rational& a, const Rational& b);
  __extension__ typedef __int128 Wide;
  void set_from_wide(Wide num, Wide den);
  void set_from_mpq(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

/// Binomial coefficient C(n, k) for nonnegative n; zero when k > n.
Rational binomial(std::int64_t n, std::int64_t k);

}  // namespace hilbperv
