#include "hilbperv/rational.hpp"

#include <limits>
#include <ostream>

#include "hilbperv/errors.hpp"

namespace hilbperv {
namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  auto hi = static_cast<std::uint64_t>(u >> 64);
  auto lo = static_cast<std::uint64_t>(u);
  mpz_class r = hi;
  r <<= 64;
  r += mpz_class(static_cast<unsigned long>(lo));
  if (neg) r = -r;
  return r;
}

bool mpz_fits(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t mpz_to_i64(const mpz_class& z) {
  return static_cast<std::int64_t>(z.get_si());
}

}  // namespace

void Rational::set_min() noexcept {
  num_ = 0;
  big_ = std::make_unique<mpq_class>(mpz_class(to_mpz(kMin)));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  set_from_wide(num, den);
}

Rational::Rational(const mpq_class& value) { set_from_mpq(value); }

void Rational::copy_big(const Rational& other) { big_ = std::make_unique<mpq_class>(*other.big_); }

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpq_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::set_from_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (fits(num) && fits(den)) {
    big_.reset();
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::set_from_mpq(mpq_class value) {
  value.canonicalize();
  if (mpz_fits(value.get_num()) && mpz_fits(value.get_den())) {
    num_ = mpz_to_i64(value.get_num());
    den_ = mpz_to_i64(value.get_den());
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  if (big_) {
    *big_ = std::move(value);
  } else {
    big_ = std::make_unique<mpq_class>(std::move(value));
  }
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash) throw ParseError("malformed rational literal '" + s + "'");
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw ParseError("malformed rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    throw ParseError("malformed rational literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(q);
}

bool Rational::is_integer() const {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }

mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::int64_t Rational::to_int64() const {
  if (big_) {
    if (big_->get_den() != 1 || !mpz_fits(big_->get_num())) {
      throw InvariantViolation("rational " + str() + " is not a 64-bit integer");
    }
    return mpz_to_i64(big_->get_num());
  }
  if (den_ != 1) throw InvariantViolation("rational " + str() + " is not an integer");
  return num_;
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::fraction_str() const {
  if (big_) return big_->get_num().get_str(10) + "/" + big_->get_den().get_str(10);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

void Rational::negate() noexcept {
  if (big_) {
    mpq_neg(big_->get_mpq_t(), big_->get_mpq_t());
  } else {
    num_ = -num_;
  }
}

Rational Rational::operator-() const {
  Rational r(*this);
  r.negate();
  return r;
}

Rational& Rational::add_slow(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
    i128 d = static_cast<i128>(den_) * rhs.den_;
    set_from_wide(n, d);
    return *this;
  }
  set_from_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t out;
      if (!__builtin_sub_overflow(num_, rhs.num_, &out) && out != std::numeric_limits<std::int64_t>::min()) {
        num_ = out;
        return *this;
      }
    }
    i128 n = static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_;
    i128 d = static_cast<i128>(den_) * rhs.den_;
    set_from_wide(n, d);
    return *this;
  }
  set_from_mpq(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::mul_slow(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t g1 = gcd64(num_, rhs.den_);
    std::int64_t g2 = gcd64(rhs.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
    set_from_wide(n, d);
    return *this;
  }
  set_from_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw UsageError("division by zero rational");
  if (!big_ && !rhs.big_) {
    std::int64_t g1 = gcd64(num_, rhs.num_);
    std::int64_t g2 = gcd64(den_, rhs.den_);
    if (g1 == 0) g1 = 1;
    i128 n = static_cast<i128>(num_ / g1) * (rhs.den_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (rhs.num_ / g1);
    set_from_wide(n, d);
    return *this;
  }
  set_from_mpq(to_mpq() / rhs.to_mpq());
  return *this;
}

bool Rational::big_equal(const Rational& a, const Rational& b) {
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical forms differ in representation only when values differ
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw UsageError("binomial with negative n");
  if (k < 0 || k > n) return Rational(0);
  if (k > n - k) k = n - k;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(mpq_class(r));
}

}  // namespace hilbperv
