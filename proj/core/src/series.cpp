#include "hilbperv/series.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "hilbperv/errors.hpp"

namespace hilbperv {
namespace {

void require_same_bound(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (a.s_bound() != b.s_bound()) {
    throw UsageError(std::string(op) + ": mismatched s_bound " + std::to_string(a.s_bound()) + " vs " +
                                std::to_string(b.s_bound()));
  }
}

Rational power(const Rational& base, std::uint32_t e) {
  Rational r(1);
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::uint32_t parse_u32(std::string_view tok, std::size_t line_no) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": exponent '" + std::string(tok) +
                     "' is not a nonnegative integer");
  }
  return v;
}

}  // namespace

TruncatedSeries TruncatedSeries::one(std::uint32_t s_bound) {
  return monomial(Rational(1), {0, 0, 0}, s_bound);
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, Exponents e, std::uint32_t s_bound) {
  TruncatedSeries r(s_bound);
  r.add_term(e, c);
  return r;
}

Rational TruncatedSeries::coefficient(Exponents e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(Exponents e, const Rational& c) {
  if (e[0] > s_bound_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::s_part(std::uint32_t e_s) const {
  TruncatedSeries r(s_bound_);
  auto lo = terms_.lower_bound({e_s, 0, 0});
  for (auto it = lo; it != terms_.end() && it->first[0] == e_s; ++it) r.terms_.insert(*it);
  return r;
}

TruncatedSeries TruncatedSeries::truncate(std::uint32_t s_bound) const {
  TruncatedSeries r(s_bound);
  for (const auto& [e, c] : terms_) {
    if (e[0] <= s_bound) r.terms_.emplace(e, c);
  }
  return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  require_same_bound(*this, rhs, "series_add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  require_same_bound(*this, rhs, "series_add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(*this);
  for (auto& [e, c] : r.terms_) c.negate();
  return r;
}

std::string TruncatedSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = e[0] == 0 && e[1] == 0 && e[2] == 0;
    bool wrote = false;
    if (!mag.is_one() || constant) {
      os << mag;
      wrote = true;
    }
    const char* names[3] = {"s", "q", "t"};
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (wrote) os << "*";
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries r(a);
  r += b;
  return r;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries r(a);
  r -= b;
  return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_bound(a, b, "series_mul");
  TruncatedSeries r(a.s_bound());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      std::uint32_t es = ea[0] + eb[0];
      if (es > a.s_bound()) break;  // b's terms are sorted by e_s
      r.add_term({es, ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return r;
}

TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c) {
  TruncatedSeries r(a.s_bound());
  if (c.is_zero()) return r;
  for (const auto& [e, v] : a.terms()) r.add_term(e, v * c);
  return r;
}

TruncatedSeries geometric_factor(const Rational& c, std::uint32_t e_s, std::uint32_t e_q, std::uint32_t e_t,
                                 int sign, std::int64_t exponent, std::uint32_t s_bound) {
  if (sign != 1 && sign != -1) throw UsageError("geometric_factor: sign must be +1 or -1");
  TruncatedSeries r = TruncatedSeries::one(s_bound);
  if (exponent == 0 || c.is_zero()) return r;
  if (e_s == 0 && exponent < 0) {
    throw DivergenceError("geometric_factor: negative exponent on a factor without s");
  }
  Rational y = sign > 0 ? c : -c;
  // (1 + y m)^k = sum_j C(k, j) y^j m^j, with C(-k, j) = (-1)^j C(k + j - 1, j)
  std::int64_t max_j = exponent > 0 ? exponent : std::numeric_limits<std::int64_t>::max();
  if (e_s > 0) max_j = std::min<std::int64_t>(max_j, s_bound / e_s);
  for (std::int64_t j = 1; j <= max_j; ++j) {
    Rational coeff;
    if (exponent > 0) {
      coeff = binomial(exponent, j);
    } else {
      std::int64_t k = -exponent;
      coeff = binomial(k + j - 1, j);
      if (j % 2 == 1) coeff.negate();
    }
    coeff *= power(y, static_cast<std::uint32_t>(j));
    auto uj = static_cast<std::uint32_t>(j);
    r.add_term({e_s * uj, e_q * uj, e_t * uj}, coeff);
  }
  return r;
}

TruncatedSeries specialize(const TruncatedSeries& a, const std::optional<Rational>& q_value,
                           const std::optional<Rational>& t_value) {
  TruncatedSeries r(a.s_bound());
  for (const auto& [e, c] : a.terms()) {
    Exponents out = e;
    Rational coeff = c;
    if (q_value) {
      coeff *= power(*q_value, e[1]);
      out[1] = 0;
    }
    if (t_value) {
      coeff *= power(*t_value, e[2]);
      out[2] = 0;
    }
    r.add_term(out, coeff);
  }
  return r;
}

std::string format_series(const TruncatedSeries& a) {
  std::ostringstream os;
  os << "series s_bound=" << a.s_bound() << "\n";
  for (const auto& [e, c] : a.terms()) {
    os << c.fraction_str() << " " << e[0] << " " << e[1] << " " << e[2] << "\n";
  }
  return os.str();
}

TruncatedSeries parse_series(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<TruncatedSeries> result;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!result) {
      if (toks.size() != 2 || toks[0] != "series" || toks[1].rfind("s_bound=", 0) != 0) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'series s_bound=<N>'");
      }
      result.emplace(parse_u32(std::string_view(toks[1]).substr(8), line_no));
      continue;
    }
    if (toks.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) + ": expected '<num>/<den> <e_s> <e_q> <e_t>'");
    }
    Rational c = Rational::parse(toks[0]);
    Exponents e{parse_u32(toks[1], line_no), parse_u32(toks[2], line_no), parse_u32(toks[3], line_no)};
    if (e[0] > result->s_bound()) {
      throw ParseError("line " + std::to_string(line_no) + ": term exceeds declared s_bound");
    }
    if (result->terms().count(e) != 0) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate exponent triple");
    }
    result->add_term(e, c);
  }
  if (!result) throw ParseError("missing 'series s_bound=<N>' header");
  return *result;
}

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& a) { return os << a.str(); }

}  // namespace hilbperv
