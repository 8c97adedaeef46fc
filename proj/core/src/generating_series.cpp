#include "hilbperv/generating_series.hpp"

#include <sstream>

#include "hilbperv/errors.hpp"
#include "hilbperv/perm.hpp"
#include "hilbperv/wreath.hpp"

namespace hilbperv {

SeriesSpec SeriesSpec::parse(std::string_view label, std::uint32_t s_bound) {
  SeriesSpec spec;
  spec.s_bound = s_bound;
  if (label == "a0") {
    spec.kind = Case::a0;
    return spec;
  }
  for (int k : {4, 6, 7, 8}) {
    if (label == "dynkin" + std::to_string(k)) {
      spec.kind = Case::dynkin;
      spec.k = k;
      return spec;
    }
  }
  throw UsageError("unknown series case '" + std::string(label) + "' (expected a0, dynkin4, dynkin6, dynkin7, dynkin8)");
}

std::string SeriesSpec::label() const {
  switch (kind) {
    case Case::a0:
      return "a0";
    case Case::dynkin:
      return "dynkin" + std::to_string(k);
    case Case::ring:
      return "ring";
  }
  return "ring";
}

TruncatedSeries closed_form(const SeriesSpec& spec) {
  const std::uint32_t N = spec.s_bound;
  if (spec.kind == SeriesSpec::Case::ring) return refined_goettsche(spec.dims, N);
  if (spec.kind == SeriesSpec::Case::dynkin && spec.k != 4 && spec.k != 6 && spec.k != 7 && spec.k != 8) {
    throw UsageError("dynkin case needs k in {4, 6, 7, 8}");
  }
  TruncatedSeries r = TruncatedSeries::one(N);
  for (std::uint32_t m = 1; m <= N; ++m) {
    r = series_mul(r, geometric_factor(1, m, m - 1, 2 * m - 2, -1, -1, N));
    r = series_mul(r, geometric_factor(1, m, m + 1, 2 * m, -1, -1, N));
    if (spec.kind == SeriesSpec::Case::a0) {
      r = series_mul(r, geometric_factor(1, m, m, 2 * m - 1, 1, 2, N));
    } else {
      r = series_mul(r, geometric_factor(1, m, m, 2 * m, -1, -spec.k, N));
    }
  }
  return r;
}

TruncatedSeries refined_goettsche(const BigradedDims& dims, std::uint32_t s_bound) {
  TruncatedSeries r = TruncatedSeries::one(s_bound);
  for (std::uint32_t m = 1; m <= s_bound; ++m) {
    for (const auto& [key, dim] : dims) {
      if (dim == 0) continue;
      const auto [p, d] = key;
      if (p < 0 || d < 0) throw DataError("negative perversity or degree in dimension table");
      const bool odd = d % 2 != 0;
      r = series_mul(r, geometric_factor(1, m, static_cast<std::uint32_t>(p) + m - 1,
                                         static_cast<std::uint32_t>(d) + 2 * m - 2, odd ? 1 : -1, odd ? dim : -dim,
                                         s_bound));
    }
  }
  return r;
}

std::map<int, std::int64_t> betti_numbers(const BigradedDims& dims) {
  std::map<int, std::int64_t> out;
  for (const auto& [key, dim] : dims) out[key.second] += dim;
  return out;
}

TruncatedSeries betti_goettsche(const std::map<int, std::int64_t>& betti, std::uint32_t s_bound) {
  TruncatedSeries r = TruncatedSeries::one(s_bound);
  for (std::uint32_t m = 1; m <= s_bound; ++m) {
    for (const auto& [d, b] : betti) {
      if (b == 0) continue;
      if (d < 0) throw DataError("negative degree in Betti table");
      const bool odd = d % 2 != 0;
      r = series_mul(r, geometric_factor(1, m, 0, static_cast<std::uint32_t>(d) + 2 * m - 2, odd ? 1 : -1,
                                         odd ? b : -b, s_bound));
    }
  }
  return r;
}

namespace {

// Graded pieces of Sym^a(V) ⊗-summed over a <= max_a: coefficient of u^a stored under e_s = a.
// Each even piece of dimension k contributes C(k + j - 1, j) classes of j-fold products, each odd piece C(k, j).
TruncatedSeries super_symmetric_powers(const BigradedDims& dims, std::uint32_t max_a) {
  TruncatedSeries r = TruncatedSeries::one(max_a);
  for (const auto& [key, dim] : dims) {
    if (dim == 0) continue;
    const auto [p, d] = key;
    TruncatedSeries piece = TruncatedSeries::one(max_a);
    for (std::uint32_t j = 1; j <= max_a; ++j) {
      Rational count = d % 2 == 0 ? binomial(dim + j - 1, j) : binomial(dim, j);
      if (count.is_zero()) break;
      piece.add_term({j, static_cast<std::uint32_t>(p) * j, static_cast<std::uint32_t>(d) * j}, count);
    }
    r = series_mul(r, piece);
  }
  return r;
}

// Polynomial in q, t (e_s = 0) times q^a t^b.
TruncatedSeries shift(const TruncatedSeries& x, std::uint32_t a, std::uint32_t b) {
  TruncatedSeries r(0);
  for (const auto& [e, c] : x.terms()) r.add_term({0, e[1] + a, e[2] + b}, c);
  return r;
}

}  // namespace

TruncatedSeries s_coefficient(const TruncatedSeries& a, std::uint32_t n) {
  TruncatedSeries r(0);
  for (const auto& [e, c] : a.terms()) {
    if (e[0] == n) r.add_term({0, e[1], e[2]}, c);
  }
  return r;
}

TruncatedSeries partition_sum(const BigradedDims& dims, std::size_t n) {
  const auto N = static_cast<std::uint32_t>(n);
  TruncatedSeries total(0);
  if (n == 0) return TruncatedSeries::one(0);
  const TruncatedSeries powers = super_symmetric_powers(dims, N);
  std::vector<TruncatedSeries> sym(n + 1);
  for (std::uint32_t a = 0; a <= N; ++a) sym[a] = s_coefficient(powers, a);
  for (const Partition& nu : partitions_of(n)) {
    TruncatedSeries term = TruncatedSeries::one(0);
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t a = nu.multiplicity(i);
      if (a == 0) continue;
      term = series_mul(term, sym[a]);
    }
    const auto shift_q = static_cast<std::uint32_t>(nu.shift());
    total += shift(term, shift_q, 2 * shift_q);
  }
  return total;
}

TruncatedSeries brute_force_poincare(const SurfaceRing& ring, std::size_t n, std::uint64_t limit) {
  if (n == 0) return TruncatedSeries::one(0);
  WreathAlgebra algebra(ring, n);
  const std::uint64_t work = algebra.dimension() * factorial(n);
  if (work > limit) {
    throw ResourceError("brute-force count needs " + std::to_string(work) + " actions, limit is " +
                        std::to_string(limit));
  }
  TruncatedSeries r(0);
  const auto& perms = algebra.perms();
  for (std::uint64_t i = 0; i < algebra.dimension(); ++i) {
    const WreathElement x = algebra.element_at(i);
    bool minimal = true;
    bool vanishes = false;
    for (const Perm& tau : perms) {
      SignedElement s = algebra.act(tau, x);
      std::uint64_t j = algebra.index_of(s.element);
      if (j < i) {
        minimal = false;
        break;
      }
      if (j == i && s.sign < 0) vanishes = true;
    }
    if (!minimal || vanishes) continue;
    r.add_term({0, static_cast<std::uint32_t>(algebra.perversity(x)), static_cast<std::uint32_t>(algebra.degree(x))},
               Rational(1));
  }
  return r;
}

BigradedDims dims_of_polynomial(const TruncatedSeries& poly) {
  BigradedDims out;
  for (const auto& [e, c] : poly.terms()) {
    if (!c.is_integer() || c.sign() < 0) throw DataError("coefficient " + c.str() + " is not a dimension");
    out[{static_cast<int>(e[1]), static_cast<int>(e[2])}] += c.to_int64();
  }
  return out;
}

std::string monomial_str(const Exponents& e) {
  std::string out;
  const char* names[3] = {"s", "q", "t"};
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    out += names[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

SeriesComparison compare_series(const TruncatedSeries& a, const TruncatedSeries& b, std::uint32_t up_to) {
  if (a.s_bound() < up_to || b.s_bound() < up_to) {
    throw UsageError("series truncated at s^" + std::to_string(std::min(a.s_bound(), b.s_bound())) +
                     ", comparison needs s^" + std::to_string(up_to));
  }
  SeriesComparison out;
  out.up_to = up_to;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  auto in_range = [&](const auto& it, const auto& end) { return it != end && it->first[0] <= up_to; };
  while (in_range(ia, a.terms().end()) || in_range(ib, b.terms().end())) {
    const bool has_a = in_range(ia, a.terms().end());
    const bool has_b = in_range(ib, b.terms().end());
    if (has_a && has_b && ia->first == ib->first) {
      if (ia->second != ib->second) {
        out.equal = false;
        out.first_difference = SeriesDifference{ia->first, ia->second, ib->second};
        return out;
      }
      ++ia;
      ++ib;
    } else if (has_a && (!has_b || ia->first < ib->first)) {
      out.equal = false;
      out.first_difference = SeriesDifference{ia->first, ia->second, Rational(0)};
      return out;
    } else {
      out.equal = false;
      out.first_difference = SeriesDifference{ib->first, Rational(0), ib->second};
      return out;
    }
  }
  return out;
}

CheckReport SeriesComparison::report() const {
  CheckReport r("series-compare");
  r.add_checked();
  r.set_detail("up-to", std::to_string(up_to));
  if (!equal && first_difference) {
    Witness w;
    w.check = "coefficient";
    w.inputs = {monomial_str(first_difference->term)};
    w.expected = first_difference->left.str();
    w.actual = first_difference->right.str();
    r.add_violation(std::move(w));
  }
  return r;
}

}  // namespace hilbperv
