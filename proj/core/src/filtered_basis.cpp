#include "hilbperv/filtered_basis.hpp"

#include <map>
#include <optional>
#include <utility>

#include "hilbperv/errors.hpp"

namespace hilbperv {
namespace {

using Key = std::pair<int, int>;  // (perversity, degree)

Key complement(Key k) { return {2 - k.first, 4 - k.second}; }

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  mpz_class num = x.numerator();
  mpz_class den = x.denominator();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

// Dense vectors over the full ring basis.
using Vec = std::vector<Rational>;

Vec to_vec(const RingClass& x, std::size_t dim) {
  Vec v(dim);
  for (const auto& [i, c] : x.terms()) v[i] = c;
  return v;
}

RingClass to_class(const Vec& v) {
  RingClass x;
  for (std::size_t i = 0; i < v.size(); ++i) x.add(i, v[i]);
  return x;
}

Rational pair_vec(const Matrix& G, const Vec& x, const Vec& y) {
  Rational r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!y[j].is_zero() && !G(i, j).is_zero()) r += x[i] * G(i, j) * y[j];
    }
  }
  return r;
}

void axpy(Vec& y, const Rational& a, const Vec& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!x[i].is_zero()) y[i] += a * x[i];
  }
}

// Diagonal ±1 basis of a symmetric nondegenerate block, by greedy search over small
// integer combinations projected onto the complement of the vectors already chosen.
std::vector<Vec> diagonalize(const Matrix& G, const std::vector<std::size_t>& members, std::vector<int>& signs) {
  const std::size_t dim = G.rows();
  const std::size_t k = members.size();
  std::vector<Vec> chosen;
  std::vector<int> norms;
  const int coeffs[] = {1, -1, 2, -2};

  auto try_candidate = [&](const std::vector<std::pair<std::size_t, int>>& combo) {
    Vec w(dim);
    for (const auto& [idx, c] : combo) w[members[idx]] = Rational(c);
    Vec v = w;
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      Rational proj = pair_vec(G, v, chosen[c]);
      if (norms[c] < 0) proj.negate();
      axpy(w, -proj, chosen[c]);
    }
    Rational n = pair_vec(G, w, w);
    if (n.is_zero()) return false;
    auto root = rational_sqrt(n.sign() > 0 ? n : -n);
    if (!root) return false;
    Rational inv = Rational(1) / *root;
    for (auto& x : w) x *= inv;
    chosen.push_back(std::move(w));
    norms.push_back(n.sign());
    return true;
  };

  for (std::size_t support = 1; support <= 3 && chosen.size() < k; ++support) {
    bool progress = true;
    while (progress && chosen.size() < k) {
      progress = false;
      std::vector<std::size_t> idx(support);
      for (std::size_t i = 0; i < support; ++i) idx[i] = i;
      while (chosen.size() < k) {
        if (idx.back() >= k) break;
        // first coefficient is taken positive; signs of the rest range over coeffs
        std::size_t combos = 1;
        for (std::size_t i = 1; i < support; ++i) combos *= 4;
        for (int lead : {1, 2}) {
          for (std::size_t code = 0; code < combos && chosen.size() < k; ++code) {
            std::vector<std::pair<std::size_t, int>> combo{{idx[0], lead}};
            std::size_t rest = code;
            for (std::size_t i = 1; i < support; ++i) {
              combo.emplace_back(idx[i], coeffs[rest % 4]);
              rest /= 4;
            }
            if (try_candidate(combo)) progress = true;
          }
        }
        // next combination of indices
        std::size_t pos = support;
        while (pos > 0 && idx[pos - 1] == k - support + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < support; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  if (chosen.size() < k) {
    throw DataError("could not find a diagonal basis with entries +1/-1 for the middle block");
  }
  signs = norms;
  return chosen;
}

}  // namespace

std::size_t FilteredBasis::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.elements.size();
  return n;
}

const FilteredBasis::Block* FilteredBasis::find(int perversity, int degree) const {
  for (const auto& b : blocks) {
    if (b.perversity == perversity && b.degree == degree) return &b;
  }
  return nullptr;
}

FilteredBasis filtered_basis(const SurfaceRing& ring) {
  if (!ring.is_compact() || !ring.pairing()) {
    throw ModeError("filtered basis needs a compact ring with a pairing; '" + ring.name() + "' has none");
  }
  const Matrix& G = *ring.pairing();
  const std::size_t dim = ring.dim();

  std::map<Key, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < dim; ++i) members[{ring.perversity(i), ring.degree(i)}].push_back(i);
  for (const auto& [key, list] : members) {
    auto it = members.find(complement(key));
    std::size_t other = it == members.end() ? 0 : it->second.size();
    if (other != list.size()) {
      throw DataError("graded pairing between Gr_" + std::to_string(key.first) + " H^" + std::to_string(key.second) +
                      " and its complement is degenerate (dimensions " + std::to_string(list.size()) + " vs " +
                      std::to_string(other) + ")");
    }
  }

  std::map<Key, std::vector<Vec>> built;
  FilteredBasis out;
  for (const auto& [key, list] : members) {  // std::map iterates in lexicographic (p, d) order
    const Key comp = complement(key);
    std::vector<Vec> block;
    if (comp > key) {
      for (std::size_t i : list) block.push_back(to_vec(RingClass::basis(i), dim));
    } else if (comp == key) {
      block = diagonalize(G, list, out.middle_signs);
    } else {
      const std::vector<Vec>& dual = built.at(comp);
      const std::size_t k = list.size();
      Matrix P(k, k);
      std::vector<Vec> raw;
      for (std::size_t i : list) raw.push_back(to_vec(RingClass::basis(i), dim));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) P(i, j) = pair_vec(G, raw[i], dual[j]);
      }
      auto Pinv = inverse(P);
      if (!Pinv) {
        throw DataError("graded pairing between Gr_" + std::to_string(key.first) + " H^" + std::to_string(key.second) +
                        " and its complement is degenerate");
      }
      for (std::size_t i = 0; i < k; ++i) {
        Vec v(dim);
        for (std::size_t l = 0; l < k; ++l) axpy(v, (*Pinv)(i, l), raw[l]);
        block.push_back(std::move(v));
      }
      // Orthogonalize against the other built blocks of complementary degree, using the
      // lower-perversity blocks of this degree that pair with them.
      for (const auto& [other_key, other] : built) {
        if (other_key.second != 4 - key.second || other_key == comp) continue;
        Key partner = complement(other_key);
        if (partner.second != key.second || partner.first >= key.first) continue;
        auto pit = built.find(partner);
        if (pit == built.end()) continue;
        const std::vector<Vec>& Y = pit->second;
        for (auto& v : block) {
          for (std::size_t l = 0; l < other.size(); ++l) {
            Rational c = pair_vec(G, v, other[l]);
            if (c.is_zero()) continue;
            Rational y = pair_vec(G, Y[l], other[l]);
            axpy(v, -(c / y), Y[l]);
          }
        }
      }
      if (key.second == 2) {
        // Same degree as the complement: add -1/2 <β_i, β_j> β'_j to make the block isotropic.
        std::vector<Vec> corrected = block;
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            Rational g = pair_vec(G, block[i], block[j]);
            axpy(corrected[i], -g / Rational(2), dual[j]);
          }
        }
        block = std::move(corrected);
      }
    }
    FilteredBasis::Block b;
    b.perversity = key.first;
    b.degree = key.second;
    for (const auto& v : block) b.elements.push_back(to_class(v));
    out.blocks.push_back(std::move(b));
    built[key] = std::move(block);
  }

  CheckReport report = check_signed_orthonormal(ring, out);
  if (!report.passed()) {
    throw DataError("pairing violates the vanishing P_p x P_p' -> 0 for p + p' < 2 in ring '" + ring.name() + "'");
  }
  return out;
}

CheckReport check_signed_orthonormal(const SurfaceRing& ring, const FilteredBasis& basis) {
  CheckReport report("signed-orthonormal");
  report.set_detail("ring", ring.name());
  struct Entry {
    Key key;
    std::size_t index;
    const RingClass* element;
  };
  std::vector<Entry> all;
  for (const auto& b : basis.blocks) {
    for (std::size_t i = 0; i < b.elements.size(); ++i) all.push_back({{b.perversity, b.degree}, i, &b.elements[i]});
  }
  auto label = [](const Entry& e) {
    return "beta^" + std::to_string(e.key.second) + "_{" + std::to_string(e.key.first) + "," +
           std::to_string(e.index + 1) + "}";
  };
  for (const Entry& x : all) {
    for (const Entry& y : all) {
      report.add_checked();
      Rational v = ring.pair(*x.element, *y.element);
      bool partner = y.key == complement(x.key) && x.index == y.index;
      bool ok;
      std::string expected;
      if (!partner) {
        ok = v.is_zero();
        expected = "0";
      } else if (x.key == Key{1, 2}) {
        ok = v == Rational(1) || v == Rational(-1);
        expected = "+1 or -1";
      } else {
        bool x_later = x.key > y.key;
        int koszul = (x.key.second * y.key.second) % 2 == 0 ? 1 : -1;
        Rational want(x_later ? 1 : koszul);
        ok = v == want;
        expected = want.str();
      }
      if (!ok) {
        Witness w;
        w.check = "pairing";
        w.inputs = {label(x), label(y)};
        w.expected = expected;
        w.actual = v.str();
        report.add_violation(std::move(w));
      }
    }
  }
  return report;
}

}  // namespace hilbperv
