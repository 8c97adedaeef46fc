#include "hilbperv/surface_ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hilbperv/errors.hpp"

namespace hilbperv {
namespace {

std::string render_terms(const std::vector<std::pair<std::string, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [label, c] : terms) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    if (!mag.is_one()) out += mag.str() + "*";
    out += label;
  }
  return out;
}

Witness make_witness(std::string check, std::vector<std::string> inputs, std::string expected, std::string actual) {
  Witness w;
  w.check = std::move(check);
  w.inputs = std::move(inputs);
  w.expected = std::move(expected);
  w.actual = std::move(actual);
  return w;
}

}  // namespace

std::string to_string(RingMode mode) { return mode == RingMode::compact ? "compact" : "open"; }

RingClass RingClass::basis(std::size_t index, const Rational& coeff) {
  RingClass r;
  r.add(index, coeff);
  return r;
}

Rational RingClass::coefficient(std::size_t index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::size_t i) { return t.first < i; });
  return it != terms_.end() && it->first == index ? it->second : Rational(0);
}

void RingClass::add(std::size_t index, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::size_t i) { return t.first < i; });
  if (it != terms_.end() && it->first == index) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term{index, coeff});
  }
}

RingClass& RingClass::operator+=(const RingClass& rhs) {
  for (const auto& [i, c] : rhs.terms_) add(i, c);
  return *this;
}

RingClass& RingClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Rational TensorClass::coefficient(const Slots& slots) const {
  auto it = terms_.find(slots);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorClass::add(const Slots& slots, const Rational& coeff) {
  if (slots.size() != arity_) throw UsageError("tensor term arity mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(slots, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorClass& TensorClass::operator+=(const TensorClass& rhs) {
  for (const auto& [s, c] : rhs.terms_) add(s, c);
  return *this;
}

SurfaceRing::SurfaceRing(std::string name, RingMode mode, std::vector<BasisElement> basis, std::size_t unit,
                         std::vector<RingClass> products, std::optional<Matrix> pairing, RingClass euler,
                         std::optional<std::vector<TensorClass>> diag2)
    : name_(std::move(name)),
      mode_(mode),
      basis_(std::move(basis)),
      unit_(unit),
      products_(std::move(products)),
      pairing_(std::move(pairing)),
      euler_(std::move(euler)),
      diag2_(std::move(diag2)) {
  std::size_t d = basis_.size();
  if (products_.size() != d * d) throw UsageError("structure constant table has wrong size");
  if (unit_ >= d && d > 0) throw UsageError("unit index out of range");
  if (pairing_ && (pairing_->rows() != d || pairing_->cols() != d)) {
    throw UsageError("pairing matrix has wrong size");
  }
  if (diag2_ && diag2_->size() != d) throw UsageError("diag2 table has wrong size");
  has_odd_ = std::any_of(basis_.begin(), basis_.end(), [](const BasisElement& b) { return (b.degree & 1) != 0; });
  if (pairing_) {
    // <α_i, b_j> = Σ_k X_ik G_kj = δ_ij, so X = G^{-1}.
    dual_ = inverse(*pairing_);
  }
}

RingClass SurfaceRing::multiply(const RingClass& x, const RingClass& y) const {
  RingClass out;
  for (const auto& [i, ci] : x.terms()) {
    for (const auto& [j, cj] : y.terms()) {
      const RingClass& p = product(i, j);
      if (p.is_zero()) continue;
      Rational c = ci * cj;
      for (const auto& [k, ck] : p.terms()) out.add(k, c * ck);
    }
  }
  return out;
}

Rational SurfaceRing::pair(const RingClass& x, const RingClass& y) const {
  if (!pairing_) throw ModeError("ring '" + name_ + "' has no pairing");
  Rational r;
  for (const auto& [i, ci] : x.terms()) {
    for (const auto& [j, cj] : y.terms()) {
      const Rational& g = (*pairing_)(i, j);
      if (!g.is_zero()) r += ci * cj * g;
    }
  }
  return r;
}

std::optional<std::size_t> SurfaceRing::find(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SurfaceRing::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw ParseError("unknown basis element '" + name + "' in ring '" + name_ + "'");
  return *i;
}

std::string SurfaceRing::render(const RingClass& x) const {
  std::vector<std::pair<std::string, Rational>> terms;
  for (const auto& [i, c] : x.terms()) terms.emplace_back(basis_[i].name, c);
  return render_terms(terms);
}

std::string SurfaceRing::render(const TensorClass& x) const {
  std::vector<std::pair<std::string, Rational>> terms;
  for (const auto& [slots, c] : x.terms()) {
    std::string label;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (k) label += "x";
      label += basis_[slots[k]].name;
    }
    terms.emplace_back(label, c);
  }
  return render_terms(terms);
}

bool operator==(const SurfaceRing& a, const SurfaceRing& b) {
  return a.name_ == b.name_ && a.mode_ == b.mode_ && a.basis_ == b.basis_ && a.unit_ == b.unit_ &&
         a.products_ == b.products_ && a.pairing_ == b.pairing_ && a.euler_ == b.euler_ && a.diag2_ == b.diag2_;
}

int koszul_sign(const std::vector<std::size_t>& order, const std::vector<bool>& odd) {
  int sign = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!odd[i]) continue;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (odd[j] && order[i] > order[j]) sign = -sign;
    }
  }
  return sign;
}

CheckReport validate(const SurfaceRing& ring) {
  CheckReport report("ring-validate");
  report.set_detail("ring", ring.name());
  report.set_detail("mode", to_string(ring.mode()));
  const std::size_t d = ring.dim();
  const auto& B = ring.basis();
  auto name = [&](std::size_t i) { return B[i].name; };

  std::set<std::string> seen;
  for (std::size_t i = 0; i < d; ++i) {
    report.add_checked();
    if (B[i].name.empty() || !seen.insert(B[i].name).second) {
      report.add_violation(make_witness("basis-names", {B[i].name}, "unique nonempty name", "duplicate or empty"));
    }
    if (B[i].degree < 0 || B[i].degree > 4 || B[i].perversity < 0 || B[i].perversity > 2) {
      report.add_violation(make_witness("basis-range", {name(i)}, "degree in 0..4, perversity in 0..2",
                                        "degree " + std::to_string(B[i].degree) + ", perversity " +
                                            std::to_string(B[i].perversity)));
    }
  }
  if (d == 0) {
    report.fail("empty basis");
    return report;
  }

  // Products of basis elements: degree, perversity, commutativity.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      report.add_checked();
      const RingClass& p = ring.product(i, j);
      for (const auto& [k, c] : p.terms()) {
        if (B[k].degree != B[i].degree + B[j].degree) {
          report.add_violation(make_witness("degree-additivity", {name(i), name(j)},
                                            "degree " + std::to_string(B[i].degree + B[j].degree),
                                            "term " + name(k) + " of degree " + std::to_string(B[k].degree)));
        }
        if (B[k].perversity > B[i].perversity + B[j].perversity) {
          Witness w = make_witness("perversity-multiplicativity", {name(i), name(j)}, "", "term " + name(k));
          w.bound = B[i].perversity + B[j].perversity;
          w.value = B[k].perversity;
          report.add_violation(std::move(w));
        }
      }
      RingClass swapped = ring.product(j, i);
      if ((B[i].degree * B[j].degree) % 2 != 0) swapped *= Rational(-1);
      if (!(swapped == p)) {
        report.add_violation(make_witness("graded-commutativity", {name(i), name(j)},
                                          "b_i*b_j = (-1)^{d_i d_j} b_j*b_i", ring.render(p) + " vs " +
                                                                                  ring.render(ring.product(j, i))));
      }
    }
  }

  // Unit.
  for (std::size_t i = 0; i < d; ++i) {
    report.add_checked();
    RingClass expect = RingClass::basis(i);
    if (!(ring.product(ring.unit(), i) == expect) || !(ring.product(i, ring.unit()) == expect)) {
      report.add_violation(make_witness("unit", {name(ring.unit()), name(i)}, name(i),
                                        ring.render(ring.product(ring.unit(), i))));
    }
  }

  // Associativity over basis triples.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const RingClass& ij = ring.product(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        report.add_checked();
        RingClass left = ring.multiply(ij, RingClass::basis(k));
        RingClass right = ring.multiply(RingClass::basis(i), ring.product(j, k));
        if (!(left == right)) {
          report.add_violation(
              make_witness("associativity", {name(i), name(j), name(k)}, ring.render(left), ring.render(right)));
        }
      }
    }
  }

  // Euler class lives in degree 4.
  for (const auto& [k, c] : ring.euler().terms()) {
    report.add_checked();
    if (B[k].degree != 4) {
      report.add_violation(make_witness("euler-degree", {name(k)}, "degree 4", std::to_string(B[k].degree)));
    }
  }

  bool has_pairing = ring.pairing().has_value();
  bool has_diag = ring.diag2().has_value();
  if (ring.is_compact()) {
    if (!has_pairing) report.add_violation(make_witness("mode", {ring.name()}, "pairing present", "missing"));
    if (has_diag) report.add_violation(make_witness("mode", {ring.name()}, "no diag2 table", "present"));
  } else {
    if (!has_diag) report.add_violation(make_witness("mode", {ring.name()}, "diag2 table present", "missing"));
    if (has_pairing) report.add_violation(make_witness("mode", {ring.name()}, "no pairing", "present"));
  }

  if (has_pairing) {
    const Matrix& G = *ring.pairing();
    report.add_checked();
    Rational det = determinant(G);
    report.set_detail("pairing-determinant", det.str());
    if (det.is_zero()) {
      report.add_violation(make_witness("pairing-nondegenerate", {ring.name()}, "det != 0", "det = 0"));
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        report.add_checked();
        if (!G(i, j).is_zero() && B[i].degree + B[j].degree != 4) {
          report.add_violation(make_witness("pairing-degree", {name(i), name(j)}, "0", G(i, j).str()));
        }
        // <x, y> must equal the integral of x*y, read off through <-, 1>.
        Rational through_product;
        for (const auto& [k, c] : ring.product(i, j).terms()) through_product += c * G(k, ring.unit());
        if (through_product != G(i, j)) {
          report.add_violation(make_witness("pairing-consistency", {name(i), name(j)}, through_product.str(),
                                            G(i, j).str()));
        }
      }
    }
  }

  if (has_diag) {
    const auto& table = *ring.diag2();
    for (std::size_t g = 0; g < d; ++g) {
      report.add_checked();
      for (const auto& [slots, c] : table[g].terms()) {
        int deg = B[slots[0]].degree + B[slots[1]].degree;
        if (deg != B[g].degree + 4) {
          report.add_violation(make_witness("diag2-degree", {name(g)}, "degree " + std::to_string(B[g].degree + 4),
                                            name(slots[0]) + "x" + name(slots[1])));
        }
      }
    }
  }

  report.sort_witnesses();
  return report;
}

namespace {

TensorClass diag2_of_basis(const SurfaceRing& ring, std::size_t g) {
  TensorClass out(2);
  if (ring.is_compact()) {
    if (!ring.dual_basis()) throw ModeError("ring '" + ring.name() + "' has no invertible pairing");
    const Matrix& X = *ring.dual_basis();
    // Δ_2(γ) = Σ_i (-1)^{|b_i|} α_i ⊗ (b_i γ)
    for (std::size_t i = 0; i < ring.dim(); ++i) {
      const RingClass& bg = ring.product(i, g);
      if (bg.is_zero()) continue;
      Rational sign = ring.is_odd(i) ? Rational(-1) : Rational(1);
      for (std::size_t k = 0; k < ring.dim(); ++k) {
        const Rational& a = X(i, k);
        if (a.is_zero()) continue;
        for (const auto& [l, c] : bg.terms()) out.add({k, l}, sign * a * c);
      }
    }
    return out;
  }
  if (!ring.diag2()) throw ModeError("open ring '" + ring.name() + "' has no diag2 table");
  return (*ring.diag2())[g];
}

}  // namespace

TensorClass diagonal_push(const SurfaceRing& ring, std::size_t m, const RingClass& gamma) {
  if (m == 0) throw UsageError("diagonal_push needs m >= 1");
  if (!ring.is_compact() && !ring.diag2()) throw ModeError("open ring '" + ring.name() + "' has no diag2 table");
  if (ring.is_compact() && !ring.dual_basis()) throw ModeError("ring '" + ring.name() + "' has no invertible pairing");
  TensorClass current(1);
  for (const auto& [g, c] : gamma.terms()) current.add({g}, c);
  std::vector<TensorClass> cache(ring.dim());
  std::vector<bool> cached(ring.dim(), false);
  for (std::size_t arity = 2; arity <= m; ++arity) {
    TensorClass next(arity);
    for (const auto& [slots, c] : current.terms()) {
      std::size_t first = slots[0];
      if (!cached[first]) {
        cache[first] = diag2_of_basis(ring, first);
        cached[first] = true;
      }
      for (const auto& [pair, d] : cache[first].terms()) {
        TensorClass::Slots s;
        s.reserve(arity);
        s.push_back(pair[0]);
        s.push_back(pair[1]);
        s.insert(s.end(), slots.begin() + 1, slots.end());
        next.add(s, c * d);
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace hilbperv
