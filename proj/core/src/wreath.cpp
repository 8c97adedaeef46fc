#include "hilbperv/wreath.hpp"

#include <algorithm>
#include <sstream>

#include "hilbperv/errors.hpp"

namespace hilbperv {

using SparseVec = std::vector<std::pair<std::uint8_t, Rational>>;
using DiagTerms = std::vector<std::pair<std::vector<std::uint8_t>, Rational>>;

namespace {

void normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    Rational c = std::move(v[i].second);
    while (j < v.size() && v[j].first == v[i].first) {
      c += v[j].second;
      ++j;
    }
    if (!c.is_zero()) {
      v[out].first = v[i].first;
      v[out].second = std::move(c);
      ++out;
    }
    i = j;
  }
  v.resize(out);
}

bool terms_less(const WreathClass::Term& a, const WreathClass::Term& b) { return a.first < b.first; }

}  // namespace

// ---------------------------------------------------------------------------------------------
// WreathClass

WreathClass WreathClass::of(const WreathElement& x, const Rational& c) {
  WreathClass r;
  r.add(x, c);
  return r;
}

Rational WreathClass::coefficient(const WreathElement& x) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), x, [](const Term& t, const WreathElement& e) {
    return t.first < e;
  });
  return it != terms_.end() && it->first == x ? it->second : Rational(0);
}

void WreathClass::add(const WreathElement& x, const Rational& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), x, [](const Term& t, const WreathElement& e) {
    return t.first < e;
  });
  if (it != terms_.end() && it->first == x) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term{x, c});
  }
}

WreathClass WreathClass::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), terms_less);
  WreathClass r;
  r.terms_.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = std::move(terms[i].second);
    while (j < terms.size() && terms[j].first == terms[i].first) {
      c += terms[j].second;
      ++j;
    }
    if (!c.is_zero()) r.terms_.emplace_back(terms[i].first, std::move(c));
    i = j;
  }
  return r;
}

WreathClass& WreathClass::operator+=(const WreathClass& rhs) {
  std::vector<Term> all = terms_;
  all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
  *this = from_terms(std::move(all));
  return *this;
}

WreathClass& WreathClass::operator-=(const WreathClass& rhs) {
  std::vector<Term> all = terms_;
  for (const auto& [x, c] : rhs.terms_) all.emplace_back(x, -c);
  *this = from_terms(std::move(all));
  return *this;
}

WreathClass& WreathClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

// ---------------------------------------------------------------------------------------------
// Algebra setup

struct WreathAlgebra::PermData {
  Perm perm;
  OrbitPartition orbits;
  std::size_t orbit_count = 0;
  std::uint64_t offset = 0;
  std::uint64_t count = 0;
};

class WreathAlgebra::Plan {
 public:
  Perm s, t, st;
  std::size_t ns = 0, nt = 0, nst = 0, nk = 0;
  std::array<std::uint8_t, kMaxPoints> s_k{}, t_k{}, st_k{};  // <σ,τ>-block of each orbit
  std::array<std::uint8_t, kMaxPoints> g{};                     // graph defect per block
  std::array<std::uint8_t, kMaxPoints> m{};                     // number of στ-orbits per block
  std::array<std::array<std::uint8_t, kMaxPoints>, kMaxPoints> st_members{};  // στ-orbits of each block
  bool vanishes = false;                                        // some block needs e^{g} = 0
};

WreathAlgebra::WreathAlgebra(SurfaceRing ring, std::size_t n) : ring_(std::move(ring)), n_(n) {
  if (ring_.dim() == 0) throw UsageError("wreath algebra over an empty ring");
  if (ring_.dim() > 255) throw ResourceError("rings with more than 255 basis elements are not supported");
  perms_ = enumerate_sn(n);
  const std::size_t d = ring_.dim();
  perm_data_.resize(perms_.size());
  std::uint64_t offset = 0;
  for (std::size_t r = 0; r < perms_.size(); ++r) {
    PermData& pd = perm_data_[r];
    pd.perm = perms_[r];
    pd.orbits = orbits({perms_[r]}, n);
    pd.orbit_count = pd.orbits.size();
    pd.offset = offset;
    pd.count = 1;
    for (std::size_t i = 0; i < pd.orbit_count; ++i) pd.count *= d;
    offset += pd.count;
  }
  total_dim_ = offset;

  products_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [k, c] : ring_.product(i, j).terms()) {
        products_[i * d + j].emplace_back(static_cast<std::uint8_t>(k), c);
      }
    }
  }
  odd_.resize(d);
  for (std::size_t i = 0; i < d; ++i) odd_[i] = ring_.is_odd(i);
  for (const auto& [k, c] : ring_.euler().terms()) euler_.emplace_back(static_cast<std::uint8_t>(k), c);
  if (!ring_.multiply(ring_.euler(), ring_.euler()).is_zero()) {
    throw InvariantViolation("Euler class of ring '" + ring_.name() + "' does not square to zero");
  }

  diag_.resize(n + 1);
  for (std::size_t m = 2; m <= n; ++m) {
    diag_[m].resize(d);
    for (std::size_t g = 0; g < d; ++g) {
      TensorClass t = diagonal_push(ring_, m, RingClass::basis(g));
      for (const auto& [slots, c] : t.terms()) {
        std::vector<std::uint8_t> s(slots.begin(), slots.end());
        diag_[m][g].emplace_back(std::move(s), c);
      }
    }
  }

  if (n <= kPlanCacheMaxN) {
    plans_.reserve(perms_.size() * perms_.size());
    for (const Perm& s : perms_) {
      for (const Perm& t : perms_) plans_.push_back(build_plan(s, t));
    }
  }
}

WreathAlgebra::~WreathAlgebra() = default;

const WreathAlgebra::PermData& WreathAlgebra::data(const Perm& s) const {
  if (s.size() != n_) throw UsageError("permutation degree does not match n");
  return perm_data_[s.rank()];
}

std::size_t WreathAlgebra::orbit_count(const Perm& s) const { return data(s).orbit_count; }

const OrbitPartition& WreathAlgebra::orbit_partition(const Perm& s) const { return data(s).orbits; }

std::uint64_t WreathAlgebra::index_of(const WreathElement& x) const {
  const PermData& pd = data(x.sigma);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < pd.orbit_count; ++i) idx = idx * ring_.dim() + x.factors[i];
  return pd.offset + idx;
}

WreathElement WreathAlgebra::element_at(std::uint64_t index) const {
  if (index >= total_dim_) throw UsageError("wreath basis index out of range");
  auto it = std::upper_bound(perm_data_.begin(), perm_data_.end(), index,
                             [](std::uint64_t v, const PermData& pd) { return v < pd.offset; });
  const PermData& pd = *(it - 1);
  WreathElement x;
  x.sigma = pd.perm;
  std::uint64_t rest = index - pd.offset;
  for (std::size_t i = pd.orbit_count; i-- > 0;) {
    x.factors[i] = static_cast<std::uint8_t>(rest % ring_.dim());
    rest /= ring_.dim();
  }
  return x;
}

std::vector<WreathElement> WreathAlgebra::basis() const {
  std::vector<WreathElement> out;
  out.reserve(total_dim_);
  for (std::uint64_t i = 0; i < total_dim_; ++i) out.push_back(element_at(i));
  return out;
}

int WreathAlgebra::degree(const WreathElement& x) const {
  const PermData& pd = data(x.sigma);
  int deg = 2 * static_cast<int>(n_ - pd.orbit_count);
  for (std::size_t i = 0; i < pd.orbit_count; ++i) deg += ring_.degree(x.factors[i]);
  return deg;
}

int WreathAlgebra::perversity(const WreathElement& x) const {
  const PermData& pd = data(x.sigma);
  int p = static_cast<int>(n_ - pd.orbit_count);
  for (std::size_t i = 0; i < pd.orbit_count; ++i) p += ring_.perversity(x.factors[i]);
  return p;
}

WreathElement WreathAlgebra::unit() const {
  WreathElement x;
  x.sigma = Perm::identity(n_);
  for (std::size_t i = 0; i < n_; ++i) x.factors[i] = static_cast<std::uint8_t>(ring_.unit());
  return x;
}

WreathElement WreathAlgebra::make(const Perm& sigma, const std::vector<std::size_t>& factors) const {
  const PermData& pd = data(sigma);
  if (factors.size() != pd.orbit_count) {
    throw UsageError("element of " + sigma.cycle_notation() + " needs " + std::to_string(pd.orbit_count) +
                     " factors, got " + std::to_string(factors.size()));
  }
  WreathElement x;
  x.sigma = sigma;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] >= ring_.dim()) throw UsageError("factor index out of range");
    x.factors[i] = static_cast<std::uint8_t>(factors[i]);
  }
  return x;
}

const DiagTerms& WreathAlgebra::diagonal(std::size_t m, std::size_t g) const {
  if (m < 2 || m > n_) throw UsageError("diagonal table only covers 2 <= m <= n");
  return diag_[m][g];
}

// ---------------------------------------------------------------------------------------------
// Action

SignedElement WreathAlgebra::act(const Perm& tau, const WreathElement& x) const {
  const PermData& src = data(x.sigma);
  Perm image = conjugate(tau, x.sigma);
  const PermData& dst = data(image);
  SignedElement out;
  out.element.sigma = image;
  std::array<std::uint8_t, kMaxPoints> pos{};
  for (std::size_t i = 0; i < src.orbit_count; ++i) {
    std::size_t target = dst.orbits.block_of(tau(src.orbits.block(i).front()));
    pos[i] = static_cast<std::uint8_t>(target);
    out.element.factors[target] = x.factors[i];
  }
  if (ring_.has_odd_classes()) {
    for (std::size_t i = 0; i < src.orbit_count; ++i) {
      if (!odd_[x.factors[i]]) continue;
      for (std::size_t j = i + 1; j < src.orbit_count; ++j) {
        if (odd_[x.factors[j]] && pos[i] > pos[j]) out.sign = -out.sign;
      }
    }
  }
  return out;
}

WreathClass WreathAlgebra::act(const Perm& tau, const WreathClass& x) const {
  std::vector<WreathClass::Term> terms;
  terms.reserve(x.size());
  for (const auto& [e, c] : x.terms()) {
    SignedElement s = act(tau, e);
    terms.emplace_back(s.element, s.sign > 0 ? c : -c);
  }
  return WreathClass::from_terms(std::move(terms));
}

WreathClass WreathAlgebra::invariant_project(const WreathClass& x) const {
  std::vector<WreathClass::Term> terms;
  for (const Perm& tau : perms_) {
    for (const auto& [e, c] : x.terms()) {
      SignedElement s = act(tau, e);
      terms.emplace_back(s.element, s.sign > 0 ? c : -c);
    }
  }
  WreathClass r = WreathClass::from_terms(std::move(terms));
  r *= Rational(1) / Rational(static_cast<std::int64_t>(perms_.size()));
  return r;
}

WreathClass WreathAlgebra::orbit_sum(const WreathElement& x) const {
  std::vector<WreathClass::Term> terms;
  for (const Perm& tau : perms_) {
    SignedElement s = act(tau, x);
    if (s.element == x && s.sign < 0) return WreathClass{};
  }
  std::vector<WreathElement> seen;
  for (const Perm& tau : perms_) {
    SignedElement s = act(tau, x);
    if (std::find(seen.begin(), seen.end(), s.element) != seen.end()) continue;
    seen.push_back(s.element);
    terms.emplace_back(s.element, Rational(s.sign));
  }
  return WreathClass::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------------------------
// Product

std::shared_ptr<const WreathAlgebra::Plan> WreathAlgebra::plan(const Perm& s, const Perm& t) const {
  if (!plans_.empty() && s.size() == n_ && t.size() == n_) return plans_[s.rank() * perms_.size() + t.rank()];
  return build_plan(s, t);
}

std::shared_ptr<const WreathAlgebra::Plan> WreathAlgebra::build_plan(const Perm& s, const Perm& t) const {
  auto p = std::make_shared<Plan>();
  p->s = s;
  p->t = t;
  p->st = compose(s, t);
  const PermData& ds = data(s);
  const PermData& dt = data(t);
  const PermData& dst = data(p->st);
  GraphDefect gd = graph_defect(s, t);
  p->ns = ds.orbit_count;
  p->nt = dt.orbit_count;
  p->nst = dst.orbit_count;
  p->nk = gd.orbits.size();
  for (std::size_t i = 0; i < p->ns; ++i) p->s_k[i] = static_cast<std::uint8_t>(gd.orbits.block_of(ds.orbits.block(i).front()));
  for (std::size_t i = 0; i < p->nt; ++i) p->t_k[i] = static_cast<std::uint8_t>(gd.orbits.block_of(dt.orbits.block(i).front()));
  for (std::size_t i = 0; i < p->nst; ++i) {
    std::size_t k = gd.orbits.block_of(dst.orbits.block(i).front());
    p->st_k[i] = static_cast<std::uint8_t>(k);
    p->st_members[k][p->m[k]++] = static_cast<std::uint8_t>(i);
  }
  for (std::size_t k = 0; k < p->nk; ++k) {
    p->g[k] = static_cast<std::uint8_t>(gd.values[k]);
    if (gd.values[k] >= 2 || (gd.values[k] == 1 && euler_.empty())) p->vanishes = true;
  }
  return p;
}

namespace {

using Table = std::vector<std::vector<std::pair<std::uint8_t, Rational>>>;

// out = x * y through the compact product table.
void multiply_sparse(const Table& table, std::size_t dim, const SparseVec& x, const SparseVec& y, SparseVec& out) {
  out.clear();
  for (const auto& [i, ci] : x) {
    for (const auto& [j, cj] : y) {
      const auto& p = table[static_cast<std::size_t>(i) * dim + j];
      if (p.empty()) continue;
      Rational c = ci * cj;
      for (const auto& [k, ck] : p) out.emplace_back(k, c * ck);
    }
  }
  if (out.size() > 1) normalize(out);
}

// out = x * b_f.
void multiply_basis(const Table& table, std::size_t dim, const SparseVec& x, std::uint8_t f, SparseVec& out) {
  out.clear();
  for (const auto& [i, ci] : x) {
    for (const auto& [k, ck] : table[static_cast<std::size_t>(i) * dim + f]) out.emplace_back(k, ci * ck);
  }
  if (out.size() > 1) normalize(out);
}

// One term of a pushed-forward block: m slot labels and a coefficient.
struct LocalTerm {
  const std::uint8_t* slots;
  Rational c;
};

struct CupScratch {
  std::array<SparseVec, kMaxPoints> A;
  std::array<SparseVec, kMaxPoints> B;
  std::array<SparseVec, kMaxPoints> C;
  std::array<std::vector<LocalTerm>, kMaxPoints> local;
  std::vector<LocalTerm> merged;
  SparseVec tmp;
};

const std::array<std::uint8_t, 256> kLabels = [] {
  std::array<std::uint8_t, 256> a{};
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint8_t>(i);
  return a;
}();

}  // namespace

WreathClass WreathAlgebra::cup(const Plan& P, const WreathElement& x, const WreathElement& y) const {
  if (P.vanishes) return WreathClass{};
  const std::size_t d = ring_.dim();
  const bool signs = ring_.has_odd_classes();
  int sign = 1;
  thread_local CupScratch scratch;
  auto& A = scratch.A;
  auto& B = scratch.B;
  auto& C = scratch.C;
  auto& tmp = scratch.tmp;

  // Pull back both factor tensors to the <σ,τ>-orbits and multiply blockwise.
  std::array<bool, kMaxPoints> odd_a{};
  std::array<bool, kMaxPoints> odd_b{};
  const auto unit = static_cast<std::uint8_t>(ring_.unit());
  for (std::size_t k = 0; k < P.nk; ++k) {
    A[k].clear();
    A[k].emplace_back(unit, Rational(1));
    B[k].clear();
    B[k].emplace_back(unit, Rational(1));
  }
  for (std::size_t i = 0; i < P.ns; ++i) {
    std::uint8_t f = x.factors[i];
    std::size_t k = P.s_k[i];
    if (A[k].size() == 1 && A[k].front().first == unit && A[k].front().second.is_one()) {
      A[k].front().first = f;
    } else {
      multiply_basis(products_, d, A[k], f, tmp);
      if (tmp.empty()) return WreathClass{};
      A[k].swap(tmp);
    }
    if (signs && odd_[f]) {
      odd_a[k] = !odd_a[k];
      for (std::size_t j = i + 1; j < P.ns; ++j) {
        if (odd_[x.factors[j]] && P.s_k[i] > P.s_k[j]) sign = -sign;
      }
    }
  }
  for (std::size_t i = 0; i < P.nt; ++i) {
    std::uint8_t f = y.factors[i];
    std::size_t k = P.t_k[i];
    if (B[k].size() == 1 && B[k].front().first == unit && B[k].front().second.is_one()) {
      B[k].front().first = f;
    } else {
      multiply_basis(products_, d, B[k], f, tmp);
      if (tmp.empty()) return WreathClass{};
      B[k].swap(tmp);
    }
    if (signs && odd_[f]) {
      odd_b[k] = !odd_b[k];
      for (std::size_t j = i + 1; j < P.nt; ++j) {
        if (odd_[y.factors[j]] && P.t_k[i] > P.t_k[j]) sign = -sign;
      }
    }
  }
  if (signs) {
    // (A_1 ⊗ ... ⊗ A_r)(B_1 ⊗ ... ⊗ B_r): B_j passes A_i for i > j.
    for (std::size_t i = 0; i < P.nk; ++i) {
      if (!odd_a[i]) continue;
      for (std::size_t j = 0; j < i; ++j) {
        if (odd_b[j]) sign = -sign;
      }
    }
  }
  for (std::size_t k = 0; k < P.nk; ++k) {
    multiply_sparse(products_, d, A[k], B[k], C[k]);
    if (C[k].empty()) return WreathClass{};
    if (P.g[k] == 1) {
      multiply_sparse(products_, d, C[k], euler_, tmp);
      if (tmp.empty()) return WreathClass{};
      C[k].swap(tmp);
    }
  }

  // Push forward along each block splitting into m στ-orbits.
  auto& local = scratch.local;
  auto& merged = scratch.merged;
  for (std::size_t k = 0; k < P.nk; ++k) {
    local[k].clear();
    const std::size_t m = P.m[k];
    if (m == 1) {
      for (const auto& [g, c] : C[k]) local[k].push_back({&kLabels[g], c});
      continue;
    }
    for (const auto& [g, c] : C[k]) {
      for (const auto& [slots, dc] : diag_[m][g]) local[k].push_back({slots.data(), c * dc});
    }
    if (local[k].empty()) return WreathClass{};
    if (C[k].size() > 1) {
      auto less = [m](const LocalTerm& u, const LocalTerm& v) {
        return std::lexicographical_compare(u.slots, u.slots + m, v.slots, v.slots + m);
      };
      std::sort(local[k].begin(), local[k].end(), less);
      merged.clear();
      for (auto& t : local[k]) {
        if (!merged.empty() && std::equal(t.slots, t.slots + m, merged.back().slots)) {
          merged.back().c += t.c;
        } else {
          if (!merged.empty() && merged.back().c.is_zero()) merged.pop_back();
          merged.push_back(std::move(t));
        }
      }
      if (!merged.empty() && merged.back().c.is_zero()) merged.pop_back();
      if (merged.empty()) return WreathClass{};
      local[k].swap(merged);
    }
  }

  std::vector<WreathClass::Term> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < P.nk; ++k) total *= local[k].size();
  out.reserve(total);
  std::array<std::size_t, kMaxPoints> pick{};
  Rational base(sign);
  for (;;) {
    WreathElement e;
    e.sigma = P.st;
    Rational c = base;
    for (std::size_t k = 0; k < P.nk; ++k) {
      const LocalTerm& t = local[k][pick[k]];
      c *= t.c;
      for (std::size_t j = 0; j < P.m[k]; ++j) e.factors[P.st_members[k][j]] = t.slots[j];
    }
    if (signs) {
      // Slots were produced block by block; move them into canonical στ-orbit order.
      for (std::size_t u = 0; u < P.nst; ++u) {
        if (!odd_[e.factors[u]]) continue;
        for (std::size_t v = u + 1; v < P.nst; ++v) {
          if (odd_[e.factors[v]] && P.st_k[u] > P.st_k[v]) c.negate();
        }
      }
    }
    out.emplace_back(e, std::move(c));
    std::size_t k = 0;
    while (k < P.nk && ++pick[k] == local[k].size()) {
      pick[k] = 0;
      ++k;
    }
    if (k == P.nk) break;
  }
  return WreathClass::from_terms(std::move(out));
}

WreathClass WreathAlgebra::cup(const WreathElement& x, const WreathElement& y) const {
  if (!plans_.empty() && x.sigma.size() == n_ && y.sigma.size() == n_) {
    return cup(*plans_[x.sigma.rank() * perms_.size() + y.sigma.rank()], x, y);
  }
  auto p = plan(x.sigma, y.sigma);
  return cup(*p, x, y);
}

WreathClass WreathAlgebra::cup(const WreathClass& x, const WreathClass& y) const {
  std::vector<WreathClass::Term> out;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      WreathClass p = cup(a, b);
      Rational c = ca * cb;
      for (const auto& [e, ce] : p.terms()) out.emplace_back(e, c * ce);
    }
  }
  return WreathClass::from_terms(std::move(out));
}

// ---------------------------------------------------------------------------------------------
// Text

WreathElement WreathAlgebra::parse_element(std::string_view spec) const {
  std::string s(spec);
  std::string factor_part = s;
  std::string cycle_part;
  auto semi = s.rfind(';');
  if (semi != std::string::npos) {
    factor_part = s.substr(0, semi);
    cycle_part = s.substr(semi + 1);
  }
  Perm sigma = Perm::parse_cycles(cycle_part, n_);
  const OrbitPartition& orb = orbit_partition(sigma);
  std::vector<std::optional<std::size_t>> assigned(orb.size());
  std::vector<std::size_t> loose;
  std::istringstream in(factor_part);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == ' ' || c == '\t'; }), item.end());
    if (item.empty()) continue;
    auto at = item.find('@');
    std::size_t f = ring_.index_of(item.substr(0, at));
    if (at == std::string::npos) {
      loose.push_back(f);
      continue;
    }
    std::string pt = item.substr(at + 1);
    std::size_t point = 0;
    try {
      point = std::stoul(pt);
    } catch (const std::logic_error&) {
      throw ParseError("element spec: bad orbit point '" + pt + "'");
    }
    if (point < 1 || point > n_) throw ParseError("element spec: point " + pt + " outside 1.." + std::to_string(n_));
    std::size_t block = orb.block_of(point - 1);
    if (assigned[block]) throw ParseError("element spec: orbit of " + pt + " given two factors");
    assigned[block] = f;
  }
  std::size_t next = 0;
  for (std::size_t f : loose) {
    while (next < assigned.size() && assigned[next]) ++next;
    if (next == assigned.size()) throw ParseError("element spec: more factors than orbits in '" + s + "'");
    assigned[next++] = f;
  }
  std::vector<std::size_t> factors;
  for (const auto& a : assigned) factors.push_back(a ? *a : ring_.unit());
  return make(sigma, factors);
}

std::string WreathAlgebra::render_factors(const WreathElement& x) const {
  const OrbitPartition& orb = orbit_partition(x.sigma);
  std::string out;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    if (i) out += " ⊗ ";
    out += ring_.basis(x.factors[i]).name + "{";
    for (std::size_t j = 0; j < orb.block(i).size(); ++j) {
      if (j) out += ",";
      out += std::to_string(orb.block(i)[j] + 1);
    }
    out += "}";
  }
  return out;
}

std::string WreathAlgebra::render(const WreathElement& x) const {
  return "[" + render_factors(x) + "] * " + x.sigma.cycle_notation();
}

std::string WreathAlgebra::render(const WreathClass& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += c.str() + " * " + render(e);
  }
  return out;
}

std::string WreathAlgebra::spec_string(const WreathElement& x) const {
  const OrbitPartition& orb = orbit_partition(x.sigma);
  std::string out;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    if (i) out += ",";
    out += ring_.basis(x.factors[i]).name + "@" + std::to_string(orb.block(i).front() + 1);
  }
  return out + ";" + x.sigma.cycle_notation();
}

// ---------------------------------------------------------------------------------------------
// Generic pullback and pushforward on orbit tensors

OrbitTensor pullback_merge(const SurfaceRing& ring, const OrbitTensor& x, const OrbitPartition& target) {
  const OrbitPartition& H = x.partition;
  if (!H.refines(target)) throw UsageError("pullback target must coarsen the source partition");
  const std::size_t h = H.size();
  const std::size_t r = target.size();
  std::vector<std::size_t> group(h);
  for (std::size_t i = 0; i < h; ++i) group[i] = target.block_of(H.block(i).front());
  OrbitTensor out{target, TensorClass(r)};
  for (const auto& [slots, c] : x.tensor.terms()) {
    int sign = 1;
    for (std::size_t i = 0; i < h; ++i) {
      if (!ring.is_odd(slots[i])) continue;
      for (std::size_t j = i + 1; j < h; ++j) {
        if (ring.is_odd(slots[j]) && group[i] > group[j]) sign = -sign;
      }
    }
    std::vector<RingClass> blocks(r, RingClass::basis(ring.unit()));
    for (std::size_t i = 0; i < h; ++i) blocks[group[i]] = ring.multiply(blocks[group[i]], RingClass::basis(slots[i]));
    TensorClass partial(0);
    partial.add({}, Rational(sign) * c);
    for (std::size_t k = 0; k < r; ++k) {
      TensorClass next(k + 1);
      for (const auto& [ps, pc] : partial.terms()) {
        for (const auto& [idx, bc] : blocks[k].terms()) {
          auto s2 = ps;
          s2.push_back(idx);
          next.add(s2, pc * bc);
        }
      }
      partial = std::move(next);
    }
    out.tensor += partial;
  }
  return out;
}

OrbitTensor pushforward_split(const SurfaceRing& ring, const OrbitTensor& x, const OrbitPartition& target) {
  const OrbitPartition& K = x.partition;
  if (!target.refines(K)) throw UsageError("pushforward target must refine the source partition");
  const std::size_t r = K.size();
  const std::size_t h = target.size();
  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t j = 0; j < h; ++j) members[K.block_of(target.block(j).front())].push_back(j);
  OrbitTensor out{target, TensorClass(h)};
  for (const auto& [slots, c] : x.tensor.terms()) {
    // Terms in block-grouped order: members[0] slots, then members[1] slots, ...
    std::vector<std::pair<std::vector<std::size_t>, Rational>> partial{{{}, c}};
    for (std::size_t k = 0; k < r; ++k) {
      TensorClass piece = diagonal_push(ring, members[k].size(), RingClass::basis(slots[k]));
      std::vector<std::pair<std::vector<std::size_t>, Rational>> next;
      for (const auto& [ps, pc] : partial) {
        for (const auto& [qs, qc] : piece.terms()) {
          auto s2 = ps;
          s2.insert(s2.end(), qs.begin(), qs.end());
          next.emplace_back(std::move(s2), pc * qc);
        }
      }
      partial = std::move(next);
    }
    std::vector<std::size_t> position;  // grouped position -> canonical target block
    for (std::size_t k = 0; k < r; ++k) position.insert(position.end(), members[k].begin(), members[k].end());
    for (const auto& [grouped, pc] : partial) {
      TensorClass::Slots canon(h);
      std::vector<bool> odd(h);
      for (std::size_t p = 0; p < h; ++p) {
        canon[position[p]] = grouped[p];
        odd[p] = ring.is_odd(grouped[p]);
      }
      int sign = koszul_sign(position, odd);
      out.tensor.add(canon, Rational(sign) * pc);
    }
  }
  return out;
}

}  // namespace hilbperv
