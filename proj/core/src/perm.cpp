#include "hilbperv/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hilbperv/errors.hpp"

namespace hilbperv {
namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  std::vector<std::size_t> parent;
};

void check_size(std::size_t n) {
  if (n > kMaxPoints) {
    throw ResourceError("permutations on more than " + std::to_string(kMaxPoints) + " points are not supported");
  }
}

std::size_t count_orbits_within(const Perm& p, const std::vector<std::size_t>& block) {
  std::size_t count = 0;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start : block) {
    if (seen[start]) continue;
    ++count;
    for (std::size_t i = start; !seen[i]; i = p(i)) seen[i] = true;
  }
  return count;
}

}  // namespace

std::uint64_t factorial(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

Perm Perm::identity(std::size_t n) {
  check_size(n);
  Perm p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (std::size_t i = 0; i < n; ++i) p.img_[i] = static_cast<std::uint8_t>(i);
  return p;
}

Perm Perm::from_images(const std::vector<std::size_t>& one_based) {
  std::size_t n = one_based.size();
  check_size(n);
  Perm p;
  p.n_ = static_cast<std::uint8_t>(n);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t v = one_based[i];
    if (v < 1 || v > n || hit[v - 1]) throw UsageError("image sequence is not a permutation");
    hit[v - 1] = true;
    p.img_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

Perm Perm::parse_cycles(std::string_view text, std::size_t n) {
  Perm p = identity(n);
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
  if (s.empty() || s == "id" || s == "()") return p;
  std::string spaced;
  for (char c : text) spaced.push_back(c == ',' ? ' ' : c);
  std::vector<bool> used(n, false);
  std::size_t pos = 0;
  while (pos < spaced.size()) {
    char c = spaced[pos];
    if (c == ' ' || c == '\t') {
      ++pos;
      continue;
    }
    if (c != '(') throw ParseError("cycle notation: expected '(' in '" + std::string(text) + "'");
    std::size_t close = spaced.find(')', pos);
    if (close == std::string::npos) throw ParseError("cycle notation: unbalanced '(' in '" + std::string(text) + "'");
    std::istringstream in(spaced.substr(pos + 1, close - pos - 1));
    std::vector<std::size_t> cycle;
    std::string tok;
    while (in >> tok) {
      std::size_t v = 0;
      for (char d : tok) {
        if (d < '0' || d > '9') throw ParseError("cycle notation: bad point '" + tok + "'");
        v = v * 10 + static_cast<std::size_t>(d - '0');
      }
      if (v < 1 || v > n) throw ParseError("cycle notation: point " + tok + " outside 1.." + std::to_string(n));
      if (used[v - 1]) throw ParseError("cycle notation: point " + tok + " appears twice");
      used[v - 1] = true;
      cycle.push_back(v - 1);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      p.img_[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    }
    pos = close + 1;
  }
  return p;
}

Perm Perm::unrank(std::size_t n, std::uint64_t r) {
  check_size(n);
  if (r >= factorial(n)) throw UsageError("permutation rank out of range");
  std::vector<std::uint8_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Perm p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t f = factorial(n - 1 - i);
    std::size_t idx = static_cast<std::size_t>(r / f);
    r %= f;
    p.img_[i] = pool[idx];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return p;
}

std::uint64_t Perm::rank() const noexcept {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n_; ++j) smaller += img_[j] < img_[i];
    r = r * (n_ - i) + smaller;
  }
  return r;
}

std::vector<std::size_t> Perm::images() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = img_[i] + 1u;
  return out;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm p;
  p.n_ = n_;
  for (std::size_t i = 0; i < n_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return p;
}

std::string Perm::cycle_notation() const {
  std::string out;
  std::vector<bool> seen(n_, false);
  for (std::size_t start = 0; start < n_; ++start) {
    if (seen[start] || img_[start] == start) continue;
    out += "(";
    bool first = true;
    for (std::size_t i = start; !seen[i]; i = img_[i]) {
      seen[i] = true;
      if (!first) out += " ";
      out += std::to_string(i + 1);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw UsageError("composing permutations of different degree");
  Perm p;
  p.n_ = a.n_;
  for (std::size_t i = 0; i < a.n_; ++i) p.img_[i] = a.img_[b.img_[i]];
  return p;
}

Perm conjugate(const Perm& t, const Perm& s) {
  if (t.size() != s.size()) throw UsageError("composing permutations of different degree");
  // (t s t^{-1})(t(i)) = t(s(i)).
  Perm p;
  p.n_ = t.n_;
  for (std::size_t i = 0; i < t.n_; ++i) p.img_[t.img_[i]] = t.img_[s.img_[i]];
  return p;
}

Partition::Partition(std::vector<std::size_t> multiplicities) : a_(std::move(multiplicities)) {}

std::size_t Partition::weight() const noexcept {
  std::size_t w = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) w += (i + 1) * a_[i];
  return w;
}

std::size_t Partition::length() const noexcept { return std::accumulate(a_.begin(), a_.end(), std::size_t{0}); }

std::string Partition::str() const {
  std::string out;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!out.empty()) out += " ";
    out += std::to_string(i + 1) + "^" + std::to_string(a_[i]);
  }
  return out;
}

std::vector<Partition> partitions_of(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> a(n, 0);
  // Recursive fill: largest part first, so output is deterministic.
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t remaining, std::size_t max_part) {
    if (remaining == 0) {
      out.emplace_back(a);
      return;
    }
    for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
      for (std::size_t k = 1; k * part <= remaining; ++k) {
        a[part - 1] = k;
        fill(remaining - k * part, part - 1);
      }
      a[part - 1] = 0;
    }
  };
  fill(n, n);
  return out;
}

OrbitPartition OrbitPartition::from_labels(const std::vector<std::size_t>& labels) {
  OrbitPartition op;
  op.block_of_.assign(labels.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> first_seen;  // label -> block index
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(first_seen.begin(), first_seen.end(), [&](const auto& pr) { return pr.first == labels[i]; });
    std::size_t block;
    if (it == first_seen.end()) {
      block = op.blocks_.size();
      first_seen.emplace_back(labels[i], block);
      op.blocks_.emplace_back();
    } else {
      block = it->second;
    }
    op.blocks_[block].push_back(i);
    op.block_of_[i] = block;
  }
  return op;
}

bool OrbitPartition::refines(const OrbitPartition& other) const {
  if (points() != other.points()) return false;
  for (const auto& b : blocks_) {
    for (std::size_t i : b) {
      if (other.block_of(i) != other.block_of(b.front())) return false;
    }
  }
  return true;
}

std::string OrbitPartition::str() const {
  std::string out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k) out += ",";
    out += "{";
    for (std::size_t j = 0; j < blocks_[k].size(); ++j) {
      if (j) out += ",";
      out += std::to_string(blocks_[k][j] + 1);
    }
    out += "}";
  }
  return out;
}

OrbitPartition orbits(const std::vector<Perm>& gens, std::size_t n) {
  check_size(n);
  UnionFind uf(n);
  for (const Perm& g : gens) {
    if (g.size() != n) throw UsageError("generator degree does not match n");
    for (std::size_t i = 0; i < n; ++i) uf.unite(i, g(i));
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = uf.find(i);
  return OrbitPartition::from_labels(labels);
}

std::vector<std::vector<std::size_t>> orbits_on(const std::vector<Perm>& gens, std::size_t n,
                                                const std::vector<std::size_t>& carrier) {
  std::vector<std::size_t> sorted = carrier;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<bool> in(n, false);
  for (std::size_t c : sorted) {
    if (c >= n) throw UsageError("carrier point outside 1..n");
    in[c] = true;
  }
  for (const Perm& g : gens) {
    if (g.size() != n) throw UsageError("generator degree does not match n");
    for (std::size_t c : sorted) {
      if (!in[g(c)]) throw UsageError("generator does not preserve the carrier");
    }
  }
  OrbitPartition full = orbits(gens, n);
  std::vector<std::vector<std::size_t>> out;
  for (const auto& b : full.blocks()) {
    if (in[b.front()]) out.push_back(b);
  }
  return out;
}

GraphDefect graph_defect(const Perm& s, const Perm& t) {
  if (s.size() != t.size()) throw UsageError("graph defect of permutations of different degree");
  std::size_t n = s.size();
  Perm st = compose(s, t);
  GraphDefect gd{orbits({s, t}, n), {}};
  for (const auto& block : gd.orbits.blocks()) {
    long twice = static_cast<long>(block.size()) + 2 - static_cast<long>(count_orbits_within(s, block)) -
                 static_cast<long>(count_orbits_within(t, block)) - static_cast<long>(count_orbits_within(st, block));
    if (twice < 0 || twice % 2 != 0) {
      throw InvariantViolation("graph defect is not a nonnegative integer for " + s.cycle_notation() + ", " +
                               t.cycle_notation());
    }
    gd.values.push_back(static_cast<int>(twice / 2));
  }
  return gd;
}

Partition cycle_type(const Perm& s) {
  std::size_t n = s.size();
  std::vector<std::size_t> a(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t i = start; !seen[i]; i = s(i)) {
      seen[i] = true;
      ++len;
    }
    ++a[len - 1];
  }
  return Partition(std::move(a));
}

void for_each_perm(std::size_t n, const std::function<void(const Perm&)>& visit, std::size_t limit) {
  if (n > limit) {
    throw ResourceError("enumeration of S_" + std::to_string(n) + " exceeds the limit n <= " + std::to_string(limit));
  }
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), 1);
  do {
    visit(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

std::vector<Perm> enumerate_sn(std::size_t n, std::size_t limit) {
  std::vector<Perm> out;
  out.reserve(n <= limit ? factorial(n) : 0);
  for_each_perm(n, [&](const Perm& p) { out.push_back(p); }, limit);
  return out;
}

}  // namespace hilbperv
