#include "hilbperv/lehn_checks.hpp"

#include <algorithm>
#include <random>

#include "hilbperv/errors.hpp"
#include "parallel.hpp"

namespace hilbperv {
namespace {

// Shared per-algebra data for the checkers: basis, degrees, and the action on basis indices.
struct Context {
  const WreathAlgebra& A;
  std::vector<WreathElement> basis;
  std::vector<int> degree;
  std::vector<std::uint32_t> by_degree;     // basis indices sorted by degree
  std::vector<std::uint32_t> upto;          // upto[d]: how many of by_degree have degree <= d
  std::uint32_t unit = 0;
  int top = 0;

  explicit Context(const WreathAlgebra& algebra) : A(algebra), basis(algebra.basis()) {
    degree.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      degree[i] = A.degree(basis[i]);
      top = std::max(top, degree[i]);
    }
    by_degree.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) by_degree[i] = static_cast<std::uint32_t>(i);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return degree[a] < degree[b]; });
    upto.assign(static_cast<std::size_t>(top) + 1, 0);
    for (std::uint32_t i : by_degree) {
      for (int d = degree[i]; d <= top; ++d) ++upto[d];
    }
    unit = static_cast<std::uint32_t>(A.index_of(A.unit()));
  }

  std::size_t dim() const { return basis.size(); }

  // Number of basis elements with degree <= d (d may be negative or above top).
  std::uint32_t count_upto(int d) const {
    if (d < 0) return 0;
    return upto[std::min(d, top)];
  }

  // Pairs (x, y) with deg x + deg y <= top.
  std::uint64_t pruned_pairs() const {
    std::uint64_t n = 0;
    for (std::size_t x = 0; x < dim(); ++x) n += count_upto(top - degree[x]);
    return n;
  }
};

struct ActionTable {
  std::size_t perms = 0;
  std::size_t dim = 0;
  std::vector<std::uint32_t> image;  // image[t * dim + i]
  std::vector<std::int8_t> sign;

  explicit ActionTable(const Context& ctx) : perms(ctx.A.perms().size()), dim(ctx.dim()) {
    image.resize(perms * dim);
    sign.resize(perms * dim);
    for (std::size_t t = 0; t < perms; ++t) {
      for (std::size_t i = 0; i < dim; ++i) {
        SignedElement s = ctx.A.act(ctx.A.perms()[t], ctx.basis[i]);
        image[t * dim + i] = static_cast<std::uint32_t>(ctx.A.index_of(s.element));
        sign[t * dim + i] = static_cast<std::int8_t>(s.sign);
      }
    }
  }

  std::uint32_t at(std::size_t t, std::size_t i) const { return image[t * dim + i]; }

  bool is_orbit_minimum(std::size_t i) const {
    for (std::size_t t = 0; t < perms; ++t) {
      if (at(t, i) < i) return false;
    }
    return true;
  }

  std::vector<std::size_t> stabilizer(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < perms; ++t) {
      if (at(t, i) == i) out.push_back(t);
    }
    return out;
  }
};

WreathClass cup_left(const WreathAlgebra& A, const WreathClass& x, const WreathElement& y) {
  std::vector<WreathClass::Term> out;
  for (const auto& [e, c] : x.terms()) {
    WreathClass p = A.cup(e, y);
    for (const auto& [f, d] : p.terms()) out.emplace_back(f, c * d);
  }
  return WreathClass::from_terms(std::move(out));
}

WreathClass cup_right(const WreathAlgebra& A, const WreathElement& x, const WreathClass& y) {
  std::vector<WreathClass::Term> out;
  for (const auto& [e, c] : y.terms()) {
    WreathClass p = A.cup(x, e);
    for (const auto& [f, d] : p.terms()) out.emplace_back(f, c * d);
  }
  return WreathClass::from_terms(std::move(out));
}

void record_mode(CheckReport& r, const CheckOptions& o, bool sampled, std::uint64_t work) {
  r.set_detail("mode", sampled ? "sampled" : "exhaustive");
  r.set_detail("work", std::to_string(work));
  r.set_detail("limit", std::to_string(o.limit));
  if (sampled) {
    r.set_detail("seed", std::to_string(o.seed));
    r.set_detail("samples", std::to_string(o.samples));
  }
}

bool use_sampling(const CheckOptions& o, std::uint64_t work, const std::string& suite) {
  if (work <= o.limit) return false;
  if (!o.allow_sampling) {
    throw ResourceError(suite + ": exhaustive run needs " + std::to_string(work) + " products, limit is " +
                        std::to_string(o.limit));
  }
  return true;
}

void header(CheckReport& r, const WreathAlgebra& A) {
  r.set_detail("ring", A.ring().name());
  r.set_detail("n", std::to_string(A.n()));
}

// Degree additivity of one computed product; violations land in the report.
void check_degrees(const Context& ctx, const WreathElement& x, const WreathElement& y, int expected,
                   const WreathClass& product, CheckReport& report) {
  for (const auto& [e, c] : product.terms()) {
    int d = ctx.A.degree(e);
    if (d != expected) {
      Witness w;
      w.check = "degree";
      w.inputs = {ctx.A.render(x), ctx.A.render(y)};
      w.expected = "degree " + std::to_string(expected);
      w.actual = "term " + ctx.A.render(e) + " of degree " + std::to_string(d);
      report.add_violation(std::move(w));
      return;
    }
  }
}

}  // namespace

int top_degree(const WreathAlgebra& algebra) {
  int dmax = 0;
  for (std::size_t i = 0; i < algebra.ring().dim(); ++i) dmax = std::max(dmax, algebra.ring().degree(i));
  int top = 0;
  const int n = static_cast<int>(algebra.n());
  for (const Perm& s : algebra.perms()) {
    int r = static_cast<int>(algebra.orbit_count(s));
    top = std::max(top, r * dmax + 2 * (n - r));
  }
  return top;
}

CheckReport check_unit(const WreathAlgebra& algebra) {
  CheckReport report("unit");
  header(report, algebra);
  const WreathElement one = algebra.unit();
  for (const WreathElement& x : algebra.basis()) {
    report.add_checked();
    WreathClass want = WreathClass::of(x);
    WreathClass left = algebra.cup(one, x);
    WreathClass right = algebra.cup(x, one);
    for (const auto& [side, got] : {std::pair<const char*, const WreathClass*>{"1*x", &left}, {"x*1", &right}}) {
      if (*got != want) {
        Witness w;
        w.check = side;
        w.inputs = {algebra.render(x)};
        w.expected = algebra.render(want);
        w.actual = algebra.render(*got);
        report.add_violation(std::move(w));
      }
    }
  }
  report.set_detail("mode", "exhaustive");
  return report;
}

CheckReport check_degree_additivity(const WreathAlgebra& algebra, const CheckOptions& options) {
  CheckReport report("degree-additivity");
  header(report, algebra);
  Context ctx(algebra);
  const std::uint64_t D = ctx.dim();
  const std::uint64_t work = D * D;
  const bool sampled = use_sampling(options, work, report.suite());
  record_mode(report, options, sampled, work);
  auto one = [&](std::size_t x, std::size_t y, CheckReport& part) {
    part.add_checked();
    WreathClass p = algebra.cup(ctx.basis[x], ctx.basis[y]);
    check_degrees(ctx, ctx.basis[x], ctx.basis[y], ctx.degree[x] + ctx.degree[y], p, part);
  };
  if (!sampled) {
    detail::parallel_chunks(D, options.jobs, report, [&](std::uint64_t b, std::uint64_t e, CheckReport& part) {
      for (std::uint64_t x = b; x < e; ++x) {
        for (std::uint64_t y = 0; y < D; ++y) one(x, y, part);
      }
    });
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, D - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      std::uint64_t x = pick(rng);
      std::uint64_t y = pick(rng);
      one(x, y, report);
    }
  }
  return report;
}

CheckReport check_associativity(const WreathAlgebra& algebra, const CheckOptions& options) {
  CheckReport report("associativity");
  header(report, algebra);
  Context ctx(algebra);
  const std::size_t D = ctx.dim();

  std::uint64_t work = 0;  // triples of total degree <= top
  for (std::size_t x = 0; x < D; ++x) {
    for (std::size_t y = 0; y < D; ++y) work += ctx.count_upto(ctx.top - ctx.degree[x] - ctx.degree[y]);
  }
  const bool sampled = use_sampling(options, work, report.suite());
  record_mode(report, options, sampled, work);
  report.set_detail("top-degree", std::to_string(ctx.top));

  auto compare = [&](std::size_t x, std::size_t y, std::size_t z, const WreathClass& lhs, const WreathClass& rhs,
                     CheckReport& part) {
    if (lhs == rhs) return;
    Witness w;
    w.check = "(xy)z = x(yz)";
    w.inputs = {algebra.render(ctx.basis[x]), algebra.render(ctx.basis[y]), algebra.render(ctx.basis[z])};
    w.expected = algebra.render(lhs);
    w.actual = algebra.render(rhs);
    part.add_violation(std::move(w));
  };

  if (sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, D - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      std::size_t x = pick(rng);
      std::size_t y = pick(rng);
      std::size_t z = pick(rng);
      report.add_checked();
      WreathClass lhs = cup_left(algebra, algebra.cup(ctx.basis[x], ctx.basis[y]), ctx.basis[z]);
      WreathClass rhs = cup_right(algebra, ctx.basis[x], algebra.cup(ctx.basis[y], ctx.basis[z]));
      compare(x, y, z, lhs, rhs, report);
    }
    return report;
  }

  CheckReport unit = check_unit(algebra);
  if (!unit.passed()) {
    report.fail("unit law fails; triples containing 1*id are not covered");
    report.merge(unit);
    return report;
  }
  ActionTable act(ctx);
  std::vector<std::uint32_t> middles;
  for (std::uint32_t y : ctx.by_degree) {
    if (y != ctx.unit && act.is_orbit_minimum(y)) middles.push_back(y);
  }
  report.set_detail("reduction", "orbit representatives of the middle factor, unit triples via the unit law");

  detail::parallel_chunks(middles.size(), options.jobs, report, [&](std::uint64_t b, std::uint64_t e,
                                                                    CheckReport& part) {
    std::vector<WreathClass> left(D);
    std::vector<WreathClass> right(D);
    for (std::uint64_t k = b; k < e; ++k) {
      const std::uint32_t y = middles[k];
      const WreathElement& Y = ctx.basis[y];
      const std::vector<std::size_t> stab = act.stabilizer(y);
      const std::uint32_t reach = ctx.count_upto(ctx.top - ctx.degree[y]);
      for (std::uint32_t pos = 0; pos < reach; ++pos) {
        std::uint32_t x = ctx.by_degree[pos];
        left[x] = algebra.cup(ctx.basis[x], Y);
        right[x] = algebra.cup(Y, ctx.basis[x]);
        check_degrees(ctx, ctx.basis[x], Y, ctx.degree[x] + ctx.degree[y], left[x], part);
        check_degrees(ctx, Y, ctx.basis[x], ctx.degree[x] + ctx.degree[y], right[x], part);
      }
      std::vector<std::uint32_t> nonzero_right;
      for (std::uint32_t pos = 0; pos < reach; ++pos) {
        std::uint32_t z = ctx.by_degree[pos];
        if (!right[z].is_zero()) nonzero_right.push_back(z);
      }
      auto minimal = [&](std::uint32_t x, std::uint32_t z) {
        for (std::size_t t : stab) {
          std::uint32_t tx = act.at(t, x);
          std::uint32_t tz = act.at(t, z);
          if (tx < x || (tx == x && tz < z)) return false;
        }
        return true;
      };
      auto visit = [&](std::uint32_t x, std::uint32_t z) {
        if (z == ctx.unit) return;
        if (stab.size() > 1 && !minimal(x, z)) return;
        part.add_checked();
        WreathClass lhs = cup_left(algebra, left[x], ctx.basis[z]);
        WreathClass rhs = cup_right(algebra, ctx.basis[x], right[z]);
        compare(x, y, z, lhs, rhs, part);
      };
      for (std::uint32_t pos = 0; pos < reach; ++pos) {
        std::uint32_t x = ctx.by_degree[pos];
        if (x == ctx.unit) continue;
        const int budget = ctx.top - ctx.degree[y] - ctx.degree[x];
        if (!left[x].is_zero()) {
          const std::uint32_t zr = ctx.count_upto(budget);
          for (std::uint32_t q = 0; q < zr; ++q) visit(x, ctx.by_degree[q]);
        } else {
          for (std::uint32_t z : nonzero_right) {
            if (ctx.degree[z] > budget) break;
            visit(x, z);
          }
        }
      }
    }
  });
  return report;
}

CheckReport check_equivariance(const WreathAlgebra& algebra, const CheckOptions& options) {
  CheckReport report("equivariance");
  header(report, algebra);
  Context ctx(algebra);
  const std::size_t D = ctx.dim();
  const std::size_t n = algebra.n();

  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<std::size_t> swap(n);
    std::vector<std::size_t> cycle(n);
    for (std::size_t i = 0; i < n; ++i) {
      swap[i] = i + 1;
      cycle[i] = (i + 1) % n + 1;
    }
    std::swap(swap[0], swap[1]);
    gens.push_back(Perm::from_images(swap));
    if (n > 2) gens.push_back(Perm::from_images(cycle));
  }
  const std::uint64_t pairs = ctx.pruned_pairs();
  const std::uint64_t work = gens.size() * pairs * 2;
  const bool sampled = use_sampling(options, work, report.suite());
  record_mode(report, options, sampled, work);

  auto one = [&](const Perm& tau, std::size_t x, std::size_t y, CheckReport& part) {
    part.add_checked();
    WreathClass lhs = algebra.act(tau, algebra.cup(ctx.basis[x], ctx.basis[y]));
    SignedElement tx = algebra.act(tau, ctx.basis[x]);
    SignedElement ty = algebra.act(tau, ctx.basis[y]);
    WreathClass rhs = algebra.cup(tx.element, ty.element);
    if (tx.sign * ty.sign < 0) rhs *= Rational(-1);
    if (lhs != rhs) {
      Witness w;
      w.check = "tau(xy) = tau(x)tau(y)";
      w.inputs = {tau.cycle_notation(), algebra.render(ctx.basis[x]), algebra.render(ctx.basis[y])};
      w.expected = algebra.render(lhs);
      w.actual = algebra.render(rhs);
      part.add_violation(std::move(w));
    }
  };

  if (sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, D - 1);
    std::uniform_int_distribution<std::size_t> pick_perm(0, algebra.perms().size() - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const Perm& tau = algebra.perms()[pick_perm(rng)];
      std::size_t x = pick(rng);
      std::size_t y = pick(rng);
      one(tau, x, y, report);
    }
    return report;
  }

  // The action composes: (t1 t2)·x = t1·(t2·x) on every basis element.
  ActionTable act(ctx);
  const auto& perms = algebra.perms();
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      const std::size_t ab = compose(perms[a], perms[b]).rank();
      for (std::size_t i = 0; i < D; ++i) {
        report.add_checked();
        std::uint32_t mid = act.at(b, i);
        std::uint32_t two = act.at(a, mid);
        int s2 = act.sign[b * D + i] * act.sign[a * D + mid];
        if (act.at(ab, i) != two || act.sign[ab * D + i] != s2) {
          Witness w;
          w.check = "(t1 t2)x = t1(t2 x)";
          w.inputs = {perms[a].cycle_notation(), perms[b].cycle_notation(), algebra.render(ctx.basis[i])};
          w.expected = (act.sign[ab * D + i] < 0 ? "-" : "") + algebra.render(ctx.basis[act.at(ab, i)]);
          w.actual = (s2 < 0 ? "-" : "") + algebra.render(ctx.basis[two]);
          report.add_violation(std::move(w));
        }
      }
    }
  }
  std::string gen_text;
  for (const Perm& g : gens) gen_text += (gen_text.empty() ? "" : ", ") + g.cycle_notation();
  report.set_detail("generators", gens.empty() ? "none" : gen_text);

  for (const Perm& tau : gens) {
    detail::parallel_chunks(D, options.jobs, report, [&](std::uint64_t b, std::uint64_t e, CheckReport& part) {
      for (std::uint64_t x = b; x < e; ++x) {
        const std::uint32_t reach = ctx.count_upto(ctx.top - ctx.degree[x]);
        for (std::uint32_t q = 0; q < reach; ++q) one(tau, x, ctx.by_degree[q], part);
      }
    });
  }
  return report;
}

CheckReport check_graded_commutativity(const WreathAlgebra& algebra, const CheckOptions& options) {
  CheckReport report("graded-commutativity");
  header(report, algebra);
  Context ctx(algebra);
  ActionTable act(ctx);

  std::vector<std::uint32_t> reps;
  std::vector<WreathClass> sums;
  for (std::uint32_t i : ctx.by_degree) {
    if (!act.is_orbit_minimum(i)) continue;
    WreathClass s = algebra.orbit_sum(ctx.basis[i]);
    if (s.is_zero()) continue;
    reps.push_back(i);
    sums.push_back(std::move(s));
  }
  std::uint64_t work = 0;
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a; b < reps.size(); ++b) {
      if (ctx.degree[reps[a]] + ctx.degree[reps[b]] <= ctx.top) work += 2 * sums[a].size() * sums[b].size();
    }
  }
  const bool sampled = use_sampling(options, work, report.suite());
  record_mode(report, options, sampled, work);
  report.set_detail("invariant-basis", std::to_string(reps.size()));

  auto one = [&](std::size_t a, std::size_t b, CheckReport& part) {
    part.add_checked();
    const int da = ctx.degree[reps[a]];
    const int db = ctx.degree[reps[b]];
    WreathClass lhs = algebra.cup(sums[a], sums[b]);
    WreathClass rhs = algebra.cup(sums[b], sums[a]);
    if ((da * db) % 2 != 0) rhs *= Rational(-1);
    if (lhs != rhs) {
      Witness w;
      w.check = "XY = (-1)^{|X||Y|} YX";
      w.inputs = {"orbit of " + algebra.render(ctx.basis[reps[a]]), "orbit of " + algebra.render(ctx.basis[reps[b]])};
      w.expected = algebra.render(lhs);
      w.actual = algebra.render(rhs);
      part.add_violation(std::move(w));
    }
  };

  if (sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      std::size_t a = pick(rng);
      std::size_t b = pick(rng);
      one(a, b, report);
    }
    return report;
  }
  detail::parallel_chunks(reps.size(), options.jobs, report, [&](std::uint64_t b0, std::uint64_t e0,
                                                                 CheckReport& part) {
    for (std::uint64_t a = b0; a < e0; ++a) {
      for (std::size_t b = a; b < reps.size(); ++b) {
        if (ctx.degree[reps[a]] + ctx.degree[reps[b]] > ctx.top) break;
        one(a, b, part);
      }
    }
  });
  return report;
}

CheckReport check_twisted_commutativity(const WreathAlgebra& algebra, const CheckOptions& options) {
  CheckReport report("twisted-commutativity");
  header(report, algebra);
  Context ctx(algebra);
  const std::size_t D = ctx.dim();
  const std::uint64_t work = 2 * ctx.pruned_pairs();
  const bool sampled = use_sampling(options, work, report.suite());
  record_mode(report, options, sampled, work);

  auto one = [&](std::size_t x, std::size_t y, CheckReport& part) {
    part.add_checked();
    const WreathElement& X = ctx.basis[x];
    const WreathElement& Y = ctx.basis[y];
    WreathClass lhs = algebra.cup(X, Y);
    SignedElement moved = algebra.act(X.sigma, Y);
    WreathClass rhs = algebra.cup(moved.element, X);
    int sign = moved.sign * (((ctx.degree[x] * ctx.degree[y]) % 2 != 0) ? -1 : 1);
    rhs *= Rational(sign);
    if (lhs != rhs) {
      Witness w;
      w.check = "xy = (-1)^{|x||y|} sigma(y)x";
      w.inputs = {algebra.render(X), algebra.render(Y)};
      w.expected = algebra.render(lhs);
      w.actual = algebra.render(rhs);
      part.add_violation(std::move(w));
    }
  };
  if (sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, D - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      std::size_t x = pick(rng);
      std::size_t y = pick(rng);
      one(x, y, report);
    }
    return report;
  }
  detail::parallel_chunks(D, options.jobs, report, [&](std::uint64_t b, std::uint64_t e, CheckReport& part) {
    for (std::uint64_t x = b; x < e; ++x) {
      const std::uint32_t reach = ctx.count_upto(ctx.top - ctx.degree[x]);
      for (std::uint32_t q = 0; q < reach; ++q) one(x, ctx.by_degree[q], part);
    }
  });
  return report;
}

}  // namespace hilbperv
