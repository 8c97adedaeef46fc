#include "hilbperv/perversity.hpp"

#include <algorithm>
#include <random>

#include "hilbperv/errors.hpp"
#include "hilbperv/lehn_checks.hpp"
#include "hilbperv/matrix.hpp"
#include "parallel.hpp"

namespace hilbperv {

std::string PerversityValue::str() const { return value_ ? std::to_string(*value_) : "-inf"; }

PerversityValue perversity(const WreathAlgebra& algebra, const WreathElement& x) {
  return PerversityValue(algebra.perversity(x));
}

PerversityValue perversity_class(const WreathAlgebra& algebra, const WreathClass& x) {
  PerversityValue out;
  for (const auto& [e, c] : x.terms()) {
    PerversityValue p = perversity(algebra, e);
    if (out < p) out = p;
  }
  return out;
}

CheckReport check_multiplicativity(const WreathAlgebra& algebra, const CheckOptions& options) {
  CheckReport report("multiplicativity");
  report.set_detail("ring", algebra.ring().name());
  report.set_detail("n", std::to_string(algebra.n()));
  const std::vector<WreathElement> basis = algebra.basis();
  const std::size_t D = basis.size();
  const int top = top_degree(algebra);
  std::vector<int> deg(D);
  std::vector<int> perv(D);
  for (std::size_t i = 0; i < D; ++i) {
    deg[i] = algebra.degree(basis[i]);
    perv[i] = algebra.perversity(basis[i]);
  }
  std::uint64_t work = 0;
  for (std::size_t x = 0; x < D; ++x) {
    for (std::size_t y = 0; y < D; ++y) work += deg[x] + deg[y] <= top ? 1 : 0;
  }
  const bool sampled = work > options.limit;
  if (sampled && !options.allow_sampling) {
    throw ResourceError("multiplicativity: exhaustive run needs " + std::to_string(work) + " products, limit is " +
                        std::to_string(options.limit));
  }
  report.set_detail("mode", sampled ? "sampled" : "exhaustive");
  report.set_detail("work", std::to_string(work));
  report.set_detail("limit", std::to_string(options.limit));
  if (sampled) {
    report.set_detail("seed", std::to_string(options.seed));
    report.set_detail("samples", std::to_string(options.samples));
  }

  auto one = [&](std::size_t x, std::size_t y, CheckReport& part) {
    part.add_checked();
    WreathClass p = algebra.cup(basis[x], basis[y]);
    PerversityValue got = perversity_class(algebra, p);
    const int bound = perv[x] + perv[y];
    if (got <= PerversityValue(bound)) return;
    Witness w;
    w.check = "p(xy) <= p(x) + p(y)";
    w.inputs = {algebra.render(basis[x]), algebra.render(basis[y])};
    w.expected = "<= " + std::to_string(bound);
    w.actual = algebra.render(p);
    w.bound = bound;
    w.value = got.value();
    part.add_violation(std::move(w));
  };

  if (sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, D - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      std::size_t x = pick(rng);
      std::size_t y = pick(rng);
      one(x, y, report);
    }
  } else {
    detail::parallel_chunks(D, options.jobs, report, [&](std::uint64_t b, std::uint64_t e, CheckReport& part) {
      for (std::uint64_t x = b; x < e; ++x) {
        for (std::size_t y = 0; y < D; ++y) {
          if (deg[x] + deg[y] <= top) {
            one(x, y, part);
          } else {
            part.add_checked();
          }
        }
      }
    });
  }
  report.sort_witnesses();
  return report;
}

CheckReport check_diagonal_bound(const SurfaceRing& ring, std::size_t m_max) {
  CheckReport report("diagonal-bound");
  report.set_detail("ring", ring.name());
  report.set_detail("m-max", std::to_string(m_max));
  for (std::size_t g = 0; g < ring.dim(); ++g) {
    // Δ_m for successive m by pushing the first slot once more.
    for (std::size_t m = 2; m <= m_max; ++m) {
      report.add_checked();
      TensorClass t = diagonal_push(ring, m, RingClass::basis(g));
      const int bound = ring.perversity(g) + 2 * static_cast<int>(m - 1);
      int worst = -1;
      std::string worst_term;
      for (const auto& [slots, c] : t.terms()) {
        int p = 0;
        for (std::size_t s : slots) p += ring.perversity(s);
        if (p > worst) {
          worst = p;
          worst_term.clear();
          for (std::size_t k = 0; k < slots.size(); ++k) worst_term += (k ? "x" : "") + ring.basis(slots[k]).name;
        }
      }
      if (worst > bound) {
        Witness w;
        w.check = "p(Delta_m(g)) <= p(g) + 2(m-1)";
        w.inputs = {ring.basis(g).name, "m=" + std::to_string(m)};
        w.expected = "<= " + std::to_string(bound);
        w.actual = worst_term;
        w.bound = bound;
        w.value = worst;
        report.add_violation(std::move(w));
      }
    }
  }
  report.sort_witnesses();
  return report;
}

BigradedTable perverse_table(const SurfaceRing& ring) {
  BigradedTable out;
  for (const auto& b : ring.basis()) ++out[{b.perversity, b.degree}];
  return out;
}

BigradedTable pw_transport(const BigradedTable& perverse) {
  BigradedTable out;
  for (const auto& [key, dim] : perverse) {
    if (dim != 0) out[{2 * key.first, key.second}] += dim;
  }
  return out;
}

namespace {

Matrix to_matrix(const IntMatrix& m) {
  const std::size_t rows = m.size();
  for (const auto& row : m) {
    if (row.size() != rows) throw UsageError("matrix must be square");
  }
  Matrix out(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) out(i, j) = Rational(m[i][j]);
  }
  return out;
}

std::string render(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

}  // namespace

CheckReport check_monodromy_vanishing(const IntMatrix& m) {
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
    throw UsageError("monodromy matrix must be 2x2");
  }
  CheckReport report("monodromy-vanishing");
  report.add_checked();
  Matrix a = to_matrix(m) - Matrix::identity(2);
  Rational det = determinant(a);
  report.set_detail("matrix", render(m));
  report.set_detail("det(M-I)", det.str());
  if (det.is_zero()) {
    Witness w;
    w.check = "det(M-I) != 0";
    w.inputs = {render(m)};
    w.expected = "nonzero";
    w.actual = "0";
    report.add_violation(std::move(w));
  }
  return report;
}

CheckReport check_intersection_nondegenerate(const IntMatrix& m) {
  if (m.empty()) throw UsageError("intersection matrix is empty");
  CheckReport report("intersection-nondegenerate");
  report.add_checked();
  Rational det = determinant(to_matrix(m));
  report.set_detail("matrix", render(m));
  report.set_detail("determinant", det.str());
  if (det.is_zero()) {
    Witness w;
    w.check = "det M != 0";
    w.inputs = {render(m)};
    w.expected = "nonzero";
    w.actual = "0";
    report.add_violation(std::move(w));
  }
  return report;
}

std::vector<std::pair<std::string, IntMatrix>> family_monodromies() {
  return {
      {"d4", {{-1, 0}, {0, -1}}},
      {"e6", {{0, -1}, {1, -1}}},
      {"e7", {{0, -1}, {1, 0}}},
      {"e8", {{0, -1}, {1, 1}}},
  };
}

IntMatrix triangle_intersection_matrix() { return {{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}; }

}  // namespace hilbperv
