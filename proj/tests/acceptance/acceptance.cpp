// Runs the eleven acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hilbperv/errors.hpp"
#include "hilbperv/filtered_basis.hpp"
#include "hilbperv/generating_series.hpp"
#include "hilbperv/lehn_checks.hpp"
#include "hilbperv/perversity.hpp"
#include "hilbperv/presets.hpp"
#include "hilbperv/wreath.hpp"

using namespace hilbperv;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

const std::vector<std::string> kOpen = {"a0", "d4", "e6", "e7", "e8"};
const std::vector<std::string> kAll = {"a0", "d4", "e6", "e7", "e8", "k3", "abelian"};

TruncatedSeries poly(std::initializer_list<std::pair<std::array<std::uint32_t, 2>, std::int64_t>> terms) {
  TruncatedSeries r(0);
  for (const auto& [e, c] : terms) r.add_term({0, e[0], e[1]}, Rational(c));
  return r;
}

std::string label_of(const std::string& name) { return name == "a0" ? "a0" : "dynkin" + name.substr(1); }

void criterion1(Outcome& o) {
  for (const auto& name : kOpen) {
    TruncatedSeries got = brute_force_poincare(preset(name), 1);
    TruncatedSeries expect = name == "a0" ? poly({{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 1}})
                                          : poly({{{0, 0}, 1}, {{1, 2}, std::stoi(name.substr(1))}, {{2, 2}, 1}});
    o.require(got == expect, name + ": " + got.str());
  }
  o.note << " five n=1 tables";
}

void criterion2(Outcome& o) {
  const std::vector<std::pair<std::string, std::size_t>> ranges = {{"a0", 5}, {"d4", 5}, {"e6", 4}, {"e7", 3}, {"e8", 3}};
  int compared = 0;
  for (const auto& [name, max_n] : ranges) {
    SurfaceRing ring = preset(name);
    TruncatedSeries closed = closed_form(SeriesSpec::parse(label_of(name), static_cast<std::uint32_t>(max_n)));
    BigradedDims dims = perverse_table(ring);
    for (std::size_t n = 1; n <= max_n; ++n) {
      TruncatedSeries expect = s_coefficient(closed, static_cast<std::uint32_t>(n));
      o.require(brute_force_poincare(ring, n) == expect, name + " brute force n=" + std::to_string(n));
      o.require(partition_sum(dims, n) == expect, name + " partition sum n=" + std::to_string(n));
      ++compared;
    }
  }
  o.note << " " << compared << " coefficients, three ways each";
}

void multiplicativity(Outcome& o, const std::string& name, std::size_t n) {
  WreathAlgebra algebra(preset(name), n);
  CheckReport r = check_multiplicativity(algebra);
  o.require(r.passed(), name + " n=" + std::to_string(n) + "\n" + r.to_text());
  o.note << " " << name << "/" << n << ":" << *r.detail("mode") << "(" << r.checked() << ")";
}

void criterion3(Outcome& o) {
  for (const auto& name : kOpen) {
    for (std::size_t n = 1; n <= 3; ++n) multiplicativity(o, name, n);
  }
  multiplicativity(o, "d4", 4);
}

void criterion4(Outcome& o) {
  for (const char* name : {"k3", "abelian"}) {
    for (std::size_t n = 1; n <= 3; ++n) multiplicativity(o, name, n);
  }
}

void criterion5(Outcome& o) {
  CheckOptions exhaustive;
  exhaustive.allow_sampling = false;
  exhaustive.limit = 50'000'000'000;  // above the largest case (k3 n=3 associativity, 1.3e10)
  for (const auto& name : kAll) {
    for (std::size_t n = 1; n <= 3; ++n) {
      WreathAlgebra algebra(preset(name), n);
      const std::string tag = name + " n=" + std::to_string(n);
      try {
        CheckReport unit = check_unit(algebra);
        o.require(unit.passed(), tag + " unit");
        CheckReport eq = check_equivariance(algebra, exhaustive);
        o.require(eq.passed(), tag + " equivariance");
        CheckReport gc = check_graded_commutativity(algebra, exhaustive);
        o.require(gc.passed(), tag + " graded commutativity");
        CheckReport as = check_associativity(algebra, exhaustive);
        o.require(as.passed(), tag + " associativity");
      } catch (const ResourceError& e) {
        o.require(false, tag + ": " + e.what());
      }
    }
  }
  o.note << " unit, equivariance, graded commutativity, associativity; 7 presets, n<=3";
}

void criterion6(Outcome& o) {
  for (const auto& name : kAll) {
    CheckReport r = check_diagonal_bound(preset(name), 4);
    o.require(r.passed(), name + "\n" + r.to_text());
  }
  o.note << " 7 presets, m<=4";
}

void criterion7(Outcome& o) {
  {
    WreathAlgebra k3(preset("k3"), 3);
    WreathElement c = k3.parse_element("1;(1 2 3)");
    WreathClass expect = WreathClass::of(
        k3.make(Perm::parse_cycles("(1 3 2)", 3), {k3.ring().index_of("pt")}), Rational(24));
    WreathClass got = k3.cup(c, c);
    o.require(got == expect, "k3: " + k3.render(got));
    o.note << " k3: " << k3.render(got) << ";";
  }
  {
    WreathAlgebra d4(preset("d4"), 2);
    const SurfaceRing& r = d4.ring();
    WreathElement x = d4.parse_element("1;(1 2)");
    std::vector<WreathClass::Term> terms;
    for (const char* e : {"E1", "E2", "E3", "E4"}) {
      terms.emplace_back(d4.make(Perm::identity(2), {r.index_of(e), r.index_of(e)}), Rational(-1));
    }
    WreathClass got = d4.cup(x, x);
    o.require(got == WreathClass::from_terms(terms), "d4: " + d4.render(got));
    PerversityValue p = perversity_class(d4, got);
    o.require(p == PerversityValue(2) && d4.perversity(x) == 1, "d4 perversity " + p.str());
    o.note << " d4 perversity " << p.str() << " = " << d4.perversity(x) << "+" << d4.perversity(x);
  }
}

void criterion8(Outcome& o) {
  const std::vector<std::string> dets = {"4", "3", "2", "1"};
  auto family = family_monodromies();
  for (std::size_t i = 0; i < family.size(); ++i) {
    CheckReport r = check_monodromy_vanishing(family[i].second);
    const std::string det = *r.detail("det(M-I)");
    o.require(r.passed() && det == dets[i], family[i].first + " det(M-I)=" + det);
    o.note << " " << family[i].first << ":" << det;
  }
  CheckReport t = check_intersection_nondegenerate(triangle_intersection_matrix());
  const std::string det = *t.detail("determinant");
  o.require(t.passed() && det == "4", "triangle det=" + det);
  o.note << " triangle:" << det;
}

void criterion9(Outcome& o) {
  const BigradedTable a0 = {{{0, 0}, 1}, {{2, 1}, 2}, {{4, 2}, 1}};
  for (const auto& name : kOpen) {
    BigradedTable expect = a0;
    if (name != "a0") expect = {{{0, 0}, 1}, {{2, 2}, std::stoi(name.substr(1))}, {{4, 2}, 1}};
    o.require(pw_transport(perverse_table(preset(name))) == expect, name);
  }
  o.note << " five weight tables";
}

void criterion10(Outcome& o) {
  for (const auto& name : kAll) {
    BigradedDims dims = perverse_table(preset(name));
    TruncatedSeries lhs = specialize(refined_goettsche(dims, 6), Rational(1), std::nullopt);
    o.require(lhs == betti_goettsche(betti_numbers(dims), 6), name);
  }
  o.note << " 7 presets, s^6";
}

void criterion11(Outcome& o) {
  for (const char* name : {"k3", "abelian"}) {
    SurfaceRing ring = preset(name);
    FilteredBasis basis = filtered_basis(ring);
    CheckReport r = check_signed_orthonormal(ring, basis);
    o.require(r.passed() && basis.size() == ring.dim(), std::string(name) + "\n" + r.to_text());
    o.note << " " << name << ":" << r.checked() << " pairings";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("criteria", only, "Run only these criteria (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);
  const std::set<int> selected(only.begin(), only.end());

  struct Criterion {
    std::string desc;
    std::function<void(Outcome&)> run;
    double budget_seconds;  // zero: no stated limit
  };
  const std::vector<Criterion> criteria = {
      {"n=1 perverse numbers", criterion1, 0},
      {"closed form = brute force = partition sum", criterion2, 600},
      {"multiplicativity, open surfaces", criterion3, 600},
      {"multiplicativity, compact surfaces", criterion4, 900},
      {"ring axioms, exhaustive", criterion5, 600},
      {"diagonal bound", criterion6, 0},
      {"g=1 branch products", criterion7, 0},
      {"monodromy and triangle determinants", criterion8, 0},
      {"perverse to weight transport", criterion9, 0},
      {"q=1 specialization", criterion10, 0},
      {"signed orthonormal filtered basis", criterion11, 5},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && selected.count(id) == 0) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double budget = criteria[i].budget_seconds;
    if (budget > 0) o.require(secs < budget, "time limit " + std::to_string(static_cast<int>(budget)) + "s exceeded");
    std::ostringstream time;
    time.setf(std::ios::fixed);
    time.precision(2);
    time << secs;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << criteria[i].desc << ", "
              << time.str() << "s)" << o.note.str() << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
