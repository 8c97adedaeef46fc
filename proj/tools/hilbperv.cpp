// hilbperv: batch front end for the wreath-product model, its perversity checks and the series tools.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hilbperv/errors.hpp"
#include "hilbperv/filtered_basis.hpp"
#include "hilbperv/generating_series.hpp"
#include "hilbperv/lehn_checks.hpp"
#include "hilbperv/perversity.hpp"
#include "hilbperv/presets.hpp"
#include "hilbperv/ring_io.hpp"
#include "hilbperv/series.hpp"
#include "hilbperv/wreath.hpp"

namespace {

using namespace hilbperv;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  std::string preset;
  std::string ring_path;
  std::size_t n = 1;
  std::uint32_t s_bound = 6;
  std::string format = "text";
  unsigned jobs = 1;
  std::uint64_t limit = kDefaultWorkLimit;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  std::size_t m_max = 4;

  bool json_out() const { return format == "json"; }

  CheckOptions options() const {
    CheckOptions o;
    o.limit = limit;
    o.jobs = jobs;
    o.seed = seed;
    o.samples = samples;
    return o;
  }
};

void add_ring_source(CLI::App* cmd, RunConfig& cfg) {
  auto* p = cmd->add_option("--preset", cfg.preset, "Preset ring name")
                ->check(CLI::IsMember(preset_names()));
  auto* r = cmd->add_option("--ring", cfg.ring_path, "Ring document path")->check(CLI::ExistingFile);
  p->excludes(r);
  r->excludes(p);
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--limit", cfg.limit, "Work limit in elementary products");
  cmd->add_option("--seed", cfg.seed, "Seed for sampled suites");
}

SurfaceRing load_source(const RunConfig& cfg) {
  if (cfg.preset.empty() == cfg.ring_path.empty()) throw UsageError("give exactly one of --preset or --ring");
  if (!cfg.preset.empty()) return preset(cfg.preset);
  return load_ring_file(cfg.ring_path);
}

void emit_report(const RunConfig& cfg, CheckReport report) {
  report.set_detail("seed", std::to_string(cfg.seed));
  if (cfg.json_out()) {
    std::cout << report.to_json() << "\n";
  } else {
    std::cout << report.to_text();
  }
}

json series_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) {
    terms.push_back({{"coeff", c.fraction_str()}, {"e_s", e[0]}, {"e_q", e[1]}, {"e_t", e[2]}});
  }
  return {{"s_bound", s.s_bound()}, {"terms", terms}};
}

void emit_series(const RunConfig& cfg, const TruncatedSeries& s) {
  if (cfg.json_out()) {
    std::cout << series_json(s).dump(2) << "\n";
  } else {
    std::cout << format_series(s);
  }
}

TruncatedSeries lift_polynomial(const TruncatedSeries& poly, std::uint32_t n) {
  TruncatedSeries r(n);
  for (const auto& [e, c] : poly.terms()) r.add_term({n, e[1], e[2]}, c);
  return r;
}

TruncatedSeries read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read series file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_series(buf.str());
}

// ---------------------------------------------------------------------------------------------

int cmd_ring_show(const RunConfig& cfg) {
  SurfaceRing ring;
  try {
    ring = load_source(cfg);
  } catch (const RingValidationError& e) {
    std::cerr << e.what() << "\n";
    if (cfg.json_out()) {
      std::cout << e.report().to_json() << "\n";
    } else {
      std::cout << e.report().to_text();
    }
    return kUsage;
  }
  CheckReport validation = validate(ring);
  if (cfg.json_out()) {
    json basis = json::array();
    for (const auto& b : ring.basis()) {
      basis.push_back({{"name", b.name}, {"degree", b.degree}, {"perversity", b.perversity}});
    }
    json out{{"ring", ring.name()},
             {"mode", to_string(ring.mode())},
             {"dimension", ring.dim()},
             {"basis", basis},
             {"euler", ring.render(ring.euler())},
             {"validation", json::parse(validation.to_json())}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "ring: " << ring.name() << "\n";
    std::cout << "mode: " << to_string(ring.mode()) << "\n";
    std::cout << "dimension: " << ring.dim() << "\n";
    std::cout << "basis:\n";
    for (const auto& b : ring.basis()) {
      std::cout << "  " << b.name << " degree=" << b.degree << " perversity=" << b.perversity << "\n";
    }
    std::cout << "euler: " << ring.render(ring.euler()) << "\n";
    std::cout << validation.to_text();
  }
  return validation.passed() ? kOk : kCheckFailed;
}

int cmd_ring_export(const RunConfig& cfg) {
  std::cout << save_ring(load_source(cfg));
  return kOk;
}

int cmd_hilb_mul(const RunConfig& cfg, const std::string& xs, const std::string& ys) {
  WreathAlgebra algebra(load_source(cfg), cfg.n);
  WreathElement x = algebra.parse_element(xs);
  WreathElement y = algebra.parse_element(ys);
  WreathClass p = algebra.cup(x, y);
  PerversityValue perv = perversity_class(algebra, p);
  std::string degree = p.is_zero() ? "-" : std::to_string(algebra.degree(p.terms().front().first));
  if (cfg.json_out()) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
      terms.push_back({{"coeff", c.str()}, {"factors", algebra.render_factors(e)}, {"perm", e.sigma.cycle_notation()},
                       {"spec", algebra.spec_string(e)}});
    }
    json out{{"x", algebra.render(x)},       {"y", algebra.render(y)}, {"product", algebra.render(p)},
             {"terms", terms},               {"degree", degree},       {"perversity", perv.str()},
             {"bound", std::to_string(algebra.perversity(x) + algebra.perversity(y))}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "x: " << algebra.render(x) << "\n";
    std::cout << "y: " << algebra.render(y) << "\n";
    std::cout << "product: " << algebra.render(p) << "\n";
    std::cout << "degree: " << degree << "\n";
    std::cout << "perversity: " << perv.str() << "\n";
    std::cout << "bound: " << algebra.perversity(x) + algebra.perversity(y) << "\n";
  }
  return kOk;
}

IntMatrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("matrix must be a JSON array of rows");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    std::vector<std::int64_t> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("matrix entries must be integers");
      r.push_back(v.get<std::int64_t>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::vector<std::string>& matrices) {
  CheckReport report(suite);
  if (suite == "monodromy" || suite == "intersection") {
    std::vector<std::pair<std::string, IntMatrix>> inputs;
    if (!matrices.empty()) {
      for (std::size_t i = 0; i < matrices.size(); ++i) inputs.emplace_back("m" + std::to_string(i + 1), parse_matrix(matrices[i]));
    } else if (suite == "monodromy") {
      inputs = family_monodromies();
    } else {
      inputs.emplace_back("triangle", triangle_intersection_matrix());
    }
    const std::string key = suite == "monodromy" ? "det(M-I)" : "determinant";
    report.set_detail("matrix", "per entry");
    report.set_detail(key, "per entry");
    for (const auto& [name, m] : inputs) {
      CheckReport one = suite == "monodromy" ? check_monodromy_vanishing(m) : check_intersection_nondegenerate(m);
      report.set_detail(name, *one.detail("matrix") + " " + key + "=" + *one.detail(key));
      report.merge(one);
    }
  } else if (suite == "diagonal") {
    report = check_diagonal_bound(load_source(cfg), cfg.m_max);
  } else if (suite == "signed-orthonormal") {
    SurfaceRing ring = load_source(cfg);
    report = check_signed_orthonormal(ring, filtered_basis(ring));
  } else {
    WreathAlgebra algebra(load_source(cfg), cfg.n);
    const CheckOptions o = cfg.options();
    if (suite == "multiplicativity") {
      report = check_multiplicativity(algebra, o);
    } else if (suite == "associativity") {
      report = check_associativity(algebra, o);
    } else if (suite == "equivariance") {
      report = check_equivariance(algebra, o);
    } else if (suite == "commutativity") {
      report = check_graded_commutativity(algebra, o);
    } else if (suite == "twisted-commutativity") {
      report = check_twisted_commutativity(algebra, o);
    } else if (suite == "unit") {
      report = check_unit(algebra);
    } else if (suite == "degree") {
      report = check_degree_additivity(algebra, o);
    } else {
      throw UsageError("unknown suite '" + suite + "'");
    }
  }
  emit_report(cfg, report);
  return report.passed() ? kOk : kCheckFailed;
}

BigradedDims dims_of_source(const RunConfig& cfg) { return perverse_table(load_source(cfg)); }

int cmd_series(const RunConfig& cfg, const std::string& action, const std::string& case_label,
               const std::vector<std::string>& files, std::optional<std::uint32_t> up_to) {
  if (action == "closed") {
    if (case_label.empty() && cfg.preset.empty() && cfg.ring_path.empty()) {
      throw UsageError("series closed needs --case or a ring source");
    }
    SeriesSpec spec;
    if (!case_label.empty()) {
      spec = SeriesSpec::parse(case_label, cfg.s_bound);
    } else {
      spec.kind = SeriesSpec::Case::ring;
      spec.dims = dims_of_source(cfg);
      spec.s_bound = cfg.s_bound;
    }
    emit_series(cfg, closed_form(spec));
    return kOk;
  }
  if (action == "refined") {
    emit_series(cfg, refined_goettsche(dims_of_source(cfg), cfg.s_bound));
    return kOk;
  }
  if (action == "betti") {
    emit_series(cfg, betti_goettsche(betti_numbers(dims_of_source(cfg)), cfg.s_bound));
    return kOk;
  }
  if (action == "bruteforce" || action == "partition") {
    const auto n = static_cast<std::uint32_t>(cfg.n);
    TruncatedSeries poly = action == "bruteforce" ? brute_force_poincare(load_source(cfg), cfg.n, cfg.limit)
                                                  : partition_sum(dims_of_source(cfg), cfg.n);
    emit_series(cfg, lift_polynomial(poly, n));
    return kOk;
  }
  if (action == "compare") {
    if (files.size() != 2) throw UsageError("series compare needs two series files");
    TruncatedSeries a = read_series_file(files[0]);
    TruncatedSeries b = read_series_file(files[1]);
    const std::uint32_t k = up_to.value_or(std::min(a.s_bound(), b.s_bound()));
    SeriesComparison cmp = compare_series(a, b, k);
    CheckReport report = cmp.report();
    report.set_detail("left", files[0]);
    report.set_detail("right", files[1]);
    report.set_detail("result", cmp.equal ? "equal" : "unequal");
    emit_report(cfg, report);
    return cmp.equal ? kOk : kCheckFailed;
  }
  throw UsageError("unknown series action '" + action + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wreath-product cohomology of Hilbert schemes of points with perverse filtrations"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* ring_cmd = app.add_subcommand("ring", "Inspect surface rings");
  ring_cmd->require_subcommand(1);
  auto* ring_show = ring_cmd->add_subcommand("show", "Basis, mode, Euler class and validation summary");
  add_ring_source(ring_show, cfg);
  add_common(ring_show, cfg);
  auto* ring_export = ring_cmd->add_subcommand("export", "Print the ring document");
  add_ring_source(ring_export, cfg);

  auto* hilb_cmd = app.add_subcommand("hilb", "Products in A{S_n}");
  hilb_cmd->require_subcommand(1);
  auto* mul = hilb_cmd->add_subcommand("mul", "Cup product of two wreath elements");
  std::string xs;
  std::string ys;
  add_ring_source(mul, cfg);
  add_common(mul, cfg);
  mul->add_option("-n", cfg.n, "Number of points")->required();
  mul->add_option("x", xs, "First element: factor@point,...;cycles")->required();
  mul->add_option("y", ys, "Second element")->required();

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  std::vector<std::string> matrices;
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"multiplicativity", "diagonal", "associativity", "equivariance", "commutativity",
                             "twisted-commutativity", "unit", "degree", "monodromy", "intersection",
                             "signed-orthonormal"}));
  add_ring_source(verify, cfg);
  add_common(verify, cfg);
  verify->add_option("-n", cfg.n, "Number of points");
  verify->add_option("--samples", cfg.samples, "Inputs drawn when a suite falls back to sampling");
  verify->add_option("--m-max", cfg.m_max, "Largest diagonal for the diagonal suite");
  verify->add_option("--matrix", matrices, "Integer matrix as JSON, e.g. [[0,-1],[1,1]]");

  auto* series = app.add_subcommand("series", "Generating series");
  std::string action;
  std::string case_label;
  std::vector<std::string> files;
  std::optional<std::uint32_t> up_to;
  series->add_option("action", action, "closed | refined | betti | bruteforce | partition | compare")
      ->required()
      ->check(CLI::IsMember({"closed", "refined", "betti", "bruteforce", "partition", "compare"}));
  series->add_option("files", files, "Series files for compare");
  series->add_option("--case", case_label, "a0 | dynkin4 | dynkin6 | dynkin7 | dynkin8");
  series->add_option("--s-bound", cfg.s_bound, "Truncation in s");
  series->add_option("--up-to", up_to, "Compare terms up to this power of s");
  series->add_option("-n", cfg.n, "Number of points");
  add_ring_source(series, cfg);
  add_common(series, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (ring_show->parsed()) return cmd_ring_show(cfg);
    if (ring_export->parsed()) return cmd_ring_export(cfg);
    if (mul->parsed()) return cmd_hilb_mul(cfg, xs, ys);
    if (verify->parsed()) return cmd_verify(cfg, suite, matrices);
    if (series->parsed()) return cmd_series(cfg, action, case_label, files, up_to);
  } catch (const RingValidationError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.report().to_text();
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
