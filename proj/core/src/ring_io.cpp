#include "hilbperv/ring_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "hilbperv/errors.hpp"

namespace hilbperv {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : text_(text) {}

  SurfaceRing parse() {
    std::istringstream in{std::string(text_)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto toks = split_ws(line);
      if (toks.empty()) continue;
      handle(toks, line);
    }
    if (!have_header_) fail("missing 'ring name=<id> mode=<compact|open>' header");
    if (!unit_name_) fail("missing 'unit <name>' line");
    return build();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("ring document line " + std::to_string(line_no_) + ": " + msg);
  }

  std::size_t lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail("unknown basis element '" + name + "'");
    return it->second;
  }

  static std::string value_of(const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) return {};
    return tok.substr(key.size() + 1);
  }

  int parse_int(const std::string& s) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) fail("expected integer, got '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("expected integer, got '" + s + "'");
    }
  }

  Rational parse_rational(const std::string& s) const {
    try {
      return Rational::parse(s);
    } catch (const ParseError&) {
      fail("expected rational, got '" + s + "'");
    }
  }

  // Linear combination "c1*x + c2*y - z" after the '=' sign; returns (coeff, label) pairs.
  std::vector<std::pair<Rational, std::string>> parse_combination(const std::vector<std::string>& toks,
                                                                  std::size_t start) const {
    std::vector<std::pair<Rational, std::string>> out;
    if (start >= toks.size()) fail("missing right-hand side");
    if (toks.size() == start + 1 && toks[start] == "0") return out;
    Rational pending_sign(1);
    bool expect_term = true;
    for (std::size_t i = start; i < toks.size(); ++i) {
      const std::string& tok = toks[i];
      if (tok == "+" || tok == "-") {
        if (expect_term && i != start) fail("dangling operator '" + tok + "'");
        if (tok == "-") pending_sign = -pending_sign;
        expect_term = true;
        continue;
      }
      if (!expect_term) fail("expected '+' or '-' before '" + tok + "'");
      auto star = tok.find('*');
      Rational c(1);
      std::string label = tok;
      if (star != std::string::npos) {
        c = parse_rational(tok.substr(0, star));
        label = tok.substr(star + 1);
      } else if (!tok.empty() && tok[0] == '-') {
        c = Rational(-1);
        label = tok.substr(1);
      }
      if (label.empty()) fail("missing basis name in term '" + tok + "'");
      out.emplace_back(c * pending_sign, label);
      pending_sign = Rational(1);
      expect_term = false;
    }
    if (expect_term) fail("right-hand side ends with an operator");
    return out;
  }

  RingClass parse_class(const std::vector<std::string>& toks, std::size_t start) const {
    RingClass x;
    for (const auto& [c, label] : parse_combination(toks, start)) x.add(lookup(label), c);
    return x;
  }

  std::pair<std::size_t, std::size_t> split_pair(const std::string& label) const {
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t pos = label.find('x'); pos != std::string::npos; pos = label.find('x', pos + 1)) {
      auto left = index_.find(label.substr(0, pos));
      auto right = index_.find(label.substr(pos + 1));
      if (left == index_.end() || right == index_.end()) continue;
      if (found) fail("ambiguous tensor term '" + label + "'");
      found = std::make_pair(left->second, right->second);
    }
    if (!found) fail("tensor term '" + label + "' is not of the form <a>x<b>");
    return *found;
  }

  void ensure_basis_closed() {
    if (basis_closed_) return;
    basis_closed_ = true;
    products_.assign(basis_.size() * basis_.size(), RingClass{});
  }

  void handle(const std::vector<std::string>& toks, const std::string& line) {
    const std::string& kw = toks[0];
    if (!have_header_) {
      if (kw != "ring") fail("document must start with a 'ring' header");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (auto v = value_of(toks[i], "name"); !v.empty()) {
          name_ = v;
        } else if (auto m = value_of(toks[i], "mode"); !m.empty()) {
          if (m == "compact") {
            mode_ = RingMode::compact;
          } else if (m == "open") {
            mode_ = RingMode::open;
          } else {
            fail("mode must be compact or open, got '" + m + "'");
          }
          have_mode_ = true;
        } else {
          fail("unexpected header field '" + toks[i] + "'");
        }
      }
      if (name_.empty()) fail("header lacks name=<id>");
      if (!have_mode_) throw ModeError("ring document header lacks mode=<compact|open>");
      have_header_ = true;
      return;
    }
    if (kw == "basis") {
      if (basis_closed_) fail("basis lines must precede products, pairings and tables");
      if (toks.size() != 4) fail("expected 'basis <name> degree=<d> perversity=<p>'");
      BasisElement b;
      b.name = toks[1];
      auto dv = value_of(toks[2], "degree");
      auto pv = value_of(toks[3], "perversity");
      if (dv.empty() || pv.empty()) fail("expected 'basis <name> degree=<d> perversity=<p>'");
      b.degree = parse_int(dv);
      b.perversity = parse_int(pv);
      if (index_.count(b.name)) fail("duplicate basis element '" + b.name + "'");
      index_[b.name] = basis_.size();
      basis_.push_back(b);
      return;
    }
    if (kw == "unit") {
      if (toks.size() != 2) fail("expected 'unit <name>'");
      if (unit_name_) fail("duplicate unit line");
      unit_name_ = toks[1];
      return;
    }
    ensure_basis_closed();
    const std::size_t d = basis_.size();
    if (kw == "mul") {
      if (toks.size() < 5 || toks[3] != "=") fail("expected 'mul <a> <b> = <combination>'");
      std::size_t a = lookup(toks[1]);
      std::size_t b = lookup(toks[2]);
      if (mul_seen_.count({a, b})) fail("duplicate product " + toks[1] + "*" + toks[2]);
      mul_seen_.insert({a, b});
      products_[a * d + b] = parse_class(toks, 4);
      return;
    }
    if (kw == "pairing") {
      if (toks.size() != 5 || toks[3] != "=") fail("expected 'pairing <a> <b> = <rational>'");
      std::size_t a = lookup(toks[1]);
      std::size_t b = lookup(toks[2]);
      if (!pairing_) pairing_ = Matrix(d, d);
      (*pairing_)(a, b) = parse_rational(toks[4]);
      return;
    }
    if (kw == "diag2") {
      if (toks.size() < 4 || toks[2] != "=") fail("expected 'diag2 <g> = <combination of a x b>'");
      std::size_t g = lookup(toks[1]);
      if (!diag2_) diag2_ = std::vector<TensorClass>(d, TensorClass(2));
      TensorClass t(2);
      for (const auto& [c, label] : parse_combination(toks, 3)) {
        auto [x, y] = split_pair(label);
        t.add({x, y}, c);
      }
      (*diag2_)[g] = std::move(t);
      return;
    }
    if (kw == "euler") {
      if (toks.size() < 3 || toks[1] != "=") fail("expected 'euler = <combination>'");
      euler_ = parse_class(toks, 2);
      return;
    }
    fail("unknown keyword '" + kw + "' in: " + line);
  }

  SurfaceRing build() {
    ensure_basis_closed();
    std::size_t unit = lookup(*unit_name_);
    if (!pairing_ && !diag2_) {
      throw ModeError("ring '" + name_ + "' supplies neither a pairing nor a diag2 table");
    }
    if (pairing_ && diag2_) {
      throw ModeError("ring '" + name_ + "' supplies both a pairing and a diag2 table");
    }
    if (mode_ == RingMode::compact && !pairing_) {
      throw ModeError("compact ring '" + name_ + "' needs pairing lines");
    }
    if (mode_ == RingMode::open && !diag2_) {
      throw ModeError("open ring '" + name_ + "' needs diag2 lines");
    }
    return SurfaceRing(name_, mode_, basis_, unit, products_, pairing_, euler_, diag2_);
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  bool have_header_ = false;
  bool have_mode_ = false;
  bool basis_closed_ = false;
  std::string name_;
  RingMode mode_ = RingMode::compact;
  std::vector<BasisElement> basis_;
  std::map<std::string, std::size_t> index_;
  std::optional<std::string> unit_name_;
  std::vector<RingClass> products_;
  std::set<std::pair<std::size_t, std::size_t>> mul_seen_;
  std::optional<Matrix> pairing_;
  std::optional<std::vector<TensorClass>> diag2_;
  RingClass euler_;
};

std::string combination(const SurfaceRing& ring, const RingClass& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += c.str() + "*" + ring.basis(i).name;
  }
  return out;
}

}  // namespace

SurfaceRing parse_ring_document(std::string_view document) { return DocumentParser(document).parse(); }

SurfaceRing load_ring(std::string_view document) {
  SurfaceRing ring = parse_ring_document(document);
  CheckReport report = validate(ring);
  if (!report.passed()) {
    throw RingValidationError("ring '" + ring.name() + "' failed validation", std::move(report));
  }
  return ring;
}

SurfaceRing load_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read ring file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_ring(buf.str());
}

std::string save_ring(const SurfaceRing& ring) {
  std::ostringstream os;
  os << "ring name=" << ring.name() << " mode=" << to_string(ring.mode()) << "\n";
  for (const auto& b : ring.basis()) {
    os << "basis " << b.name << " degree=" << b.degree << " perversity=" << b.perversity << "\n";
  }
  os << "unit " << ring.basis(ring.unit()).name << "\n";
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    for (std::size_t j = 0; j < ring.dim(); ++j) {
      const RingClass& p = ring.product(i, j);
      if (p.is_zero()) continue;
      os << "mul " << ring.basis(i).name << " " << ring.basis(j).name << " = " << combination(ring, p) << "\n";
    }
  }
  if (ring.pairing()) {
    const Matrix& G = *ring.pairing();
    bool any = false;
    for (std::size_t i = 0; i < ring.dim(); ++i) {
      for (std::size_t j = 0; j < ring.dim(); ++j) {
        if (G(i, j).is_zero()) continue;
        any = true;
        os << "pairing " << ring.basis(i).name << " " << ring.basis(j).name << " = " << G(i, j).str() << "\n";
      }
    }
    if (!any) {
      os << "pairing " << ring.basis(0).name << " " << ring.basis(0).name << " = 0\n";
    }
  }
  if (ring.diag2()) {
    for (std::size_t g = 0; g < ring.dim(); ++g) {
      os << "diag2 " << ring.basis(g).name << " = ";
      const TensorClass& t = (*ring.diag2())[g];
      if (t.is_zero()) {
        os << "0";
      } else {
        bool first = true;
        for (const auto& [slots, c] : t.terms()) {
          if (!first) os << " + ";
          first = false;
          os << c.str() << "*" << ring.basis(slots[0]).name << "x" << ring.basis(slots[1]).name;
        }
      }
      os << "\n";
    }
  }
  os << "euler = " << combination(ring, ring.euler()) << "\n";
  return os.str();
}

}  // namespace hilbperv
