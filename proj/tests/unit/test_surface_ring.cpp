#include <gtest/gtest.h>

#include <map>
#include <string>

#include "hilbperv/errors.hpp"
#include "hilbperv/filtered_basis.hpp"
#include "hilbperv/presets.hpp"
#include "hilbperv/ring_io.hpp"
#include "hilbperv/surface_ring.hpp"

using namespace hilbperv;

namespace {

std::string replace_line(std::string doc, const std::string& prefix, const std::string& line) {
  const auto at = doc.find("\n" + prefix);
  if (at == std::string::npos) return doc;
  const auto end = doc.find('\n', at + 1);
  return doc.substr(0, at + 1) + line + doc.substr(end);
}

RingClass slot_product(const SurfaceRing& ring, const TensorClass& t) {
  RingClass out;
  for (const auto& [slots, c] : t.terms()) {
    RingClass p = RingClass::basis(slots[0], c);
    for (std::size_t k = 1; k < slots.size(); ++k) p = ring.multiply(p, RingClass::basis(slots[k]));
    out += p;
  }
  return out;
}

}  // namespace

TEST(Presets, CatalogAndShapes) {
  const std::map<std::string, std::pair<std::size_t, RingMode>> expected = {
      {"a0", {4, RingMode::open}},      {"d4", {6, RingMode::open}},          {"e6", {8, RingMode::open}},
      {"e7", {9, RingMode::open}},      {"e8", {10, RingMode::open}},         {"k3", {24, RingMode::compact}},
      {"abelian", {16, RingMode::compact}}};
  EXPECT_EQ(preset_names().size(), expected.size());
  for (const auto& name : preset_names()) {
    SurfaceRing r = preset(name);
    ASSERT_TRUE(expected.count(name)) << name;
    EXPECT_EQ(r.dim(), expected.at(name).first) << name;
    EXPECT_EQ(r.mode(), expected.at(name).second) << name;
    EXPECT_TRUE(validate(r).passed()) << validate(r).to_text();
  }
  EXPECT_THROW(preset("nope"), UsageError);
}

TEST(Presets, EulerClasses) {
  SurfaceRing k3 = preset("k3");
  EXPECT_EQ(k3.euler(), RingClass::basis(k3.index_of("pt"), Rational(24)));
  EXPECT_TRUE(preset("abelian").euler().is_zero());
  for (const char* name : {"a0", "d4", "e6", "e7", "e8"}) EXPECT_TRUE(preset(name).euler().is_zero());
}

TEST(RingIo, SaveLoadRoundTrip) {
  for (const auto& name : preset_names()) {
    SurfaceRing r = preset(name);
    std::string doc = save_ring(r);
    SurfaceRing back = load_ring(doc);
    EXPECT_EQ(back, r) << name;
    EXPECT_EQ(save_ring(back), doc) << name;
  }
}

TEST(RingIo, SyntaxErrors) {
  EXPECT_THROW(parse_ring_document("ring name=x mode=sideways\n"), ParseError);
  EXPECT_THROW(parse_ring_document("basis 1 degree=0 perversity=0\n"), ParseError);
  std::string doc = preset_document("d4");
  EXPECT_THROW(parse_ring_document(doc + "mul E1 E9 = 1*E1\n"), ParseError);
  EXPECT_THROW(parse_ring_document(doc + "bogus line\n"), ParseError);
}

TEST(RingIo, ModeMismatch) {
  std::string doc = preset_document("d4");
  EXPECT_THROW(parse_ring_document(doc + "pairing 1 Sigma = 1\n"), ModeError);
  std::string k3 = preset_document("k3");
  EXPECT_THROW(parse_ring_document(k3 + "diag2 1 = 0\n"), ModeError);
}

TEST(RingIo, ValidationFailuresCarryReport) {
  // Non-commutative product table.
  std::string doc = preset_document("d4");
  doc = replace_line(doc, "mul E1 1 =", "mul E1 1 = 1*E2");
  try {
    load_ring(doc);
    FAIL() << "expected RingValidationError";
  } catch (const RingValidationError& e) {
    EXPECT_FALSE(e.report().passed());
    EXPECT_GT(e.report().violations(), 0u);
  }
  // Degree-violating product.
  std::string deg = preset_document("d4") + "mul E1 E2 = 1*1\n";
  EXPECT_THROW(load_ring(deg), RingValidationError);
  // Perversity out of range.
  std::string perv = replace_line(preset_document("d4"), "basis Sigma", "basis Sigma degree=2 perversity=3");
  EXPECT_THROW(load_ring(perv), Error);
}

TEST(RingIo, CorruptedDiagonalStillLoads) {
  std::string doc = replace_line(preset_document("d4"), "diag2 1 =", "diag2 1 = 1*SigmaxSigma");
  SurfaceRing r = load_ring(doc);
  EXPECT_EQ(r.diag2()->at(r.unit()).coefficient({r.index_of("Sigma"), r.index_of("Sigma")}), Rational(1));
}

TEST(SurfaceRing, OpenRingHasNoPairing) {
  SurfaceRing d4 = preset("d4");
  EXPECT_THROW(d4.pair(RingClass::basis(0), RingClass::basis(0)), ModeError);
}

TEST(SurfaceRing, KoszulSign) {
  EXPECT_EQ(koszul_sign({1, 0}, {true, true}), -1);
  EXPECT_EQ(koszul_sign({1, 0}, {true, false}), 1);
  EXPECT_EQ(koszul_sign({2, 0, 1}, {true, true, true}), 1);
  EXPECT_EQ(koszul_sign({2, 1, 0}, {true, true, true}), -1);
}

TEST(Diagonal, CompactPairingAdjunction) {
  // <Δ(γ), u ⊗ v> = <u γ, v> on the even ring.
  SurfaceRing k3 = preset("k3");
  const std::size_t D = k3.dim();
  for (std::size_t g = 0; g < D; ++g) {
    TensorClass d = diagonal_push(k3, 2, RingClass::basis(g));
    for (std::size_t u = 0; u < D; ++u) {
      for (std::size_t v = 0; v < D; ++v) {
        Rational lhs;
        for (const auto& [slots, c] : d.terms()) {
          lhs += c * k3.pair(RingClass::basis(slots[0]), RingClass::basis(u)) *
                 k3.pair(RingClass::basis(slots[1]), RingClass::basis(v));
        }
        Rational rhs = k3.pair(k3.multiply(RingClass::basis(u), RingClass::basis(g)), RingClass::basis(v));
        ASSERT_EQ(lhs, rhs) << g << " " << u << " " << v;
      }
    }
  }
}

TEST(Diagonal, MultiplyingOutGivesEulerClass) {
  for (const char* name : {"k3", "abelian", "a0", "d4", "e8"}) {
    SurfaceRing r = preset(name);
    TensorClass d = diagonal_push(r, 2, RingClass::basis(r.unit()));
    EXPECT_EQ(slot_product(r, d), r.euler()) << name;
  }
}

TEST(Diagonal, IteratedDiagonalShiftsDegreeByFour) {
  for (const char* name : {"k3", "abelian", "d4"}) {
    SurfaceRing r = preset(name);
    for (std::size_t g = 0; g < r.dim(); ++g) {
      for (std::size_t m = 2; m <= 4; ++m) {
        TensorClass d = diagonal_push(r, m, RingClass::basis(g));
        for (const auto& [slots, c] : d.terms()) {
          int deg = 0;
          for (std::size_t s : slots) deg += r.degree(s);
          EXPECT_EQ(deg, r.degree(g) + 4 * static_cast<int>(m - 1)) << name;
        }
      }
    }
  }
}

TEST(FilteredBasis, SignedOrthonormalOnCompactPresets) {
  for (const char* name : {"k3", "abelian"}) {
    SurfaceRing r = preset(name);
    FilteredBasis b = filtered_basis(r);
    EXPECT_EQ(b.size(), r.dim()) << name;
    CheckReport rep = check_signed_orthonormal(r, b);
    EXPECT_TRUE(rep.passed()) << rep.to_text();
    for (const auto& block : b.blocks) {
      for (const auto& e : block.elements) {
        for (const auto& [i, c] : e.terms()) {
          EXPECT_EQ(r.degree(i), block.degree);
          EXPECT_LE(r.perversity(i), block.perversity);
        }
      }
    }
  }
  EXPECT_THROW(filtered_basis(preset("d4")), ModeError);
}

TEST(FilteredBasis, K3MiddleBlockSignature) {
  SurfaceRing k3 = preset("k3");
  FilteredBasis b = filtered_basis(k3);
  const auto* middle = b.find(1, 2);
  ASSERT_NE(middle, nullptr);
  EXPECT_EQ(middle->elements.size(), 20u);
  int plus = 0, minus = 0;
  for (int s : b.middle_signs) (s > 0 ? plus : minus)++;
  // E8(-1)^2 + U^2 has signature (2, 18).
  EXPECT_EQ(plus, 2);
  EXPECT_EQ(minus, 18);
}

TEST(FilteredBasis, DetectsBrokenPairing) {
  SurfaceRing k3 = preset("k3");
  FilteredBasis b = filtered_basis(k3);
  b.blocks.front().elements.front() *= Rational(2);
  EXPECT_FALSE(check_signed_orthonormal(k3, b).passed());
}
