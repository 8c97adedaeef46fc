#include <gtest/gtest.h>

#include <random>

#include "hilbperv/errors.hpp"
#include "hilbperv/perversity.hpp"
#include "hilbperv/presets.hpp"
#include "hilbperv/wreath.hpp"

using namespace hilbperv;

namespace {

TensorClass factors_tensor(const WreathAlgebra& A, const WreathElement& x) {
  const std::size_t k = A.orbit_count(x.sigma);
  TensorClass t(k);
  TensorClass::Slots slots(x.factors.begin(), x.factors.begin() + static_cast<std::ptrdiff_t>(k));
  t.add(slots, Rational(1));
  return t;
}

// Slotwise product of two tensors on the same blocks: (a_1 ... a_r)(b_1 ... b_r) -> (a_1 b_1) ... (a_r b_r).
TensorClass slotwise(const SurfaceRing& ring, const TensorClass& a, const TensorClass& b) {
  TensorClass out(a.arity());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      int sign = 1;
      for (std::size_t i = 0; i < sa.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (ring.is_odd(sa[i]) && ring.is_odd(sb[j])) sign = -sign;
        }
      }
      TensorClass acc(0);
      acc.add({}, ca * cb * Rational(sign));
      for (std::size_t k = 0; k < sa.size(); ++k) {
        RingClass p = ring.product(sa[k], sb[k]);
        TensorClass next(k + 1);
        for (const auto& [prefix, c] : acc.terms()) {
          for (const auto& [idx, pc] : p.terms()) {
            TensorClass::Slots s = prefix;
            s.push_back(idx);
            next.add(s, c * pc);
          }
        }
        acc = next;
      }
      out += acc;
    }
  }
  return out;
}

TensorClass euler_twist(const SurfaceRing& ring, const TensorClass& t, const std::vector<int>& g) {
  TensorClass acc = t;
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int rep = 0; rep < g[k]; ++rep) {
      TensorClass next(t.arity());
      for (const auto& [slots, c] : acc.terms()) {
        RingClass p = ring.multiply(RingClass::basis(slots[k]), ring.euler());
        for (const auto& [idx, pc] : p.terms()) {
          TensorClass::Slots s = slots;
          s[k] = idx;
          next.add(s, c * pc);
        }
      }
      acc = next;
    }
  }
  return acc;
}

// Product assembled from the generic pullback and pushforward maps.
WreathClass reference_cup(const WreathAlgebra& A, const WreathElement& x, const WreathElement& y) {
  const SurfaceRing& ring = A.ring();
  GraphDefect gd = graph_defect(x.sigma, y.sigma);
  const OrbitPartition& K = gd.orbits;
  OrbitTensor px = pullback_merge(ring, {A.orbit_partition(x.sigma), factors_tensor(A, x)}, K);
  OrbitTensor py = pullback_merge(ring, {A.orbit_partition(y.sigma), factors_tensor(A, y)}, K);
  TensorClass prod = euler_twist(ring, slotwise(ring, px.tensor, py.tensor), gd.values);
  const Perm st = compose(x.sigma, y.sigma);
  OrbitTensor pushed = pushforward_split(ring, {K, prod}, A.orbit_partition(st));
  std::vector<WreathClass::Term> terms;
  for (const auto& [slots, c] : pushed.tensor.terms()) terms.emplace_back(A.make(st, slots), c);
  return WreathClass::from_terms(std::move(terms));
}

void expect_matches_reference(const WreathAlgebra& A, std::size_t max_pairs, std::uint64_t seed) {
  const auto basis = A.basis();
  const std::size_t D = basis.size();
  if (D * D <= max_pairs) {
    for (const auto& x : basis) {
      for (const auto& y : basis) {
        ASSERT_EQ(A.cup(x, y), reference_cup(A, x, y)) << A.render(x) << " , " << A.render(y);
      }
    }
    return;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, D - 1);
  for (std::size_t s = 0; s < max_pairs; ++s) {
    const auto& x = basis[pick(rng)];
    const auto& y = basis[pick(rng)];
    ASSERT_EQ(A.cup(x, y), reference_cup(A, x, y)) << A.render(x) << " , " << A.render(y);
  }
}

}  // namespace

TEST(Wreath, DimensionCountsOrbitTensors) {
  for (const char* name : {"a0", "d4", "k3", "abelian"}) {
    SurfaceRing r = preset(name);
    for (std::size_t n = 1; n <= 3; ++n) {
      WreathAlgebra A(r, n);
      std::uint64_t expect = 0;
      for (const Perm& s : enumerate_sn(n)) {
        std::uint64_t d = 1;
        for (std::size_t k = 0; k < orbits({s}, n).size(); ++k) d *= r.dim();
        expect += d;
      }
      EXPECT_EQ(A.dimension(), expect);
      for (std::uint64_t i = 0; i < A.dimension(); i += 7) EXPECT_EQ(A.index_of(A.element_at(i)), i);
    }
  }
}

TEST(Wreath, CupMatchesGenericMaps) {
  expect_matches_reference(WreathAlgebra(preset("d4"), 2), 1u << 20, 1);
  expect_matches_reference(WreathAlgebra(preset("a0"), 2), 1u << 20, 1);
  expect_matches_reference(WreathAlgebra(preset("a0"), 3), 1u << 20, 1);
  expect_matches_reference(WreathAlgebra(preset("d4"), 3), 1u << 20, 1);
  expect_matches_reference(WreathAlgebra(preset("abelian"), 2), 1u << 17, 2);
  expect_matches_reference(WreathAlgebra(preset("k3"), 2), 20000, 3);
  expect_matches_reference(WreathAlgebra(preset("abelian"), 3), 20000, 4);
  expect_matches_reference(WreathAlgebra(preset("k3"), 3), 5000, 5);
  expect_matches_reference(WreathAlgebra(preset("e6"), 4), 5000, 6);
}

TEST(Wreath, DiagonalClassOfTwoPoints) {
  WreathAlgebra A(preset("d4"), 2);
  const SurfaceRing& r = A.ring();
  WreathElement x = A.parse_element("1;(1 2)");
  WreathClass p = A.cup(x, x);
  std::vector<WreathClass::Term> expect;
  for (const char* e : {"E1", "E2", "E3", "E4"}) {
    expect.emplace_back(A.make(Perm::identity(2), {r.index_of(e), r.index_of(e)}), Rational(-1));
  }
  EXPECT_EQ(p, WreathClass::from_terms(expect));
  EXPECT_EQ(perversity_class(A, p), PerversityValue(2));
  EXPECT_EQ(A.perversity(x) * 2, 2);
}

TEST(Wreath, EulerInsertionOnThreeCycle) {
  WreathAlgebra A(preset("k3"), 3);
  WreathElement c = A.parse_element("1;(1 2 3)");
  WreathClass p = A.cup(c, c);
  const SurfaceRing& r = A.ring();
  WreathClass expect =
      WreathClass::of(A.make(Perm::parse_cycles("(1 3 2)", 3), {r.index_of("pt")}), Rational(24));
  EXPECT_EQ(p, expect);
  // Same product on an open surface vanishes: e = 0.
  WreathAlgebra B(preset("d4"), 3);
  EXPECT_TRUE(B.cup(B.parse_element("1;(1 2 3)"), B.parse_element("1;(1 2 3)")).is_zero());
}

TEST(Wreath, UnitIsTwoSided) {
  WreathAlgebra A(preset("abelian"), 2);
  WreathElement one = A.unit();
  for (const auto& x : A.basis()) {
    EXPECT_EQ(A.cup(one, x), WreathClass::of(x));
    EXPECT_EQ(A.cup(x, one), WreathClass::of(x));
  }
}

TEST(Wreath, ActionSignOnOddFactors) {
  WreathAlgebra A(preset("a0"), 2);
  const SurfaceRing& r = A.ring();
  Perm swap = Perm::parse_cycles("(1 2)", 2);
  WreathElement ab = A.make(Perm::identity(2), {r.index_of("a"), r.index_of("b")});
  SignedElement s = A.act(swap, ab);
  EXPECT_EQ(s.element, A.make(Perm::identity(2), {r.index_of("b"), r.index_of("a")}));
  EXPECT_EQ(s.sign, -1);
  // a ⊗ a is killed by the swap in the invariant part.
  WreathElement aa = A.make(Perm::identity(2), {r.index_of("a"), r.index_of("a")});
  EXPECT_EQ(A.act(swap, aa).sign, -1);
  EXPECT_TRUE(A.orbit_sum(aa).is_zero());
  EXPECT_TRUE(A.invariant_project(WreathClass::of(aa)).is_zero());
}

TEST(Wreath, ActionIsAGroupAction) {
  WreathAlgebra A(preset("abelian"), 3);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> pick(0, A.dimension() - 1);
  for (int s = 0; s < 300; ++s) {
    WreathElement x = A.element_at(pick(rng));
    for (const Perm& t1 : A.perms()) {
      for (const Perm& t2 : A.perms()) {
        SignedElement a = A.act(t2, x);
        SignedElement b = A.act(t1, a.element);
        SignedElement c = A.act(compose(t1, t2), x);
        ASSERT_EQ(b.element, c.element);
        ASSERT_EQ(a.sign * b.sign, c.sign);
      }
    }
    EXPECT_EQ(A.act(Perm::identity(3), x).sign, 1);
    EXPECT_EQ(A.act(Perm::identity(3), x).element, x);
  }
}

TEST(Wreath, EquivarianceOnSamples) {
  WreathAlgebra A(preset("abelian"), 3);
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<std::uint64_t> pick(0, A.dimension() - 1);
  for (int s = 0; s < 2000; ++s) {
    WreathElement x = A.element_at(pick(rng));
    WreathElement y = A.element_at(pick(rng));
    const Perm& tau = A.perms()[static_cast<std::size_t>(s) % A.perms().size()];
    SignedElement tx = A.act(tau, x), ty = A.act(tau, y);
    WreathClass rhs = A.cup(tx.element, ty.element);
    rhs *= Rational(tx.sign * ty.sign);
    ASSERT_EQ(A.act(tau, A.cup(x, y)), rhs);
  }
}

TEST(Wreath, InvariantProjectionIsIdempotent) {
  WreathAlgebra A(preset("abelian"), 2);
  for (std::uint64_t i = 0; i < A.dimension(); i += 3) {
    WreathClass x = WreathClass::of(A.element_at(i));
    WreathClass p = A.invariant_project(x);
    EXPECT_EQ(A.invariant_project(p), p);
    for (const Perm& t : A.perms()) EXPECT_EQ(A.act(t, p), p);
  }
}

TEST(Wreath, ParseAndRender) {
  WreathAlgebra A(preset("d4"), 3);
  WreathElement x = A.parse_element("E1@1,Sigma@3;(1 2)");
  EXPECT_EQ(A.render(x), "[E1{1,2} ⊗ Sigma{3}] * (1 2)");
  EXPECT_EQ(A.render(WreathClass::of(x, Rational(-2))), "-2 * [E1{1,2} ⊗ Sigma{3}] * (1 2)");
  EXPECT_EQ(A.parse_element(A.spec_string(x)), x);
  EXPECT_EQ(A.parse_element("E1@2,Sigma;(1 2)"), x);
  for (const auto& y : A.basis()) EXPECT_EQ(A.parse_element(A.spec_string(y)), y);
  EXPECT_EQ(A.degree(x), 2 + 2 + 2);
  EXPECT_EQ(A.perversity(x), 1 + 2 + 1);
  EXPECT_THROW(A.parse_element("E9;id"), ParseError);
  EXPECT_THROW(A.parse_element("E1@1,E2@2;(1 2)"), Error);
  EXPECT_THROW(A.parse_element("1;(1 4)"), Error);
  EXPECT_THROW(A.make(Perm::identity(3), {0, 0}), UsageError);
}

TEST(Wreath, ProductDegreeIsAdditive) {
  WreathAlgebra A(preset("abelian"), 2);
  const auto basis = A.basis();
  for (std::size_t i = 0; i < basis.size(); i += 5) {
    for (std::size_t j = 0; j < basis.size(); j += 3) {
      const WreathClass p = A.cup(basis[i], basis[j]);
      for (const auto& [e, c] : p.terms()) {
        ASSERT_EQ(A.degree(e), A.degree(basis[i]) + A.degree(basis[j]));
      }
    }
  }
}

TEST(Wreath, UnsupportedSizes) {
  EXPECT_THROW(WreathAlgebra(preset("d4"), 9), ResourceError);
}
