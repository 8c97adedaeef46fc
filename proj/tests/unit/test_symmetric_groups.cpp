#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hilbperv/errors.hpp"
#include "hilbperv/perm.hpp"

using namespace hilbperv;

namespace {

// Union-find orbits, relabelled by first appearance.
std::vector<std::size_t> union_find_labels(const std::vector<Perm>& gens, std::size_t n) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& g : gens) {
    for (std::size_t i = 0; i < n; ++i) parent[find(i)] = find(g(i));
  }
  std::vector<std::size_t> label(n);
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    auto it = std::find(seen.begin(), seen.end(), r);
    label[i] = static_cast<std::size_t>(it - seen.begin());
    if (it == seen.end()) seen.push_back(r);
  }
  return label;
}

std::size_t cycle_count(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = p(j)) seen[j] = true;
  }
  return c;
}

}  // namespace

TEST(Perm, ComposeIsFunctionComposition) {
  Perm a = Perm::parse_cycles("(1 2)", 3);
  Perm b = Perm::parse_cycles("(2 3)", 3);
  Perm ab = compose(a, b);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ab(i), a(b(i)));
  EXPECT_EQ(ab.cycle_notation(), "(1 2 3)");
  EXPECT_EQ(compose(b, a).cycle_notation(), "(1 3 2)");
}

TEST(Perm, GroupLawsOnS4) {
  auto all = enumerate_sn(4);
  ASSERT_EQ(all.size(), 24u);
  Perm e = Perm::identity(4);
  for (const Perm& a : all) {
    EXPECT_EQ(compose(a, a.inverse()), e);
    EXPECT_EQ(compose(e, a), a);
    for (const Perm& b : all) {
      for (const Perm& c : {all[5], all[17]}) EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
      EXPECT_EQ(conjugate(a, b), compose(compose(a, b), a.inverse()));
    }
  }
}

TEST(Perm, RankUnrankBijection) {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto all = enumerate_sn(n);
    ASSERT_EQ(all.size(), factorial(n));
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    for (std::uint64_t r = 0; r < all.size(); ++r) {
      EXPECT_EQ(all[r].rank(), r);
      EXPECT_EQ(Perm::unrank(n, r), all[r]);
    }
  }
}

TEST(Perm, CycleNotationRoundTrip) {
  for (const Perm& p : enumerate_sn(5)) EXPECT_EQ(Perm::parse_cycles(p.cycle_notation(), 5), p);
  EXPECT_EQ(Perm::identity(3).cycle_notation(), "id");
  EXPECT_EQ(Perm::parse_cycles("(1 3)(2 4 5)", 5).images(), (std::vector<std::size_t>{3, 4, 1, 5, 2}));
}

TEST(Perm, RejectsInvalidInput) {
  EXPECT_THROW(Perm::parse_cycles("(1 1)", 3), Error);
  EXPECT_THROW(Perm::parse_cycles("(1 4)", 3), Error);
  EXPECT_THROW(Perm::parse_cycles("(1 2", 3), ParseError);
  EXPECT_THROW(Perm::from_images({1, 1, 2}), UsageError);
  EXPECT_THROW(Perm::identity(kMaxPoints + 1), ResourceError);
  EXPECT_THROW(enumerate_sn(9), ResourceError);
}

TEST(Partition, CountsMatchPartitionNumbers) {
  const std::vector<std::size_t> p = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (std::size_t n = 1; n < p.size(); ++n) {
    auto parts = partitions_of(n);
    EXPECT_EQ(parts.size(), p[n]) << n;
    for (const Partition& nu : parts) EXPECT_EQ(nu.weight(), n);
  }
}

TEST(Partition, CycleTypeClassSizes) {
  // Class sizes n!/z_ν computed by counting must agree with the centralizer formula.
  for (std::size_t n = 1; n <= 6; ++n) {
    std::map<std::vector<std::size_t>, std::uint64_t> counted;
    for (const Perm& p : enumerate_sn(n)) {
      Partition ct = cycle_type(p);
      EXPECT_EQ(ct.length(), cycle_count(p));
      EXPECT_EQ(ct.weight(), n);
      ++counted[ct.multiplicities()];
    }
    for (const Partition& nu : partitions_of(n)) {
      std::uint64_t z = 1;
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 0; k < nu.multiplicity(i); ++k) z *= i;
        z *= factorial(nu.multiplicity(i));
      }
      EXPECT_EQ(counted[nu.multiplicities()], factorial(n) / z);
    }
  }
}

TEST(Orbits, MatchUnionFind) {
  auto all = enumerate_sn(5);
  for (std::size_t i = 0; i < all.size(); i += 3) {
    for (std::size_t j = 0; j < all.size(); j += 7) {
      std::vector<Perm> gens = {all[i], all[j]};
      OrbitPartition got = orbits(gens, 5);
      EXPECT_EQ(got, OrbitPartition::from_labels(union_find_labels(gens, 5)));
      EXPECT_TRUE(orbits({all[i]}, 5).refines(got));
      for (std::size_t k = 0; k + 1 < got.size(); ++k) EXPECT_LT(got.block(k).front(), got.block(k + 1).front());
    }
  }
}

TEST(Orbits, RestrictedToCarrier) {
  Perm s = Perm::parse_cycles("(1 2)(4 5)", 5);
  auto blocks = orbits_on({s}, 5, {0, 1, 2});
  EXPECT_EQ(blocks.size(), 2u);
  EXPECT_THROW(orbits_on({s}, 5, {0, 3}), UsageError);
}

TEST(GraphDefect, NonnegativeIntegralAndFormula) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto all = enumerate_sn(n);
    for (const Perm& s : all) {
      for (const Perm& t : all) {
        GraphDefect g = graph_defect(s, t);
        Perm st = compose(s, t);
        for (std::size_t k = 0; k < g.orbits.size(); ++k) {
          const auto& block = g.orbits.block(k);
          std::set<std::size_t> bs, bt, bst;
          auto o_s = orbits({s}, n), o_t = orbits({t}, n), o_st = orbits({st}, n);
          for (std::size_t p : block) {
            bs.insert(o_s.block_of(p));
            bt.insert(o_t.block_of(p));
            bst.insert(o_st.block_of(p));
          }
          int twice = static_cast<int>(block.size()) + 2 - static_cast<int>(bs.size() + bt.size() + bst.size());
          EXPECT_GE(g.values[k], 0);
          EXPECT_EQ(2 * g.values[k], twice);
        }
      }
    }
  }
}

TEST(GraphDefect, KnownValues) {
  Perm c = Perm::parse_cycles("(1 2 3)", 3);
  EXPECT_EQ(graph_defect(c, c).values, std::vector<int>{1});
  Perm t = Perm::parse_cycles("(1 2)", 2);
  EXPECT_EQ(graph_defect(t, t).values, std::vector<int>{0});
  EXPECT_EQ(graph_defect(Perm::identity(3), Perm::identity(3)).values, (std::vector<int>{0, 0, 0}));
}
