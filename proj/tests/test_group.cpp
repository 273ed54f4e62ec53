#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "ltile/group.hpp"
#include "ltile/indexed_group.hpp"

using namespace ltile;

namespace {

GroupElement el(std::vector<std::uint64_t> c) { return GroupElement{std::move(c)}; }

// Order by repeated addition.
std::uint64_t order_by_addition(const AbelianGroup& G, const GroupElement& a) {
  GroupElement x = a;
  std::uint64_t k = 1;
  while (x != G.identity()) x = G.add(x, a), ++k;
  return k;
}

// Isomorphism-class fingerprint: element-order histogram. Distinguishes
// all Abelian groups of a fixed order.
std::map<std::uint64_t, std::uint64_t> order_histogram(const AbelianGroup& G) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (std::uint64_t i = 0; i < G.order(); ++i) ++h[order_by_addition(G, G.element_at(i))];
  return h;
}

}  // namespace

TEST(Group, ParseAndFormat) {
  const auto G = AbelianGroup::parse("Z4xZ2xZ9");
  EXPECT_EQ(G.to_string(), "Z2xZ4xZ9");
  EXPECT_EQ(G.order(), 72u);
  EXPECT_EQ(AbelianGroup::parse("Z6").to_string(), "Z2xZ3");
  EXPECT_EQ(AbelianGroup::parse("z6"), AbelianGroup::parse("Z2xZ3"));
  for (const char* bad : {"", "Z", "Zx", "Z4x", "Y4", "Z4*Z2", "Z0"}) EXPECT_THROW(AbelianGroup::parse(bad), std::invalid_argument) << bad;
}

TEST(Group, Arithmetic) {
  const auto Z7 = AbelianGroup::cyclic(7);
  EXPECT_EQ(Z7.add(el({3}), el({5})), el({1}));
  const auto Z2Z4 = AbelianGroup::parse("Z2xZ4");
  EXPECT_EQ(Z2Z4.scalar_mul(2, el({1, 1})), el({0, 2}));
  EXPECT_EQ(Z2Z4.scalar_mul(-1, el({1, 1})), el({1, 3}));
  EXPECT_EQ(AbelianGroup::cyclic(6).format(AbelianGroup::cyclic(6).identity()), "(0,0)");
  const auto Z6 = AbelianGroup::parse("Z2xZ3");
  // 4 in Z6 is (0,1) in Z2 x Z3; its negative is 2 = (0,2)
  EXPECT_EQ(Z6.neg(el({0, 1})), el({0, 2}));
  EXPECT_THROW(Z7.add(el({7}), el({1})), std::invalid_argument);
  EXPECT_THROW(Z7.add(el({1, 0}), el({1})), std::invalid_argument);
}

TEST(Group, ElementOrder) {
  const auto Z12 = AbelianGroup::parse("Z4xZ3");
  // 8 in Z12 is (0, 2)
  EXPECT_EQ(Z12.element_order(el({0, 2})), 3u);
  EXPECT_EQ(AbelianGroup::parse("Z2xZ4").element_order(el({1, 2})), 2u);
  EXPECT_EQ(Z12.element_order(Z12.identity()), 1u);
}

TEST(Group, CountOrderExamples) {
  EXPECT_EQ(AbelianGroup::parse("Z2xZ4").count_order(2), 3u);
  EXPECT_EQ(AbelianGroup::parse("Z9").count_order(3), 2u);
  EXPECT_EQ(AbelianGroup::parse("Z7").count_order(2), 0u);
}

TEST(Group, CountOrderMatchesBruteForce) {
  for (std::uint64_t N = 1; N <= 96; ++N)
    for (const auto& G : enumerate_groups(N)) {
      const auto h = order_histogram(G);
      for (std::uint64_t l = 1; l <= N; ++l) {
        const auto it = h.find(l);
        ASSERT_EQ(G.count_order(l), it == h.end() ? 0u : it->second) << G.to_string() << " l=" << l;
      }
      ASSERT_EQ(G.count_order(2), G.count_order_two_closed_form()) << G.to_string();
    }
}

TEST(Group, EnumerateExamples) {
  auto names = [](std::uint64_t N) {
    std::vector<std::string> v;
    for (const auto& G : enumerate_groups(N)) v.push_back(G.to_string());
    return v;
  };
  EXPECT_EQ(names(4), (std::vector<std::string>{"Z4", "Z2xZ2"}));
  EXPECT_EQ(names(529), (std::vector<std::string>{"Z529", "Z23xZ23"}));
  EXPECT_EQ(names(12), (std::vector<std::string>{"Z4xZ3", "Z2xZ2xZ3"}));
  EXPECT_EQ(names(16).size(), 5u);
  EXPECT_EQ(names(352).size(), 7u);
}

TEST(Group, EnumerationIsACensus) {
  // Pairwise non-isomorphic, and the count is the product of partition numbers.
  for (std::uint64_t N : {8u, 16u, 32u, 36u, 64u, 72u, 144u}) {
    const auto gs = enumerate_groups(N);
    std::set<std::map<std::uint64_t, std::uint64_t>> fingerprints;
    for (const auto& G : gs) {
      ASSERT_EQ(G.order(), N);
      fingerprints.insert(order_histogram(G));
    }
    ASSERT_EQ(fingerprints.size(), gs.size()) << N;
  }
  EXPECT_EQ(enumerate_groups(64).size(), 11u);
  EXPECT_EQ(enumerate_groups(144).size(), 10u);
}

TEST(Group, IndexRoundTrip) {
  const auto G = AbelianGroup::parse("Z2xZ4xZ9");
  for (std::uint64_t i = 0; i < G.order(); ++i) ASSERT_EQ(G.index_of(G.element_at(i)), i);
  EXPECT_THROW(G.element_at(G.order()), std::out_of_range);
  EXPECT_EQ(G.parse_element("(1, 3, 8)"), el({1, 3, 8}));
  EXPECT_THROW(G.parse_element("(1,4,0)"), std::invalid_argument);
  EXPECT_THROW(G.parse_element("1,2,0"), std::invalid_argument);
}

TEST(Group, DFactorCounts) {
  const auto G = AbelianGroup::parse("Z2xZ2xZ8xZ11");
  EXPECT_EQ(G.d(2), 2);
  EXPECT_EQ(G.d(4), 0);
  EXPECT_EQ(G.d(8), 1);
  EXPECT_EQ(G.exponent(), 88u);
  EXPECT_FALSE(G.is_cyclic());
  EXPECT_TRUE(AbelianGroup::parse("Z8xZ11").is_cyclic());
}

TEST(IndexedGroup, AgreesWithCoordinateArithmetic) {
  std::mt19937_64 rng(7);
  for (const char* lit : {"Z7", "Z2xZ4", "Z3xZ3xZ4", "Z2xZ2xZ8xZ11", "Z529"}) {
    const auto G = AbelianGroup::parse(lit);
    const IndexedGroup ig(G);
    std::uniform_int_distribution<std::uint64_t> pick(0, G.order() - 1);
    for (int k = 0; k < 2000; ++k) {
      const auto x = pick(rng), y = pick(rng);
      const auto a = static_cast<std::int64_t>(pick(rng)) - 500;
      const auto ex = G.element_at(x), ey = G.element_at(y);
      ASSERT_EQ(ig.element_at(ig.add(static_cast<IndexedGroup::Index>(x), static_cast<IndexedGroup::Index>(y))), G.add(ex, ey));
      ASSERT_EQ(ig.element_at(ig.neg(static_cast<IndexedGroup::Index>(x))), G.neg(ex));
      ASSERT_EQ(ig.element_at(ig.mul(a, static_cast<IndexedGroup::Index>(x))), G.scalar_mul(a, ex));
    }
  }
}
