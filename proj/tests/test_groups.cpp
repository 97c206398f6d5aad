#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3lat;

namespace {

FiniteGroup perm_group(std::initializer_list<const char*> gens) {
  std::vector<Permutation> ps;
  for (auto g : gens) ps.push_back(parse_cycles(g));
  return FiniteGroup::from_permutations(ps);
}

std::vector<Integer> h3(const FiniteGroup& g) { return h3_bar_resolution(g).factors; }

}  // namespace

TEST(Groups, PermutationClosureOrders) {
  EXPECT_EQ(perm_group({"(1,2)", "(1,2,3,4)"}).order(), 24u);
  EXPECT_EQ(perm_group({"(1,2,3)", "(1,2,3,4,5)"}).order(), 60u);
  EXPECT_EQ(perm_group({"(1,2,3,4,5,6,7)", "(1,2)(3,6)"}).order(), 168u);
}

TEST(Groups, ParseCycles) {
  EXPECT_EQ(parse_cycles("(1,2,3)(4,5)"), (Permutation{1, 2, 0, 4, 3}));
  EXPECT_EQ(parse_cycles("()"), Permutation{});
  EXPECT_ANY_THROW(parse_cycles("(1,2"));
  EXPECT_ANY_THROW(parse_cycles("(1,1)"));
}

TEST(Groups, CayleyValidation) {
  EXPECT_NO_THROW(FiniteGroup::from_cayley({{0, 1}, {1, 0}}));
  EXPECT_THROW(FiniteGroup::from_cayley({{1, 0}, {0, 1}}), DomainError);
  EXPECT_THROW(FiniteGroup::from_cayley({{0, 1}, {1, 1}}), DomainError);
  // Latin square but not associative (a loop of order 5).
  EXPECT_THROW(FiniteGroup::from_cayley({{0, 1, 2, 3, 4},
                                         {1, 0, 3, 4, 2},
                                         {2, 4, 0, 1, 3},
                                         {3, 2, 4, 0, 1},
                                         {4, 3, 1, 2, 0}}),
               DomainError);
}

TEST(Census, Examples) {
  EXPECT_EQ(order_census(perm_group({"(1,2)", "(1,2,3,4)"})),
            (OrderCensus{{2, 9}, {3, 8}, {4, 6}}));
  EXPECT_EQ(order_census(perm_group({"(1,2,3,4,5,6,7)", "(1,2)(3,6)"})),
            (OrderCensus{{2, 21}, {3, 56}, {4, 42}, {7, 48}}));
  EXPECT_THROW(order_census(FiniteGroup::cyclic(9)), DomainError);
}

TEST(Census, ShippedRecordsMatchGroups) {
  // Each record's census against the group generated by its permutations.
  const std::map<std::string, std::vector<const char*>> gens{
      {"S4", {"(1,2)", "(1,2,3,4)"}},
      {"A5", {"(1,2,3)", "(1,2,3,4,5)"}},
      {"A6", {"(1,2,3)", "(2,3,4,5,6)"}},
      {"L2(7)", {"(1,2,3,4,5,6,7)", "(1,2)(3,6)"}},
      {"M20",
       {"(2,6)(3,11)(4,16)(7,15)(8,12)(10,14)", "(2,4,3)(5,9,13)(6,12,15)(7,10,16)(8,11,14)",
        "(2,5)(3,9)(4,13)(7,10)(8,14)(12,15)",
        "(1,5)(2,6)(3,7)(4,8)(9,13)(10,14)(11,15)(12,16)"}}};
  for (const auto& r : shipped_records()) {
    auto it = gens.find(r.name);
    if (it == gens.end()) {
      const int n = static_cast<int>(r.group_order);
      EXPECT_EQ(*r.census, order_census(FiniteGroup::cyclic(n))) << r.name;
      continue;
    }
    std::vector<Permutation> ps;
    for (auto g : it->second) ps.push_back(parse_cycles(g));
    const auto grp = FiniteGroup::from_permutations(ps);
    EXPECT_EQ(static_cast<std::int64_t>(grp.order()), r.group_order) << r.name;
    EXPECT_EQ(*r.census, order_census(grp)) << r.name;
  }
}

// H^3(G, Z) = H_2(G, Z) for finite G. For abelian A = Z/a x Z/b this is
// Lambda^2 A = Z/gcd(a, b); for cyclic groups it vanishes.
TEST(H3, CyclicTrivial) {
  for (int n = 2; n <= 8; ++n) {
    const auto r = h3_bar_resolution(FiniteGroup::cyclic(n));
    EXPECT_TRUE(r.factors.empty()) << n;
    EXPECT_TRUE(r.composite_zero) << n;
  }
  EXPECT_TRUE(h3(FiniteGroup::cyclic(1)).empty());
}

TEST(H3, AbelianAgainstExteriorSquare) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}, {2, 3}, {2, 6}}) {
    const auto g = FiniteGroup::direct_product(FiniteGroup::cyclic(a), FiniteGroup::cyclic(b));
    const int d = std::gcd(a, b);
    const std::vector<Integer> want = d > 1 ? std::vector<Integer>{d} : std::vector<Integer>{};
    EXPECT_EQ(h3(g), want) << a << "x" << b;
  }
  const auto c222 = FiniteGroup::direct_product(
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
      FiniteGroup::cyclic(2));
  EXPECT_EQ(h3(c222), (std::vector<Integer>{2, 2, 2}));
}

TEST(H3, NonAbelian) {
  // Schur multipliers: S3 trivial, D4 Z/2, Q8 trivial, A4 Z/2.
  EXPECT_TRUE(h3(perm_group({"(1,2)", "(1,2,3)"})).empty());
  EXPECT_EQ(h3(perm_group({"(1,2,3,4)", "(1,3)"})), (std::vector<Integer>{2}));
  EXPECT_TRUE(h3(perm_group({"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"})).empty());
  EXPECT_EQ(h3(perm_group({"(1,2,3)", "(1,2)(3,4)"})), (std::vector<Integer>{2}));
}

TEST(H3, CapIsResourceError) {
  try {
    h3_bar_resolution(perm_group({"(1,2)", "(1,2,3,4)"}));
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("h3_order"), std::string::npos);
  }
}
