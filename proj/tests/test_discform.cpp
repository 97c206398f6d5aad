#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3lat;

namespace {

FiniteQuadraticForm a1_form() { return disc_form(ade_lattice(RootComponent(RootKind::A, 1))); }

FiniteQuadraticForm cyclic_form(std::int64_t n, std::int64_t num) {
  return FiniteQuadraticForm::diagonal({n}, {QMod2::of(num, n)});
}

}  // namespace

TEST(DiscForm, A1) {
  const auto f = a1_form();
  EXPECT_EQ(f.orders(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(f.q_values()[0], QMod2::of(3, 2));
}

TEST(DiscForm, A2) {
  const auto f = disc_form(ade_lattice(RootComponent(RootKind::A, 2)));
  EXPECT_EQ(f.orders(), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(f.q_values()[0], QMod2::of(4, 3));
}

TEST(DiscForm, E8Trivial) {
  EXPECT_EQ(disc_form(ade_lattice(RootComponent(RootKind::E, 8))).generators(), 0u);
}

TEST(DiscForm, OddAndSingularRejected) {
  EXPECT_THROW(disc_form(GramLattice(IntMatrix{{1}})), DomainError);
  EXPECT_THROW(disc_form(GramLattice(IntMatrix{{2, 2}, {2, 2}})), DegeneracyError);
}

TEST(DiscForm, QValuesMatchBruteForce) {
  for (const char* cfg : {"A1", "A2", "A3", "D4", "D5", "2*A1", "A2,A1", "E6", "E7", "A4"}) {
    const auto g = config_lattice(ADEConfig::parse(cfg)).gram();
    EXPECT_EQ(testkit::form_q_values(disc_form(GramLattice(g))), testkit::brute_q_values(g))
        << cfg;
  }
  const IntMatrix g{{2, 1, 0}, {1, 4, 1}, {0, 1, 6}};
  EXPECT_EQ(testkit::form_q_values(disc_form(GramLattice(g))), testkit::brute_q_values(g));
}

TEST(FormConstruction, RejectsIllDefined) {
  // On Z/2 the denominator of q must divide 4.
  EXPECT_THROW(FiniteQuadraticForm::diagonal({2}, {QMod2::of(1, 3)}), DomainError);
  EXPECT_THROW(FiniteQuadraticForm::diagonal({1}, {QMod2::of(0, 1)}), DomainError);
}

TEST(Negate, FlipsValues) {
  const auto f = negate(a1_form());
  EXPECT_EQ(f.q_values()[0], QMod2::of(1, 2));
}

TEST(OrthogonalSum, Orders) {
  const std::vector<FiniteQuadraticForm> fs{a1_form(), cyclic_form(3, 4)};
  const auto s = orthogonal_sum(fs);
  EXPECT_EQ(s.group_order(), 6);
}

// Forms on Z/n with q(1) = a/n and b/n are isomorphic exactly when
// u^2 a = b mod 2n for a unit u mod n (checked by enumeration of u).
TEST(AreIsomorphic, CyclicAgainstUnitOracle) {
  for (std::int64_t n : {3, 5, 7, 9, 4, 8}) {
    std::vector<std::int64_t> nums;
    for (std::int64_t a = 0; a < 2 * n; ++a)
      try {
        (void)cyclic_form(n, a);
        nums.push_back(a);
      } catch (const DomainError&) {
      }
    for (auto a : nums)
      for (auto b : nums) {
        bool oracle = false;
        for (std::int64_t u = 1; u < 2 * n; ++u) {
          if (std::gcd(u, n) != 1) continue;
          // q(u x) = u^2 a / n mod 2
          if (((u * u * a - b) % (2 * n) + 2 * n) % (2 * n) == 0) oracle = true;
        }
        EXPECT_EQ(are_isomorphic(cyclic_form(n, a), cyclic_form(n, b)), oracle)
            << "n=" << n << " a=" << a << " b=" << b;
      }
  }
}

TEST(AreIsomorphic, Examples) {
  EXPECT_TRUE(are_isomorphic(a1_form(), a1_form()));
  EXPECT_FALSE(are_isomorphic(a1_form(), negate(a1_form())));
  // A1 + A1 against the form of the lattice [[-2, 0], [0, -2]] written in
  // another basis.
  const IntMatrix g{{-2, -2}, {-2, -4}};
  EXPECT_TRUE(are_isomorphic(config_disc_form(ADEConfig::parse("2*A1")), disc_form(GramLattice(g))));
  // D4 carries three elements of q = 1, A1+A1 has one element of q = 1.
  EXPECT_FALSE(are_isomorphic(config_disc_form(ADEConfig::parse("D4")),
                              config_disc_form(ADEConfig::parse("2*A1"))));
}

TEST(IsotropicSubgroups, EightA1Order2) {
  const auto f = config_disc_form(ADEConfig::parse("8*A1"));
  // Oracle: q(x) = (3/2) * weight(x) mod 2 vanishes iff weight = 0 mod 4.
  std::size_t oracle = 0;
  for (unsigned x = 1; x < 256; ++x)
    if (std::popcount(x) % 4 == 0) ++oracle;
  EXPECT_EQ(oracle, 71u);
  EXPECT_EQ(isotropic_subgroups(f, 2).size(), oracle);
}

TEST(IsotropicSubgroups, TrivialAndBadOrder) {
  const auto f = config_disc_form(ADEConfig::parse("8*A1"));
  EXPECT_EQ(isotropic_subgroups(f, 1).size(), 1u);
  EXPECT_THROW(isotropic_subgroups(f, 3), DomainError);
  // A2: q = 4/3 on the generator, nothing isotropic of order 3.
  EXPECT_TRUE(isotropic_subgroups(config_disc_form(ADEConfig::parse("A2")), 3).empty());
}

TEST(IsotropicSubgroups, S4ConfigUsesPrimaryParts) {
  // |q_K| = 13824 exceeds the materialization bound; the search splits
  // over primes.
  const auto f = config_disc_form(ADEConfig::parse("2*A3,3*A2,5*A1"));
  EXPECT_EQ(f.group_order(), 13824);
  const auto subs = isotropic_subgroups(f, 2);
  EXPECT_FALSE(subs.empty());
  for (const auto& h : subs) EXPECT_TRUE(is_isotropic(f, h));
}

TEST(Overlattice, EightA1AllOnesGlue) {
  // The weight-8 vector glues 8 A1 to a lattice with discriminant order
  // 2^8 / 2^2 = 64.
  const auto f = config_disc_form(ADEConfig::parse("8*A1"));
  Subgroup h{{GroupElement(8, 1)}, 2};
  const auto g = overlattice_disc(f, h);
  EXPECT_EQ(g.group_order(), 64);
  Subgroup bad{{GroupElement{1, 0, 0, 0, 0, 0, 0, 0}}, 2};
  EXPECT_THROW(overlattice_disc(f, bad), DomainError);
}

TEST(Overlattice, MatchesExplicitOverlattice) {
  // D4 is the overlattice of 4*A1 by the all-ones glue vector; compare
  // with the discriminant form of D4 computed from its Gram matrix.
  const auto f = config_disc_form(ADEConfig::parse("4*A1"));
  Subgroup h{{GroupElement(4, 1)}, 2};
  EXPECT_TRUE(are_isomorphic(overlattice_disc(f, h), config_disc_form(ADEConfig::parse("D4"))));
}

TEST(Elements, MaterializeBound) {
  const auto f = config_disc_form(ADEConfig::parse("2*A3,3*A2,5*A1"));
  EXPECT_THROW(f.elements(), ResourceError);
}
