#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3lat;

TEST(Enumerate, RankOne) {
  const auto fs = enumerate_reduced(1, 6);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].gram()(0, 0), 6);
  EXPECT_TRUE(enumerate_reduced(1, 3).empty());
}

TEST(Enumerate, BinaryAgainstReductionOracle) {
  for (std::int64_t d = 1; d <= 300; ++d)
    EXPECT_EQ(enumerate_reduced(2, d).size(), testkit::binary_class_oracle(d)) << d;
}

TEST(Enumerate, SmallTernary) {
  // A3 is the only even positive-definite ternary lattice of determinant 4.
  const auto d4 = enumerate_reduced(3, 4);
  ASSERT_EQ(d4.size(), 1u);
  EXPECT_TRUE(is_isometric(d4[0].gram(), (IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})));
  EXPECT_TRUE(enumerate_reduced(3, 1).empty());
}

TEST(Enumerate, FormsAreReducedWithExactDet) {
  for (std::int64_t d : {12, 32, 48, 100}) {
    for (const auto& f : enumerate_reduced(3, d)) {
      EXPECT_EQ(f.det(), d);
      EXPECT_TRUE(is_positive_definite(f.gram()));
    }
  }
}

TEST(Enumerate, Bounds) {
  EXPECT_THROW(enumerate_reduced(3, 200000), ResourceError);
  EXPECT_THROW(enumerate_reduced(4, 10), DomainError);
  EXPECT_THROW(enumerate_reduced(2, 0), DomainError);
}

TEST(Enumerate, ThreadsAgree) {
  const auto a = enumerate_reduced(3, 720, 1);
  const auto b = enumerate_reduced(3, 720, 4);
  EXPECT_EQ(a, b);
}

TEST(ReducedForm, Rejects) {
  EXPECT_THROW(ReducedForm(IntMatrix{{4, 0}, {0, 2}}), DomainError);
  EXPECT_THROW(ReducedForm(IntMatrix{{2, 3}, {3, 8}}), DomainError);
  EXPECT_THROW(ReducedForm(IntMatrix{{3}}), DomainError);
}

TEST(Isometry, Examples) {
  const IntMatrix a{{2, 0}, {0, 4}};
  const IntMatrix u{{1, 1}, {0, 1}};
  EXPECT_TRUE(is_isometric(a, u.transpose() * a * u));
  EXPECT_FALSE(is_isometric(IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{2, 1}, {1, 2}}));
  // Same determinant 15, different minima.
  EXPECT_FALSE(is_isometric(IntMatrix{{2, 1}, {1, 8}}, IntMatrix{{4, 1}, {1, 4}}));
}

TEST(ShortVectors, A2Roots) {
  const IntMatrix a2{{2, -1}, {-1, 2}};
  EXPECT_EQ(short_vectors(a2, 2).size(), 6u);
  EXPECT_EQ(vector_counts(a2, 6), (std::map<std::int64_t, std::size_t>{{2, 6}, {6, 6}}));
}

TEST(Genus, Examples) {
  GenusSpec s;
  s.rank = 1;
  s.det = 2;
  s.disc = disc_form(GramLattice(IntMatrix{{2}}));
  EXPECT_EQ(genus_class_count(s).count, 1u);

  s.rank = 2;
  s.det = 3;
  s.disc = disc_form(GramLattice(IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(genus_class_count(s).count, 1u);
}

TEST(Genus, L27Complement) {
  GenusSpec s;
  s.rank = 3;
  s.det = 6048;
  s.disc = negate(config_disc_form(ADEConfig::parse("A6,2*A3,3*A2,A1")));
  const auto res = genus_class_count(s);
  EXPECT_EQ(res.count, 2u);
  for (const auto& r : res.representatives)
    EXPECT_TRUE(are_isomorphic(disc_form(GramLattice(r.gram())), *s.disc));
  // The filter is doing work: more classes share the determinant.
  EXPECT_GT(enumerate_reduced(3, 6048).size(), res.count);
}

TEST(Genus, DetMismatch) {
  GenusSpec s;
  s.rank = 1;
  s.det = 4;
  s.disc = disc_form(GramLattice(IntMatrix{{2}}));
  EXPECT_THROW(genus_class_count(s), DomainError);
}
