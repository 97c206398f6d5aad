#include <gtest/gtest.h>

#include "properties.hpp"

using namespace k3lat::testkit;

// The acceptance binary runs these suites at 1000 cases; the unit suite
// uses a different seed offset and fewer cases.
namespace {
constexpr int kCases = 200;

void expect_clean(const PropertyResult& r) {
  EXPECT_EQ(r.cases, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}
}  // namespace

TEST(Property, SnfDet) { expect_clean(property_snf_det(seed() + 11, kCases)); }
TEST(Property, DiscBasisInvariance) { expect_clean(property_disc_basis(seed() + 12, kCases)); }
TEST(Property, OverlatticeOrder) { expect_clean(property_overlattice_order(seed() + 13, kCases)); }
TEST(Property, Isometry) { expect_clean(property_isometry(seed() + 14, kCases)); }
TEST(Property, EnumerationClosure) {
  expect_clean(property_enumeration_closure(seed() + 15, kCases));
}
