#include <gtest/gtest.h>

#include "property_checks.hpp"

namespace {

void expect_green(const props::Result& r) {
  EXPECT_GT(r.cases, 0U);
  EXPECT_EQ(r.failures, 0U) << "first failure: " << r.first_failure;
}

}  // namespace

TEST(Properties, OplusLaws) { expect_green(props::oplus_laws()); }
TEST(Properties, VDualInvolutionDepthRibbon) { expect_green(props::vdual_laws(8)); }
TEST(Properties, StuffleCommutativeAssociative) { expect_green(props::stuffle_laws(6)); }
TEST(Properties, ShuffleCommutativeAssociative) { expect_green(props::shuffle_laws(6)); }
TEST(Properties, StarMoebiusInversion) { expect_green(props::star_inversion(6)); }
TEST(Properties, AntipodeRoundTrip) { expect_green(props::antipode_round_trip(5)); }
TEST(Properties, PhiInvolution) { expect_green(props::phi_involution(5)); }
TEST(Properties, PTransformRoundTrip) { expect_green(props::p_transform_round_trip(6)); }
TEST(Properties, XYRoundTrip) { expect_green(props::xy_round_trip(6)); }
TEST(Properties, TauTwice) { expect_green(props::tau_twice(6)); }
TEST(Properties, StuffleHomomorphism) { expect_green(props::stuffle_homomorphism(5, 7, 97)); }
