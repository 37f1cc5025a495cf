#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/error.hpp"
#include "qcmi/info.hpp"

using namespace qcmi;
using qcmi::test::kLn2;

TEST(PartialSwap, EndpointsAndUnitarity) {
  for (std::size_t d : {2u, 3u}) {
    EXPECT_LT(frobenius_distance(partial_swap(d, 0.0), Matrix::identity(d * d)), 1e-14);
    const Matrix u1 = partial_swap(d, 1.0);
    for (double t : {0.1, 0.5, 0.77}) EXPECT_LT(unitarity_defect(partial_swap(d, t)), 1e-12);
    // t = 1 is -i SWAP.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(std::abs(u1(i * d + j, j * d + i)), 1.0, 1e-12);
  }
}

TEST(PartialSwap, MovesCorrelationsToTheEnvironment) {
  const Scenario sc = partial_swap_scenario();
  const auto r0 = decomposition_identity(evolve(sc, 0.0));
  const auto r1 = decomposition_identity(evolve(sc, 1.0));
  EXPECT_NEAR(r0.i_as, 2 * kLn2, 1e-10);
  EXPECT_NEAR(r0.i_ae_given_s, 0.0, 1e-10);
  EXPECT_NEAR(r1.i_as, 0.0, 1e-10);
  EXPECT_NEAR(r1.i_ae_given_s, 2 * kLn2, 1e-10);
}

TEST(ControlledDephasing, IdentityAtZeroAndUnitary) {
  EXPECT_LT(frobenius_distance(controlled_dephasing(0.0), Matrix::identity(4)), 1e-14);
  for (double t : {0.3, 2.0, 10.0}) EXPECT_LT(unitarity_defect(controlled_dephasing(t)), 1e-12);
}

TEST(ExampleUnitary, ReachesTheExampleFamily) {
  const auto s0 = paper_example(0.0);
  for (double u : {0.0, 0.25, 0.6, 1.0}) {
    const Matrix v = example_unitary(u);
    EXPECT_LT(unitarity_defect(v), 1e-12);
    const auto st = apply_local_unitary(s0, v, {"S", "E1", "E2"});
    EXPECT_LT(frobenius_distance(st.matrix(), paper_example(u).matrix()), 1e-10) << u;
  }
}

TEST(Scenario, EvolveRejectsMixedAncillaSystem) {
  Scenario sc = partial_swap_scenario();
  sc.initial_as = maximally_mixed(sc.initial_as.layout());
  EXPECT_THROW(evolve(sc, 0.3), Error);
}

TEST(Scenario, TabulatedFamilyOnlyAtItsTimes) {
  const UnitaryFamily f = tabulated_family({0.0, 1.0}, {Matrix::identity(2), Matrix::identity(2)});
  EXPECT_NO_THROW(f(1.0));
  EXPECT_THROW(f(0.5), Error);
}

TEST(Trajectory, IdentitiesAlongRandomScenario) {
  auto rng = make_rng(60);
  const Scenario sc = random_scenario({2, 2}, rng);
  const std::vector<double> times{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  const auto rep = trajectory(sc, times);
  ASSERT_EQ(rep.i_as.size(), times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_LT(rep.capacity_residuals[k], 1e-10);
    EXPECT_LT(rep.decomposition_residuals[k], 1e-10);
  }
  EXPECT_LT(rep.i_a_se_spread(), 1e-10);
  EXPECT_TRUE(rep.bound_holds());
  ASSERT_EQ(rep.backflow.size(), times.size() - 1);
}

TEST(Trajectory, ThreadedMatchesSerial) {
  auto rng = make_rng(61);
  const Scenario sc = random_scenario({3}, rng);
  const std::vector<double> times{0.0, 0.5, 1.0, 1.5};
  const auto a = trajectory(sc, times, 1), b = trajectory(sc, times, 3);
  EXPECT_EQ(a.i_ae_given_s, b.i_ae_given_s);
  EXPECT_EQ(a.i_as, b.i_as);
}

TEST(EnvironmentLabels, Naming) {
  EXPECT_EQ(environment_labels(1), LabelSet{"E"});
  EXPECT_EQ(environment_labels(3), (LabelSet{"E1", "E2", "E3"}));
}
