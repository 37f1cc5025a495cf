#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcmi/channels.hpp"
#include "qcmi/error.hpp"
#include "qcmi/info.hpp"
#include "qcmi/random.hpp"

using namespace qcmi;
using qcmi::test::bell;
using qcmi::test::kLn2;

namespace {

KrausChannel dephasing(double p, const Label& target) {
  Matrix k0 = Matrix::identity(2) * Complex(std::sqrt(1 - p));
  Matrix k1(2, 2);
  k1(0, 0) = std::sqrt(p);
  k1(1, 1) = -std::sqrt(p);
  return KrausChannel({k0, k1}, {target});
}

}  // namespace

TEST(KrausChannel, RejectsIncompleteSet) {
  EXPECT_THROW(KrausChannel({Matrix::identity(2) * Complex(0.5)}, {"A"}), Error);
}

TEST(KrausChannel, DephasingScalesCoherences) {
  const double p = 0.3;
  const auto s = bell();
  const auto out = apply_channel(s, dephasing(p, "B"));
  EXPECT_NEAR(out.matrix()(0, 3).real(), 0.5 * (1 - 2 * p), 1e-14);
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.5, 1e-14);
}

TEST(KrausChannel, PreservesTraceAndShrinksCmi) {
  auto rng = make_rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
    const auto out = apply_channel(s, random_channel(2, 3, {"E"}, rng));
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LE(cmi(out, {"A"}, {"E"}, {"S"}), cmi(s, {"A"}, {"E"}, {"S"}) + 1e-10);
  }
}

TEST(KrausChannel, OutputLabelsReplaceTarget) {
  auto rng = make_rng(31);
  const Matrix v = random_isometry(6, 2, rng);
  const KrausChannel ch({v}, {"B"}, {"B1", "B2"}, {2, 3});
  const auto out = apply_channel(bell(), ch);
  EXPECT_EQ(out.labels(), (LabelSet{"A", "B1", "B2"}));
  EXPECT_NEAR(mutual_information(out, {"A"}, {"B1", "B2"}), 2 * kLn2, 1e-10);
}

TEST(Povm, RejectsBadEffects) {
  EXPECT_THROW(Povm({Matrix::identity(2) * Complex(0.5)}, {"A"}), Error);
  const std::vector<double> neg{1.5, -0.5}, rest{-0.5, 1.5};
  EXPECT_THROW(Povm({Matrix::diagonal(neg), Matrix::diagonal(rest)}, {"A"}), Error);
}

TEST(Povm, ProbabilitiesAndCqState) {
  auto rng = make_rng(32);
  const auto s = random_density(SubsystemLayout({"A", "E"}, {2, 3}), rng);
  const Povm m = random_povm(3, 5, {"E"}, rng);
  EXPECT_FALSE(m.is_projective());
  const auto p = m.probabilities(s);
  const auto cq = measure_to_cq(s, m, "Y");
  ASSERT_EQ(cq.layout().dim_of("Y"), 5u);
  const auto y = reduce(cq, LabelSet{"Y"});
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(y.matrix()(i, i).real(), p[i], 1e-12);
  // Holevo bound: the measured record carries no more than the quantum side.
  EXPECT_LE(mutual_information(cq, {"A"}, {"Y"}), mutual_information(s, {"A"}, {"E"}) + 1e-10);
}

TEST(Broadcast, CopiesComputationalBasis) {
  const std::vector<double> p{0.2, 0.5, 0.3};
  const auto s = classical_state(p, {{0}, {1}, {2}}, SubsystemLayout({"E"}, {3}));
  const auto out = apply_channel(s, broadcast_channel(3));
  EXPECT_NEAR(mutual_information(out, {"E"}, {"E'"}), qcmi::test::shannon(p), 1e-12);
}

TEST(Naimark, ReproducesStatistics) {
  auto rng = make_rng(33);
  const auto s = random_density(SubsystemLayout({"A", "E"}, {2, 2}), rng);
  const Povm m = random_povm(2, 3, {"E"}, rng);
  const auto nk = naimark_extend(m);
  EXPECT_TRUE(nk.pvm().is_projective());
  const auto big = nk.embed(s);
  EXPECT_LT(frobenius_distance(reduce(big, LabelSet{"A", "E"}).matrix(), s.matrix()), 1e-13);
  const auto p = m.probabilities(s), q = nk.pvm().probabilities(big);
  ASSERT_EQ(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
}

TEST(Composite, RecoveryInvertsExtension) {
  auto rng = make_rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
    const auto ch = random_channel(2, 2, {"E"}, rng);
    const auto eta = composite_extend(s, ch);
    EXPECT_NEAR(cmi(eta, {"A"}, {"E", "E'", "E''"}, {"S"}), cmi(s, {"A"}, {"E"}, {"S"}), 1e-10);
    const auto back = recover(eta, ch);
    EXPECT_LT(frobenius_distance(reorder(back, s.labels()).matrix(), s.matrix()), 1e-9);
  }
}

TEST(Composite, RecordMarginalIsChannelOutput) {
  auto rng = make_rng(35);
  const auto s = random_density(SubsystemLayout({"A", "E"}, {2, 2}), rng);
  const auto ch = random_channel(2, 3, {"E"}, rng);
  const auto eta = composite_extend(s, ch);
  const auto out = reduce(eta, LabelSet{"A", "E"});
  EXPECT_LT(frobenius_distance(out.matrix(), apply_channel(s, ch).matrix()), 1e-12);
}

TEST(Stinespring, IsAnIsometry) {
  auto rng = make_rng(36);
  const Matrix v = stinespring_isometry(random_channel(3, 4, {"E"}, rng));
  EXPECT_LT(frobenius_distance(v.adjoint() * v, Matrix::identity(3)), 1e-12);
}
