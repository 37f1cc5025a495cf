#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcmi/discord.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/error.hpp"
#include "qcmi/info.hpp"
#include "qcmi/random.hpp"

using namespace qcmi;
using qcmi::test::bell;
using qcmi::test::ket;
using qcmi::test::kLn2;

namespace {

Matrix pauli(int k) {
  Matrix m(2, 2);
  if (k == 1) m(0, 1) = m(1, 0) = 1.0;
  if (k == 2) {
    m(0, 1) = Complex(0, -1);
    m(1, 0) = Complex(0, 1);
  }
  if (k == 3) {
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
  }
  return m;
}

// (1/4)(I + sum_i c_i sigma_i (x) sigma_i).
LabeledState bell_diagonal(double c1, double c2, double c3) {
  Matrix m = Matrix::identity(4);
  const double c[] = {c1, c2, c3};
  for (int i = 0; i < 3; ++i) m += kron(pauli(i + 1), pauli(i + 1)) * Complex(c[i]);
  return LabeledState(SubsystemLayout({"A", "B"}, {2, 2}), m * Complex(0.25));
}

// Classical correlation of a Bell-diagonal state, attained by measuring along
// the axis of the largest |c_i|.
double bell_diagonal_classical(double c1, double c2, double c3) {
  const double c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  return 0.5 * ((1 - c) * std::log(1 - c) + (1 + c) * std::log(1 + c));
}

Povm computational(std::size_t d, const LabelSet& target) {
  std::vector<Matrix> effects;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix e(d, d);
    e(i, i) = 1.0;
    effects.push_back(e);
  }
  return Povm(effects, target);
}

}  // namespace

TEST(MeasurementParametrization, EffectsFormRankOnePovm) {
  auto rng = make_rng(40);
  std::uniform_real_distribution<double> ang(-4.0, 4.0);
  for (auto [d, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 5}}) {
    const MeasurementParametrization mp(d, k);
    std::vector<double> p(mp.parameter_count());
    for (auto& x : p) x = ang(rng);
    const auto effects = mp.effects(p);
    ASSERT_EQ(effects.size(), k);
    Matrix sum(d, d);
    for (const auto& e : effects) {
      sum += e;
      EXPECT_LT(hermitian_eigenvalues(e).front(), 1e-12);
    }
    EXPECT_LT(frobenius_distance(sum, Matrix::identity(d)), 1e-12);
    if (k == d) {
      EXPECT_TRUE(mp.decode(p, {"E"}).is_projective());
    }
  }
}

TEST(MeasurementParametrization, ProjectiveCountForQubit) {
  // d(d - 1) angles and d - 1 phases.
  EXPECT_EQ(MeasurementParametrization(2).parameter_count(), 3u);
  EXPECT_EQ(MeasurementParametrization(3).parameter_count(), 8u);
}

TEST(MeasurementParametrization, EncodeDecodeRoundTrip) {
  auto rng = make_rng(41);
  const Povm m = random_povm(2, 3, {"E"}, rng);
  const MeasurementParametrization mp(2, 3);
  const Povm back = mp.decode(mp.encode(m), {"E"});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(frobenius_distance(back.effects()[i], m.effects()[i]), 1e-9);
}

TEST(ConditionalEvaluator, AgreesWithDirectEvaluation) {
  auto rng = make_rng(42);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 3}), rng);
  const ConditionalEvaluator ev(s, {"A"}, {"E"}, {"S"});
  EXPECT_NEAR(ev.cmi(), cmi(s, {"A"}, {"E"}, {"S"}), 1e-12);
  for (int trial = 0; trial < 5; ++trial) {
    const Povm m = random_povm(3, 4, {"E"}, rng);
    EXPECT_NEAR(ev.j(m.effects()), j_conditional(s, m, {"A"}, {"S"}), 1e-12);
  }
}

TEST(J, NeverExceedsCmi) {
  auto rng = make_rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
    const Povm m = random_povm(2, 2 + trial % 3, {"E"}, rng);
    EXPECT_GE(r_conditional(s, m, {"A"}, {"S"}), -1e-10);
  }
}

TEST(J, WorkedExampleAtFullMixing) {
  // (|0000> + |1111>)/sqrt 2 on A S E1 E2: the computational basis on E1 E2
  // reveals nothing beyond S, while the Bell basis of span{|00>, |11>} on
  // E1 E2 carries the full relative phase.
  const auto s = paper_example(1.0);
  const LabelSet a{"A"}, sys{"S"};
  EXPECT_NEAR(j_conditional(s, computational(6, {"E1", "E2"}), a, sys), 0.0, 1e-10);

  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> plus(6), minus(6);
  plus[0] = minus[0] = r;  // |00>
  plus[4] = r;             // |11>
  minus[4] = -r;
  std::vector<Matrix> effects{Matrix::projector(ket(plus)), Matrix::projector(ket(minus))};
  for (std::size_t i : {1u, 2u, 3u, 5u}) {
    std::vector<Complex> v(6);
    v[i] = 1.0;
    effects.push_back(Matrix::projector(ket(v)));
  }
  const Povm bell_basis(effects, {"E1", "E2"});
  EXPECT_TRUE(bell_basis.is_projective());
  EXPECT_NEAR(j_conditional(s, bell_basis, a, sys), kLn2, 1e-10);
  EXPECT_NEAR(r_conditional(s, bell_basis, a, sys), 0.0, 1e-10);
}

TEST(ClassicalCmi, WorkedExampleReachesBellBasisValue) {
  const auto s = paper_example(1.0);
  OptimizerConfig cfg;
  const auto c = classical_cmi(s, {"A"}, {"E1", "E2"}, {"S"}, cfg);
  EXPECT_GE(c.value, kLn2 - 1e-6);
  EXPECT_LE(c.value, kLn2 + 1e-9);
}

TEST(Discord, BellPair) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  const auto d = discord(bell(), {"A"}, {"B"}, cfg);
  EXPECT_NEAR(d.cmi, 2 * kLn2, 1e-10);
  EXPECT_NEAR(d.classical.value, kLn2, 1e-7);
  EXPECT_NEAR(d.value, kLn2, 1e-7);
}

TEST(Discord, ClassicalOnMeasuredSideVanishes) {
  auto rng = make_rng(44);
  const std::vector<double> p{0.3, 0.7};
  std::vector<Matrix> parts;
  Matrix m(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    Matrix proj(2, 2);
    proj(i, i) = 1.0;
    m += kron(random_density(SubsystemLayout({"A"}, {2}), rng).matrix(), proj) * Complex(p[i]);
  }
  const LabeledState s(SubsystemLayout({"A", "B"}, {2, 2}), m);
  OptimizerConfig cfg;
  cfg.restarts = 8;
  EXPECT_NEAR(discord(s, {"A"}, {"B"}, cfg).value, 0.0, 1e-7);
}

TEST(Discord, BellDiagonalClosedForm) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  for (auto [c1, c2, c3] : std::vector<std::tuple<double, double, double>>{
           {0.3, -0.2, 0.1}, {-0.5, 0.4, 0.3}, {0.1, 0.2, -0.6}, {0.7, -0.7, 0.5}}) {
    const auto s = bell_diagonal(c1, c2, c3);
    const auto c = bipartite_classical_corr(s, {"A"}, {"B"}, cfg);
    EXPECT_NEAR(c.value, bell_diagonal_classical(c1, c2, c3), 1e-7) << c1 << " " << c2 << " " << c3;
  }
}

TEST(BigR, NonNegativeAndBelowCmi) {
  auto rng = make_rng(45);
  OptimizerConfig cfg;
  cfg.restarts = 6;
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
    const auto q = big_r(s, {"A"}, {"E"}, {"S"}, cfg);
    EXPECT_GE(q.value, -1e-10);
    EXPECT_LE(q.value, q.cmi + 1e-12);
    EXPECT_NEAR(q.value, q.cmi - q.classical.value, 1e-12);
  }
}

TEST(BigR, RestartsOnlyImproveTheBound) {
  auto rng = make_rng(46);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 3}), rng);
  OptimizerConfig few, many;
  few.restarts = 2;
  many.restarts = 12;
  EXPECT_LE(big_r(s, {"A"}, {"E"}, {"S"}, many).value, big_r(s, {"A"}, {"E"}, {"S"}, few).value + 1e-12);
}
