#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcmi/channels.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/extension.hpp"
#include "qcmi/info.hpp"
#include "qcmi/random.hpp"

using namespace qcmi;
using qcmi::test::ket;
using qcmi::test::kLn2;

namespace {

// Four Bell projectors on a pair of qubits.
std::vector<Matrix> bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Matrix::projector(ket({r, 0, 0, r})), Matrix::projector(ket({r, 0, 0, -r})),
          Matrix::projector(ket({0, r, r, 0})), Matrix::projector(ket({0, r, -r, 0}))};
}

// p |Phi+><Phi+| + (1 - p) I/4.
LabeledState werner(double p) {
  const auto phi = qcmi::test::bell();
  Matrix m = phi.matrix() * Complex(p) + Matrix::identity(4) * Complex(0.25 * (1 - p));
  return LabeledState(phi.layout(), m);
}

}  // namespace

TEST(Garbage, DefaultDimension) {
  EXPECT_EQ(default_garbage_dim(1, 2), 2u);
  EXPECT_EQ(default_garbage_dim(4, 2), 2u);
  EXPECT_EQ(default_garbage_dim(5, 2), 3u);
  EXPECT_EQ(default_garbage_dim(8, 3), 3u);
}

TEST(Extender, MarginalIsTheInput) {
  auto rng = make_rng(50);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng, 3);
  const Extender ex(s, 3);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> p(ex.parametrization().parameter_count());
    for (auto& x : p) x = ang(rng);
    const auto ext = ex.extend(p);
    EXPECT_EQ(ext.labels().back(), "X'");
    EXPECT_LT(frobenius_distance(reduce(ext, s.labels()).matrix(), s.matrix()), 1e-12);
    EXPECT_LT(validate(ext, 1e-10).negativity_defect, 1e-12);
  }
}

TEST(BinaryEntropy, Values) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), kLn2, 1e-15);
  EXPECT_NEAR(binary_entropy(0.2), -(0.2 * std::log(0.2) + 0.8 * std::log(0.8)), 1e-15);
}

TEST(Concurrence, WernerStates) {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0})
    EXPECT_NEAR(concurrence(werner(p), "A", "B"), std::max(0.0, 1.5 * p - 0.5), 1e-10) << p;
}

TEST(EntanglementOfFormation, WoottersAgreesWithDecompositionSearch) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  EXPECT_NEAR(entanglement_of_formation(qcmi::test::bell(), "A", "B"), kLn2, 1e-10);
  for (double p : {0.6, 0.9}) {
    const auto s = werner(p);
    const double wootters = entanglement_of_formation(s, "A", "B");
    const double search = eof_general(s, {"A"}, {"B"}, cfg).value;
    EXPECT_GE(search, wootters - 1e-8);
    EXPECT_NEAR(search, wootters, 2e-3) << p;
  }
}

TEST(KoashiWinter, BellTimesAncilla) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  auto rng = make_rng(51);
  const auto phi = tensor(qcmi::test::bell(), random_pure(SubsystemLayout({"C"}, {2}), rng));
  const auto rec = koashi_winter_check(phi, "A", "B", {"C"}, cfg);
  EXPECT_NEAR(rec.e_f, kLn2, 1e-10);
  EXPECT_NEAR(rec.classical, 0.0, 1e-8);
  EXPECT_LT(rec.residual, 1e-6);
}

TEST(RelationChain, OrderedOnRandomStates) {
  // R(A;E|S) <= I(A:E|S), and every J lies below C.
  auto rng = make_rng(52);
  OptimizerConfig cfg;
  cfg.restarts = 6;
  for (int trial = 0; trial < 3; ++trial) {
    const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng, 2);
    const auto q = big_r(s, {"A"}, {"E"}, {"S"}, cfg);
    EXPECT_LE(q.value, q.cmi + 1e-12);
    const Povm m = random_povm(2, 2, {"E"}, rng);
    EXPECT_LE(j_conditional(s, m, {"A"}, {"S"}), q.classical.value + 1e-9);
  }
}

TEST(Rex, NeverAboveBaseline) {
  auto rng = make_rng(53);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng, 2);
  ExtensionConfig cfg;
  cfg.search.restarts = 4;
  cfg.search.max_evals = 1500;
  const auto r = r_ex(s, {"A"}, {"E"}, {"S"}, cfg);
  EXPECT_LE(r.value, r.baseline + 1e-12);
  EXPECT_GE(r.value, -1e-10);
  const auto w = extension_witness(s, {"A"}, {"E"}, {"S"}, r, cfg);
  EXPECT_NEAR(w.r, r.value, 1e-8);
}

TEST(Rex, PureSystemKeepsBellValue) {
  // With S pure every extension factors off, so R_ex = R = ln 2.
  const auto phi = qcmi::test::bell("A", "E");
  const auto s = reorder(tensor(phi, basis_state(SubsystemLayout({"S"}, {2}), std::vector<std::size_t>{0})),
                         LabelSet{"A", "S", "E"});
  ExtensionConfig cfg;
  cfg.search.restarts = 4;
  const auto r = r_ex(s, {"A"}, {"E"}, {"S"}, cfg);
  EXPECT_NEAR(r.value, kLn2, 1e-6);
}

TEST(Rex, SwappingThroughMixedSystem) {
  // Phi_AE (x) I/2_S: an extension X' purifying S and a Bell measurement on
  // E X' swap the entanglement onto A S, so the measured CMI equals I(A:E|S).
  const auto phi_ae = qcmi::test::bell("A", "E");
  const auto phi_sx = qcmi::test::bell("S", "X'");
  const auto ext = reorder(tensor(phi_ae, phi_sx), LabelSet{"A", "S", "E", "X'"});
  const Povm m(bell_basis(), {"E", "X'"});
  EXPECT_NEAR(cmi(ext, {"A"}, {"E", "X'"}, {"S"}), 2 * kLn2, 1e-12);
  EXPECT_NEAR(r_conditional(ext, m, {"A"}, {"S"}), 0.0, 1e-10);

  const auto s = reduce(ext, LabelSet{"A", "S", "E"});
  ExtensionConfig cfg;
  cfg.search.restarts = 4;
  const auto r = r_ex(s, {"A"}, {"E"}, {"S"}, cfg);
  EXPECT_NEAR(r.baseline, kLn2, 1e-6);
  EXPECT_LT(r.value, 1e-6);
}

TEST(Ea, ProductAndBell) {
  ExtensionConfig cfg;
  cfg.search.restarts = 4;
  auto rng = make_rng(54);
  const auto prod = tensor(random_density(SubsystemLayout({"A"}, {2}), rng), random_density(SubsystemLayout({"B"}, {2}), rng));
  EXPECT_LT(e_a(prod, {"A"}, {"B"}, cfg).value, 1e-7);
  // A pure state admits only product extensions, so E_a is its discord.
  EXPECT_NEAR(e_a(qcmi::test::bell(), {"A"}, {"B"}, cfg).value, kLn2, 1e-6);
}

TEST(GeneralizedKw, TrivialExtensionOnExample) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  const auto s = paper_example(0.5);
  const auto rec = generalized_kw_check(s, {"A"}, {"E1"}, {"S"}, cfg, {"E2"});
  EXPECT_LT(rec.residual, 1e-8);
  EXPECT_GE(rec.r, -1e-10);
}
