#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/error.hpp"
#include "qcmi/info.hpp"
#include "qcmi/random.hpp"

using namespace qcmi;
using qcmi::test::bell;
using qcmi::test::kLn2;
using qcmi::test::shannon;

namespace {

// Shannon CMI of a joint distribution p[x][y][z], from the marginals.
double shannon_cmi(const std::vector<std::vector<std::vector<double>>>& p) {
  const std::size_t nx = p.size(), ny = p[0].size(), nz = p[0][0].size();
  std::vector<double> xz(nx * nz), yz(ny * nz), z(nz), xyz;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t k = 0; k < nz; ++k) {
        xz[x * nz + k] += p[x][y][k];
        yz[y * nz + k] += p[x][y][k];
        z[k] += p[x][y][k];
        xyz.push_back(p[x][y][k]);
      }
  return shannon(xz) + shannon(yz) - shannon(z) - shannon(xyz);
}

}  // namespace

TEST(Layout, LookupAndComplement) {
  const SubsystemLayout l({"A", "S", "E"}, {2, 3, 4});
  EXPECT_EQ(l.total_dim(), 24u);
  EXPECT_EQ(l.index_of("E"), 2u);
  const LabelSet as{"A", "S"};
  EXPECT_EQ(l.dim_of(as), 6u);
  EXPECT_EQ(l.complement(as), LabelSet{"E"});
  EXPECT_THROW(l.index_of("Q"), Error);
  EXPECT_THROW(SubsystemLayout({"A", "A"}, {2, 2}), Error);
}

TEST(State, RequireValidRejectsNegativeAndTrace) {
  const SubsystemLayout l({"A"}, {2});
  const std::vector<double> neg{1.2, -0.2}, big{0.6, 0.6};
  EXPECT_THROW(require_valid(LabeledState(l, Matrix::diagonal(neg))), Error);
  EXPECT_THROW(require_valid(LabeledState(l, Matrix::diagonal(big))), Error);
  EXPECT_NO_THROW(require_valid(maximally_mixed(l)));
}

TEST(State, ReduceAndReorder) {
  auto rng = make_rng(20);
  const auto a = random_density(SubsystemLayout({"A"}, {2}), rng);
  const auto b = random_density(SubsystemLayout({"B"}, {3}), rng);
  const auto ab = tensor(a, b);
  const LabelSet keep_b{"B"}, order{"B", "A"};
  EXPECT_LT(frobenius_distance(reduce(ab, keep_b).matrix(), b.matrix()), 1e-13);
  EXPECT_LT(frobenius_distance(reorder(ab, order).matrix(), tensor(b, a).matrix()), 1e-13);
  EXPECT_EQ(relabel(ab, "B", "E").labels(), (LabelSet{"A", "E"}));
}

TEST(Entropy, BellPairAndMixed) {
  const auto s = bell();
  EXPECT_NEAR(vn_entropy(s).value, 0.0, 1e-12);
  const LabelSet a{"A"}, b{"B"};
  EXPECT_NEAR(marginal_entropy(s, a), kLn2, 1e-12);
  EXPECT_NEAR(mutual_information(s, a, b), 2 * kLn2, 1e-12);
  EXPECT_NEAR(vn_entropy(maximally_mixed(SubsystemLayout({"X"}, {5}))).value, std::log(5.0), 1e-12);
}

TEST(Entropy, DiagonalIsShannon) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(entropy_of_matrix(Matrix::diagonal(p)), shannon(p), 1e-13);
}

TEST(Entropy, RejectsInvalidState) {
  const std::vector<double> neg{1.1, -0.1};
  EXPECT_THROW(vn_entropy(LabeledState(SubsystemLayout({"A"}, {2}), Matrix::diagonal(neg))), Error);
}

TEST(RelativeEntropy, DiagonalIsKullbackLeibler) {
  const SubsystemLayout l({"A"}, {3});
  const std::vector<double> p{0.5, 0.3, 0.2}, q{0.2, 0.2, 0.6};
  double kl = 0.0;
  for (int i = 0; i < 3; ++i) kl += p[i] * std::log(p[i] / q[i]);
  EXPECT_NEAR(relative_entropy(LabeledState(l, Matrix::diagonal(p)), LabeledState(l, Matrix::diagonal(q))), kl, 1e-12);
}

TEST(RelativeEntropy, InfiniteOutsideSupport) {
  const SubsystemLayout l({"A"}, {2});
  const std::vector<double> p{0.5, 0.5}, q{1.0, 0.0};
  EXPECT_EQ(relative_entropy(LabeledState(l, Matrix::diagonal(p)), LabeledState(l, Matrix::diagonal(q))),
            std::numeric_limits<double>::infinity());
}

TEST(Cmi, ClassicalStateMatchesShannon) {
  auto rng = make_rng(21);
  std::gamma_distribution<double> g(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<std::vector<double>>> p(2, std::vector<std::vector<double>>(3, std::vector<double>(2)));
    std::vector<double> probs;
    std::vector<std::vector<std::size_t>> assign;
    double total = 0.0;
    for (auto& px : p)
      for (auto& py : px)
        for (auto& v : py) total += (v = g(rng));
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t z = 0; z < 2; ++z) {
          p[x][y][z] /= total;
          probs.push_back(p[x][y][z]);
          assign.push_back({x, y, z});
        }
    const auto s = classical_state(probs, assign, SubsystemLayout({"X", "Y", "Z"}, {2, 3, 2}));
    EXPECT_NEAR(cmi(s, {"X"}, {"Y"}, {"Z"}), shannon_cmi(p), 1e-12);
  }
}

TEST(Cmi, StrongSubadditivityOnRandomStates) {
  auto rng = make_rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_density(SubsystemLayout({"X", "Y", "Z"}, {2, 2, 3}), rng, 1 + trial % 12);
    EXPECT_GE(cmi(s, {"X"}, {"Y"}, {"Z"}), -1e-10);
  }
}

TEST(Cmi, ChainRule) {
  auto rng = make_rng(23);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 3}), rng);
  const auto d = decomposition_identity(s);
  EXPECT_LT(d.residual, 1e-12);
  EXPECT_NEAR(d.i_a_se, mutual_information(s, {"A"}, {"S", "E"}), 1e-12);
}

TEST(Cmi, CapacityIdentityForSettingStates) {
  auto rng = make_rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const Scenario sc = random_scenario({2, 3}, rng);
    EXPECT_LT(capacity_identity(evolve(sc, 0.37 * (trial + 1))).residual, 1e-10);
  }
}

TEST(Cmi, CapacityIdentityIsNotGenericallyExact) {
  auto rng = make_rng(25);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
  EXPECT_GT(capacity_identity(s).residual, 1e-3);
}

TEST(Example, ExactValuesAtFullMixing) {
  const auto s = paper_example(1.0);
  EXPECT_NEAR(cmi(s, {"A"}, {"E1", "E2"}, {"S"}), kLn2, 1e-10);
  EXPECT_NEAR(cmi(s, {"A"}, {"E1"}, {"S"}), 0.0, 1e-10);
  const auto s0 = paper_example(0.0);
  EXPECT_NEAR(cmi(s0, {"A"}, {"E1", "E2"}, {"S"}), 0.0, 1e-10);
  EXPECT_NEAR(mutual_information(s0, {"A"}, {"S"}), 2 * kLn2, 1e-10);
}

TEST(Example, MatchesIndependentEvaluation) {
  // Reference values from a separate dense numpy evaluation of the state.
  struct Row {
    double u, i_e1, i_e12, i_as;
  };
  for (const Row& r : {Row{0.3, 0.07079466482492192, 0.42270908780599104, 0.9635852733138996},
                       Row{0.5, 0.060625549983895355, 0.5623351446188081, 0.8239592165010823},
                       Row{0.8, 0.02144277953223217, 0.6730116670092566, 0.713282694110634}}) {
    const auto s = paper_example(r.u);
    EXPECT_NEAR(cmi(s, {"A"}, {"E1"}, {"S"}), r.i_e1, 1e-10) << "u = " << r.u;
    EXPECT_NEAR(cmi(s, {"A"}, {"E1", "E2"}, {"S"}), r.i_e12, 1e-10) << "u = " << r.u;
    EXPECT_NEAR(mutual_information(s, {"A"}, {"S"}), r.i_as, 1e-10) << "u = " << r.u;
  }
}

TEST(Example, ClosedFormAtHalf) {
  const double r5 = std::sqrt(5.0);
  const double closed = 0.25 * (r5 * std::log(2.0 / (3.0 - r5)) - 3.0 * std::log(3.0) + 2.0 * std::log(2.0));
  EXPECT_NEAR(cmi(paper_example(0.5), {"A"}, {"E1"}, {"S"}), closed, 1e-10);
}

TEST(Example, RejectsOutOfRange) {
  EXPECT_THROW(paper_example(1.5), Error);
  EXPECT_THROW(paper_example(-0.1), Error);
}
