#include "qcmi/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcmi/channels.hpp"
#include "qcmi/discord.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/extension.hpp"
#include "qcmi/info.hpp"
#include "suite_support.hpp"

namespace qcmi {

using detail::num;
using detail::Worst;

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

std::vector<SuiteCheck> SuiteReport::failures() const {
  std::vector<SuiteCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const SuiteCheck& c) { return !c.passed; });
  return out;
}

SuiteCheck check_le(std::string name, double measured, double tolerance, std::string detail) {
  return {std::move(name), std::isfinite(measured) && measured <= tolerance, measured, tolerance, std::move(detail)};
}

SuiteCheck check_ge(std::string name, double measured, double tolerance, std::string detail) {
  return {std::move(name), std::isfinite(measured) && measured >= tolerance, measured, tolerance, std::move(detail)};
}

namespace {

const double kLn2 = std::numbers::ln2;

LabeledState weighted_sum(const std::vector<LabeledState>& parts, const std::vector<double>& weights) {
  Matrix m(parts.front().dim(), parts.front().dim());
  for (std::size_t i = 0; i < parts.size(); ++i) m += parts[i].matrix() * Complex(weights[i]);
  return LabeledState(parts.front().layout(), m);
}

LabeledState basis(const Label& label, std::size_t d, std::size_t i) {
  const std::size_t idx[] = {i};
  return basis_state(SubsystemLayout({label}, {d}), idx);
}

/// sum_i p_i |i><i|_A (x) rho_i^{SE}.
LabeledState classical_on_a(std::size_t da, const SubsystemLayout& se, Rng& rng) {
  const auto p = detail::dirichlet(da, rng);
  std::vector<LabeledState> parts;
  for (std::size_t i = 0; i < da; ++i) parts.push_back(tensor(basis("A", da, i), random_density(se, rng)));
  return weighted_sum(parts, p);
}

/// sum_i p_i rho_i^{AS} (x) |i><i|_E.
LabeledState classical_on_e(std::size_t de, Rng& rng) {
  const auto p = detail::dirichlet(de, rng);
  std::vector<LabeledState> parts;
  for (std::size_t i = 0; i < de; ++i)
    parts.push_back(tensor(random_density(SubsystemLayout({"A", "S"}, {2, 2}), rng), basis("E", de, i)));
  return weighted_sum(parts, p);
}

LabeledState pure_from(const SubsystemLayout& layout, const std::vector<std::pair<std::size_t, double>>& amplitudes) {
  Matrix v(layout.total_dim(), 1);
  for (auto [index, amp] : amplitudes) v(index, 0) = amp;
  return LabeledState(layout, Matrix::projector(v));
}

OptimizerConfig seeded(const SuiteOptions& opts, std::uint64_t offset) {
  OptimizerConfig cfg = opts.optimizer;
  cfg.seed = substream_seed(opts.seed, offset);
  return cfg;
}

Scenario scenario_with_env(const LabeledState& env, Rng& rng) {
  const std::size_t d = 2 * env.dim();
  Matrix g = ginibre(d, d, rng);
  return {random_pure(SubsystemLayout({"A", "S"}, {2, 2}), rng), env, spectral_family((g + g.adjoint()) * Complex(0.5)),
          "random"};
}

}  // namespace

SuiteReport example_suite(const SuiteOptions&) {
  SuiteReport rep{"example", {}};
  const LabelSet a{"A"}, s{"S"}, e1{"E1"}, e12{"E1", "E2"};

  const LabeledState full = paper_example(1.0);
  const double i_full = cmi(full, a, e12, s), i_e1 = cmi(full, a, e1, s);
  rep.checks.push_back(check_le("I(A:E1E2|S) = ln 2 at u = 1", std::abs(i_full - kLn2), 1e-6, "value " + num(i_full)));
  rep.checks.push_back(check_le("I(A:E1|S) = 0 at u = 1", std::abs(i_e1), 1e-9, "value " + num(i_e1)));

  const double closed =
      0.25 * (std::sqrt(5.0) * std::log(2.0 / (3.0 - std::sqrt(5.0))) - 3.0 * std::log(3.0) + 2.0 * std::log(2.0));
  const double half = cmi(paper_example(0.5), a, e1, s);
  rep.checks.push_back(check_le("I(A:E1|S) at u = 1/2 matches the closed form", std::abs(half - closed), 1e-6,
                                "value " + num(half) + ", closed form " + num(closed)));
  rep.checks.push_back(check_le("closed form rounds to 0.061", std::abs(closed - 0.061), 5e-4, "closed form " + num(closed)));
  return rep;
}

SuiteReport example_discord_suite(const SuiteOptions& opts) {
  SuiteReport rep{"example_discord", {}};
  const LabelSet a{"A"}, s{"S"}, e1{"E1"}, e12{"E1", "E2"};
  const LabeledState full = paper_example(1.0);

  OptimizerConfig cfg = seeded(opts, 0x100);
  cfg.restarts = 32;
  const QuantumPart r_full = big_r(full, a, e12, s, cfg);
  rep.checks.push_back(check_le("R(A;E1E2|S) = ln 2 at u = 1", std::abs(r_full.value - kLn2), 1e-4,
                                "R " + num(r_full.value) + ", I " + num(r_full.cmi) + ", C " + num(r_full.classical.value)));
  Worst worst;
  for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) worst.see(big_r(paper_example(u), a, e1, s, cfg).value, "u = " + num(u));
  rep.checks.push_back(check_le("R(A;E1|S) vanishes on the u grid", worst.or_zero(), 1e-4, worst.detail()));
  return rep;
}

SuiteReport identity_suite(const SuiteOptions& opts) {
  SuiteReport rep{"identity", {}};
  const std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};
  Worst decomposition, capacity, spread, bound;
  const std::size_t n = detail::trials_or(opts, 200);
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x1000 + t);
    const std::vector<std::size_t> env = t % 2 == 0 ? std::vector<std::size_t>{2} : std::vector<std::size_t>{2, 3};
    const TrajectoryReport tr = trajectory(random_scenario(env, rng), times);
    const std::string at = "trial " + std::to_string(t);
    decomposition.see(*std::max_element(tr.decomposition_residuals.begin(), tr.decomposition_residuals.end()), at);
    capacity.see(*std::max_element(tr.capacity_residuals.begin(), tr.capacity_residuals.end()), at);
    spread.see(tr.i_a_se_spread(), at);
    bound.see(-*std::min_element(tr.bound_slack.begin(), tr.bound_slack.end()), at);
  }
  const std::string trials = std::to_string(n) + " trajectories; ";
  rep.checks.push_back(check_le("decomposition residual", decomposition.or_zero(), 1e-10, trials + decomposition.detail()));
  rep.checks.push_back(check_le("capacity residual", capacity.or_zero(), 1e-9, trials + capacity.detail()));
  rep.checks.push_back(check_le("I(A:SE) constant along trajectories", spread.or_zero(), 1e-9, trials + spread.detail()));
  rep.checks.push_back(check_le("backflow bounded by the stored CMI", std::max(0.0, bound.or_zero()), 1e-9,
                                trials + "largest deficit " + num(bound.or_zero())));
  return rep;
}

SuiteReport property_suite(const SuiteOptions& opts) {
  SuiteReport rep{"property", {}};
  const std::size_t n = detail::trials_or(opts, 100);
  const LabelSet a{"A"}, s{"S"}, e{"E"}, e12{"E1", "E2"};

  Worst channel_gain, locc_gain, ias_change;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x2000 + t);
    const LabeledState st = evolve(random_scenario({2, 2}, rng), detail::uniform(rng, 0.0, 3.0));
    const double before = cmi(st, a, e12, s), ias = mutual_information(st, a, s);
    const std::string at = "trial " + std::to_string(t);

    const LabeledState after = apply_channel(st, random_channel(4, 1 + t % 4, e12, rng));
    channel_gain.see(cmi(after, a, e12, s) - before, at);
    ias_change.see(std::abs(mutual_information(after, a, s) - ias), at);

    const KrausChannel first = random_channel(2, 2, {"E1"}, rng);
    std::vector<Matrix> ops;
    for (const auto& k : first.ops()) {
      const KrausChannel second = random_channel(2, 2, {"E2"}, rng);
      for (const auto& l : second.ops()) ops.push_back(kron(k, l));
    }
    const LabeledState locc = apply_channel(st, KrausChannel(std::move(ops), e12));
    locc_gain.see(cmi(locc, a, e12, s) - before, at);
    ias_change.see(std::abs(mutual_information(locc, a, s) - ias), at);
  }
  rep.checks.push_back(check_le("channels on E never increase I(A:E|S)", channel_gain.or_zero(), 1e-8, channel_gain.detail()));
  rep.checks.push_back(check_le("one-way LOCC E1 -> E2 never increases I(A:E|S)", locc_gain.or_zero(), 1e-8, locc_gain.detail()));
  rep.checks.push_back(check_le("operations on E leave I(A:S) unchanged", ias_change.or_zero(), 1e-9, ias_change.detail()));

  // A classically correlated state whose S register is replaced by a fixed state.
  auto replace_s = [](const LabeledState& st, std::size_t d, const HermitianSpectrum& target) {
    std::vector<Matrix> ops;
    for (std::size_t a_ = 0; a_ < d; ++a_) {
      const double mu = std::max(0.0, target.eigenvalues[a_]);
      for (std::size_t j = 0; j < d; ++j) {
        Matrix k(d, d);
        for (std::size_t r = 0; r < d; ++r) k(r, j) = std::sqrt(mu) * target.eigenvectors(r, a_);
        ops.push_back(std::move(k));
      }
    }
    return apply_channel(st, KrausChannel(std::move(ops), {"S"}));
  };
  auto copies = [](std::span<const double> p, std::size_t d) {
    std::vector<std::vector<std::size_t>> assign;
    for (std::size_t i = 0; i < d; ++i) assign.push_back({i, i, i});
    return classical_state(p, assign, SubsystemLayout({"A", "S", "E"}, {d, d, d}));
  };
  {
    const double half[] = {0.5, 0.5};
    const LabeledState fixture = copies(half, 2);
    const std::size_t zero[] = {0};
    const LabeledState after =
        replace_s(fixture, 2, hermitian_eig(basis_state(SubsystemLayout({"S"}, {2}), zero).matrix()));
    const double b = cmi(fixture, a, e, s), f = cmi(after, a, e, s);
    rep.checks.push_back(check_le("local operation on S: fixture starts at 0", std::abs(b), 1e-9, "value " + num(b)));
    rep.checks.push_back(check_le("local operation on S: fixture ends at ln 2", std::abs(f - kLn2), 1e-9, "value " + num(f)));
  }
  Worst start, end;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x2800 + t);
    const std::size_t d = 2 + t % 2;
    const auto p = detail::dirichlet(d, rng);
    const LabeledState fixture = copies(p, d);
    const LabeledState after = replace_s(fixture, d, hermitian_eig(random_density(SubsystemLayout({"S"}, {d}), rng).matrix()));
    double h = 0.0;
    for (double v : p) h -= v > 0.0 ? v * std::log(v) : 0.0;
    const std::string at = "trial " + std::to_string(t);
    start.see(std::abs(cmi(fixture, a, e, s)), at);
    end.see(std::abs(cmi(after, a, e, s) - h), at);
  }
  rep.checks.push_back(check_le("local operation on S: random fixtures start at 0", start.or_zero(), 1e-9, start.detail()));
  rep.checks.push_back(check_le("local operation on S: random fixtures end at H(P)", end.or_zero(), 1e-9, end.detail()));

  Worst dilated, channel_ext, extender_ext;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x3000 + t);
    const std::string at = "trial " + std::to_string(t);
    const LabeledState initial = tensor(random_pure(SubsystemLayout({"A", "S"}, {2, 2}), rng),
                                        random_density(SubsystemLayout({"E", "X"}, {2, 2}), rng));
    const LabeledState st = apply_local_unitary(initial, random_unitary(4, rng), {"S", "E"});
    const double base = cmi(st, a, e, s);
    dilated.see(cmi(st, a, {"E", "X"}, s) - base, at);
    const KrausChannel on_x = random_channel(2, 1 + t % 3, {"X"}, rng);
    const LabeledState ext = apply_channel(st, KrausChannel(on_x.ops(), {"X"}, {"X'"}, {2}));
    channel_ext.see(cmi(ext, a, {"E", "X'"}, s) - base, at);

    const LabeledState setting = evolve(random_scenario({2}, rng), detail::uniform(rng, 0.0, 3.0));
    const Extender extender(setting, 2 + t % 2);
    std::vector<double> params(extender.parametrization().parameter_count());
    for (auto& x : params) x = detail::uniform(rng, 0.0, 2.0 * std::numbers::pi);
    extender_ext.see(cmi(extender.extend(params), a, {"E", "X'"}, s) - cmi(setting, a, e, s), at);
  }
  rep.checks.push_back(check_le("extension by the dilating register X never increases I(A:E|S)", dilated.or_zero(), 1e-8,
                                dilated.detail()));
  rep.checks.push_back(check_le("extension X -> X' by a channel never increases I(A:E|S)", channel_ext.or_zero(), 1e-8,
                                channel_ext.detail()));
  rep.checks.push_back(check_le("random extensions of setting states never increase I(A:E|S)", extender_ext.or_zero(), 1e-8,
                                extender_ext.detail()));

  Worst flow_ext, flow_as;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x4000 + t);
    const std::string at = "trial " + std::to_string(t);
    const LabeledState initial = tensor(random_pure(SubsystemLayout({"A", "S"}, {2, 2}), rng),
                                        random_density(SubsystemLayout({"E", "X"}, {2, 2}), rng));
    Matrix g = ginibre(4, 4, rng);
    const UnitaryFamily family = spectral_family((g + g.adjoint()) * Complex(0.5));
    const KrausChannel on_x = random_channel(2, 2, {"X"}, rng);
    const KrausChannel to_ext(on_x.ops(), {"X"}, {"X'"}, {2});
    double t1 = detail::uniform(rng, 0.0, 2.0), t2 = detail::uniform(rng, 0.0, 2.0);
    if (t2 < t1) std::swap(t1, t2);
    auto at_time = [&](double time) { return apply_channel(apply_local_unitary(initial, family(time), {"S", "E"}), to_ext); };
    const LabeledState r1 = at_time(t1), r2 = at_time(t2);
    const double d_ext = cmi(r2, a, {"E", "X'"}, s) - cmi(r1, a, {"E", "X'"}, s);
    const double d_e = cmi(r2, a, e, s) - cmi(r1, a, e, s);
    const double d_as = mutual_information(r2, a, s) - mutual_information(r1, a, s);
    flow_ext.see(std::abs(d_ext - d_e), at);
    flow_as.see(std::abs(d_e + d_as), at);
  }
  rep.checks.push_back(check_le("CMI flow unchanged by the extension", flow_ext.or_zero(), 1e-9, flow_ext.detail()));
  rep.checks.push_back(check_le("CMI flow equals minus the I(A:S) flow", flow_as.or_zero(), 1e-9, flow_as.detail()));
  return rep;
}

SuiteReport broadcast_suite(const SuiteOptions& opts) {
  SuiteReport rep{"broadcast", {}};
  const std::size_t n = detail::trials_or(opts, 20);
  const LabelSet a{"A"}, ap{"A'"}, s{"S"}, e{"E"}, ep{"E'"};

  Worst symmetric, preserved;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x5000 + t);
    const std::size_t da = 2, de = 2 + t % 2;
    LabeledState rho;
    if (t % 2 == 0) {
      std::vector<std::vector<std::size_t>> assign;
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          for (std::size_t k = 0; k < de; ++k) assign.push_back({i, j, k});
      rho = classical_state(detail::dirichlet(assign.size(), rng), assign, SubsystemLayout({"A", "S", "E"}, {da, 2, de}));
    } else {
      rho = classical_on_a(da, SubsystemLayout({"S", "E"}, {2, de}), rng);
    }
    const LabeledState sigma = apply_channel(rho, broadcast_channel(da, "A", "A'"));
    const std::string at = "trial " + std::to_string(t);
    symmetric.see(std::abs(cmi(sigma, a, e, s) - cmi(sigma, ap, e, s)), at);
    preserved.see(std::abs(cmi(sigma, ap, e, s) - cmi(rho, a, e, s)), at);
  }
  rep.checks.push_back(check_le("broadcast copies of a classical A agree", symmetric.or_zero(), 1e-9, symmetric.detail()));
  rep.checks.push_back(check_le("broadcast copy keeps the CMI of a classical A", preserved.or_zero(), 1e-9, preserved.detail()));

  const SubsystemLayout ase({"A", "S", "E"}, {2, 2, 2});
  const double theta = std::numbers::pi / 8.0;
  const std::vector<std::pair<std::string, LabeledState>> entangled{
      {"worked example at u = 1", paper_example(1.0)},
      {"maximally entangled A-E", pure_from(ase, {{0, std::sqrt(0.5)}, {5, std::sqrt(0.5)}})},
      {"partially entangled A-E", pure_from(ase, {{0, std::cos(theta)}, {5, std::sin(theta)}})},
  };
  for (const auto& [name, rho] : entangled) {
    const LabelSet env = rho.layout().contains("E") ? e : LabelSet{"E1", "E2"};
    const LabeledState sigma = apply_channel(rho, broadcast_channel(2, "A", "A'"));
    const double before = cmi(rho, a, env, s), copy = cmi(sigma, ap, env, s);
    rep.checks.push_back(check_ge("broadcasting an entangled A loses CMI: " + name, std::abs(copy - before), 1e-3,
                                  "I(A:E|S) " + num(before) + " before, I(A':E|S) " + num(copy) + " after"));
  }

  Worst triple_a, triple_b, redundancy, coherent;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x5800 + t);
    const std::size_t de = 2 + t % 2;
    const LabeledState rho = classical_on_e(de, rng);
    const LabeledState sigma = apply_channel(rho, broadcast_channel(de, "E", "E'"));
    const std::string at = "trial " + std::to_string(t);
    const double both = cmi(sigma, a, {"E", "E'"}, s), copy = cmi(sigma, a, ep, s), orig = cmi(rho, a, e, s);
    triple_a.see(std::abs(both - copy), at);
    triple_b.see(std::abs(copy - orig), at);
    redundancy.see(cmi(sigma, a, ep, {"S", "E"}), at);

    std::vector<Matrix> projectors;
    for (std::size_t i = 0; i < de; ++i) {
      Matrix p(de, de);
      p(i, i) = 1.0;
      projectors.push_back(std::move(p));
    }
    const Matrix v = stinespring_isometry(KrausChannel(std::move(projectors), e));
    coherent.see(cmi(apply_operator(rho, v, e, {"E", "E'"}, {de, de}), a, ep, {"S", "E"}), at);
  }
  rep.checks.push_back(check_le("classical E broadcast: I(A:EE'|S) = I(A:E'|S)", triple_a.or_zero(), 1e-9, triple_a.detail()));
  rep.checks.push_back(check_le("classical E broadcast: I(A:E'|S) = I(A:E|S) before", triple_b.or_zero(), 1e-9, triple_b.detail()));
  rep.checks.push_back(check_le("broadcast copy is redundant", std::max(0.0, redundancy.or_zero()), 1e-8, redundancy.detail()));
  rep.checks.push_back(check_le("coherent measurement record is redundant", std::max(0.0, coherent.or_zero()), 1e-8,
                                coherent.detail()));

  Worst naimark, stats;
  std::size_t non_projective = 0;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x6000 + t);
    const std::size_t de = 2 + t % 2;
    const LabeledState rho = evolve(random_scenario({de}, rng), detail::uniform(rng, 0.0, 3.0));
    const Povm povm = random_povm(de, de + 1 + t % 2, e, rng);
    const NaimarkExtension nx = naimark_extend(povm, "E'");
    const LabeledState eta = nx.embed(rho);
    const std::string at = "trial " + std::to_string(t);
    naimark.see(std::abs(cmi(eta, a, {"E", "E'"}, s) - cmi(rho, a, e, s)), at);
    const auto p = povm.probabilities(rho), q = nx.pvm().probabilities(eta);
    for (std::size_t i = 0; i < p.size(); ++i) stats.see(std::abs(p[i] - q[i]), at);
    if (!nx.pvm().is_projective()) ++non_projective;
  }
  rep.checks.push_back(check_le("Naimark dilation keeps I(A:E|S)", naimark.or_zero(), 1e-9, naimark.detail()));
  rep.checks.push_back(check_le("Naimark dilation keeps the statistics", stats.or_zero(), 1e-10, stats.detail()));
  rep.checks.push_back(check_le("Naimark measurements are projective", static_cast<double>(non_projective), 0.0,
                                std::to_string(non_projective) + " non-projective of " + std::to_string(n)));
  return rep;
}

SuiteReport recovery_suite(const SuiteOptions& opts) {
  SuiteReport rep{"recovery", {}};
  const std::size_t n = detail::trials_or(opts, 50);
  const LabelSet a{"A"}, s{"S"}, e{"E"};
  Worst frob, invariance, identity;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x7000 + t);
    const std::size_t de = 2 + t % 2, k = 2 + (t / 2) % 2;
    const LabeledState rho = evolve(random_scenario({de}, rng), detail::uniform(rng, 0.0, 3.0));
    const KrausChannel ch = random_channel(de, k, e, rng);
    const LabeledState eta = composite_extend(rho, ch);
    const LabeledState back = reorder(recover(eta, ch), rho.labels());
    const std::string at = "trial " + std::to_string(t);
    frob.see(frobenius_distance(back.matrix(), rho.matrix()), at);
    invariance.see(std::abs(cmi(eta, a, {"E", "E'", "E''"}, s) - cmi(rho, a, e, s)), at);

    std::vector<Matrix> effects;
    for (const auto& op : ch.ops()) effects.push_back(op.adjoint() * op);
    const double r = r_conditional(rho, Povm(std::move(effects), e), a, s);
    identity.see(std::abs(cmi(eta, a, {"E", "E''"}, {"S", "E'"}) - r), at);
  }
  rep.checks.push_back(check_le("recovery restores the state", frob.or_zero(), 1e-9, frob.detail()));
  rep.checks.push_back(check_le("composite extension keeps I(A:E|S)", invariance.or_zero(), 1e-9, invariance.detail()));
  rep.checks.push_back(check_le("I(A:EE''|SE') equals r at the channel's POVM", identity.or_zero(), 1e-9, identity.detail()));
  return rep;
}

SuiteReport koashi_winter_suite(const SuiteOptions& opts) {
  SuiteReport rep{"koashi_winter", {}};
  const std::size_t n = detail::trials_or(opts, 20);
  const SubsystemLayout abc({"A", "B", "C"}, {2, 2, 2});

  Worst kw;
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x8000 + t);
    kw.see(koashi_winter_check(random_pure(abc, rng), "A", "B", {"C"}, seeded(opts, 0x8000 + t)).residual,
           "trial " + std::to_string(t));
  }
  rep.checks.push_back(check_le("Koashi-Winter on random pure states", kw.or_zero(), 2e-3, kw.detail()));
  const std::vector<std::pair<std::string, LabeledState>> fixtures{
      {"Bell pair with a product third party", pure_from(abc, {{0, std::sqrt(0.5)}, {6, std::sqrt(0.5)}})},
      {"GHZ", pure_from(abc, {{0, std::sqrt(0.5)}, {7, std::sqrt(0.5)}})},
  };
  for (const auto& [name, phi] : fixtures) {
    const auto rec = koashi_winter_check(phi, "A", "B", {"C"}, seeded(opts, 0x8100));
    rep.checks.push_back(check_le("Koashi-Winter: " + name, rec.residual, 2e-3,
                                  "E_f " + num(rec.e_f) + ", C " + num(rec.classical) + ", S(A) " + num(rec.s_a)));
  }
  return rep;
}

SuiteReport generalized_monogamy_suite(const SuiteOptions& opts) {
  SuiteReport rep{"generalized_monogamy", {}};
  const LabelSet a{"A"}, s{"S"};
  Worst whole, split, matched;
  for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const LabeledState st = paper_example(u);
    const std::string at = "u = " + num(u);
    const auto full = generalized_kw_check(st, a, {"E1", "E2"}, s, seeded(opts, 0x8200));
    whole.see(full.residual, at);
    const auto part = generalized_kw_check(st, a, {"E1"}, s, seeded(opts, 0x8300), {"E2"});
    split.see(part.residual, at);
    matched.see(std::abs(part.w_search - part.classical), at);
  }
  rep.checks.push_back(check_le("generalized trade-off on the worked example", whole.or_zero(), 3e-3, whole.detail()));
  rep.checks.push_back(check_le("generalized trade-off split over E1 and E2", split.or_zero(), 3e-3, split.detail()));

  Worst setting_residual;
  for (std::size_t t = 0; t < 4; ++t) {
    Rng rng = make_rng(opts.seed, 0x8400 + t);
    const bool two = t == 3;
    const SubsystemLayout env = two ? SubsystemLayout({"E1", "E2"}, {2, 2}) : SubsystemLayout({"E"}, {2});
    const LabeledState st = evolve(scenario_with_env(random_density(env, rng, 2), rng), detail::uniform(rng, 0.0, 3.0));
    const auto rec = generalized_kw_check(st, a, env.labels(), s, seeded(opts, 0x8400 + t));
    const std::string at = "rank-2 fixture " + std::to_string(t);
    matched.see(std::abs(rec.w_search - rec.classical), at);
    setting_residual.see(rec.residual, at);
  }
  rep.checks.push_back(check_le("generalized trade-off on rank-2 setting states", setting_residual.or_zero(), 3e-3,
                                setting_residual.detail()));
  rep.checks.push_back(check_le("decomposition search matches the measurement search", matched.or_zero(), 2e-3,
                                matched.detail()));
  return rep;
}

SuiteReport discord_oracle_suite(const SuiteOptions& opts) {
  SuiteReport rep{"discord_oracle", {}};
  const std::size_t n = detail::trials_or(opts, 10), grid = 10000;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const SubsystemLayout layout({"A", "S", "E"}, {2, 2, 2});
  Worst gap;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    Rng rng = make_rng(opts.seed, 0x9000 + t);
    const LabeledState st = random_density(layout, rng);
    const ConditionalEvaluator ev(st, {"A"}, {"E"}, {"S"});
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid; ++k) {
      const double z = 1.0 - (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
      const double rho = std::sqrt(1.0 - z * z), phi = golden * static_cast<double>(k);
      const Complex off = std::polar(rho, -phi);
      Matrix up(2, 2), down(2, 2);
      up(0, 0) = 0.5 * (1.0 + z);
      up(1, 1) = 0.5 * (1.0 - z);
      up(0, 1) = 0.5 * off;
      up(1, 0) = 0.5 * std::conj(off);
      down = Matrix::identity(2) - up;
      const Matrix effects[] = {up, down};
      best = std::max(best, ev.j(effects));
    }
    const double opt = classical_cmi(st, {"A"}, {"E"}, {"S"}, seeded(opts, 0x9000 + t)).value;
    gap.see(std::abs(opt - best), "state " + std::to_string(t) + " (optimizer " + num(opt) + ", grid " + num(best) + ")");
    lowest = std::min(lowest, opt - best);
  }
  rep.checks.push_back(check_le("classical_cmi matches the projective grid", gap.or_zero(), 1e-4,
                                gap.detail() + "; smallest optimizer - grid " + num(lowest)));
  return rep;
}

}  // namespace qcmi
