#include <cmath>
#include <map>
#include <numbers>

#include "qcmi/channels.hpp"
#include "qcmi/extension.hpp"
#include "qcmi/info.hpp"
#include "qcmi/suites.hpp"
#include "suite_support.hpp"

namespace qcmi {

using detail::num;
using detail::Worst;

namespace {

struct Case {
  std::string name;
  LabeledState state;
  LabelSet x, y, z;
};

struct Solved {
  Case c;
  ExtensionResult result;
  ExtensionWitness witness;
};

/// Operator on the layout that acts as op on `target` (mapping it to
/// out_labels with out_dims, placed where the first target was) and as the
/// identity elsewhere. Returns the output layout alongside.
std::pair<Matrix, SubsystemLayout> lift(const Matrix& op, const SubsystemLayout& layout, const LabelSet& target,
                                        const LabelSet& out_labels, const std::vector<std::size_t>& out_dims) {
  const auto idx = layout.indices_of(target);
  const std::size_t first = *std::min_element(idx.begin(), idx.end());
  LabelSet labels;
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    if (k == first) {
      labels.insert(labels.end(), out_labels.begin(), out_labels.end());
      dims.insert(dims.end(), out_dims.begin(), out_dims.end());
    }
    if (std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
    labels.push_back(layout.labels()[k]);
    dims.push_back(layout.dims()[k]);
  }
  const SubsystemLayout out_layout(labels, dims);
  const auto out_idx = out_layout.indices_of(out_labels);

  auto digits = [](std::size_t i, const std::vector<std::size_t>& d) {
    std::vector<std::size_t> out(d.size());
    for (std::size_t k = d.size(); k-- > 0;) {
      out[k] = i % d[k];
      i /= d[k];
    }
    return out;
  };
  auto sub_index = [](const std::vector<std::size_t>& dig, const std::vector<std::size_t>& where,
                      const std::vector<std::size_t>& d) {
    std::size_t i = 0;
    for (auto w : where) i = i * d[w] + dig[w];
    return i;
  };

  Matrix m(out_layout.total_dim(), layout.total_dim());
  for (std::size_t c = 0; c < layout.total_dim(); ++c) {
    const auto in_dig = digits(c, layout.dims());
    const std::size_t t_in = sub_index(in_dig, idx, layout.dims());
    std::vector<std::size_t> out_dig(out_layout.size());
    for (std::size_t k = 0; k < out_layout.size(); ++k) {
      if (std::find(out_idx.begin(), out_idx.end(), k) != out_idx.end()) continue;
      out_dig[k] = in_dig[layout.index_of(out_layout.labels()[k])];
    }
    for (std::size_t t_out = 0; t_out < op.rows(); ++t_out) {
      const Complex v = op(t_out, t_in);
      if (v == Complex(0.0)) continue;
      std::size_t rem = t_out;
      for (std::size_t k = out_idx.size(); k-- > 0;) {
        out_dig[out_idx[k]] = rem % out_dims[k];
        rem /= out_dims[k];
      }
      std::size_t r = 0;
      for (std::size_t k = 0; k < out_layout.size(); ++k) r = r * out_layout.dims()[k] + out_dig[k];
      m(r, c) = v;
    }
  }
  return {m, out_layout};
}

SubsystemLayout measured_layout(const ExtensionWitness& w) {
  std::vector<std::size_t> dims;
  for (const auto& l : w.measured) dims.push_back(w.state.layout().dim_of(l));
  return SubsystemLayout(w.measured, dims);
}

/// Effects conjugated by an operator on part of the measured registers. A
/// non-unitary (isometric or co-isometric) op leaves I - sum to the first effect.
ExtensionWitness transform_measurement(ExtensionWitness w, const Matrix& op, const LabelSet& target,
                                       const LabelSet& out_labels, const std::vector<std::size_t>& out_dims) {
  const auto [lifted, layout] = lift(op, measured_layout(w), target, out_labels, out_dims);
  Matrix total(layout.total_dim(), layout.total_dim());
  for (auto& m : w.effects) {
    m = lifted * m * lifted.adjoint();
    total += m;
  }
  w.effects.front() += Matrix::identity(layout.total_dim()) - total;
  w.measured = layout.labels();
  return w;
}

double evaluate(const ExtensionWitness& w, const Case& c) {
  return r_conditional(w.state, Povm(w.effects, w.measured), c.x, c.z);
}

bool on_measured_side(const ExtensionWitness& w, const Label& l) {
  return std::find(w.measured.begin(), w.measured.end(), l) != w.measured.end();
}

ExtensionWitness unitary_transport(ExtensionWitness w, const Matrix& u, const LabelSet& target) {
  w.state = apply_local_unitary(w.state, u, target);
  if (on_measured_side(w, target.front())) {
    std::vector<std::size_t> dims;
    for (const auto& l : target) dims.push_back(w.state.layout().dim_of(l));
    w = transform_measurement(std::move(w), u, target, target, dims);
  }
  return w;
}

ExtensionWitness attach_transport(ExtensionWitness w, const LabeledState& ancilla, bool measured) {
  const Label& l = ancilla.labels().front();
  w.state = tensor(w.state, ancilla);
  if (measured) {
    const std::size_t d = ancilla.dim();
    for (auto& m : w.effects) m = kron(m, Matrix::identity(d));
    w.measured.push_back(l);
  }
  return w;
}

/// Drops an ancilla that is in the pure state `ancilla`; a measured ancilla
/// is projected onto it.
ExtensionWitness detach_transport(ExtensionWitness w, const LabeledState& ancilla) {
  const Label& l = ancilla.labels().front();
  if (on_measured_side(w, l)) {
    const HermitianSpectrum spec = hermitian_eig(ancilla.matrix());
    Matrix bra(1, ancilla.dim());
    for (std::size_t i = 0; i < ancilla.dim(); ++i) bra(0, i) = std::conj(spec.eigenvectors(i, ancilla.dim() - 1));
    w = transform_measurement(std::move(w), bra, {l}, {}, {});
  }
  w.state = reduce(w.state, w.state.layout().complement(LabelSet{l}));
  return w;
}

/// Stinespring dilation of a channel on E: the environment register joins
/// the extension and the measurement is conjugated by the isometry.
ExtensionWitness channel_on_measured(ExtensionWitness w, const KrausChannel& ch, const Label& record) {
  const Label& e = ch.target().front();
  const std::size_t d = w.state.layout().dim_of(e), k = ch.ops().size();
  const Matrix v = stinespring_isometry(ch);
  w.state = apply_operator(w.state, v, {e}, {e, record}, {d, k});
  return transform_measurement(std::move(w), v, {e}, {e, record}, {d, k});
}

ExtensionWitness pad_extension(ExtensionWitness w, const Label& ext, std::size_t m) {
  const std::size_t d = w.state.layout().dim_of(ext);
  if (d == m) return w;
  Matrix p(m, d);
  for (std::size_t i = 0; i < d; ++i) p(i, i) = 1.0;
  w.state = apply_operator(w.state, p, {ext}, {ext}, {m});
  return transform_measurement(std::move(w), p, {ext}, {ext}, {m});
}

/// lambda w0 (x) |0><0|_Y + (1 - lambda) w1 (x) |1><1|_Y with the block measurement.
ExtensionWitness flagged_mixture(ExtensionWitness w0, ExtensionWitness w1, double lambda, const Label& ext) {
  const std::size_t m = std::max(w0.state.layout().dim_of(ext), w1.state.layout().dim_of(ext));
  w0 = pad_extension(std::move(w0), ext, m);
  w1 = pad_extension(std::move(w1), ext, m);
  const std::size_t zero[] = {0}, one[] = {1};
  const SubsystemLayout flag({"Y"}, {2});
  const LabeledState a = tensor(w0.state, basis_state(flag, zero));
  const LabeledState b = reorder(tensor(w1.state, basis_state(flag, one)), a.labels());
  ExtensionWitness out;
  out.state = detail::mix(a, b, lambda);
  Matrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  for (const auto& e : w0.effects) out.effects.push_back(kron(e, p0));
  for (const auto& e : w1.effects) out.effects.push_back(kron(e, p1));
  out.measured = w0.measured;
  out.measured.push_back("Y");
  return out;
}

struct Harness {
  ExtensionConfig cfg;
  std::map<std::string, Solved> cache;

  const Solved& solve(const Case& c) {
    auto it = cache.find(c.name);
    if (it != cache.end()) return it->second;
    ExtensionResult res = r_ex(c.state, c.x, c.y, c.z, cfg);
    ExtensionWitness w = extension_witness(c.state, c.x, c.y, c.z, res, cfg);
    return cache.emplace(c.name, Solved{c, std::move(res), std::move(w)}).first->second;
  }
};

/// One-sided comparison r_ex(lhs) <= bound + tol, where r_ex(lhs) is the
/// smaller of its own search and the transported witness.
struct Ledger {
  Worst gap, pointwise;
  std::string searches;

  void record(const std::string& label, const Solved& lhs, double transported, double bound, double search_bound) {
    const double value = std::min(lhs.result.value, transported);
    gap.see(value - bound, label);
    if (!searches.empty()) searches += "; ";
    searches += label + ": search " + num(lhs.result.value) + " vs " + num(search_bound) + ", transported " + num(transported);
  }
  void point(const std::string& label, double excess) { pointwise.see(excess, label); }
};

void emit(SuiteReport& rep, const std::string& property, const Ledger& l) {
  rep.checks.push_back(check_le(property, std::max(0.0, l.gap.or_zero()), 1e-3, l.gap.detail() + " | " + l.searches));
  rep.checks.push_back(check_le(property + " (at the optimum)", std::max(0.0, l.pointwise.or_zero()), 1e-9,
                                l.pointwise.detail()));
}

LabeledState bell_pure_s(double theta, Rng& rng) {
  Matrix v(4, 1);
  v(0, 0) = std::cos(theta);
  v(3, 0) = std::sin(theta);
  const LabeledState ae = LabeledState::from_vector(SubsystemLayout({"A", "E"}, {2, 2}), v);
  return reorder(tensor(ae, random_pure(SubsystemLayout({"S"}, {2}), rng)), LabelSet{"A", "S", "E"});
}

LabeledState structured(Rng& rng) {
  const SubsystemLayout left({"A", "SL"}, {2, 2}), right({"E", "SR"}, {2, 2});
  const LabeledState a0 = random_pure(left, rng), a1 = random_pure(left, rng);
  const LabeledState b0 = random_pure(right, rng), b1 = random_pure(right, rng);
  const double p = detail::uniform(rng, 0.3, 0.7);
  return reorder(detail::mix(tensor(a0, b0), tensor(a1, b1), p), LabelSet{"A", "SL", "SR", "E"});
}

}  // namespace

SuiteReport rex_suite(const SuiteOptions& opts) {
  SuiteReport rep{"rex", {}};
  Harness h;
  h.cfg.search.seed = substream_seed(opts.seed, 0xA000);
  Rng rng = make_rng(opts.seed, 0xA100);
  const LabelSet a{"A"}, s{"S"}, e{"E"}, slr{"SL", "SR"};
  const Label ext = h.cfg.ext_label;

  std::vector<Case> structured_cases;
  for (int k = 0; k < 3; ++k)
    structured_cases.push_back({"structured " + std::to_string(k), structured(rng), a, e, slr});
  const Case product{"product",
                     tensor(random_density(SubsystemLayout({"A", "S"}, {2, 2}), rng, 1),
                            random_density(SubsystemLayout({"E"}, {2}), rng)),
                     a, e, s};
  const Case bell{"Bell-type, maximal", bell_pure_s(std::numbers::pi / 4.0, rng), a, e, s};
  const Case partial{"Bell-type, partial", bell_pure_s(std::numbers::pi / 6.0, rng), a, e, s};
  const Case generic{"generic rank 2", random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng, 2), a, e, s};

  {
    Worst zero;
    for (const auto& c : structured_cases) zero.see(h.solve(c).result.value, c.name);
    zero.see(h.solve(product).result.value, product.name);
    rep.checks.push_back(check_le("vanishes on separable-across-S states", zero.or_zero(), 1e-3, zero.detail()));
    double lowest = std::numeric_limits<double>::infinity();
    std::string at;
    for (const Case* c : {&bell, &partial}) {
      const double v = h.solve(*c).result.value;
      if (v < lowest) {
        lowest = v;
        at = c->name;
      }
    }
    rep.checks.push_back(check_ge("positive on A-E entangled states", lowest, 0.1, "lowest at " + at));
  }

  const std::vector<const Case*> family{&structured_cases[0], &partial, &generic};

  {
    Ledger forward, backward;
    for (const Case* c : family) {
      const Solved& base = h.solve(*c);
      const Matrix ua = random_unitary(2, rng), us = random_unitary(c->state.layout().dim_of(c->z), rng),
                   ue = random_unitary(2, rng);
      auto apply_all = [&](auto&& step, const auto& state, bool inverse) {
        auto out = step(state, inverse ? ua.adjoint() : ua, a);
        out = step(out, inverse ? us.adjoint() : us, c->z);
        return step(out, inverse ? ue.adjoint() : ue, e);
      };
      auto on_state = [](const LabeledState& st, const Matrix& u, const LabelSet& t) { return apply_local_unitary(st, u, t); };
      auto on_witness = [](const ExtensionWitness& w, const Matrix& u, const LabelSet& t) { return unitary_transport(w, u, t); };
      const Case moved{c->name + " rotated", apply_all(on_state, c->state, false), c->x, c->y, c->z};
      const Solved& rot = h.solve(moved);
      const double there = evaluate(apply_all(on_witness, base.witness, false), moved);
      const double back = evaluate(apply_all(on_witness, rot.witness, true), *c);
      forward.record(c->name, rot, there, base.result.value, base.result.value);
      backward.record(c->name, base, back, rot.result.value, rot.result.value);
      forward.point(c->name, std::abs(there - base.witness.r));
      backward.point(c->name, std::abs(back - rot.witness.r));
    }
    emit(rep, "local unitaries do not increase r_ex", forward);
    emit(rep, "local unitaries do not decrease r_ex", backward);
  }

  {
    Ledger forward, backward;
    for (const Case* c : family) {
      const Solved& base = h.solve(*c);
      for (const auto& [label, side] : std::vector<std::pair<Label, int>>{{"A'", 0}, {"S'", 1}, {"E'", 2}}) {
        const LabeledState anc = random_pure(SubsystemLayout({label}, {2}), rng);
        Case bigger{c->name + " with " + label, tensor(c->state, anc), c->x, c->y, c->z};
        (side == 0 ? bigger.x : side == 1 ? bigger.z : bigger.y).push_back(label);
        const Solved& big = h.solve(bigger);
        const std::string tag = c->name + ", ancilla " + label;
        const double there = evaluate(attach_transport(base.witness, anc, side == 2), bigger);
        const double back = evaluate(detach_transport(big.witness, anc), *c);
        forward.record(tag, big, there, base.result.value, base.result.value);
        backward.record(tag, base, back, big.result.value, big.result.value);
        forward.point(tag, std::abs(there - base.witness.r));
        backward.point(tag, std::abs(back - big.witness.r));
      }
    }
    emit(rep, "attaching a pure ancilla does not increase r_ex", forward);
    emit(rep, "attaching a pure ancilla does not decrease r_ex", backward);
  }

  {
    Ledger on_a, on_e;
    const std::size_t zero[] = {0};
    const LabeledState s0 = basis_state(SubsystemLayout({"S"}, {2}), zero);
    const SubsystemLayout three({"A", "A'", "E"}, {2, 2, 2}), three_e({"A", "E", "E'"}, {2, 2, 2});
    Matrix phi(8, 1);
    phi(0, 0) = std::sqrt(0.5);  // |0>_A (|00> + |11>)_{A'E} / sqrt 2
    phi(3, 0) = std::sqrt(0.5);
    const std::vector<Case> wide_a{
        {"A'-E entangled", tensor(LabeledState::from_vector(three, phi), s0), {"A", "A'"}, e, s},
        {"random pure AA'E", tensor(random_pure(three, rng), s0), {"A", "A'"}, e, s},
        {"generic with A'", tensor(generic.state, random_density(SubsystemLayout({"A'"}, {2}), rng)), {"A", "A'"}, e, s},
    };
    for (const auto& c : wide_a) {
      const Solved& big = h.solve(c);
      ExtensionWitness w = big.witness;
      w.state = reduce(w.state, w.state.layout().complement(LabelSet{"A'"}));
      const Case small{c.name + " without A'", reduce(c.state, c.state.layout().complement(LabelSet{"A'"})), a, e, s};
      const Solved& sm = h.solve(small);
      const double there = evaluate(w, small);
      on_a.record(c.name, sm, there, big.result.value, big.result.value);
      on_a.point(c.name, there - big.witness.r);
    }
    const std::vector<Case> wide_e{
        {"random pure AEE'", tensor(random_pure(three_e, rng), s0), a, {"E", "E'"}, s},
        {"Bell-type with E'", tensor(partial.state, random_density(SubsystemLayout({"E'"}, {2}), rng)), a, {"E", "E'"}, s},
    };
    for (const auto& c : wide_e) {
      const Solved& big = h.solve(c);
      const Case small{c.name + " without E'", reduce(c.state, c.state.layout().complement(LabelSet{"E'"})), a, e, s};
      const Solved& sm = h.solve(small);
      // The traced E' joins the extension, so the witness carries over unchanged.
      const double there = evaluate(big.witness, small);
      on_e.record(c.name, sm, there, big.result.value, big.result.value);
      on_e.point(c.name, there - big.witness.r);
    }
    emit(rep, "partial trace on A does not increase r_ex", on_a);
    emit(rep, "partial trace on E does not increase r_ex", on_e);
  }

  {
    Ledger ops;
    for (const Case* c : family) {
      const Solved& base = h.solve(*c);
      for (int kind = 0; kind < 3; ++kind) {
        const KrausChannel ca = random_channel(2, 2, a, rng), ce = random_channel(2, 2, e, rng);
        LabeledState st = c->state;
        ExtensionWitness w = base.witness;
        if (kind != 1) {
          st = apply_channel(st, ca);
          w.state = apply_channel(w.state, ca);
        }
        if (kind != 0) {
          st = apply_channel(st, ce);
          w = channel_on_measured(std::move(w), ce, "K");
        }
        const char* names[] = {"channel on A", "channel on E", "channels on A and E"};
        const Case after{c->name + ", " + names[kind], st, c->x, c->y, c->z};
        const Solved& out = h.solve(after);
        const double there = evaluate(w, after);
        ops.record(after.name, out, there, base.result.value, base.result.value);
        ops.point(after.name, there - base.witness.r);
      }
    }
    emit(rep, "local operations do not increase r_ex", ops);
  }

  {
    Ledger convex;
    const Solved& b = h.solve(bell);
    const Case other{"product pure", tensor(random_pure(SubsystemLayout({"A", "S"}, {2, 2}), rng),
                                            random_pure(SubsystemLayout({"E"}, {2}), rng)),
                     a, e, s};
    const Solved& o = h.solve(other);
    for (double lambda : {0.25, 0.5, 0.75}) {
      const Case mixed{"mixture at " + num(lambda), detail::mix(bell.state, other.state, lambda), a, e, s};
      const Solved& m = h.solve(mixed);
      const double bound = lambda * b.result.value + (1.0 - lambda) * o.result.value;
      const double there = evaluate(flagged_mixture(b.witness, o.witness, lambda, ext), mixed);
      convex.record(mixed.name, m, there, bound, bound);
      convex.point(mixed.name, there - (lambda * b.witness.r + (1.0 - lambda) * o.witness.r));
    }
    emit(rep, "r_ex is convex", convex);
  }
  return rep;
}

}  // namespace qcmi
