// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/reductions.hpp"

#include "vasreach/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace vasreach {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::LenEqual: return "len-equal";
    case Relation::LenCapturedByUnion: return "len-captured-by-union";
    case Relation::LenLowerBoundsOriginal: return "len-lower-bounds-original";
    case Relation::LenScaled: return "len-scaled";
    case Relation::ReachEquivalent: return "reach-equivalent";
  }
  return "?";
}

ReachInstance trivial_unreachable(int dim) {
  Vass v(dim);
  StateId a = v.intern("u0");
  StateId b = v.intern("u1");
  return ReachInstance{std::move(v), Config{a, IntVec::zero(dim)}, Config{b, IntVec::zero(dim)}};
}

Vass delete_coordinates(const Vass& v, const std::set<int>& I) {
  Vass out(v.dim() - static_cast<int>(I.size()));
  for (const auto& name : v.state_names()) out.intern(name);
  for (const auto& tr : v.transitions()) out.add_transition(tr.src, tr.effect.without(I), tr.dst);
  return out;
}

namespace {

std::string vec_tag(const IntVec& v) {
  std::string s = "(";
  for (int i = 1; i <= v.dim(); ++i) {
    if (i > 1) s += ",";
    s += v(i).get_str();
  }
  return s + ")";
}

}  // namespace

ReductionOutput remove_fixed_coordinates(const SequentialVas& seq, const IntVec& s, const IntVec& t) {
  seq.validate();
  CollinearityReport rep = collinearity(seq);
  ReductionOutput out;
  out.relation = Relation::LenEqual;
  std::ostringstream prov;
  prov << "remove-fixed-coordinates(dropped={";
  for (int i : rep.fixed) prov << i << ",";
  prov << "})";
  out.provenance = prov.str();

  // a fixed coordinate's value along a run is start + bridge prefix sums
  for (int i : rep.fixed) {
    Int val = s(i);
    if (val < 0) throw MalformedError("remove_fixed_coordinates: negative source entry");
    for (const auto& a : seq.bridges) {
      val += a(i);
      if (val < 0) {
        out.unreachable = true;
        out.instances.push_back(trivial_unreachable(seq.dim));
        return out;
      }
    }
    if (val != t(i)) {
      out.unreachable = true;
      out.instances.push_back(trivial_unreachable(seq.dim));
      return out;
    }
  }

  SequentialVas reduced;
  reduced.dim = seq.dim - static_cast<int>(rep.fixed.size());
  for (const auto& a : seq.base) reduced.base.push_back(a.without(rep.fixed));
  for (const auto& a : seq.bridges) reduced.bridges.push_back(a.without(rep.fixed));
  out.instances.push_back(make_seq_instance(std::move(reduced), s.without(rep.fixed), t.without(rep.fixed)));
  return out;
}

ReductionOutput decompose_nonwide(const Vass& vas, const IntVec& s, const IntVec& t, long cap) {
  if (!vas.is_vas()) throw PreconditionError("decompose_nonwide: expected a VAS");
  const int d = vas.dim();
  std::vector<IntVec> T = vas.effects();

  ReductionOutput out;
  out.relation = Relation::LenCapturedByUnion;
  if (cone_equals_span(T)) {
    out.provenance = "decompose-nonwide(wide input, singleton family)";
    out.instances.push_back(ReachInstance{vas, Config{0, s}, Config{0, t}});
    return out;
  }

  NormalVectorCertificate cert = farkas_normal_vector(T);
  std::vector<IntVec> base;   // T0: orthogonal to n
  std::vector<IntVec> alpha;  // T1: strictly positive inner product
  std::vector<Int> weight;
  {
    std::vector<bool> in_zero(T.size(), false);
    for (int idx : cert.zero_set) in_zero[static_cast<std::size_t>(idx)] = true;
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (in_zero[i]) {
        base.push_back(T[i]);
      } else {
        alpha.push_back(T[i]);
        weight.push_back(cert.n.inner(T[i]));
      }
    }
  }
  Int K = cert.n.inner(t) - cert.n.inner(s);
  std::ostringstream prov;
  prov << "decompose-nonwide(n=" << vec_tag(cert.n) << ",K=" << K.get_str() << ")";
  out.provenance = prov.str();
  if (K < 0) {
    out.unreachable = true;
    out.instances.push_back(trivial_unreachable(d));
    return out;
  }

  Int minw = 0, maxw = 0;
  for (const auto& w : weight) {
    if (minw == 0 || w < minw) minw = w;
    if (w > maxw) maxw = w;
  }

  // bridge words over T1 in length-lexicographic order, weights summing to K
  std::vector<int> word;
  bool done_cap = false;
  std::function<void(Int, long)> emit = [&](Int remaining, long slots) {
    if (done_cap) return;
    if (slots == 0) {
      if (remaining != 0) return;
      if (static_cast<long>(out.instances.size()) >= cap) {
        done_cap = true;
        out.truncated = true;
        return;
      }
      SequentialVas sv;
      sv.dim = d;
      sv.base = base;
      for (int w : word) sv.bridges.push_back(alpha[static_cast<std::size_t>(w)]);
      out.instances.push_back(make_seq_instance(std::move(sv), s, t));
      return;
    }
    if (remaining < Int(slots) * minw || remaining > Int(slots) * maxw) return;
    for (std::size_t a = 0; a < alpha.size() && !done_cap; ++a) {
      word.push_back(static_cast<int>(a));
      emit(remaining - weight[a], slots - 1);
      word.pop_back();
    }
  };
  if (!alpha.empty()) {
    long max_len = K == 0 ? 0 : to_long(K / minw);
    for (long k = 0; k <= max_len && !done_cap; ++k) emit(K, k);
  } else if (K == 0) {
    SequentialVas sv;
    sv.dim = d;
    sv.base = base;
    out.instances.push_back(make_seq_instance(std::move(sv), s, t));
  }
  if (out.instances.empty() && !out.truncated) {
    // no word hits K exactly: the inner-product invariant rules t out
    out.unreachable = true;
    out.instances.push_back(trivial_unreachable(d));
  }
  return out;
}

namespace {

struct ValueNode {
  StateId state;
  IntVec values;  // the tracked coordinates

  friend bool operator<(const ValueNode& a, const ValueNode& b) {
    if (a.state != b.state) return a.state < b.state;
    return a.values < b.values;
  }
};

struct ValueGraph {
  std::vector<ValueNode> nodes;
  std::map<ValueNode, int> id;

  int intern(const ValueNode& n) {
    auto it = id.find(n);
    if (it != id.end()) return it->second;
    int k = static_cast<int>(nodes.size());
    nodes.push_back(n);
    id.emplace(n, k);
    return k;
  }
  bool contains(const ValueNode& n) const { return id.count(n) > 0; }
};

bool in_box(const IntVec& values, const Int& B) {
  for (int i = 1; i <= values.dim(); ++i)
    if (values(i) < 0 || values(i) >= B) return false;
  return true;
}

// forward (or backward) exploration of the (state, I-values) graph
ValueGraph explore_values(const Vass& v, const std::set<int>& I, const Int& B, const ValueNode& root,
                          bool backward, long state_cap) {
  ValueGraph g;
  g.intern(root);
  std::deque<int> work{0};
  while (!work.empty()) {
    int cur = work.front();
    work.pop_front();
    ValueNode node = g.nodes[static_cast<std::size_t>(cur)];
    for (const auto& tr : v.transitions()) {
      ValueNode nxt;
      if (!backward) {
        if (tr.src != node.state) continue;
        nxt = ValueNode{tr.dst, node.values + tr.effect.restrict(I)};
      } else {
        if (tr.dst != node.state) continue;
        nxt = ValueNode{tr.src, node.values - tr.effect.restrict(I)};
      }
      if (!in_box(nxt.values, B)) continue;
      if (g.contains(nxt)) continue;
      if (static_cast<long>(g.nodes.size()) >= state_cap)
        throw CapacityError("value-graph exploration exceeded the state cap of " + std::to_string(state_cap));
      work.push_back(g.intern(nxt));
    }
  }
  return g;
}

std::string encoded_name(const Vass& v, const ValueNode& n, const char* tag) {
  return v.state_name(n.state) + "#" + tag + vec_tag(n.values);
}

}  // namespace

ReductionOutput encode_bounded_coordinates(const Vass& v, const Config& s, const Config& t,
                                           const std::set<int>& I, const Int& B, long state_cap) {
  for (int i : I)
    if (i < 1 || i > v.dim()) throw MalformedError("encode_bounded_coordinates: coordinate out of range");
  if (!in_box(s.vec.restrict(I), B) || !in_box(t.vec.restrict(I), B))
    throw PreconditionError("encode_bounded_coordinates: source/target entries must lie in [0, B-1]");

  ValueNode root{s.state, s.vec.restrict(I)};
  ValueGraph g = explore_values(v, I, B, root, false, state_cap);
  ValueNode tnode{t.state, t.vec.restrict(I)};
  g.intern(tnode);  // isolated when unreachable in the value graph

  Vass out(v.dim());
  for (const auto& n : g.nodes) out.intern(encoded_name(v, n, "vec"));
  for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) {
    const ValueNode& node = g.nodes[static_cast<std::size_t>(k)];
    for (const auto& tr : v.transitions()) {
      if (tr.src != node.state) continue;
      ValueNode nxt{tr.dst, node.values + tr.effect.restrict(I)};
      auto it = g.id.find(nxt);
      if (it == g.id.end()) continue;
      out.add_transition(k, tr.effect, it->second);
    }
  }
  ReductionOutput res;
  res.relation = Relation::LenLowerBoundsOriginal;
  std::ostringstream prov;
  prov << "encode-bounded-coordinates(I={";
  for (int i : I) prov << i << ",";
  prov << "},B=" << B.get_str() << ")";
  res.provenance = prov.str();
  res.instances.push_back(
      ReachInstance{std::move(out), Config{g.id.at(root), s.vec}, Config{g.id.at(tnode), t.vec}});
  return res;
}

ReductionOutput concat_two_encodings(const Vass& v, const Config& s, const Config& t,
                                     const std::set<int>& I1, const std::set<int>& I2, const Int& B,
                                     long state_cap) {
  if (!in_box(s.vec.restrict(I1), B) || !in_box(t.vec.restrict(I2), B))
    throw PreconditionError("concat_two_encodings: source/target entries must lie in [0, B-1]");

  ValueNode root1{s.state, s.vec.restrict(I1)};
  ValueGraph g1 = explore_values(v, I1, B, root1, false, state_cap);
  ValueNode root2{t.state, t.vec.restrict(I2)};
  ValueGraph g2 = explore_values(v, I2, B, root2, true, state_cap);

  Vass out(v.dim());
  for (const auto& n : g1.nodes) out.intern(encoded_name(v, n, "vec1"));
  const int off = static_cast<int>(g1.nodes.size());
  for (const auto& n : g2.nodes) out.intern(encoded_name(v, n, "vec2"));

  for (int k = 0; k < static_cast<int>(g1.nodes.size()); ++k) {
    const ValueNode& node = g1.nodes[static_cast<std::size_t>(k)];
    for (const auto& tr : v.transitions()) {
      if (tr.src != node.state) continue;
      ValueNode nxt{tr.dst, node.values + tr.effect.restrict(I1)};
      auto it = g1.id.find(nxt);
      if (it == g1.id.end()) continue;
      out.add_transition(k, tr.effect, it->second);
    }
  }
  for (int k = 0; k < static_cast<int>(g2.nodes.size()); ++k) {
    const ValueNode& node = g2.nodes[static_cast<std::size_t>(k)];
    for (const auto& tr : v.transitions()) {
      if (tr.src != node.state) continue;
      ValueNode nxt{tr.dst, node.values + tr.effect.restrict(I2)};
      auto it = g2.id.find(nxt);
      if (it == g2.id.end()) continue;
      out.add_transition(off + k, tr.effect, off + it->second);
    }
  }
  // zero-effect bridges over compatible state pairs
  std::set<int> common;
  for (int i : I1)
    if (I2.count(i)) common.insert(i);
  auto pos_in = [](const std::set<int>& I, int coord) {
    int pos = 0;
    for (int i : I) {
      ++pos;
      if (i == coord) return pos;
    }
    return -1;
  };
  for (int k1 = 0; k1 < static_cast<int>(g1.nodes.size()); ++k1) {
    for (int k2 = 0; k2 < static_cast<int>(g2.nodes.size()); ++k2) {
      const ValueNode& a = g1.nodes[static_cast<std::size_t>(k1)];
      const ValueNode& b = g2.nodes[static_cast<std::size_t>(k2)];
      if (a.state != b.state) continue;
      bool compatible = true;
      for (int c : common) {
        if (a.values(pos_in(I1, c)) != b.values(pos_in(I2, c))) {
          compatible = false;
          break;
        }
      }
      if (compatible) out.add_transition(k1, IntVec::zero(v.dim()), off + k2);
    }
  }

  ReductionOutput res;
  res.relation = Relation::LenLowerBoundsOriginal;
  std::ostringstream prov;
  prov << "concat-two-encodings(B=" << B.get_str() << "); min len = 1 + min splittable original len";
  res.provenance = prov.str();
  res.instances.push_back(
      ReachInstance{std::move(out), Config{g1.id.at(root1), s.vec}, Config{off + g2.id.at(root2), t.vec}});
  return res;
}

ReductionOutput eliminate_negative_collinear(const SequentialVas& seq, const IntVec& s, const IntVec& t) {
  seq.validate();
  CollinearityReport rep = collinearity(seq);
  auto pair = rep.first_negative_pair();
  if (!pair) throw PreconditionError("eliminate_negative_collinear: no negatively collinear pair");
  const auto [i, j] = *pair;

  Vass exp = expand_sequential(seq);
  Config cs{seq.source_state(), s};
  Config ct{seq.target_state(), t};
  Int M = instance_size(exp, cs, ct);
  Int B = 3 * M * M + 2 * M;

  ReductionOutput enc = encode_bounded_coordinates(exp, cs, ct, {i, j}, B, 4'000'000);
  const ReachInstance& ei = enc.instances.front();
  std::set<int> I{i, j};
  Vass reduced = delete_coordinates(std::get<Vass>(ei.system), I);

  ReductionOutput out;
  out.relation = Relation::LenEqual;
  std::ostringstream prov;
  prov << "eliminate-negative-collinear(pair=(" << i << "," << j << "),B=" << B.get_str() << ")";
  out.provenance = prov.str();
  out.instances.push_back(ReachInstance{std::move(reduced), Config{ei.source.state, s.without(I)},
                                        Config{ei.target.state, t.without(I)}});
  return out;
}

GadgetFragment gadget_nonneg(const Int& m, const Int& n, const Int& b) {
  if (m < 0 || n < 0) throw PreconditionError("gadget_nonneg: m and n must be naturals");
  std::vector<IntVec> points;
  if (b >= 0) {
    points.push_back(IntVec{0, 0});
  } else if (m > 0 && n == 0) {
    points.push_back(IntVec(std::vector<Int>{ceil_div(-b, m), Int(0)}));
  } else if (m == 0 && n > 0) {
    points.push_back(IntVec(std::vector<Int>{Int(0), ceil_div(-b, n)}));
  } else if (m > 0 && n > 0) {
    Int top = ceil_div(-b, m);
    for (Int i = 0; i <= top; ++i)
      points.push_back(IntVec(std::vector<Int>{i, ceil_div(-(b + m * i), n)}));
  }
  // m = n = 0 with b < 0: empty point set, the gadget is impassable

  GadgetFragment g{Vass(2), 0, 0, points};
  g.entry = g.v.intern("p");
  g.exit = g.v.intern("q");
  for (const auto& pt : points) {
    StateId mid = g.v.intern("s" + vec_tag(pt));
    g.v.add_transition(g.entry, -pt, mid);
    g.v.add_transition(mid, pt, g.exit);
  }
  return g;
}

namespace {

// splice a nonnegativity gadget between two states of `out`, mapping the
// gadget's two counters onto coordinates (axis_i, axis_j) of `out`
void splice_gadget(Vass& out, StateId from, StateId to, const GadgetFragment& g, int axis_i, int axis_j,
                   const std::string& name_prefix) {
  auto embed = [&](const IntVec& e2) {
    IntVec e = IntVec::zero(out.dim());
    e(axis_i) += e2(1);
    e(axis_j) += e2(2);
    return e;
  };
  for (const auto& pt : g.minimal_points) {
    StateId mid = out.intern(name_prefix + "#pt" + vec_tag(pt));
    out.add_transition(from, embed(-pt), mid);
    out.add_transition(mid, embed(pt), to);
  }
}

// dummy self-loop effects enlarging the cycle space to a projective plane
std::vector<IntVec> padding_effects(int d, const std::vector<IntVec>& basis) {
  if (d < 2) throw PreconditionError("padding requires dimension >= 2");
  if (basis.empty()) return {IntVec::unit(d, 1), IntVec::unit(d, 2)};
  if (basis.size() != 1) throw PreconditionError("padding applies to cycle dimension < 2");
  const IntVec& w = basis.front();
  bool uniform = true;
  for (int i = 2; i <= d; ++i)
    if (w(i) != w(1)) {
      uniform = false;
      break;
    }
  if (!uniform) return {IntVec::ones(d)};
  return {IntVec::unit(d, 1) - IntVec::unit(d, 2)};
}

Vass add_isolated_loops(const Vass& v, const std::vector<IntVec>& effects) {
  Vass out(v.dim());
  for (const auto& name : v.state_names()) out.intern(name);
  for (const auto& tr : v.transitions()) out.add_transition(tr.src, tr.effect, tr.dst);
  StateId pad = out.intern("pad");
  for (const auto& e : effects) out.add_transition(pad, e, pad);
  return out;
}

}  // namespace

ReductionOutput make_projective(const Vass& v, const Config& s, const Config& t, long state_cap) {
  CycleSpaceInfo csi = cycle_space(v);
  if (csi.dim_cyc != 2) throw PreconditionError("make_projective: cycle space must be 2-dimensional");
  if (is_projective(csi.global_basis[0], csi.global_basis[1]))
    throw PreconditionError("make_projective: cycle space already projective");

  IntVec n = nonprojective_normal(csi.global_basis[0], csi.global_basis[1]);
  std::set<int> K = n.support();
  Int sz = instance_size(v, s, t);
  Int Bk = 6 * sz * sz * sz;

  ReductionOutput enc = encode_bounded_coordinates(v, s, t, K, Bk + 1, state_cap);
  const ReachInstance& ei = enc.instances.front();
  const Vass& ev = std::get<Vass>(ei.system);

  CycleSpaceInfo csi2 = cycle_space(ev);
  if (csi2.dim_cyc >= 2) throw InternalError("make_projective: encoding did not drop the cycle dimension");
  Vass padded = add_isolated_loops(ev, padding_effects(v.dim(), csi2.global_basis));
  CycleSpaceInfo csi3 = cycle_space(padded);
  if (csi3.dim_cyc != 2 || !is_projective(csi3.global_basis[0], csi3.global_basis[1]))
    throw InternalError("make_projective: padded system is not projective");

  ReductionOutput out;
  out.relation = Relation::LenEqual;
  std::ostringstream prov;
  prov << "make-projective(K={";
  for (int k : K) prov << k << ",";
  prov << "},bound=" << Bk.get_str() << ")";
  out.provenance = prov.str();
  out.instances.push_back(ReachInstance{std::move(padded), ei.source, ei.target});
  return out;
}

ReductionOutput geo2d_to_2vass(const Vass& v, const Config& s, const Config& t, long state_cap) {
  const int d = v.dim();
  ReductionOutput out;
  out.relation = Relation::LenScaled;
  out.scale = 2 * d + 1;

  if (d <= 1) {
    // the projection machinery needs two coordinates; low dimensions embed
    // directly, with one trivial gadget per coordinate to keep the scale
    Vass prod(2);
    if (d == 0) {
      for (const auto& name : v.state_names()) prod.intern(name);
      for (const auto& tr : v.transitions()) prod.add_transition(tr.src, IntVec{0, 0}, tr.dst);
      out.provenance = "geo2d-to-2vass(zero-dimensional embedding)";
      out.instances.push_back(
          ReachInstance{std::move(prod), Config{s.state, IntVec{0, 0}}, Config{t.state, IntVec{0, 0}}});
      return out;
    }
    for (const auto& name : v.state_names()) {
      prod.intern(name + "#lo");
      prod.intern(name + "#hi");
    }
    auto lo = [&](StateId q) { return *prod.find_state(v.state_name(q) + "#lo"); };
    auto hi = [&](StateId q) { return *prod.find_state(v.state_name(q) + "#hi"); };
    for (const auto& tr : v.transitions())
      prod.add_transition(lo(tr.src), IntVec(std::vector<Int>{tr.effect(1), Int(0)}), hi(tr.dst));
    GadgetFragment g = gadget_nonneg(1, 0, 0);
    for (StateId q = 0; q < v.num_states(); ++q)
      splice_gadget(prod, hi(q), lo(q), g, 1, 2, v.state_name(q) + "#g1");
    out.provenance = "geo2d-to-2vass(one-dimensional embedding)";
    StateId src = lo(s.state), dst = lo(t.state);
    out.instances.push_back(ReachInstance{std::move(prod),
                                          Config{src, IntVec(std::vector<Int>{s.vec(1), Int(0)})},
                                          Config{dst, IntVec(std::vector<Int>{t.vec(1), Int(0)})}});
    return out;
  }

  Vass work = v;
  Config ws = s, wt = t;
  std::string route = "direct";
  CycleSpaceInfo csi = cycle_space(work);
  if (csi.dim_cyc > 2) throw PreconditionError("geo2d_to_2vass: cycle space dimension exceeds 2");
  if (csi.dim_cyc < 2) {
    work = add_isolated_loops(work, padding_effects(d, csi.global_basis));
    csi = cycle_space(work);
    route = "padded";
  } else if (!is_projective(csi.global_basis[0], csi.global_basis[1])) {
    ReductionOutput mp = make_projective(work, ws, wt, state_cap);
    const ReachInstance& mi = mp.instances.front();
    work = std::get<Vass>(mi.system);
    ws = mi.source;
    wt = mi.target;
    csi = cycle_space(work);
    route = "via-make-projective";
  }
  ProjectionCertificate cert = sign_reflecting_projection(csi.global_basis[0], csi.global_basis[1]);
  const int ci = cert.i, cj = cert.j;

  // shift-constraint graph: nodes (state, delta), edges along transitions,
  // boxed by the bounded-shift invariant
  Int sz = work.size();
  Int box = 6 * sz * sz * sz;
  IntVec delta_s = shift(ws.vec, cert);
  std::vector<IntVec> delta_of_effect;
  for (const auto& tr : work.transitions()) delta_of_effect.push_back(shift(tr.effect, cert));

  ValueGraph g;
  g.intern(ValueNode{ws.state, delta_s});
  std::deque<int> workq{0};
  while (!workq.empty()) {
    int cur = workq.front();
    workq.pop_front();
    ValueNode node = g.nodes[static_cast<std::size_t>(cur)];
    for (std::size_t ti = 0; ti < work.transitions().size(); ++ti) {
      const auto& tr = work.transitions()[ti];
      if (tr.src != node.state) continue;
      ValueNode nxt{tr.dst, node.values + delta_of_effect[ti]};
      if ((nxt.values - delta_s).norm() > box) continue;
      if (g.contains(nxt)) continue;
      if (static_cast<long>(g.nodes.size()) >= state_cap)
        throw CapacityError("geo2d_to_2vass: shift exploration exceeded the state cap of " +
                            std::to_string(state_cap));
      workq.push_back(g.intern(nxt));
    }
  }
  ValueNode tnode{wt.state, shift(wt.vec, cert)};
  g.intern(tnode);

  Vass prod(2);
  auto node_name = [&](const ValueNode& n) { return work.state_name(n.state) + "#shift" + vec_tag(n.values); };
  for (const auto& n : g.nodes) {
    prod.intern(node_name(n));           // lo: nonnegativity re-established
    prod.intern(node_name(n) + "#pre");  // hi: tests pending
  }
  auto lo_of = [&](int k) { return 2 * k; };
  auto hi_of = [&](int k) { return 2 * k + 1; };

  for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) {
    const ValueNode& node = g.nodes[static_cast<std::size_t>(k)];
    for (std::size_t ti = 0; ti < work.transitions().size(); ++ti) {
      const auto& tr = work.transitions()[ti];
      if (tr.src != node.state) continue;
      ValueNode nxt{tr.dst, node.values + delta_of_effect[ti]};
      auto it = g.id.find(nxt);
      if (it == g.id.end()) continue;
      prod.add_transition(lo_of(k), IntVec(std::vector<Int>{tr.effect(ci), tr.effect(cj)}), hi_of(it->second));
    }
  }
  // per-node gadget chains testing all d recovered coordinates
  for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) {
    const ValueNode& node = g.nodes[static_cast<std::size_t>(k)];
    StateId from = hi_of(k);
    for (int l = 1; l <= d; ++l) {
      StateId to = l == d ? lo_of(k) : prod.intern(node_name(node) + "#chain" + std::to_string(l));
      GadgetFragment gf = gadget_nonneg(cert.axis_u(l), cert.axis_v(l), node.values(l));
      splice_gadget(prod, from, to, gf, 1, 2, node_name(node) + "#g" + std::to_string(l));
      from = to;
    }
  }

  std::ostringstream prov;
  prov << "geo2d-to-2vass(" << route << ",I={" << ci << "," << cj << "},scale=" << (2 * d + 1) << ")";
  out.provenance = prov.str();
  out.instances.push_back(ReachInstance{
      std::move(prod),
      Config{lo_of(g.id.at(ValueNode{ws.state, delta_s})), IntVec(std::vector<Int>{ws.vec(ci), ws.vec(cj)})},
      Config{lo_of(g.id.at(tnode)), IntVec(std::vector<Int>{wt.vec(ci), wt.vec(cj)})}});
  return out;
}

ReductionOutput geo2vas_to_4vass(const Vass& vas, const IntVec& s, const IntVec& t) {
  if (!vas.is_vas()) throw PreconditionError("geo2vas_to_4vass: expected a VAS");
  const int d = vas.dim();
  std::vector<IntVec> T = vas.effects();
  SpanBasis sb = span_basis(T);
  if (sb.rank > 2) throw PreconditionError("geo2vas_to_4vass: cycle space dimension exceeds 2");
  IntVec u = sb.rank >= 1 ? sb.basis[0] : IntVec::zero(d);
  IntVec v2 = sb.rank >= 2 ? sb.basis[1] : u;

  ConeByFour cbf = cone_by_four(u, v2);
  // g_l(x) = c_l x(l) - alpha_l x(i_l) - beta_l x(j_l) vanishes on span{u,v}
  auto residual = [&](const IntVec& x, int l) -> Int {
    const auto& tp = cbf.tuples[static_cast<std::size_t>(l - 1)];
    return tp.c * x(l) - tp.alpha * x(tp.i) - tp.beta * x(tp.j);
  };

  ReductionOutput out;
  out.relation = Relation::ReachEquivalent;
  std::ostringstream prov;
  prov << "geo2vas-to-4vass(I={";
  for (int i : cbf.I) prov << i << ",";
  prov << "})";
  out.provenance = prov.str();

  // t must sit on the affine leaf s + span(T); otherwise unreachable
  for (int l = 1; l <= d; ++l) {
    if (residual(s, l) != residual(t, l)) {
      out.unreachable = true;
      out.instances.push_back(trivial_unreachable(static_cast<int>(cbf.I.size())));
      return out;
    }
  }

  const int m = static_cast<int>(cbf.I.size());
  std::map<int, int> axis;  // original coordinate -> output axis
  for (int k = 0; k < m; ++k) axis.emplace(cbf.I[static_cast<std::size_t>(k)], k + 1);

  Vass outv(m);
  StateId rlo = outv.intern("r#lo");
  StateId rhi = outv.intern("r#hi");
  std::set<int> Iset(cbf.I.begin(), cbf.I.end());
  for (const auto& a : T) outv.add_transition(rlo, a.restrict(Iset), rhi);

  StateId from = rhi;
  for (int l = 1; l <= d; ++l) {
    const auto& tp = cbf.tuples[static_cast<std::size_t>(l - 1)];
    Int delta_l = residual(s, l);
    StateId to = l == d ? rlo : outv.intern("r#chain" + std::to_string(l));
    GadgetFragment gf = tp.i == tp.j ? gadget_nonneg(tp.alpha + tp.beta, 0, delta_l)
                                     : gadget_nonneg(tp.alpha, tp.beta, delta_l);
    splice_gadget(outv, from, to, gf, axis.at(tp.i), axis.at(tp.j), "g" + std::to_string(l));
    from = to;
  }

  out.instances.push_back(
      ReachInstance{std::move(outv), Config{rlo, s.restrict(Iset)}, Config{rlo, t.restrict(Iset)}});
  return out;
}

SubsetSumInstance subset_sum_instance(const std::vector<Int>& S, const Int& target) {
  if (S.empty()) throw PreconditionError("subset_sum_instance: S must be nonempty");
  if (target < 0) throw PreconditionError("subset_sum_instance: target must be a natural");
  for (const auto& a : S)
    if (a < 0) throw PreconditionError("subset_sum_instance: values must be naturals");

  Int total = 0;
  for (const auto& a : S) total += a;
  int dd = 1;
  {
    Int pw = 2;
    while (pw <= total) {
      pw *= 2;
      ++dd;
    }
  }
  const int n = static_cast<int>(S.size());
  const bool representable = target <= total;

  auto bin = [&](const Int& a) {
    IntVec v = IntVec::zero(dd);
    Int rest = a;
    for (int i = 1; i <= dd; ++i) {
      v(i) = rest % 2;
      rest /= 2;
    }
    return v;
  };

  Vass v(dd);
  std::vector<StateId> p(static_cast<std::size_t>(n) + 1), q(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    p[static_cast<std::size_t>(j)] = v.intern("p" + std::to_string(j + 1));
    q[static_cast<std::size_t>(j)] = v.intern("q" + std::to_string(j + 1));
    // carry-adjustment chain states sit between q_j and p_{j+1}
    for (int i = 2; i < dd; ++i) v.intern("r(" + std::to_string(j + 1) + "," + std::to_string(i) + ")");
  }
  p[static_cast<std::size_t>(n)] = v.intern("p" + std::to_string(n + 1));

  for (int j = 0; j < n; ++j) {
    v.add_transition(p[static_cast<std::size_t>(j)], IntVec::zero(dd), q[static_cast<std::size_t>(j)]);
    v.add_transition(p[static_cast<std::size_t>(j)], bin(S[static_cast<std::size_t>(j)]),
                     q[static_cast<std::size_t>(j)]);
    if (dd == 1) {
      v.add_transition(q[static_cast<std::size_t>(j)], IntVec::zero(dd), p[static_cast<std::size_t>(j) + 1]);
      continue;
    }
    // chain aliases: r(j,1) = q_j and r(j,dd) = p_{j+1}
    auto chain_state = [&](int i) {
      if (i == 1) return q[static_cast<std::size_t>(j)];
      if (i == dd) return p[static_cast<std::size_t>(j) + 1];
      return *v.find_state("r(" + std::to_string(j + 1) + "," + std::to_string(i) + ")");
    };
    for (int i = 1; i < dd; ++i) {
      IntVec carry = IntVec::zero(dd);
      carry(i) = -2;
      carry(i + 1) = 1;
      v.add_transition(chain_state(i), IntVec::zero(dd), chain_state(i + 1));
      v.add_transition(chain_state(i), carry, chain_state(i + 1));
    }
  }

  Config src{p[0], IntVec::zero(dd)};
  Config tgt;
  if (representable) {
    tgt = Config{p[static_cast<std::size_t>(n)], bin(target)};
  } else {
    StateId iso = v.intern("unreach");
    tgt = Config{iso, IntVec::zero(dd)};
  }
  bool expected = subset_sum_bruteforce(S, target);
  return SubsetSumInstance{ReachInstance{std::move(v), std::move(src), std::move(tgt)}, expected};
}

}  // namespace vasreach
