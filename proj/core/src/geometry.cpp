// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/geometry.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace vasreach {

namespace {

// iterative Tarjan, deterministic in transition order
std::vector<std::vector<StateId>> strongly_connected_components(const Vass& v) {
  const int n = v.num_states();
  std::vector<std::vector<std::pair<StateId, int>>> adj(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < v.transitions().size(); ++t)
    adj[static_cast<std::size_t>(v.transitions()[t].src)].emplace_back(v.transitions()[t].dst, static_cast<int>(t));

  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> out;
  int counter = 0;

  struct Frame {
    StateId s;
    std::size_t next_edge;
  };
  for (StateId root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[static_cast<std::size_t>(f.s)].size()) {
        StateId w = adj[static_cast<std::size_t>(f.s)][f.next_edge++].first;
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.s)] = std::min(low[static_cast<std::size_t>(f.s)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        StateId s = f.s;
        frames.pop_back();
        if (!frames.empty())
          low[static_cast<std::size_t>(frames.back().s)] = std::min(low[static_cast<std::size_t>(frames.back().s)], low[static_cast<std::size_t>(s)]);
        if (low[static_cast<std::size_t>(s)] == index[static_cast<std::size_t>(s)]) {
          std::vector<StateId> comp;
          StateId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp.push_back(w);
          } while (w != s);
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CycleSpaceInfo cycle_space(const Vass& v) {
  CycleSpaceInfo info;
  info.sccs = strongly_connected_components(v);
  std::vector<int> scc_of(static_cast<std::size_t>(v.num_states()), -1);
  for (std::size_t c = 0; c < info.sccs.size(); ++c)
    for (StateId s : info.sccs[c]) scc_of[static_cast<std::size_t>(s)] = static_cast<int>(c);

  for (std::size_t ci = 0; ci < info.sccs.size(); ++ci) {
    const auto& comp = info.sccs[ci];
    std::vector<int> internal;
    for (std::size_t t = 0; t < v.transitions().size(); ++t) {
      const auto& tr = v.transitions()[t];
      if (scc_of[static_cast<std::size_t>(tr.src)] == static_cast<int>(ci) &&
          scc_of[static_cast<std::size_t>(tr.dst)] == static_cast<int>(ci))
        internal.push_back(static_cast<int>(t));
    }
    // BFS spanning tree from the least state; potentials are tree-path effects
    std::map<StateId, IntVec> potential;
    potential.emplace(comp.front(), IntVec::zero(v.dim()));
    std::queue<StateId> q;
    q.push(comp.front());
    while (!q.empty()) {
      StateId p = q.front();
      q.pop();
      for (int t : internal) {
        const auto& tr = v.transition(t);
        if (tr.src == p && !potential.count(tr.dst)) {
          potential.emplace(tr.dst, potential.at(p) + tr.effect);
          q.push(tr.dst);
        }
      }
    }
    std::vector<IntVec> candidates;
    for (int t : internal) {
      const auto& tr = v.transition(t);
      candidates.push_back(potential.at(tr.src) + tr.effect - potential.at(tr.dst));
    }
    SpanBasis basis = span_basis(candidates);
    info.dim_com = std::max(info.dim_com, basis.rank);
    info.per_scc.push_back(std::move(basis.basis));
  }
  std::vector<IntVec> all;
  for (const auto& bs : info.per_scc)
    for (const auto& b : bs) all.push_back(b);
  SpanBasis gb = span_basis(all);
  info.global_basis = std::move(gb.basis);
  info.dim_cyc = gb.rank;
  return info;
}

bool is_wide(const Vass& vas) {
  if (!vas.is_vas())
    throw PreconditionError("is_wide: unsupported shape, expected a VAS (single state) or sequential VAS");
  return cone_equals_span(vas.effects());
}

bool is_wide(const SequentialVas& s) { return cone_equals_span(s.base); }

Int farkas_norm_bound(const std::vector<IntVec>& X) {
  if (X.empty()) return 0;
  int d = X.front().dim();
  int r = span_basis(X).rank;
  Int nX = norm_of(X);
  Int bound = Int(d) + 1;
  Int base = Int(r) * nX;
  Int pw = 1;
  for (int k = 0; k < r; ++k) pw *= base;
  return bound * pw;
}

NormalVectorCertificate farkas_normal_vector(const std::vector<IntVec>& X) {
  if (cone_equals_span(X)) throw PreconditionError("farkas_normal_vector: input is wide, cone(X) = span(X)");
  const Int bound = farkas_norm_bound(X);

  // group identical generators: they share the inner product with any n
  std::vector<IntVec> distinct;
  std::vector<std::vector<int>> members;
  for (std::size_t i = 0; i < X.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      if (distinct[k] == X[i]) {
        members[k].push_back(static_cast<int>(i));
        found = true;
        break;
      }
    }
    if (!found) {
      distinct.push_back(X[i]);
      members.push_back({static_cast<int>(i)});
    }
  }
  const int nd = static_cast<int>(distinct.size());
  int zero_pos = -1;
  for (int k = 0; k < nd; ++k)
    if (distinct[static_cast<std::size_t>(k)].is_zero()) zero_pos = k;

  // candidate zero sets by decreasing size, lexicographic within a size;
  // the zero vector, when present, belongs to every candidate
  std::vector<int> free_pos;
  for (int k = 0; k < nd; ++k)
    if (k != zero_pos) free_pos.push_back(k);
  const int nf = static_cast<int>(free_pos.size());

  for (int size = nf - 1; size >= 0; --size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::optional<NormalVectorCertificate> found;
    std::function<bool(int, int)> choose = [&](int from, int k) -> bool {
      if (k == size) {
        std::vector<bool> in_zero(static_cast<std::size_t>(nd), false);
        if (zero_pos >= 0) in_zero[static_cast<std::size_t>(zero_pos)] = true;
        for (int p : pick) in_zero[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(p)])] = true;
        std::vector<IntVec> X0, X1;
        for (int q = 0; q < nd; ++q)
          (in_zero[static_cast<std::size_t>(q)] ? X0 : X1).push_back(distinct[static_cast<std::size_t>(q)]);
        if (!cone_equals_span(X0)) return false;
        auto n = strict_homogeneous_solution(X0, X1, bound);
        if (!n) return false;
        NormalVectorCertificate cert;
        cert.n = std::move(*n);
        for (int q = 0; q < nd; ++q)
          if (in_zero[static_cast<std::size_t>(q)])
            for (int idx : members[static_cast<std::size_t>(q)]) cert.zero_set.push_back(idx);
        std::sort(cert.zero_set.begin(), cert.zero_set.end());
        found = std::move(cert);
        return true;
      }
      for (int i = from; i < nf; ++i) {
        pick[static_cast<std::size_t>(k)] = i;
        if (choose(i + 1, k + 1)) return true;
      }
      return false;
    };
    if (choose(0, 0)) return std::move(*found);
  }
  throw InternalError("farkas_normal_vector: no certificate found within the norm bound");
}

bool CollinearityReport::collinear(int i, int j) const {
  if (i > j) std::swap(i, j);
  return pairs.count({i, j}) > 0;
}

std::optional<Rat> CollinearityReport::alpha(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = pairs.find({i, j});
  if (it == pairs.end()) return std::nullopt;
  return it->second;
}

bool CollinearityReport::positively_collinear(int i, int j) const {
  auto a = alpha(i, j);
  return a && *a > 0;
}

bool CollinearityReport::negatively_collinear(int i, int j) const {
  auto a = alpha(i, j);
  return a && *a < 0;
}

std::optional<std::pair<int, int>> CollinearityReport::first_negative_pair() const {
  for (const auto& [ij, a] : pairs)
    if (a < 0) return ij;
  return std::nullopt;
}

bool CollinearityReport::pairwise_positively_collinear(const std::set<int>& K) const {
  for (auto it = K.begin(); it != K.end(); ++it) {
    auto jt = it;
    for (++jt; jt != K.end(); ++jt)
      if (!positively_collinear(*it, *jt)) return false;
  }
  return true;
}

bool CollinearityReport::has_noncollinear_pair(const std::set<int>& K) const {
  for (auto it = K.begin(); it != K.end(); ++it) {
    auto jt = it;
    for (++jt; jt != K.end(); ++jt)
      if (!collinear(*it, *jt)) return true;
  }
  return false;
}

CollinearityReport collinearity(const std::vector<IntVec>& effects, int dim) {
  CollinearityReport rep;
  rep.dim = dim;
  for (int i = 1; i <= dim; ++i) {
    bool fixed = true;
    for (const auto& u : effects)
      if (u(i) != 0) {
        fixed = false;
        break;
      }
    if (fixed) rep.fixed.insert(i);
  }
  for (int i = 1; i <= dim; ++i) {
    if (rep.fixed.count(i)) continue;
    for (int j = i + 1; j <= dim; ++j) {
      if (rep.fixed.count(j)) continue;
      std::optional<Rat> a;
      bool ok = true;
      for (const auto& u : effects) {
        if (u(j) == 0) {
          if (u(i) != 0) {
            ok = false;
            break;
          }
          continue;
        }
        Rat cand(u(i), u(j));
        cand.canonicalize();
        if (!a) {
          a = cand;
        } else if (*a != cand) {
          ok = false;
          break;
        }
      }
      // i not fixed forces some u(i) != 0, hence a is set and nonzero
      if (ok && a && *a != 0) rep.pairs.emplace(std::make_pair(i, j), *a);
    }
  }
  return rep;
}

CollinearityReport collinearity(const SequentialVas& s) { return collinearity(s.base, s.dim); }

CollinearityReport collinearity(const Vass& v) { return collinearity(v.effects(), v.dim()); }

std::vector<IntVec> row_pairs(const IntVec& u, const IntVec& v) {
  if (u.dim() != v.dim()) throw MalformedError("row_pairs: dimension mismatch");
  std::vector<IntVec> rs;
  rs.reserve(static_cast<std::size_t>(u.dim()));
  for (int l = 1; l <= u.dim(); ++l) rs.push_back(IntVec(std::vector<Int>{u(l), v(l)}));
  return rs;
}

namespace {

Int cross2(const IntVec& a, const IntVec& b) { return a(1) * b(2) - a(2) * b(1); }

IntVec primitive(const IntVec& v) {
  Int a1 = abs_int(v(1)), a2 = abs_int(v(2));
  Int g;
  mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
  if (g <= 1) return v;
  return IntVec(std::vector<Int>{v(1) / g, v(2) / g});
}

}  // namespace

std::optional<IntVec> is_projective(const IntVec& u, const IntVec& v) {
  std::vector<IntVec> rs = row_pairs(u, v);
  std::vector<IntVec> nonzero;
  for (const auto& r : rs)
    if (!r.is_zero()) nonzero.push_back(r);
  if (nonzero.empty()) return IntVec{1, 0};  // vacuous: no nonzero r to separate

  std::vector<int> sel = minimal_cone_generators_2d(nonzero);
  if (sel.size() > 2) return std::nullopt;

  IntVec n{0, 0};
  if (sel.size() == 1) {
    n = primitive(nonzero[static_cast<std::size_t>(sel[0])]);
  } else {
    const IntVec& a = nonzero[static_cast<std::size_t>(sel[0])];
    const IntVec& b = nonzero[static_cast<std::size_t>(sel[1])];
    Int det = cross2(a, b);
    if (det == 0) return std::nullopt;  // opposite rays: the cone is a full line
    // solve <n,a> = <n,b> = c for the smallest integral scale
    RatVec nr{Rat(b(2) - a(2), det), Rat(a(1) - b(1), det)};
    for (auto& x : nr) x.canonicalize();
    n = scale_to_integer(nr);
    if (n.inner(a) < 0) n = -n;
  }
  for (const auto& r : nonzero)
    if (n.inner(r) <= 0) throw InternalError("is_projective: separator construction failed");
  return n;
}

ProjectionCertificate sign_reflecting_projection(const IntVec& u, const IntVec& v) {
  SpanReducer red(u.dim());
  red.add(u);
  red.add(v);
  if (red.rank() != 2) throw PreconditionError("sign_reflecting_projection: span must be 2-dimensional");
  auto witness = is_projective(u, v);
  if (!witness) throw PreconditionError("sign_reflecting_projection: span is not projective");

  std::vector<IntVec> rs = row_pairs(u, v);
  std::vector<IntVec> nonzero;
  std::vector<int> coord_of;
  for (int l = 1; l <= u.dim(); ++l) {
    if (!rs[static_cast<std::size_t>(l - 1)].is_zero()) {
      nonzero.push_back(rs[static_cast<std::size_t>(l - 1)]);
      coord_of.push_back(l);
    }
  }
  std::vector<int> sel = minimal_cone_generators_2d(nonzero);
  if (sel.size() != 2) throw InternalError("sign_reflecting_projection: expected two extreme rays");
  int i = coord_of[static_cast<std::size_t>(sel[0])];
  int j = coord_of[static_cast<std::size_t>(sel[1])];
  Int det = u(i) * v(j) - u(j) * v(i);
  if (det == 0) throw InternalError("sign_reflecting_projection: singular extreme-ray submatrix");
  if (det < 0) {
    std::swap(i, j);
    det = -det;
  }
  ProjectionCertificate cert;
  cert.i = i;
  cert.j = j;
  cert.witness_n = std::move(*witness);
  cert.c = det;
  cert.axis_u = v(j) * u - u(j) * v;
  cert.axis_v = u(i) * v - v(i) * u;
  if (!cert.axis_u.is_nonneg() || !cert.axis_v.is_nonneg())
    throw InternalError("sign_reflecting_projection: canonical axes not nonnegative");
  if (cert.axis_u(i) != cert.c || cert.axis_u(j) != 0 || cert.axis_v(i) != 0 || cert.axis_v(j) != cert.c)
    throw InternalError("sign_reflecting_projection: axes do not restrict to (c,0),(0,c)");
  return cert;
}

IntVec shift(const IntVec& x, const ProjectionCertificate& cert) {
  return cert.c * x - x(cert.i) * cert.axis_u - x(cert.j) * cert.axis_v;
}

IntVec nonprojective_normal(const IntVec& u, const IntVec& v) {
  SpanReducer red(u.dim());
  red.add(u);
  red.add(v);
  if (red.rank() != 2) throw PreconditionError("nonprojective_normal: span must be 2-dimensional");
  if (is_projective(u, v)) throw PreconditionError("nonprojective_normal: span is projective");

  std::vector<IntVec> rs = row_pairs(u, v);
  std::vector<IntVec> nonzero;
  std::vector<int> coord_of;
  for (int l = 1; l <= u.dim(); ++l) {
    if (!rs[static_cast<std::size_t>(l - 1)].is_zero()) {
      nonzero.push_back(rs[static_cast<std::size_t>(l - 1)]);
      coord_of.push_back(l);
    }
  }
  std::vector<int> sel = minimal_cone_generators_2d(nonzero);
  if (sel.size() < 3) throw InternalError("nonprojective_normal: expected at least three extreme rays");

  const int d = u.dim();
  const int m = static_cast<int>(sel.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int c = b + 1; c < m; ++c) {
        int tri[3] = {sel[static_cast<std::size_t>(a)], sel[static_cast<std::size_t>(b)], sel[static_cast<std::size_t>(c)]};
        for (int kk = 2; kk >= 0; --kk) {
          int k = tri[kk];
          int i = tri[kk == 0 ? 1 : 0];
          int j = tri[kk == 2 ? 1 : 2];
          const IntVec& ri = nonzero[static_cast<std::size_t>(i)];
          const IntVec& rj = nonzero[static_cast<std::size_t>(j)];
          const IntVec& rk = nonzero[static_cast<std::size_t>(k)];
          Int det = cross2(ri, rj);
          if (det == 0) continue;
          // r_k = alpha r_i + beta r_j, scaled by |det| to stay integral
          Int ca = cross2(rk, rj), cb = cross2(ri, rk);
          if (det < 0) {
            ca = -ca;
            cb = -cb;
          }
          if (ca > 0 || cb > 0) continue;  // need alpha, beta <= 0
          IntVec n = IntVec::zero(d);
          n(coord_of[static_cast<std::size_t>(k)]) = abs_int(det);
          n(coord_of[static_cast<std::size_t>(i)]) += -ca;
          n(coord_of[static_cast<std::size_t>(j)]) += -cb;
          Int g = 0;
          for (int l = 1; l <= d; ++l) {
            Int x = abs_int(n(l));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
          }
          if (g > 1)
            for (int l = 1; l <= d; ++l) n(l) /= g;
          if (n.inner(u) != 0 || n.inner(v) != 0 || !n.is_nonneg() || n.is_zero())
            throw InternalError("nonprojective_normal: constructed vector fails its conditions");
          return n;
        }
      }
    }
  }
  throw InternalError("nonprojective_normal: no triple with nonpositive coefficients");
}

ConeByFour cone_by_four(const IntVec& u, const IntVec& v) {
  const int d = u.dim();
  std::vector<IntVec> rs = row_pairs(u, v);
  ConeByFour out;

  std::vector<int> nonzero_coords;
  for (int l = 1; l <= d; ++l)
    if (!rs[static_cast<std::size_t>(l - 1)].is_zero()) nonzero_coords.push_back(l);

  if (nonzero_coords.empty()) {
    // span{u,v} = {0}: every x(l) is 0, any coordinate serves as anchor
    out.I = {1};
    for (int l = 1; l <= d; ++l) out.tuples.push_back({Int(1), Int(0), Int(0), 1, 1});
    return out;
  }

  Int N = 0;
  for (int l : nonzero_coords) N = std::max(N, rs[static_cast<std::size_t>(l - 1)].norm());
  IntVec n(std::vector<Int>{N + 1, Int(1)});  // orthogonal to no nonzero r

  std::vector<int> side_coords[2];
  for (int l : nonzero_coords) {
    Int ip = n.inner(rs[static_cast<std::size_t>(l - 1)]);
    if (ip == 0) throw InternalError("cone_by_four: direction hit an r-vector orthogonally");
    side_coords[ip > 0 ? 0 : 1].push_back(l);
  }

  std::vector<int> selected[2];
  for (int s = 0; s < 2; ++s) {
    if (side_coords[s].empty()) continue;
    std::vector<IntVec> side_vecs;
    for (int l : side_coords[s]) side_vecs.push_back(rs[static_cast<std::size_t>(l - 1)]);
    std::vector<int> sel = minimal_cone_generators_2d(side_vecs);
    if (sel.size() > 2) throw InternalError("cone_by_four: open half-plane side needs more than two rays");
    for (int k : sel) selected[s].push_back(side_coords[s][static_cast<std::size_t>(k)]);
  }
  for (int s = 0; s < 2; ++s)
    for (int l : selected[s]) out.I.push_back(l);
  std::sort(out.I.begin(), out.I.end());

  auto represent = [&](int l) -> ConeByFour::Tuple {
    const IntVec& r = rs[static_cast<std::size_t>(l - 1)];
    if (r.is_zero()) return {Int(1), Int(0), Int(0), out.I.front(), out.I.front()};
    int side = n.inner(r) > 0 ? 0 : 1;
    const auto& sel = selected[side];
    if (sel.size() == 1) {
      const IntVec& g = rs[static_cast<std::size_t>(sel[0] - 1)];
      // r = (p/q) g with p, q > 0
      Int p, q;
      if (g(1) != 0) {
        p = r(1);
        q = g(1);
      } else {
        p = r(2);
        q = g(2);
      }
      if (q < 0) {
        p = -p;
        q = -q;
      }
      if (p < 0 || cross2(g, r) != 0) throw InternalError("cone_by_four: single-ray side mismatch");
      Int gg;
      mpz_gcd(gg.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      if (gg > 1) {
        p /= gg;
        q /= gg;
      }
      return {q, p, Int(0), sel[0], sel[0]};
    }
    const IntVec& ga = rs[static_cast<std::size_t>(sel[0] - 1)];
    const IntVec& gb = rs[static_cast<std::size_t>(sel[1] - 1)];
    Int det = cross2(ga, gb);
    if (det == 0) throw InternalError("cone_by_four: parallel extreme rays on one side");
    Int ca = cross2(r, gb), cb = cross2(ga, r);
    if (det < 0) {
      ca = -ca;
      cb = -cb;
      det = -det;
    }
    if (ca < 0 || cb < 0) throw InternalError("cone_by_four: negative cone coefficients");
    Int g = det;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ca.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cb.get_mpz_t());
    if (g > 1) {
      det /= g;
      ca /= g;
      cb /= g;
    }
    if (cb == 0) return {det, ca, Int(0), sel[0], sel[0]};
    if (ca == 0) return {det, cb, Int(0), sel[1], sel[1]};
    return {det, ca, cb, sel[0], sel[1]};
  };
  for (int l = 1; l <= d; ++l) out.tuples.push_back(represent(l));
  return out;
}

}  // namespace vasreach
