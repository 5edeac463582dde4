// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace vasreach {

namespace {

struct BfsNode {
  Config cfg;
  int parent;
  int via_transition;
  long depth;
};

Path rebuild_path(const std::vector<BfsNode>& nodes, int idx) {
  std::vector<int> rev;
  while (nodes[static_cast<std::size_t>(idx)].parent >= 0) {
    rev.push_back(nodes[static_cast<std::size_t>(idx)].via_transition);
    idx = nodes[static_cast<std::size_t>(idx)].parent;
  }
  Path p;
  p.transitions.assign(rev.rbegin(), rev.rend());
  return p;
}

}  // namespace

ReachResult reach_bfs(const Vass& v, const Config& s, const Config& t, const SearchBudget& budget) {
  if (s.vec.dim() != v.dim() || t.vec.dim() != v.dim()) throw MalformedError("reach_bfs: dimension mismatch");
  if (!s.vec.is_nonneg() || !t.vec.is_nonneg()) throw MalformedError("reach_bfs: configurations must be nonnegative");

  ReachResult res;
  bool norm_truncated = false;

  std::vector<BfsNode> nodes;
  std::unordered_map<Config, int, ConfigHash> seen;
  nodes.push_back(BfsNode{s, -1, -1, 0});
  seen.emplace(s, 0);
  if (s == t) {
    res.verdict = ReachVerdict::Reachable;
    res.shortest_len = 0;
    res.definitive = true;
    return res;
  }

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop_front();
    const long depth = nodes[static_cast<std::size_t>(cur)].depth;
    if (depth >= budget.max_len) continue;
    if (++res.states_expanded > budget.max_states_expanded) {
      res.verdict = ReachVerdict::Inconclusive;
      return res;
    }
    const Config cfg = nodes[static_cast<std::size_t>(cur)].cfg;
    for (std::size_t ti = 0; ti < v.transitions().size(); ++ti) {
      const Transition& tr = v.transitions()[ti];
      if (tr.src != cfg.state) continue;
      Config nxt{tr.dst, cfg.vec + tr.effect};
      if (!nxt.vec.is_nonneg()) continue;
      if (nxt.vec.norm() > budget.max_norm) {
        norm_truncated = true;
        continue;
      }
      if (seen.count(nxt)) continue;
      int idx = static_cast<int>(nodes.size());
      nodes.push_back(BfsNode{nxt, cur, static_cast<int>(ti), depth + 1});
      seen.emplace(std::move(nxt), idx);
      if (nodes.back().cfg == t) {
        res.verdict = ReachVerdict::Reachable;
        res.shortest_len = depth + 1;
        res.witness = rebuild_path(nodes, idx);
        return res;
      }
      frontier.push_back(idx);
    }
  }
  res.verdict = ReachVerdict::UnreachableWithinBudget;
  res.definitive = !norm_truncated;
  return res;
}

ReachResult reach_bfs(const ReachInstance& inst, const SearchBudget& budget) {
  return reach_bfs(inst.expanded(), inst.source, inst.target, budget);
}

LenSet len_set(const Vass& v, const Config& s, const Config& t, long L, const SearchBudget& budget) {
  LenSet out;
  out.horizon = L;
  long expanded = 0;
  std::set<Config> layer{s};
  for (long l = 0; l <= L; ++l) {
    if (layer.count(t)) out.lengths.insert(l);
    if (l == L) break;
    std::set<Config> next;
    for (const Config& cfg : layer) {
      if (++expanded > budget.max_states_expanded) {
        out.inconclusive = true;
        return out;
      }
      for (std::size_t ti = 0; ti < v.transitions().size(); ++ti) {
        const Transition& tr = v.transitions()[ti];
        if (tr.src != cfg.state) continue;
        Config nxt{tr.dst, cfg.vec + tr.effect};
        if (!nxt.vec.is_nonneg()) continue;
        if (nxt.vec.norm() > budget.max_norm) continue;
        next.insert(std::move(nxt));
      }
    }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return out;
}

LenSet len_set(const ReachInstance& inst, long L, const SearchBudget& budget) {
  return len_set(inst.expanded(), inst.source, inst.target, L, budget);
}

// --- Karp-Miller coverability ---

namespace {

struct ExtNat {
  bool omega = false;
  Int v;

  bool geq(const Int& x) const { return omega || v >= x; }
  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.omega == b.omega && (a.omega || a.v == b.v);
  }
  // a <= b with omega on top
  static bool leq(const ExtNat& a, const ExtNat& b) {
    if (b.omega) return true;
    if (a.omega) return false;
    return a.v <= b.v;
  }
};

using ExtVec = std::vector<ExtNat>;

bool ext_leq(const ExtVec& a, const ExtVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!ExtNat::leq(a[i], b[i])) return false;
  return true;
}

struct KmNode {
  StateId state;
  ExtVec vec;
  int parent;
};

}  // namespace

bool coverable(const Vass& v, const Config& from, const Config& target) {
  if (from.vec.dim() != v.dim() || target.vec.dim() != v.dim())
    throw MalformedError("coverable: dimension mismatch");
  const int d = v.dim();

  auto covers = [&](const KmNode& n) {
    if (n.state != target.state) return false;
    for (int i = 0; i < d; ++i)
      if (!n.vec[static_cast<std::size_t>(i)].geq(target.vec(i + 1))) return false;
    return true;
  };

  std::vector<KmNode> nodes;
  ExtVec start(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) start[static_cast<std::size_t>(i)].v = from.vec(i + 1);
  nodes.push_back(KmNode{from.state, std::move(start), -1});
  if (covers(nodes[0])) return true;

  std::deque<int> work{0};
  while (!work.empty()) {
    int cur = work.front();
    work.pop_front();
    for (const Transition& tr : v.transitions()) {
      if (tr.src != nodes[static_cast<std::size_t>(cur)].state) continue;
      ExtVec succ = nodes[static_cast<std::size_t>(cur)].vec;
      bool ok = true;
      for (int i = 0; i < d; ++i) {
        auto& e = succ[static_cast<std::size_t>(i)];
        if (e.omega) continue;
        e.v += tr.effect(i + 1);
        if (e.v < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // omega acceleration against strictly dominated ancestors
      for (int anc = cur; anc >= 0; anc = nodes[static_cast<std::size_t>(anc)].parent) {
        const KmNode& a = nodes[static_cast<std::size_t>(anc)];
        if (a.state != tr.dst) continue;
        if (ext_leq(a.vec, succ) && !(a.vec == succ)) {
          for (int i = 0; i < d; ++i) {
            auto& e = succ[static_cast<std::size_t>(i)];
            const auto& ae = a.vec[static_cast<std::size_t>(i)];
            if (!e.omega && !ae.omega && ae.v < e.v) e.omega = true;
          }
        }
      }
      // discard if dominated by any existing node of the same state
      bool dominated = false;
      for (const KmNode& n : nodes) {
        if (n.state == tr.dst && ext_leq(succ, n.vec)) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      KmNode node{tr.dst, std::move(succ), cur};
      if (covers(node)) return true;
      nodes.push_back(std::move(node));
      work.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  return false;
}

std::optional<Path> cover_witness(const Vass& v, const Config& from, const Config& target, const SearchBudget& budget) {
  if (from.vec.dim() != v.dim() || target.vec.dim() != v.dim())
    throw MalformedError("cover_witness: dimension mismatch");

  auto covers = [&](const Config& c) { return c.state == target.state && c.vec.dominates(target.vec); };
  if (covers(from)) return Path{};

  std::vector<BfsNode> nodes{BfsNode{from, -1, -1, 0}};
  std::unordered_map<Config, int, ConfigHash> seen{{from, 0}};
  std::deque<int> frontier{0};
  long expanded = 0;
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop_front();
    if (nodes[static_cast<std::size_t>(cur)].depth >= budget.max_len) continue;
    if (++expanded > budget.max_states_expanded) return std::nullopt;
    const Config cfg = nodes[static_cast<std::size_t>(cur)].cfg;
    for (std::size_t ti = 0; ti < v.transitions().size(); ++ti) {
      const Transition& tr = v.transitions()[ti];
      if (tr.src != cfg.state) continue;
      Config nxt{tr.dst, cfg.vec + tr.effect};
      if (!nxt.vec.is_nonneg() || nxt.vec.norm() > budget.max_norm) continue;
      if (seen.count(nxt)) continue;
      int idx = static_cast<int>(nodes.size());
      nodes.push_back(BfsNode{nxt, cur, static_cast<int>(ti), nodes[static_cast<std::size_t>(cur)].depth + 1});
      seen.emplace(nxt, idx);
      if (covers(nxt)) return rebuild_path(nodes, idx);
      frontier.push_back(idx);
    }
  }
  return std::nullopt;
}

SimpleCycles enumerate_simple_cycles(const Vass& v, long cap) {
  SimpleCycles out;
  const int n = v.num_states();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < v.transitions().size(); ++t)
    adj[static_cast<std::size_t>(v.transitions()[t].src)].push_back(static_cast<int>(t));

  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  std::vector<int> edge_stack;

  for (StateId s = 0; s < n && !out.truncated; ++s) {
    std::function<void(StateId)> dfs = [&](StateId cur) {
      if (out.truncated) return;
      for (int ti : adj[static_cast<std::size_t>(cur)]) {
        if (out.truncated) return;
        const Transition& tr = v.transition(ti);
        if (tr.dst < s) continue;  // cycles are anchored at their least state
        if (tr.dst == s) {
          if (static_cast<long>(out.cycles.size()) >= cap) {
            out.truncated = true;
            return;
          }
          Path c;
          c.transitions = edge_stack;
          c.transitions.push_back(ti);
          out.effects.push_back(effect(v, c));
          out.cycles.push_back(std::move(c));
        } else if (!on_path[static_cast<std::size_t>(tr.dst)]) {
          on_path[static_cast<std::size_t>(tr.dst)] = true;
          edge_stack.push_back(ti);
          dfs(tr.dst);
          edge_stack.pop_back();
          on_path[static_cast<std::size_t>(tr.dst)] = false;
        }
      }
    };
    on_path[static_cast<std::size_t>(s)] = true;
    dfs(s);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return out;
}

bool subset_sum_bruteforce(const std::vector<Int>& S, const Int& target) {
  if (S.size() > 24) throw PreconditionError("subset_sum_bruteforce: |S| must be <= 24");
  for (const auto& a : S)
    if (a < 0) throw PreconditionError("subset_sum_bruteforce: values must be naturals");
  if (target < 0) return false;

  std::function<bool(std::size_t, Int)> rec = [&](std::size_t i, Int remaining) -> bool {
    if (remaining == 0) return true;
    if (i == S.size() || remaining < 0) return false;
    return rec(i + 1, remaining - S[i]) || rec(i + 1, remaining);
  };
  return rec(0, target);
}

}  // namespace vasreach
