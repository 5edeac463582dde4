// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/model.hpp"

namespace vasreach {

const std::string Vass::kVasState = "*";

Vass expand_sequential(const SequentialVas& s) {
  s.validate();
  Vass v(s.dim);
  const int k = static_cast<int>(s.bridges.size());
  for (int j = 0; j <= k; ++j) v.intern("q" + std::to_string(j));
  for (int j = 0; j <= k; ++j) {
    for (const auto& a : s.base) v.add_transition(j, a, j);
    if (j < k) v.add_transition(j, s.bridges[static_cast<std::size_t>(j)], j + 1);
  }
  return v;
}

void check_chained(const Vass& v, const Path& p) {
  if (!is_chained(v, p)) throw MalformedError("path is not well-chained");
}

bool is_chained(const Vass& v, const Path& p) {
  for (std::size_t i = 0; i < p.transitions.size(); ++i) {
    int t = p.transitions[i];
    if (t < 0 || t >= static_cast<int>(v.transitions().size())) return false;
    if (i > 0 && v.transition(p.transitions[i - 1]).dst != v.transition(t).src) return false;
  }
  return true;
}

IntVec effect(const Vass& v, const Path& p) {
  check_chained(v, p);
  IntVec sum = IntVec::zero(v.dim());
  for (int t : p.transitions) sum += v.transition(t).effect;
  return sum;
}

IntVec drop(const Vass& v, const Path& p) {
  check_chained(v, p);
  IntVec prefix = IntVec::zero(v.dim());
  IntVec low = IntVec::zero(v.dim());  // coordinate-wise min over prefixes, capped at 0
  for (int t : p.transitions) {
    prefix += v.transition(t).effect;
    for (int i = 1; i <= v.dim(); ++i)
      if (prefix(i) < low(i)) low(i) = prefix(i);
  }
  return -low;
}

ReplayResult replay(const Vass& v, const Config& start, const Path& p, Semantics sem) {
  check_chained(v, p);
  if (start.vec.dim() != v.dim()) throw MalformedError("start vector has wrong dimension");
  if (!p.empty() && v.transition(p.transitions.front()).src != start.state)
    throw MalformedError("start state does not match the path's first transition");
  Config cur = start;
  int step = 0;
  for (int t : p.transitions) {
    ++step;
    const Transition& tr = v.transition(t);
    cur.vec += tr.effect;
    cur.state = tr.dst;
    if (sem == Semantics::N) {
      for (int i = 1; i <= v.dim(); ++i) {
        if (cur.vec(i) < 0) return ReplayResult{std::nullopt, ReplayBlocked{step, i}};
      }
    }
  }
  return ReplayResult{cur, std::nullopt};
}

std::vector<Config> run_configs(const Vass& v, const Run& run) {
  check_chained(v, run.path);
  if (!run.path.empty() && v.transition(run.path.transitions.front()).src != run.start.state)
    throw MalformedError("run start state does not match its path");
  std::vector<Config> out;
  out.reserve(run.path.length() + 1);
  out.push_back(run.start);
  Config cur = run.start;
  for (int t : run.path.transitions) {
    const Transition& tr = v.transition(t);
    cur.vec += tr.effect;
    cur.state = tr.dst;
    if (!cur.vec.is_nonneg()) throw MalformedError("run blocks under N-semantics");
    out.push_back(cur);
  }
  return out;
}

Vass reverse(const Vass& v) {
  Vass r(v.dim());
  for (const auto& name : v.state_names()) r.intern(name);
  for (const auto& t : v.transitions()) r.add_transition(t.dst, -t.effect, t.src);
  return r;
}

Path reverse_path(const Vass& v, const Vass& vrev, const Path& p) {
  check_chained(v, p);
  Path out;
  out.transitions.reserve(p.transitions.size());
  // transition i of v corresponds to transition i of reverse(v)
  (void)vrev;
  for (auto it = p.transitions.rbegin(); it != p.transitions.rend(); ++it) out.append(*it);
  return out;
}

ReachInstance make_vas_instance(int dim, std::vector<IntVec> effects, IntVec s, IntVec t) {
  Vass v = Vass::vas(dim, std::move(effects));
  if (!s.is_nonneg() || !t.is_nonneg()) throw MalformedError("source/target must be nonnegative");
  if (s.dim() != dim || t.dim() != dim) throw MalformedError("source/target dimension mismatch");
  return ReachInstance{std::move(v), Config{0, std::move(s)}, Config{0, std::move(t)}};
}

ReachInstance make_seq_instance(SequentialVas s, IntVec src, IntVec tgt) {
  s.validate();
  if (!src.is_nonneg() || !tgt.is_nonneg()) throw MalformedError("source/target must be nonnegative");
  if (src.dim() != s.dim || tgt.dim() != s.dim) throw MalformedError("source/target dimension mismatch");
  Config cs{s.source_state(), std::move(src)};
  Config ct{s.target_state(), std::move(tgt)};
  return ReachInstance{std::move(s), std::move(cs), std::move(ct)};
}

Int instance_size(const Vass& v, const Config& s, const Config& t) {
  return v.size() + Int(v.dim()) * (s.vec.norm() + t.vec.norm() + 1);
}

Int instance_size(const ReachInstance& inst) {
  return instance_size(inst.expanded(), inst.source, inst.target);
}

}  // namespace vasreach
