// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/pumping.hpp"

#include <algorithm>

namespace vasreach {

namespace {

std::set<int> ub_of_range(const std::vector<Config>& configs, long from, long to, const Int& B, int dim) {
  std::set<int> out;
  for (int i = 1; i <= dim; ++i) {
    for (long j = from; j <= to; ++j) {
      if (configs[static_cast<std::size_t>(j)].vec(i) >= B) {
        out.insert(i);
        break;
      }
    }
  }
  return out;
}

UbReport report_of_range(const std::vector<Config>& configs, long from, long to, const Int& B, int dim) {
  UbReport rep;
  rep.threshold = B;
  for (int i = 1; i <= dim; ++i) {
    for (long j = from; j <= to; ++j) {
      if (configs[static_cast<std::size_t>(j)].vec(i) >= B) {
        rep.ub.insert(i);
        rep.first_exceed.emplace(i, j);
        break;
      }
    }
  }
  return rep;
}

}  // namespace

UbReport ub_set(const Vass& v, const Run& run, const Int& B) {
  std::vector<Config> configs = run_configs(v, run);
  return report_of_range(configs, 0, static_cast<long>(configs.size()) - 1, B, v.dim());
}

RunSplit dichotomy_split(const Vass& v, const Run& run, const Int& B, DichotomyMode mode,
                         const CollinearityReport* collinearity_report) {
  const int d = v.dim();
  if (mode == DichotomyMode::Quasi) {
    if (collinearity_report == nullptr)
      throw PreconditionError("dichotomy_split: quasi mode needs a collinearity report");
    if (collinearity_report->has_negative_pair())
      throw PreconditionError("dichotomy_split: quasi mode forbids negatively collinear pairs");
  }
  std::vector<Config> configs = run_configs(v, run);
  const long n = static_cast<long>(configs.size()) - 1;

  auto complement = [&](const std::set<int>& ub) {
    std::set<int> c;
    for (int i = 1; i <= d; ++i)
      if (!ub.count(i)) c.insert(i);
    return c;
  };
  // bounded-kind predicate of one part; its negation is the unbounded kind
  auto bounded_part = [&](long from, long to, const Int& thr) {
    std::set<int> ub = ub_of_range(configs, from, to, thr, d);
    if (mode == DichotomyMode::Almost) return static_cast<int>(ub.size()) <= d - 2;
    return collinearity_report->has_noncollinear_pair(complement(ub));
  };

  const Int bounded_thr = B + v.size();
  auto make = [&](SplitKind kind, long split, const Int& thr) {
    RunSplit rs;
    rs.kind = kind;
    rs.split_index = split;
    rs.threshold_used = thr;
    rs.part1 = report_of_range(configs, 0, split, thr, d);
    rs.part2 = report_of_range(configs, split, n, thr, d);
    return rs;
  };
  const SplitKind unbounded_tag = mode == DichotomyMode::Almost ? SplitKind::AlmostUnbounded : SplitKind::QuasiUnbounded;
  const SplitKind bounded_tag = mode == DichotomyMode::Almost ? SplitKind::AlmostBounded : SplitKind::QuasiBounded;

  // start configuration already of the unbounded kind: empty prefix split
  if (!bounded_part(0, 0, B)) return make(unbounded_tag, 0, B);

  // longest prefix of the bounded kind at B
  long longest = 0;
  while (longest < n && bounded_part(0, longest + 1, B)) ++longest;
  if (longest == n) return make(bounded_tag, n, bounded_thr);

  // the prefix extended by one transition flips to the unbounded kind
  if (!bounded_part(longest + 1, n, B)) return make(unbounded_tag, longest + 1, B);
  return make(bounded_tag, longest + 1, bounded_thr);
}

RackoffSchedule rackoff_schedule(const Int& U, const Int& M, int d) {
  RackoffSchedule s;
  s.H.resize(static_cast<std::size_t>(d) + 1);
  s.L.resize(static_cast<std::size_t>(d) + 1);
  s.H[0] = 0;
  s.L[0] = M;
  for (int i = 1; i <= d; ++i) {
    s.H[static_cast<std::size_t>(i)] = U + s.L[static_cast<std::size_t>(i - 1)] * M;
    Int pw = 1;
    for (int k = 0; k < i; ++k) pw *= s.H[static_cast<std::size_t>(i)];
    s.L[static_cast<std::size_t>(i)] = M * pw + s.L[static_cast<std::size_t>(i - 1)];
  }
  return s;
}

RackoffResult rackoff_extract(const Vass& v, const Run& run, const Int& U, const Int& M) {
  if (M < v.size()) throw PreconditionError("rackoff_extract: requires M >= size(V)");
  const int d = v.dim();
  RackoffSchedule sched = rackoff_schedule(U, M, d);

  // positions into the original transition sequence; deletions splice it
  std::vector<long> cur(run.path.transitions.size());
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = static_cast<long>(i);

  RackoffResult result;
  std::set<int> live;
  for (int i = 1; i <= d; ++i) live.insert(i);

  auto configs_of = [&]() {
    // Z-replay over the full space; dropped coordinates may dip negative
    std::vector<Config> cs;
    cs.reserve(cur.size() + 1);
    Config c = run.start;
    cs.push_back(c);
    for (long pos : cur) {
      const Transition& tr = v.transition(run.path.transitions[static_cast<std::size_t>(pos)]);
      c.vec += tr.effect;
      c.state = tr.dst;
      cs.push_back(c);
    }
    return cs;
  };
  auto live_key = [&](const Config& c) {
    std::vector<Int> k{Int(c.state)};
    for (int i : live) k.push_back(c.vec(i));
    return k;
  };

  long seg = 0;  // active segment start, as a configuration index over cur
  while (!live.empty()) {
    const Int& H = sched.H[live.size()];
    std::vector<Config> cs = configs_of();
    const long end = static_cast<long>(cur.size());

    // first configuration (segment start included) crossing H on a live coordinate
    long crossing = -1;
    int crossing_coord = 0;
    for (long j = seg; j <= end && crossing < 0; ++j) {
      for (int i : live) {
        if (cs[static_cast<std::size_t>(j)].vec(i) >= H) {
          crossing = j;
          crossing_coord = i;
          break;
        }
      }
    }

    // exhaustively remove repeated-configuration cycles in [seg, stop],
    // earliest start first, longest match for that start
    long stop = crossing < 0 ? end : crossing;
    bool changed = true;
    while (changed) {
      changed = false;
      cs = configs_of();
      for (long a = seg; a <= stop && !changed; ++a) {
        long match = -1;
        for (long b = stop; b > a; --b) {
          if (live_key(cs[static_cast<std::size_t>(a)]) == live_key(cs[static_cast<std::size_t>(b)])) {
            match = b;
            break;
          }
        }
        if (match >= 0) {
          result.deletions.emplace_back(a, match);
          cur.erase(cur.begin() + a, cur.begin() + match);
          stop -= match - a;
          changed = true;
        }
      }
    }

    if (crossing < 0) break;
    result.covered.insert(crossing_coord);
    live.erase(crossing_coord);
    seg = stop;  // the crossing configuration opens the next segment
  }

  Path extracted;
  for (long pos : cur) extracted.append(run.path.transitions[static_cast<std::size_t>(pos)]);
  Run out{run.start, std::move(extracted)};
  std::vector<Config> final_cs = run_configs(v, out);  // throws if the subsequence fails to replay
  for (int i : result.covered)
    if (final_cs.back().vec(i) < U)
      throw InternalError("rackoff_extract: target misses U on a covered coordinate");
  result.run = std::move(out);
  return result;
}

Int pump_threshold(const Int& norm_x0, const Int& size) { return (norm_x0 + 1 + size) * (1 + size); }

namespace {

// decompose an expansion transition index: self-loop (state, base index) or bridge
struct SeqTransition {
  bool is_bridge;
  StateId state;
  int base_idx;
};

SeqTransition classify(const SequentialVas& seq, int t) {
  const int stride = static_cast<int>(seq.base.size()) + 1;
  int j = t / stride;
  int r = t % stride;
  if (r < static_cast<int>(seq.base.size())) return {false, j, r};
  return {true, j + 1, -1};
}

void require_wide_no_fixed(const SequentialVas& seq, const char* who) {
  if (!is_wide(seq)) throw PreconditionError(std::string(who) + ": sequential VAS must be wide");
  if (!collinearity(seq).fixed.empty())
    throw PreconditionError(std::string(who) + ": sequential VAS must have no fixed coordinates");
}

}  // namespace

std::optional<PumpCertificate> pump_witness(const SequentialVas& seq, const Run& run, const Int& Bval,
                                            const std::set<int>& positive_block) {
  seq.validate();
  (void)Bval;  // the threshold shapes the caller's hypotheses; validity is re-checked by replay
  Vass exp = expand_sequential(seq);
  std::vector<Config> cs = run_configs(exp, run);
  const Config& endc = cs.back();
  const int d = seq.dim;

  // base transitions positive on the whole block; under wideness with no
  // fixed coordinates and a pairwise positively collinear block at least one
  // exists, and under the lemma's threshold hypotheses the first one already
  // yields a valid certificate
  std::vector<int> candidates;
  for (std::size_t b = 0; b < seq.base.size(); ++b) {
    bool ok = true;
    for (int i : positive_block)
      if (seq.base[b](i) <= 0) {
        ok = false;
        break;
      }
    if (ok) candidates.push_back(static_cast<int>(b));
  }
  if (candidates.empty()) {
    if (positive_block.empty()) {
      candidates.push_back(-1);  // empty pump prefix, self-loop segments only
    } else if (is_wide(seq) && collinearity(seq).fixed.empty()) {
      throw InternalError("pump_witness: no base transition positive on the block");
    } else {
      return std::nullopt;
    }
  }

  Int H = run.start.vec.norm() + 1 + exp.size();
  for (int chosen : candidates) {
    Path cycle;
    if (chosen >= 0) {
      long reps = to_long(H);
      for (long r = 0; r < reps; ++r) cycle.append(seq.self_loop_index(endc.state, chosen));
    }
    // the run's self-loop segments, replayed at the final state
    for (int t : run.path.transitions) {
      SeqTransition st = classify(seq, t);
      if (!st.is_bridge) cycle.append(seq.self_loop_index(endc.state, st.base_idx));
    }
    ReplayResult rr = replay(exp, endc, cycle, Semantics::N);
    if (!rr.ok()) continue;
    IntVec delta = effect(exp, cycle);
    bool positive = true;
    for (int i = 1; i <= d; ++i)
      if (delta(i) < 1) {
        positive = false;
        break;
      }
    if (positive) return PumpCertificate{std::move(cycle), PumpDirection::Forward};
  }
  return std::nullopt;
}

std::optional<ExtractPumpableResult> extract_pumpable(const SequentialVas& seq, const Run& run, const Int& P_value) {
  require_wide_no_fixed(seq, "extract_pumpable");
  Vass exp = expand_sequential(seq);
  const int d = seq.dim;
  UbReport ub = ub_set(exp, run, P_value);
  if (static_cast<int>(ub.ub.size()) < d - 1) return std::nullopt;

  Int B = pump_threshold(run.start.vec.norm(), exp.size());
  RackoffResult rk = rackoff_extract(exp, run, B, exp.size());
  std::vector<Config> cs = run_configs(exp, rk.run);
  Config endc = cs.back();
  std::set<int> block;
  for (int i = 1; i <= d; ++i)
    if (endc.vec(i) < B) block.insert(i);
  if (static_cast<int>(block.size()) > 1) return std::nullopt;

  auto cert = pump_witness(seq, rk.run, B, block);
  if (!cert) return std::nullopt;
  return ExtractPumpableResult{std::move(rk.run), std::move(endc), std::move(*cert)};
}

std::optional<Path> short_z_run(const SequentialVas& seq, const IntVec& x, const IntVec& y, const Int& bound) {
  seq.validate();
  IntVec bridge_sum = IntVec::zero(seq.dim);
  for (const auto& a : seq.bridges) bridge_sum += a;
  IntVec target = y - x - bridge_sum;

  RatMatrix A = RatMatrix::from_columns(seq.base);
  auto lambda = nonneg_integer_solution(A, target, bound);
  if (!lambda) return std::nullopt;

  Path p;
  for (int j = 1; j <= static_cast<int>(seq.bridges.size()); ++j) p.append(seq.bridge_index(j));
  StateId last = seq.target_state();
  for (int b = 0; b < static_cast<int>(seq.base.size()); ++b) {
    long reps = to_long((*lambda)(b + 1));
    for (long r = 0; r < reps; ++r) p.append(seq.self_loop_index(last, b));
  }
  Vass exp = expand_sequential(seq);
  ReplayResult rr = replay(exp, Config{seq.source_state(), x}, p, Semantics::Z);
  if (!rr.ok() || !(rr.end->vec == y) || rr.end->state != seq.target_state())
    throw InternalError("short_z_run: assembled path misses the target under Z-semantics");
  return p;
}

Run lift_z_run(const SequentialVas& seq, const IntVec& x, const PumpCertificate& fwd, const IntVec& y,
               const PumpCertificate& bwd, const Path& zpath) {
  seq.validate();
  if (fwd.direction != PumpDirection::Forward || bwd.direction != PumpDirection::Backward)
    throw PreconditionError("lift_z_run: certificate directions are swapped");
  Vass exp = expand_sequential(seq);
  Vass rev = reverse(exp);
  const StateId p = seq.source_state();
  const StateId q = seq.target_state();

  ReplayResult fr = replay(exp, Config{p, x}, fwd.cycle, Semantics::N);
  if (!fr.ok() || fr.end->state != p) throw PreconditionError("lift_z_run: forward certificate does not replay");
  IntVec d1 = effect(exp, fwd.cycle);
  for (int i = 1; i <= seq.dim; ++i)
    if (d1(i) < 1) throw PreconditionError("lift_z_run: forward certificate effect below 1");
  ReplayResult br = replay(rev, Config{q, y}, bwd.cycle, Semantics::N);
  if (!br.ok() || br.end->state != q) throw PreconditionError("lift_z_run: backward certificate does not replay");

  ReplayResult zr = replay(exp, Config{p, x}, zpath, Semantics::Z);
  if (!zr.ok() || !(zr.end->vec == y) || zr.end->state != q)
    throw PreconditionError("lift_z_run: zpath does not Z-replay from x to y");

  // zero-length lift: the Z-run may already be a run
  ReplayResult direct = replay(exp, Config{p, x}, zpath, Semantics::N);
  if (direct.ok()) return Run{Config{p, x}, zpath};

  // theta2 as a forward path in the expansion (reverse keeps transition indices)
  Path theta2;
  theta2.transitions.assign(bwd.cycle.transitions.rbegin(), bwd.cycle.transitions.rend());
  IntVec d2 = effect(exp, theta2);
  for (int i = 1; i <= seq.dim; ++i)
    if (d2(i) > -1) throw PreconditionError("lift_z_run: backward certificate effect above -1");

  // lambda0 (-d2 - d1) = sum lambda_i e_i: wideness puts -d2 - d1 in
  // cone(base); an exact rational certificate scaled integral realizes it
  IntVec w = -d2 - d1;
  auto cert = in_cone(w, seq.base);
  if (!cert) throw InfeasibleLiftError("lift_z_run: -d2 - d1 is outside cone(base); wideness violated");
  Int lambda0 = 1;
  for (const auto& c : cert->coefficients) {
    Int den = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lambda0.get_mpz_t(), den.get_mpz_t());
    lambda0 = lambda0 / g * den;
  }
  std::vector<Int> lambda;
  for (const auto& c : cert->coefficients) {
    Rat scaled = c * Rat(lambda0);
    lambda.push_back(scaled.get_num());
  }

  // o: the compensating multiset, fired in generator-index order at p
  Path o;
  for (std::size_t b = 0; b < seq.base.size(); ++b) {
    long reps = to_long(lambda[b]);
    for (long r = 0; r < reps; ++r) o.append(seq.self_loop_index(p, static_cast<int>(b)));
  }
  Path o_rev;
  o_rev.transitions.assign(o.transitions.rbegin(), o.transitions.rend());
  Int n1 = std::max(std::max(drop(exp, o).norm(), drop(rev, o_rev).norm()), Int(1));

  // theta1' = theta1^{n1 lambda0} o^{n1}
  Path theta1p;
  long reps1 = to_long(n1 * lambda0);
  for (long r = 0; r < reps1; ++r) theta1p.append(fwd.cycle);
  long n1l = to_long(n1);
  for (long r = 0; r < n1l; ++r) theta1p.append(o);

  Int n2 = Int(static_cast<long>(zpath.length())) * exp.transition_norm();
  if (n2 <= 0) throw InternalError("lift_z_run: degenerate pumping scale");
  long n2l = to_long(n2);

  Path rho;
  for (long r = 0; r < n2l; ++r) rho.append(theta1p);
  rho.append(zpath);
  long reps2 = to_long(n1 * n2 * lambda0);
  for (long r = 0; r < reps2; ++r) rho.append(theta2);

  Run out{Config{p, x}, std::move(rho)};
  ReplayResult check = replay(exp, out.start, out.path, Semantics::N);
  if (!check.ok() || !(check.end->vec == y) || check.end->state != q)
    throw InternalError("lift_z_run: lifted run fails to replay to the target");
  return out;
}

bool pumpable(const Vass& v, const Config& config, PumpDirection direction) {
  Config target{config.state, config.vec + IntVec::ones(v.dim())};
  if (direction == PumpDirection::Forward) return coverable(v, config, target);
  return coverable(reverse(v), config, target);
}

}  // namespace vasreach
