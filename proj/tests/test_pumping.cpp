// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "test_util.hpp"
#include "vasreach/pumping.hpp"

using namespace vasreach;
using testutil::Rng;

namespace {

// re-apply a deletion trace and verify every removed chunk is a state cycle
bool check_deletion_trace(const Vass& v, const Run& original, const RackoffResult& rk) {
  std::vector<int> cur = original.path.transitions;
  for (auto [a, b] : rk.deletions) {
    if (a < 0 || b < a || b > static_cast<long>(cur.size())) return false;
    if (a == b) continue;
    StateId before = v.transition(cur[static_cast<std::size_t>(a)]).src;
    StateId after = v.transition(cur[static_cast<std::size_t>(b - 1)]).dst;
    if (before != after) return false;  // removed segment must be a cycle
    cur.erase(cur.begin() + a, cur.begin() + b);
  }
  return cur == rk.run.path.transitions;
}

SequentialVas wide_seq_2d() {
  // base {(1,-1),(-1,1),(1,1),(-1,-1)} is wide with no fixed coordinates
  return SequentialVas{2, {IntVec{1, -1}, IntVec{-1, 1}, IntVec{1, 1}, IntVec{-1, -1}}, {}};
}

}  // namespace

TEST_CASE("ub_set: examples") {
  Vass v = Vass::vas(2, {IntVec{1, 2}, IntVec{1, 3}});
  {
    Vass w = Vass::vas(2, {});
    UbReport r = ub_set(w, Run{Config{0, IntVec{5, 0}}, {}}, 5);
    CHECK(r.ub == std::set<int>{1});
    CHECK(r.first_exceed.at(1) == 0);
  }
  {
    // run reaching max prefix values (3,7)
    Vass w = Vass::vas(2, {IntVec{1, 3}, IntVec{1, 1}, IntVec{1, 3}});
    Run run{Config{0, IntVec{0, 0}}, Path{{0, 1, 2}}};
    UbReport r = ub_set(w, run, 4);
    CHECK(r.ub == std::set<int>{2});
  }
  {
    UbReport r = ub_set(v, Run{Config{0, IntVec{0, 0}}, {}}, 0);
    CHECK(r.ub == std::set<int>{1, 2});
  }
}

TEST_CASE("ub_set is antitone in the threshold") {
  Rng rng(51);
  for (int iter = 0; iter < 50; ++iter) {
    Vass v = testutil::random_vass(rng, 3, 2, 5, 2);
    Config s{0, testutil::random_vec(rng, 3, 0, 3)};
    Run run = testutil::random_run(rng, v, s, 8);
    UbReport lo = ub_set(v, run, 2);
    UbReport hi = ub_set(v, run, 5);
    for (int i : hi.ub) CHECK(lo.ub.count(i));
  }
}

TEST_CASE("dichotomy_split: trivial cases") {
  const int d = 2;
  Vass v = Vass::vas(d, {IntVec{1, 1}, IntVec{-1, -1}});
  {
    // never exceeding B on any coordinate: almost bounded, split at the end
    Run run{Config{0, IntVec{1, 1}}, Path{{0, 1}}};
    RunSplit rs = dichotomy_split(v, run, 50, DichotomyMode::Almost, nullptr);
    CHECK(rs.kind == SplitKind::AlmostBounded);
    CHECK(rs.split_index == 2);
  }
  {
    // start already at (B,B): almost unbounded with the empty prefix
    Run run{Config{0, IntVec{7, 7}}, Path{{1}}};
    RunSplit rs = dichotomy_split(v, run, 7, DichotomyMode::Almost, nullptr);
    CHECK(rs.kind == SplitKind::AlmostUnbounded);
    CHECK(rs.split_index == 0);
  }
}

TEST_CASE("dichotomy_split: returned split satisfies its predicate, recomputed") {
  Rng rng(52);
  for (int iter = 0; iter < 120; ++iter) {
    Vass v = Vass::vas(3, {testutil::random_vec(rng, 3, -2, 2), testutil::random_vec(rng, 3, -2, 2),
                           testutil::random_vec(rng, 3, -2, 2)});
    Config s{0, testutil::random_vec(rng, 3, 0, 4)};
    Run run = testutil::random_run(rng, v, s, 10);
    Int B = testutil::rand_in(rng, 1, 8);
    RunSplit rs = dichotomy_split(v, run, B, DichotomyMode::Almost, nullptr);

    auto configs = run_configs(v, run);
    auto ub_range = [&](long from, long to, const Int& thr) {
      std::set<int> out;
      for (int i = 1; i <= 3; ++i)
        for (long j = from; j <= to; ++j)
          if (configs[static_cast<std::size_t>(j)].vec(i) >= thr) {
            out.insert(i);
            break;
          }
      return out;
    };
    long n = static_cast<long>(configs.size()) - 1;
    if (rs.kind == SplitKind::AlmostUnbounded) {
      CHECK(rs.threshold_used == B);
      CHECK(static_cast<int>(ub_range(0, rs.split_index, B).size()) >= 2);
      CHECK(static_cast<int>(ub_range(rs.split_index, n, B).size()) >= 2);
    } else {
      CHECK(rs.threshold_used == B + v.size());
      CHECK(static_cast<int>(ub_range(0, rs.split_index, rs.threshold_used).size()) <= 1);
      CHECK(static_cast<int>(ub_range(rs.split_index, n, rs.threshold_used).size()) <= 1);
    }
  }
}

TEST_CASE("dichotomy_split: quasi mode with collinearity") {
  // coordinates 1,2 positively collinear; coordinate 3 independent
  Vass v = Vass::vas(3, {IntVec{1, 1, 0}, IntVec{-1, -1, 0}, IntVec{0, 0, 1}, IntVec{0, 0, -1}});
  CollinearityReport rep = collinearity(v);
  REQUIRE(!rep.has_negative_pair());
  Run run{Config{0, IntVec{0, 0, 0}}, Path{{0, 1}}};
  RunSplit rs = dichotomy_split(v, run, 3, DichotomyMode::Quasi, &rep);
  // complement of ub includes {1,2,3}: pair (1,3) is non-collinear -> bounded
  CHECK(rs.kind == SplitKind::QuasiBounded);

  // negatively collinear pair present: precondition violation
  Vass w = Vass::vas(2, {IntVec{1, -1}});
  CollinearityReport repw = collinearity(w);
  Run runw{Config{0, IntVec{0, 5}}, Path{{0}}};
  CHECK_THROWS_AS(dichotomy_split(w, runw, 2, DichotomyMode::Quasi, &repw), PreconditionError);
}

TEST_CASE("rackoff_schedule: recurrence evaluation") {
  RackoffSchedule s = rackoff_schedule(2, 2, 2);
  CHECK(s.H[1] == 6);
  CHECK(s.L[1] == 14);
  CHECK(s.H[2] == 30);
  CHECK(s.L[2] == 1814);
}

TEST_CASE("rackoff_extract: cycle-free low run passes through with repeats removed") {
  Vass v = Vass::vas(1, {IntVec{1}, IntVec{-1}});
  // run 0 -> 1 -> 0 -> 1: the (0->1->0) loop repeats configuration 0
  Run run{Config{0, IntVec{0}}, Path{{0, 1, 0}}};
  RackoffResult rk = rackoff_extract(v, run, 1000000, v.size());
  CHECK(rk.covered.empty());
  CHECK(rk.run.path.length() == 1);
  CHECK(check_deletion_trace(v, run, rk));
}

TEST_CASE("rackoff_extract: crossing coordinate gets covered") {
  Vass v = Vass::vas(2, {IntVec{1, 0}, IntVec{0, 1}, IntVec{-1, 0}});
  // drive coordinate 1 up, wiggle, come back down a bit
  Run run{Config{0, IntVec{0, 0}}, Path{{0, 0, 0, 0, 0, 0, 1, 2, 2}}};
  Int U = 2, M = v.size();
  RackoffSchedule sched = rackoff_schedule(U, M, 2);
  UbReport ub = ub_set(v, run, sched.H[2]);
  RackoffResult rk = rackoff_extract(v, run, U, M);
  for (int i : ub.ub) CHECK(rk.covered.count(i));
  auto configs = run_configs(v, rk.run);
  for (int i : rk.covered) CHECK(configs.back().vec(i) >= U);
  CHECK(check_deletion_trace(v, run, rk));
  CHECK(rk.run.start == run.start);
}

TEST_CASE("rackoff_extract: random runs satisfy the postconditions") {
  Rng rng(53);
  for (int iter = 0; iter < 120; ++iter) {
    Vass v = testutil::random_vass(rng, 2, 3, 5, 2);
    Config s{static_cast<StateId>(testutil::rand_in(rng, 0, v.num_states() - 1)),
             testutil::random_vec(rng, 2, 0, 4)};
    Run run = testutil::random_run(rng, v, s, 12);
    Int U = testutil::rand_in(rng, 1, 3);
    Int M = v.size();
    RackoffResult rk = rackoff_extract(v, run, U, M);
    CHECK(check_deletion_trace(v, run, rk));
    CHECK(rk.run.start == run.start);
    auto configs = run_configs(v, rk.run);  // throws if not a valid run
    for (int i : rk.covered) CHECK(configs.back().vec(i) >= U);
    RackoffSchedule sched = rackoff_schedule(U, M, 2);
    for (int i : ub_set(v, run, sched.H[2]).ub) CHECK(rk.covered.count(i));
    CHECK(static_cast<Int>(rk.run.path.length()) <= sched.L[2]);
  }
}

TEST_CASE("pump_threshold: formula") { CHECK(pump_threshold(1, 4) == 30); }

TEST_CASE("pump_witness: single positive self-loop in dimension 1") {
  SequentialVas seq{1, {IntVec{1}}, {}};
  Run run{Config{0, IntVec{0}}, {}};
  auto cert = pump_witness(seq, run, 0, {1});
  REQUIRE(cert);
  Vass exp = expand_sequential(seq);
  CHECK(effect(exp, cert->cycle).dominates(IntVec{1}));
  CHECK(replay(exp, Config{0, IntVec{0}}, cert->cycle, Semantics::N).ok());
}

TEST_CASE("pump_witness: certificates replay with positive effect") {
  Rng rng(54);
  SequentialVas seq = wide_seq_2d();
  Vass exp = expand_sequential(seq);
  Int B = pump_threshold(0, exp.size());
  for (int iter = 0; iter < 30; ++iter) {
    // climb from the origin above the threshold, then wiggle
    Run run{Config{0, IntVec{0, 0}}, {}};
    long climb = to_long(B) + testutil::rand_in(rng, 0, 4);
    for (long k = 0; k < climb; ++k) run.path.append(seq.self_loop_index(0, 2));
    for (long k = 0; k < testutil::rand_in(rng, 0, 4); ++k) {
      int b = static_cast<int>(testutil::rand_in(rng, 0, 1));
      run.path.append(seq.self_loop_index(0, b));
      run.path.append(seq.self_loop_index(0, 1 - b));
    }
    auto cert = pump_witness(seq, run, B, {});
    REQUIRE(cert);
    Config endc = run_configs(exp, run).back();
    auto rep = replay(exp, endc, cert->cycle, Semantics::N);
    REQUIRE(rep.ok());
    CHECK(effect(exp, cert->cycle).dominates(IntVec{1, 1}));
  }
}

TEST_CASE("extract_pumpable: dimension 1 is always applicable") {
  SequentialVas seq{1, {IntVec{1}, IntVec{-1}}, {}};
  Run run{Config{0, IntVec{0}}, {}};
  auto r = extract_pumpable(seq, run, 1000);
  REQUIRE(r);
  Vass exp = expand_sequential(seq);
  CHECK(coverable(exp, r->config, Config{r->config.state, r->config.vec + IntVec::ones(1)}));
}

TEST_CASE("extract_pumpable: bounded below threshold on >= 2 coordinates yields none") {
  SequentialVas seq = wide_seq_2d();
  Run run{Config{0, IntVec{0, 0}}, {}};
  CHECK(!extract_pumpable(seq, run, 1000000));
}

TEST_CASE("extract_pumpable: certificate confirmed by the coverability oracle") {
  SequentialVas seq = wide_seq_2d();
  Vass exp = expand_sequential(seq);
  Int B = pump_threshold(0, exp.size());
  // drive both coordinates above B with the (1,1) loop
  Run run{Config{0, IntVec{0, 0}}, {}};
  long reps = to_long(B) + 3;
  for (long k = 0; k < reps; ++k) run.path.append(seq.self_loop_index(0, 2));
  auto r = extract_pumpable(seq, run, B);
  REQUIRE(r);
  CHECK(pumpable(exp, r->config, PumpDirection::Forward));
  CHECK(coverable(exp, r->config, Config{r->config.state, r->config.vec + IntVec::ones(2)}));
}

TEST_CASE("short_z_run: examples") {
  {
    SequentialVas seq{1, {IntVec{1}}, {}};
    auto p = short_z_run(seq, IntVec{0}, IntVec{3}, 10);
    REQUIRE(p);
    CHECK(p->length() == 3);
  }
  {
    SequentialVas seq{1, {IntVec{2}}, {}};
    CHECK(!short_z_run(seq, IntVec{0}, IntVec{3}, 10));
  }
  {
    SequentialVas seq{2, {IntVec{1, 0}, IntVec{0, 1}}, {IntVec{-1, -1}}};
    auto p = short_z_run(seq, IntVec{1, 1}, IntVec{2, 2}, 10);
    REQUIRE(p);
    Vass exp = expand_sequential(seq);
    auto rep = replay(exp, Config{0, IntVec{1, 1}}, *p, Semantics::Z);
    REQUIRE(rep.ok());
    CHECK(rep.end->vec == IntVec{2, 2});
    CHECK(rep.end->state == seq.target_state());
  }
}

TEST_CASE("lift_z_run: zero-length lift accepted when the Z-run already replays") {
  SequentialVas seq = wide_seq_2d();
  Vass exp = expand_sequential(seq);
  IntVec x{5, 5};
  // forward certificate pumps with (1,1); backward uses the (-1,-1) loop,
  // whose effect in the reverse system is (1,1)
  Path up, down;
  up.append(seq.self_loop_index(0, 2));
  down.append(seq.self_loop_index(0, 3));
  PumpCertificate fwd{up, PumpDirection::Forward};
  PumpCertificate bwd{down, PumpDirection::Backward};
  Run lifted = lift_z_run(seq, x, fwd, x, bwd, Path{});
  CHECK(lifted.path.empty());
}

TEST_CASE("lift_z_run: lifts a genuinely blocked Z-run") {
  SequentialVas seq = wide_seq_2d();
  Vass exp = expand_sequential(seq);
  IntVec x{0, 0}, y{0, 0};
  // Z-path dipping below zero: (-1,-1) then (1,1)
  Path zpath;
  zpath.append(seq.self_loop_index(0, 3));
  zpath.append(seq.self_loop_index(0, 2));
  REQUIRE(!replay(exp, Config{0, x}, zpath, Semantics::N).ok());

  Path up, down;
  up.append(seq.self_loop_index(0, 2));
  down.append(seq.self_loop_index(0, 3));
  PumpCertificate fwd{up, PumpDirection::Forward};
  PumpCertificate bwd{down, PumpDirection::Backward};
  Run lifted = lift_z_run(seq, x, fwd, y, bwd, zpath);
  auto rep = replay(exp, lifted.start, lifted.path, Semantics::N);
  REQUIRE(rep.ok());
  CHECK(rep.end->vec == y);
  CHECK(rep.end->state == seq.target_state());
}

TEST_CASE("lift_z_run: random wide sequential instances") {
  Rng rng(55);
  int done = 0;
  while (done < 40) {
    // wide base: random vectors plus their negations
    int d = static_cast<int>(testutil::rand_in(rng, 1, 3));
    std::vector<IntVec> base;
    for (int k = 0; k < 2; ++k) {
      IntVec u = testutil::random_vec(rng, d, -2, 2);
      base.push_back(u);
      base.push_back(-u);
    }
    base.push_back(IntVec::ones(d));
    base.push_back(-IntVec::ones(d));
    SequentialVas seq{d, base, {}};
    CollinearityReport rep = collinearity(seq);
    if (!rep.fixed.empty()) continue;
    Vass exp = expand_sequential(seq);

    IntVec x = testutil::random_vec(rng, d, 0, 3);
    // yank y to a random Z-reachable point
    IntVec y = x;
    for (int k = 0; k < 4; ++k) {
      long pick = testutil::rand_in(rng, 0, static_cast<long>(base.size()) - 1);
      y += base[static_cast<std::size_t>(pick)];
    }
    if (!y.is_nonneg()) continue;
    auto zp = short_z_run(seq, x, y, 12);
    if (!zp) continue;

    // forward pumps with +1s; backward uses the -1s loop (reverse effect +1s)
    Path up, down;
    up.append(seq.self_loop_index(0, static_cast<int>(base.size()) - 2));
    down.append(seq.self_loop_index(0, static_cast<int>(base.size()) - 1));
    PumpCertificate fwd{up, PumpDirection::Forward};
    PumpCertificate bwd{down, PumpDirection::Backward};
    ++done;
    Run lifted = lift_z_run(seq, x, fwd, y, bwd, *zp);
    auto rr = replay(exp, lifted.start, lifted.path, Semantics::N);
    REQUIRE(rr.ok());
    CHECK(rr.end->vec == y);
  }
}

TEST_CASE("pumpable: examples") {
  CHECK(pumpable(Vass::vas(1, {IntVec{1}}), Config{0, IntVec{0}}, PumpDirection::Forward));
  CHECK(!pumpable(Vass::vas(1, {IntVec{-1}}), Config{0, IntVec{5}}, PumpDirection::Forward));
  CHECK(pumpable(Vass::vas(2, {IntVec{1, -1}, IntVec{0, 1}}), Config{0, IntVec{0, 0}}, PumpDirection::Forward));
}

TEST_CASE("pumpable forward equals backward on the reverse system") {
  Rng rng(56);
  for (int iter = 0; iter < 40; ++iter) {
    Vass v = testutil::random_vass(rng, 2, 3, 5, 2);
    Config c{static_cast<StateId>(testutil::rand_in(rng, 0, v.num_states() - 1)), testutil::random_vec(rng, 2, 0, 3)};
    CHECK(pumpable(v, c, PumpDirection::Forward) == pumpable(reverse(v), c, PumpDirection::Backward));
  }
}
