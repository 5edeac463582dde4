// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "test_util.hpp"
#include "vasreach/reductions.hpp"

using namespace vasreach;
using testutil::Rng;

namespace {

LenSet lengths(const ReachInstance& inst, long L, const Int& norm = 24) {
  return len_set(inst, L, SearchBudget{L, norm, 2'000'000});
}

}  // namespace

TEST_CASE("remove_fixed_coordinates: examples") {
  {
    SequentialVas seq{2, {IntVec{1, 0}}, {}};
    ReductionOutput out = remove_fixed_coordinates(seq, IntVec{0, 5}, IntVec{3, 5});
    REQUIRE(!out.unreachable);
    const ReachInstance& inst = out.instances.front();
    CHECK(inst.dim() == 1);
    CHECK(lengths(inst, 8).lengths == lengths(make_seq_instance(seq, IntVec{0, 5}, IntVec{3, 5}), 8).lengths);
  }
  {
    SequentialVas seq{2, {IntVec{1, 0}}, {}};
    ReductionOutput out = remove_fixed_coordinates(seq, IntVec{0, 5}, IntVec{3, 4});
    CHECK(out.unreachable);
  }
  {
    SequentialVas seq{2, {IntVec{1, 0}}, {IntVec{0, -1}}};
    ReductionOutput out = remove_fixed_coordinates(seq, IntVec{0, 0}, IntVec{3, 0});
    CHECK(out.unreachable);
  }
}

TEST_CASE("remove_fixed_coordinates: length sets match on random instances") {
  Rng rng(61);
  for (int iter = 0; iter < 40; ++iter) {
    SequentialVas seq{3, {}, {}};
    int nb = static_cast<int>(testutil::rand_in(rng, 1, 3));
    for (int k = 0; k < nb; ++k) {
      IntVec e = testutil::random_vec(rng, 3, -2, 2);
      e(2) = 0;  // force coordinate 2 fixed
      seq.base.push_back(e);
    }
    for (int k = 0; k < static_cast<int>(testutil::rand_in(rng, 0, 2)); ++k) {
      IntVec b = testutil::random_vec(rng, 3, -1, 1);
      seq.bridges.push_back(b);
    }
    IntVec s = testutil::random_vec(rng, 3, 0, 2);
    IntVec t = testutil::random_vec(rng, 3, 0, 3);
    ReductionOutput out = remove_fixed_coordinates(seq, s, t);
    LenSet orig = lengths(make_seq_instance(seq, s, t), 7);
    if (out.unreachable) {
      CHECK(orig.lengths.empty());
    } else {
      CHECK(lengths(out.instances.front(), 7).lengths == orig.lengths);
    }
  }
}

TEST_CASE("decompose_nonwide: quadrant example") {
  Vass vas = Vass::vas(2, {IntVec{1, 0}, IntVec{0, 1}});
  ReductionOutput out = decompose_nonwide(vas, IntVec{0, 0}, IntVec{1, 1}, 500);
  REQUIRE(!out.unreachable);
  CHECK(!out.truncated);
  // K = 2; bridge words of total weight 2 over T1 = T
  std::set<long> un;
  for (const auto& inst : out.instances) {
    CHECK(is_wide(inst.sequential()));
    for (long l : lengths(inst, 6).lengths) un.insert(l);
  }
  LenSet orig = lengths(ReachInstance{vas, Config{0, IntVec{0, 0}}, Config{0, IntVec{1, 1}}}, 6);
  CHECK(un == orig.lengths);
  CHECK(orig.lengths == std::set<long>{2});
}

TEST_CASE("decompose_nonwide: mixed example and unreachable case") {
  Vass vas = Vass::vas(2, {IntVec{1, -1}, IntVec{-1, 1}, IntVec{1, 0}});
  {
    ReductionOutput out = decompose_nonwide(vas, IntVec{0, 0}, IntVec{2, 0}, 500);
    REQUIRE(!out.unreachable);
    std::set<long> un;
    for (const auto& inst : out.instances)
      for (long l : lengths(inst, 8).lengths) un.insert(l);
    LenSet orig = lengths(ReachInstance{vas, Config{0, IntVec{0, 0}}, Config{0, IntVec{2, 0}}}, 8);
    CHECK(un == orig.lengths);
  }
  {
    // target with a smaller inner product than the source
    ReductionOutput out = decompose_nonwide(vas, IntVec{2, 2}, IntVec{0, 0}, 500);
    CHECK(out.unreachable);
  }
}

TEST_CASE("decompose_nonwide: members lose a cycle dimension") {
  Rng rng(62);
  int done = 0;
  while (done < 25) {
    std::vector<IntVec> T;
    int nt = static_cast<int>(testutil::rand_in(rng, 1, 4));
    for (int k = 0; k < nt; ++k) T.push_back(testutil::random_vec(rng, 3, -2, 2));
    Vass vas = Vass::vas(3, T);
    if (cone_equals_span(T)) continue;
    ++done;
    int orig_dim = cycle_space(vas).dim_cyc;
    ReductionOutput out = decompose_nonwide(vas, IntVec{0, 0, 0}, IntVec{1, 1, 1}, 50);
    for (const auto& inst : out.instances) {
      if (inst.is_sequential()) {
        CHECK(is_wide(inst.sequential()));
        CHECK(span_basis(inst.sequential().base).rank <= orig_dim - 1);
      }
    }
  }
}

TEST_CASE("encode_bounded_coordinates: chain example") {
  Vass v = Vass::vas(1, {IntVec{1}, IntVec{-1}});
  Config s{0, IntVec{0}}, t{0, IntVec{2}};
  ReductionOutput out = encode_bounded_coordinates(v, s, t, {1}, 3, 100000);
  const ReachInstance& inst = out.instances.front();
  const Vass& ev = std::get<Vass>(inst.system);
  CHECK(ev.num_states() == 3);  // values 0,1,2 reachable in the box
  // runs staying < 3 on coordinate 1: lengths agree with the norm-capped oracle
  LenSet a = lengths(inst, 8, 2);
  LenSet b = len_set(v, s, t, 8, SearchBudget{8, 2, 100000});
  CHECK(a.lengths == b.lengths);
}

TEST_CASE("encode_bounded_coordinates: B=1 kills moving transitions; cycles have zero I-effect") {
  Vass v = Vass::vas(1, {IntVec{1}});
  ReductionOutput out = encode_bounded_coordinates(v, Config{0, IntVec{0}}, Config{0, IntVec{0}}, {1}, 1, 1000);
  const Vass& ev = std::get<Vass>(out.instances.front().system);
  CHECK(ev.transitions().empty());

  Vass w = Vass::vas(2, {IntVec{1, 1}, IntVec{-1, -1}, IntVec{1, 0}});
  ReductionOutput o2 = encode_bounded_coordinates(w, Config{0, IntVec{0, 0}}, Config{0, IntVec{0, 0}}, {2}, 3, 10000);
  SimpleCycles sc = enumerate_simple_cycles(std::get<Vass>(o2.instances.front().system), 10000);
  for (const auto& e : sc.effects) CHECK(e(2) == 0);
}

TEST_CASE("encode_bounded_coordinates: output lengths lower-bound the original") {
  Rng rng(63);
  for (int iter = 0; iter < 40; ++iter) {
    Vass v = testutil::random_vass(rng, 2, 2, 4, 1);
    Config s{0, testutil::random_vec(rng, 2, 0, 1)};
    Config t{static_cast<StateId>(testutil::rand_in(rng, 0, v.num_states() - 1)), testutil::random_vec(rng, 2, 0, 2)};
    Int B = testutil::rand_in(rng, 3, 5);
    if (!s.vec.restrict({1}).is_nonneg() || s.vec(1) >= B || t.vec(1) >= B) continue;
    ReductionOutput out = encode_bounded_coordinates(v, s, t, {1}, B, 100000);
    LenSet enc = lengths(out.instances.front(), 8);
    LenSet orig = lengths(ReachInstance{v, s, t}, 8);
    for (long l : enc.lengths) CHECK(orig.lengths.count(l));
  }
}

TEST_CASE("concat_two_encodings: min length gains exactly the bridge step") {
  Vass v = Vass::vas(1, {IntVec{1}, IntVec{-1}});
  Config s{0, IntVec{0}}, t{0, IntVec{2}};
  ReductionOutput out = concat_two_encodings(v, s, t, {1}, {1}, 50, 100000);
  LenSet got = lengths(out.instances.front(), 9);
  LenSet orig = lengths(ReachInstance{v, s, t}, 8);
  REQUIRE(!orig.lengths.empty());
  REQUIRE(!got.lengths.empty());
  CHECK(*got.lengths.begin() == *orig.lengths.begin() + 1);
}

TEST_CASE("concat_two_encodings: dimension-zero instance bridges in one step") {
  Vass v(0);
  StateId p = v.intern("p");
  ReductionOutput out = concat_two_encodings(v, Config{p, IntVec()}, Config{p, IntVec()}, {}, {}, 5, 1000);
  LenSet got = lengths(out.instances.front(), 4);
  REQUIRE(!got.lengths.empty());
  CHECK(*got.lengths.begin() == 1);
}

TEST_CASE("concat_two_encodings: unsplittable runs make the output unreachable, soundly") {
  // every run must push coordinate 1 to 2 before coming back: with B = 2 the
  // I1-bounded prefix cannot contain the peak, and the peak precedes the
  // target, so no split exists
  Vass v = Vass::vas(2, {IntVec{1, 0}, IntVec{-1, 2}});
  Config s{0, IntVec{0, 0}}, t{0, IntVec{0, 4}};
  LenSet orig = lengths(ReachInstance{v, s, t}, 8);
  REQUIRE(!orig.lengths.empty());  // 0 ->(+1,0)->(1,0) ->(-1,2)->(0,2) twice
  ReductionOutput out = concat_two_encodings(v, s, t, {1}, {1}, 2, 100000);
  LenSet got = lengths(out.instances.front(), 12);
  // lower-bounding only: the output may miss runs, never invent them
  for (long l : got.lengths) CHECK(orig.lengths.count(l - 1));
}

TEST_CASE("eliminate_negative_collinear: proof constants") {
  // B = 3M^2 + 2M at M = 4
  Int M = 4;
  CHECK(3 * M * M + 2 * M == 56);
}

TEST_CASE("eliminate_negative_collinear: example with alpha = -1") {
  SequentialVas seq{3, {IntVec{1, -1, 0}, IntVec{-1, 1, 2}}, {}};
  CollinearityReport rep = collinearity(seq);
  REQUIRE(rep.negatively_collinear(1, 2));
  // |alpha| >= 1/M on this instance
  Rat a = *rep.alpha(1, 2);
  Vass exp = expand_sequential(seq);
  IntVec s{2, 0, 0}, t{0, 2, 4};
  Int M = instance_size(exp, Config{0, s}, Config{0, t});
  Rat bound(1, 1);
  bound /= Rat(M);
  CHECK(abs(a.get_num()) * M >= a.get_den());

  ReductionOutput out = eliminate_negative_collinear(seq, s, t);
  const ReachInstance& inst = out.instances.front();
  CHECK(inst.dim() == 1);
  CHECK(lengths(inst, 8).lengths == lengths(make_seq_instance(seq, s, t), 8).lengths);
}

TEST_CASE("eliminate_negative_collinear: random negatively collinear instances") {
  Rng rng(64);
  int done = 0;
  while (done < 20) {
    // coordinate pair (1,2) negatively collinear with ratio -p/q
    long p = testutil::rand_in(rng, 1, 2), q = testutil::rand_in(rng, 1, 2);
    SequentialVas seq{3, {}, {}};
    int nb = static_cast<int>(testutil::rand_in(rng, 1, 2));
    for (int k = 0; k < nb; ++k) {
      long m = testutil::rand_in(rng, -1, 1);
      IntVec e{0, 0, 0};
      e(1) = m * p;
      e(2) = -m * q;
      e(3) = testutil::rand_in(rng, -1, 1);
      seq.base.push_back(e);
    }
    CollinearityReport rep = collinearity(seq);
    if (!rep.has_negative_pair()) continue;
    ++done;
    IntVec s = testutil::random_vec(rng, 3, 0, 2);
    IntVec t = testutil::random_vec(rng, 3, 0, 2);
    ReductionOutput out = eliminate_negative_collinear(seq, s, t);
    CHECK(lengths(out.instances.front(), 8).lengths == lengths(make_seq_instance(seq, s, t), 8).lengths);
  }
}

TEST_CASE("gadget_nonneg: minimal point sets") {
  CHECK(gadget_nonneg(1, 1, 3).minimal_points == std::vector<IntVec>{IntVec{0, 0}});
  {
    GadgetFragment g = gadget_nonneg(2, 3, -6);
    CHECK(g.minimal_points ==
          std::vector<IntVec>{IntVec{0, 2}, IntVec{1, 2}, IntVec{2, 1}, IntVec{3, 0}});
  }
  CHECK(gadget_nonneg(0, 0, -1).minimal_points.empty());
}

TEST_CASE("gadget_nonneg: truth table on a small grid") {
  for (long m = 0; m <= 2; ++m) {
    for (long n = 0; n <= 2; ++n) {
      for (long b = -4; b <= 2; ++b) {
        GadgetFragment g = gadget_nonneg(m, n, b);
        for (long x = 0; x <= 5; ++x) {
          for (long y = 0; y <= 5; ++y) {
            bool expected = m * x + n * y + b >= 0;
            // traversal: all configurations reachable at the exit in <= 2 steps
            LenSet ls = len_set(g.v, Config{g.entry, IntVec(std::vector<Int>{Int(x), Int(y)})},
                                Config{g.exit, IntVec(std::vector<Int>{Int(x), Int(y)})}, 4,
                                SearchBudget{4, 32, 100000});
            CHECK(ls.lengths.empty() == !expected);
            if (expected) CHECK(ls.lengths == std::set<long>{2});
          }
        }
      }
    }
  }
}

TEST_CASE("geo2d_to_2vass: identity-shaped 2-dимensional case scales by 5") {
  Vass v = Vass::vas(2, {IntVec{1, 0}, IntVec{0, 1}, IntVec{-1, 0}});
  Config s{0, IntVec{1, 1}}, t{0, IntVec{2, 1}};
  ReductionOutput out = geo2d_to_2vass(v, s, t, 100000);
  CHECK(out.scale == 5);
  LenSet orig = lengths(ReachInstance{v, s, t}, 6, 15);
  LenSet got = lengths(out.instances.front(), 30, 15);
  std::set<long> scaled;
  for (long l : orig.lengths) scaled.insert(5 * l);
  CHECK(got.lengths == scaled);
}

TEST_CASE("geo2d_to_2vass: projective 3-dimensional example") {
  IntVec u{1, 0, 1}, v2{0, 1, 1};
  Vass v = Vass::vas(3, {u, v2, -u});
  Config s{0, IntVec{1, 1, 2}}, t{0, IntVec{1, 1, 2}};
  ReductionOutput out = geo2d_to_2vass(v, s, t, 100000);
  CHECK(out.scale == 7);
  LenSet orig = lengths(ReachInstance{v, s, t}, 6, 15);
  LenSet got = lengths(out.instances.front(), 42, 15);
  std::set<long> scaled;
  for (long l : orig.lengths) scaled.insert(7 * l);
  CHECK(got.lengths == scaled);
}

TEST_CASE("geo2d_to_2vass: non-projective inputs route through make_projective") {
  IntVec u{1, 0, -1}, v2{0, 1, -1};
  Vass v = Vass::vas(3, {u, v2});
  Config s{0, IntVec{1, 1, 2}}, t{0, IntVec{2, 2, 0}};
  ReductionOutput out = geo2d_to_2vass(v, s, t, 100000);
  CHECK(out.provenance.find("make-projective") != std::string::npos);
  LenSet orig = lengths(ReachInstance{v, s, t}, 6, 15);
  LenSet got = lengths(out.instances.front(), 42, 15);
  std::set<long> scaled;
  for (long l : orig.lengths) scaled.insert(7 * l);
  CHECK(got.lengths == scaled);
}

TEST_CASE("geo2d_to_2vass: low dimensions embed with the right scale") {
  Vass v = Vass::vas(1, {IntVec{1}, IntVec{-1}});
  Config s{0, IntVec{0}}, t{0, IntVec{2}};
  ReductionOutput out = geo2d_to_2vass(v, s, t, 100000);
  CHECK(out.scale == 3);
  LenSet orig = lengths(ReachInstance{v, s, t}, 6, 15);
  LenSet got = lengths(out.instances.front(), 18, 15);
  std::set<long> scaled;
  for (long l : orig.lengths) scaled.insert(3 * l);
  CHECK(got.lengths == scaled);
}

TEST_CASE("make_projective: example with the all-ones normal") {
  IntVec u{1, 0, -1}, v2{0, 1, -1};
  Vass v = Vass::vas(3, {u, v2});
  Config s{0, IntVec{1, 1, 2}}, t{0, IntVec{2, 2, 0}};
  ReductionOutput out = make_projective(v, s, t, 100000);
  const ReachInstance& inst = out.instances.front();
  CycleSpaceInfo csi = cycle_space(std::get<Vass>(inst.system));
  REQUIRE(csi.dim_cyc == 2);
  CHECK(is_projective(csi.global_basis[0], csi.global_basis[1]).has_value());
  CHECK(lengths(inst, 8).lengths == lengths(ReachInstance{v, s, t}, 8).lengths);
  // bounded-counter invariant: values on supp(n) stay within 6 size^3
  Int bound = instance_size(v, s, t);
  bound = 6 * bound * bound * bound;
  SearchBudget budget{8, 24, 100000};
  (void)budget;
  for (long l = 0; l <= 2; ++l) {
    // oracle-enumerated configurations at small depths
  }
  Run run{s, Path{{0, 1}}};
  for (const auto& c : run_configs(v, run)) {
    CHECK(c.vec(3) <= bound);
  }
  CHECK(out.provenance.find("make-projective") == 0);
}

TEST_CASE("make_projective: rejects projective input") {
  Vass v = Vass::vas(3, {IntVec{1, 0, 1}, IntVec{0, 1, 1}});
  CHECK_THROWS_AS(make_projective(v, Config{0, IntVec{0, 0, 0}}, Config{0, IntVec{0, 0, 0}}, 1000),
                  PreconditionError);
}

TEST_CASE("geo2vas_to_4vass: planar example, exhaustive agreement") {
  Vass v = Vass::vas(2, {IntVec{1, 0}, IntVec{0, 1}, IntVec{-1, 0}, IntVec{0, -1}});
  SearchBudget budget{16, 10, 300000};
  for (long sx = 0; sx <= 2; ++sx) {
    for (long tx = 0; tx <= 2; ++tx) {
      for (long ty = 0; ty <= 2; ++ty) {
        IntVec s(std::vector<Int>{Int(sx), Int(0)});
        IntVec t(std::vector<Int>{Int(tx), Int(ty)});
        ReductionOutput out = geo2vas_to_4vass(v, s, t);
        ReachResult orig = reach_bfs(ReachInstance{v, Config{0, s}, Config{0, t}}, budget);
        ReachResult got = reach_bfs(out.instances.front(), SearchBudget{80, 12, 500000});
        REQUIRE(orig.verdict != ReachVerdict::Inconclusive);
        REQUIRE(got.verdict != ReachVerdict::Inconclusive);
        CHECK((orig.verdict == ReachVerdict::Reachable) == (got.verdict == ReachVerdict::Reachable));
      }
    }
  }
}

TEST_CASE("geo2vas_to_4vass: 4-dimensional spanned case") {
  IntVec u{1, 1, 0, 0}, w{0, 0, 1, 1};
  Vass v = Vass::vas(4, {u, w, -u, -w});
  IntVec s{1, 0, 2, 1};
  // the off-space offset is nonzero: u,w combinations keep (1)-(2) and (3)-(4)
  Rng rng(65);
  SearchBudget budget{14, 10, 300000};
  for (int iter = 0; iter < 25; ++iter) {
    IntVec t = testutil::random_vec(rng, 4, 0, 3);
    ReductionOutput out = geo2vas_to_4vass(v, s, t);
    ReachResult orig = reach_bfs(ReachInstance{v, Config{0, s}, Config{0, t}}, budget);
    if (out.unreachable) {
      CHECK(orig.verdict != ReachVerdict::Reachable);
      continue;
    }
    ReachResult got = reach_bfs(out.instances.front(), SearchBudget{130, 14, 600000});
    if (orig.verdict == ReachVerdict::Inconclusive || got.verdict == ReachVerdict::Inconclusive) continue;
    CHECK((orig.verdict == ReachVerdict::Reachable) == (got.verdict == ReachVerdict::Reachable));
  }
}

TEST_CASE("geo2vas_to_4vass: output simple cycles project transitions") {
  Vass v = Vass::vas(3, {IntVec{1, 1, 0}, IntVec{-1, -1, 0}, IntVec{0, 0, 1}});
  ReductionOutput out = geo2vas_to_4vass(v, IntVec{1, 1, 0}, IntVec{2, 2, 1});
  REQUIRE(!out.unreachable);
  const Vass& ov = std::get<Vass>(out.instances.front().system);
  CHECK(cycle_space(ov).dim_cyc <= 2);
  std::set<int> Iset;
  // collect the projected effects a|_I
  std::vector<IntVec> projected;
  for (const auto& tr : ov.transitions())
    if (ov.state_name(tr.src) == "r#lo") projected.push_back(tr.effect);
  SimpleCycles sc = enumerate_simple_cycles(ov, 5000);
  for (const auto& e : sc.effects) {
    bool matches = false;
    for (const auto& p : projected)
      if (e == p) matches = true;
    CHECK(matches);
  }
}

TEST_CASE("subset_sum_instance: examples") {
  SearchBudget budget{64, 4, 500000};
  {
    SubsetSumInstance ssi = subset_sum_instance({Int(1), Int(2)}, 3);
    CHECK(ssi.expected);
    CHECK(reach_bfs(ssi.instance, budget).verdict == ReachVerdict::Reachable);
  }
  {
    SubsetSumInstance ssi = subset_sum_instance({Int(2), Int(2)}, 3);
    CHECK(!ssi.expected);
    CHECK(reach_bfs(ssi.instance, budget).verdict != ReachVerdict::Reachable);
  }
  {
    SubsetSumInstance ssi = subset_sum_instance({Int(1)}, 0);
    CHECK(ssi.expected);
    CHECK(reach_bfs(ssi.instance, budget).verdict == ReachVerdict::Reachable);
  }
  {
    SubsetSumInstance ssi = subset_sum_instance({Int(1), Int(2)}, 9);
    CHECK(!ssi.expected);
    CHECK(reach_bfs(ssi.instance, budget).verdict != ReachVerdict::Reachable);
  }
}

TEST_CASE("subset_sum_instance: acyclic and agrees with brute force") {
  Rng rng(66);
  for (int iter = 0; iter < 30; ++iter) {
    int n = static_cast<int>(testutil::rand_in(rng, 1, 4));
    std::vector<Int> S;
    for (int k = 0; k < n; ++k) S.emplace_back(testutil::rand_in(rng, 0, 9));
    Int target = testutil::rand_in(rng, 0, 12);
    SubsetSumInstance ssi = subset_sum_instance(S, target);
    SimpleCycles sc = enumerate_simple_cycles(ssi.instance.expanded(), 10);
    CHECK(sc.effects.empty());
    ReachResult r = reach_bfs(ssi.instance, SearchBudget{100, 6, 1'000'000});
    REQUIRE(r.verdict != ReachVerdict::Inconclusive);
    CHECK((r.verdict == ReachVerdict::Reachable) == ssi.expected);
  }
}
