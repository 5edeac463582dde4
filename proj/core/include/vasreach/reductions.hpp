// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vasreach/geometry.hpp"
#include "vasreach/model.hpp"

namespace vasreach {

enum class Relation {
  LenEqual,                // LEN(output) = LEN(original)
  LenCapturedByUnion,      // union of member LEN sets = LEN(original)
  LenLowerBoundsOriginal,  // LEN(output) subset of LEN(original) shape (one-directional)
  LenScaled,               // LEN(output) = scale * LEN(original)
  ReachEquivalent,         // reachability truth preserved
};

const char* relation_name(Relation r);

struct ReductionOutput {
  std::vector<ReachInstance> instances;
  Relation relation = Relation::LenEqual;
  Int scale{1};            // for LenScaled
  bool unreachable = false;  // construction proved the original unreachable
  bool truncated = false;    // family enumeration stopped at the cap
  std::string provenance;
};

// An unreachable instance of the given dimension (two states, no transitions).
ReachInstance trivial_unreachable(int dim);

// Drop coordinates I from every effect and the end configurations.
Vass delete_coordinates(const Vass& v, const std::set<int>& I);

// Fixed coordinates of a sequential VAS carry determined values along every
// run; check them and drop them. Relation: len-equal.
ReductionOutput remove_fixed_coordinates(const SequentialVas& seq, const IntVec& s, const IntVec& t);

// Non-wide VAS to a family of wide sequential VASes over bridge words from the
// strictly-positive transitions T1, enumerated length-lexicographically, each
// word's inner products summing to K = <n,t> - <n,s>. Relation:
// len-captured-by-union; at most `cap` members are materialized.
ReductionOutput decompose_nonwide(const Vass& vas, const IntVec& s, const IntVec& t, long cap);

// Track the coordinates I (all values in [0, B-1]) in the state; effects keep
// full dimension. Product states are generated lazily by forward value
// exploration from the source. Relation: len-lower-bounds-original, equality
// when every run stays below B on I.
ReductionOutput encode_bounded_coordinates(const Vass& v, const Config& s, const Config& t,
                                           const std::set<int>& I, const Int& B, long state_cap);

// Two encoded copies (I1 forward from s, I2 backward from t) joined by
// zero-effect transitions over all compatible state pairs; min LEN(output) =
// 1 + min length of runs splittable into an I1-bounded prefix and an
// I2-bounded suffix.
ReductionOutput concat_two_encodings(const Vass& v, const Config& s, const Config& t,
                                     const std::set<int>& I1, const std::set<int>& I2, const Int& B,
                                     long state_cap);

// A negatively collinear pair is bounded by B = 3M^2 + 2M along every run;
// encode it into states and delete the two coordinates. Relation: len-equal.
ReductionOutput eliminate_negative_collinear(const SequentialVas& seq, const IntVec& s, const IntVec& t);

struct GadgetFragment {
  Vass v;  // dimension 2
  StateId entry;
  StateId exit;
  std::vector<IntVec> minimal_points;
};

// Two-state fragment passing (x, y) unchanged in exactly two steps iff
// m x + n y + b >= 0, built from the minimal points of that region.
GadgetFragment gadget_nonneg(const Int& m, const Int& n, const Int& b);

// Geometrically 2-dimensional VASS to a single 2-VASS over (state, shift)
// pairs, one nonnegativity gadget per coordinate after every transition.
// Relation: len-scaled with factor 2d+1. Non-projective cycle spaces are
// routed through make_projective; dim_cyc < 2 is padded by an isolated state
// with dummy cycles.
ReductionOutput geo2d_to_2vass(const Vass& v, const Config& s, const Config& t, long state_cap);

// Encode the support of the non-projective normal vector into states (those
// coordinates stay below 6 size^3), then add an isolated state with self-loops
// chosen to make the cycle space projective. Relation: len-equal.
ReductionOutput make_projective(const Vass& v, const Config& s, const Config& t, long state_cap);

// Geometrically 2-dimensional VAS to a <=4-dimensional VASS via the
// cone-by-four index set; reach-equivalent.
ReductionOutput geo2vas_to_4vass(const Vass& vas, const IntVec& s, const IntVec& t);

struct SubsetSumInstance {
  ReachInstance instance;
  bool expected;  // brute-force subset-sum truth
};

// Acyclic d-VASS (binary counters plus carry gadgets) reachable iff some
// subset of S sums to the target.
SubsetSumInstance subset_sum_instance(const std::vector<Int>& S, const Int& target);

}  // namespace vasreach
