// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "vasreach/model.hpp"

namespace vasreach {

// Exceeding any budget yields an explicit INCONCLUSIVE, never a silent
// false negative.
struct SearchBudget {
  long max_len = 50;
  Int max_norm = 64;
  long max_states_expanded = 2'000'000;
};

enum class ReachVerdict { Reachable, UnreachableWithinBudget, Inconclusive };

struct ReachResult {
  ReachVerdict verdict = ReachVerdict::Inconclusive;
  long shortest_len = -1;       // when Reachable
  Path witness;                 // replay-validated, minimal length within budget
  // true when the frontier emptied with no norm-boundary truncation: the
  // instance is then unreachable outright, not merely within budget
  bool definitive = false;
  long states_expanded = 0;
};

ReachResult reach_bfs(const Vass& v, const Config& s, const Config& t, const SearchBudget& budget);
ReachResult reach_bfs(const ReachInstance& inst, const SearchBudget& budget);

struct LenSet {
  long horizon = 0;
  std::set<long> lengths;  // l in lengths iff a run of length exactly l exists within norm budget
  bool inconclusive = false;
};

LenSet len_set(const Vass& v, const Config& s, const Config& t, long L, const SearchBudget& budget);
LenSet len_set(const ReachInstance& inst, long L, const SearchBudget& budget);

// Exact coverability decision (some configuration >= target with the same
// state reachable from `from`), by Karp-Miller tree with omega acceleration.
bool coverable(const Vass& v, const Config& from, const Config& target);

// Bounded BFS searching for a concrete covering path; nullopt when none found
// within the budget (the decision itself belongs to coverable()).
std::optional<Path> cover_witness(const Vass& v, const Config& from, const Config& target, const SearchBudget& budget);

struct SimpleCycles {
  std::vector<Path> cycles;
  std::vector<IntVec> effects;
  bool truncated = false;
};

// Vertex-simple cycles (Johnson-style); parallel transitions yield distinct
// cycles, self-loops are cycles of length one.
SimpleCycles enumerate_simple_cycles(const Vass& v, long cap);

// |S| <= 24 guarded exact subset existence
bool subset_sum_bruteforce(const std::vector<Int>& S, const Int& target);

}  // namespace vasreach
