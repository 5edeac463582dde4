// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "vasreach/geometry.hpp"
#include "vasreach/model.hpp"
#include "vasreach/oracle.hpp"

namespace vasreach {

struct UbReport {
  Int threshold;
  std::set<int> ub;                 // coordinates that ever reach >= threshold
  std::map<int, long> first_exceed; // coordinate -> configuration index (0 = start)
};

UbReport ub_set(const Vass& v, const Run& run, const Int& B);

enum class SplitKind { AlmostUnbounded, AlmostBounded, QuasiUnbounded, QuasiBounded };
enum class DichotomyMode { Almost, Quasi };

struct RunSplit {
  SplitKind kind;
  long split_index;   // the second part starts after this many transitions
  Int threshold_used; // B for the unbounded kinds, B + size(V) for the bounded kinds
  UbReport part1, part2;
};

// Constructive dichotomy following the longest-prefix proofs: either both
// parts are (almost/quasi) unbounded at B, or both are bounded at B + size(V).
// Quasi mode requires a collinearity report with no negatively collinear pair.
RunSplit dichotomy_split(const Vass& v, const Run& run, const Int& B, DichotomyMode mode,
                         const CollinearityReport* collinearity_report);

// The H/L schedule: H_0 = 0, L_0 = M, H_{i+1} = U + L_i M, L_{i+1} = M H_{i+1}^{i+1} + L_i.
struct RackoffSchedule {
  std::vector<Int> H;  // H[0..d]
  std::vector<Int> L;
};
RackoffSchedule rackoff_schedule(const Int& U, const Int& M, int d);

struct RackoffResult {
  Run run;                // starts at the input's source; target >= U on `covered`
  std::set<int> covered;  // a superset of ub(input, H_d)
  // deletion trace: [begin, end) transition index pairs, each contiguous in
  // the sequence as it stood when deleted, to be re-applied in order; every
  // deleted segment is a state cycle
  std::vector<std::pair<long, long>> deletions;
};

// Recursive extraction: drop cycle segments so the target dominates U on every
// coordinate that ever crossed the level threshold. Requires M >= size(V).
RackoffResult rackoff_extract(const Vass& v, const Run& run, const Int& U, const Int& M);

enum class PumpDirection { Forward, Backward };

struct PumpCertificate {
  Path cycle;  // in the system itself (forward) or its reverse (backward)
  PumpDirection direction;
};

// B(||x0||, size) = (||x0|| + 1 + size) * (1 + size)
Int pump_threshold(const Int& norm_x0, const Int& size);

// Certificate cycle t^H pi_0 ... pi_l for a run into q(x): t is a base
// transition positive on positive_block, H = ||x0|| + 1 + size, and the pi_j
// are the run's self-loop segments. Preconditions: the sequential VAS is wide
// with no fixed coordinates, coordinates outside positive_block reach Bval,
// the block is pairwise positively collinear.
std::optional<PumpCertificate> pump_witness(const SequentialVas& seq, const Run& run, const Int& Bval,
                                            const std::set<int>& positive_block);

struct ExtractPumpableResult {
  Run run;  // subsequence of the input obtained by removing self-loops
  Config config;
  PumpCertificate certificate;
};

// Composition of rackoff_extract and pump_witness, applicable when
// |ub(run, P_value)| >= d - 1.
std::optional<ExtractPumpableResult> extract_pumpable(const SequentialVas& seq, const Run& run, const Int& P_value);

// Path from source to target state whose Z-effect moves x to y: fire the
// bridges in order, then a self-loop multiset at the target state solving
// A lambda = y - x - (sum of bridges) within the bound.
std::optional<Path> short_z_run(const SequentialVas& seq, const IntVec& x, const IntVec& y, const Int& bound);

struct InfeasibleLiftError : std::runtime_error {
  explicit InfeasibleLiftError(const std::string& what) : std::runtime_error(what) {}
};

// Lift a Z-run between a forward-pumpable source and a backward-pumpable
// target into a real run, by pumping up, compensating with a wide combination,
// and pumping back down. The result replays exactly from x to y.
Run lift_z_run(const SequentialVas& seq, const IntVec& x, const PumpCertificate& fwd, const IntVec& y,
               const PumpCertificate& bwd, const Path& zpath);

// Exact decision via the coverability backend: some config >= config + 1 with
// the same state is reachable (forward) or co-reachable (backward).
bool pumpable(const Vass& v, const Config& config, PumpDirection direction);

}  // namespace vasreach
