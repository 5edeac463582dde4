// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vasreach/vector.hpp"

namespace vasreach {

using RatVec = std::vector<Rat>;

struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;  // row major

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}

  Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static RatMatrix from_columns(const std::vector<IntVec>& cols_in);
};

// Incremental exact Gaussian elimination over Q. Rows are kept in reduced
// pivot form, so membership queries are cheap.
class SpanReducer {
 public:
  explicit SpanReducer(int dim) : dim_(dim) {}
  // true iff v was independent of the rows added so far (and is now added)
  bool add(const IntVec& v);
  bool contains(const IntVec& v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }

 private:
  // (pivot column 0-based, reduced row); residual computation shared by add/contains
  RatVec reduce(const IntVec& v) const;
  int dim_;
  std::vector<std::pair<int, RatVec>> rows_;
};

struct SpanBasis {
  std::vector<IntVec> basis;   // subset of the input, lowest-index independent vectors
  std::vector<int> indices;    // 0-based positions into the input
  int rank = 0;
};

SpanBasis span_basis(const std::vector<IntVec>& vectors);

// Nonnegative rational coefficients witnessing x = sum lambda_i g_i.
struct ConeMembershipCertificate {
  RatVec coefficients;
};

// Exact LP feasibility of { G lambda = x, lambda >= 0 }; the certificate
// re-substitutes exactly (checked in debug paths and by the test suite).
std::optional<ConeMembershipCertificate> in_cone(const IntVec& x, const std::vector<IntVec>& generators);

// cone(G) = span(G), tested as -g in cone(G) for every generator g.
bool cone_equals_span(const std::vector<IntVec>& generators);

// Specialized exact membership for dimension 2 (Caratheodory: a cone point is
// a combination of at most two generators).
bool in_cone_2d(const IntVec& x, const std::vector<IntVec>& generators);

// lambda in N^cols with A lambda = b and every entry <= bound, or nullopt when
// no such lambda exists within the bound. Complete within the bound: the DFS
// prunes only subtrees whose rational relaxation is infeasible.
std::optional<IntVec> nonneg_integer_solution(const RatMatrix& A, const IntVec& b, const Int& bound);

// Integral n with R0 n = 0 and <r, n> >= 1 for every row r of R1, of max-norm
// at most bound; nullopt when the system is infeasible within the bound.
std::optional<IntVec> strict_homogeneous_solution(const std::vector<IntVec>& R0,
                                                  const std::vector<IntVec>& R1,
                                                  const Int& bound);

// Minimal-cardinality index subset I with cone(selected) = cone(all), for
// 2-dimensional inputs. Ties break to the lowest index among parallel vectors;
// subsets are scanned in (size, lexicographic) order, so the result is
// deterministic. Zero vectors never enter the result.
std::vector<int> minimal_cone_generators_2d(const std::vector<IntVec>& vectors);

// --- exact simplex (shared backend) ---

struct LpProblem {
  RatMatrix A;     // equality constraints A x = b
  RatVec b;
  RatVec cost;     // minimize cost . x, x >= 0
};

struct LpSolution {
  bool feasible = false;
  RatVec x;        // basic solution when feasible
  Rat objective;
};

// Phase-1/phase-2 simplex with Bland's rule; exact rational arithmetic.
LpSolution lp_solve(const LpProblem& p);
// Convenience: feasibility of { A x = b, x >= 0 }.
std::optional<RatVec> lp_feasible_point(const RatMatrix& A, const RatVec& b);

// Clear denominators and divide by the gcd; empty input stays empty.
IntVec scale_to_integer(const RatVec& v);

}  // namespace vasreach
