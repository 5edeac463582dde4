// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "vasreach/linalg.hpp"
#include "vasreach/model.hpp"

namespace vasreach {

struct CycleSpaceInfo {
  std::vector<std::vector<StateId>> sccs;       // strongly connected components
  std::vector<std::vector<IntVec>> per_scc;     // cycle-space basis per SCC
  std::vector<IntVec> global_basis;             // basis of the whole cycle space
  int dim_cyc = 0;
  int dim_com = 0;
};

// Cycle space via spanning-tree fundamental cycles, per SCC: root the SCC,
// potential(q) = tree-path effect, candidate of a non-tree internal edge
// (p,a,q) is potential(p) + a - potential(q). Equals the span of simple-cycle
// effects (cross-checked against enumeration by the test suite).
CycleSpaceInfo cycle_space(const Vass& v);

// cone of base effects equals their span. Defined for VAS and sequential VAS
// only, where simple cycles are exactly the self-loops; multi-state input is
// an unsupported shape.
bool is_wide(const Vass& vas);
bool is_wide(const SequentialVas& s);

struct NormalVectorCertificate {
  IntVec n;
  std::vector<int> zero_set;  // 0-based indices of generators with <n,.> = 0
};

// For non-wide X: nonzero n with <n,x> >= 0 on X, cone(X0) = span(X0) for the
// zero set X0, and ||n|| <= (d+1)(r||X||)^r. Candidate zero sets are scanned
// by decreasing size.
NormalVectorCertificate farkas_normal_vector(const std::vector<IntVec>& X);
Int farkas_norm_bound(const std::vector<IntVec>& X);

struct CollinearityReport {
  int dim = 0;
  std::set<int> fixed;  // coordinates that are 0 in every effect
  // i < j, u(i) = alpha * u(j) for all effects; alpha never 0 here
  std::map<std::pair<int, int>, Rat> pairs;

  bool collinear(int i, int j) const;
  std::optional<Rat> alpha(int i, int j) const;  // for i<j pairs
  bool positively_collinear(int i, int j) const;
  bool negatively_collinear(int i, int j) const;
  std::optional<std::pair<int, int>> first_negative_pair() const;
  bool has_negative_pair() const { return first_negative_pair().has_value(); }
  bool pairwise_positively_collinear(const std::set<int>& K) const;
  bool has_noncollinear_pair(const std::set<int>& K) const;
};

CollinearityReport collinearity(const std::vector<IntVec>& effects, int dim);
// For a sequential VAS the relation is taken over the base effects only.
CollinearityReport collinearity(const SequentialVas& s);
CollinearityReport collinearity(const Vass& v);

// r-vectors r_l = (u(l), v(l)) of a pair of d-vectors
std::vector<IntVec> row_pairs(const IntVec& u, const IntVec& v);

// Witness n in Z^2 with <n, r_l> > 0 for every nonzero r_l, iff the span is
// projective w.r.t. (u, v). Degenerate spans are allowed; a rank-<=1 r-set
// covering both directions of a line admits no strict separator and yields
// none.
std::optional<IntVec> is_projective(const IntVec& u, const IntVec& v);

struct ProjectionCertificate {
  int i = 0;            // 1-based coordinates of the sign-reflecting pair,
  int j = 0;            // ordered so that c = u(i)v(j) - u(j)v(i) > 0
  IntVec witness_n;     // 2-dim projectiveness witness
  IntVec axis_u;        // canonical axes: nonnegative, axis_u|_I = (c, 0)
  IntVec axis_v;        //                              axis_v|_I = (0, c)
  Int c;
};

// Canonical axes over the extreme-ray pair I: (axis_u axis_v) = (u v) * c A^{-1}
// with A the I-submatrix of (u v).
ProjectionCertificate sign_reflecting_projection(const IntVec& u, const IntVec& v);

// shift delta(x) = c*x - x(i)*axis_u - x(j)*axis_v; zero exactly on span{u,v}
IntVec shift(const IntVec& x, const ProjectionCertificate& cert);

// For a non-projective 2-dim span: nonnegative normal vector with support <= 3
// inside supp(span) and norm <= 2M^2.
IntVec nonprojective_normal(const IntVec& u, const IntVec& v);

struct ConeByFour {
  std::vector<int> I;  // 1-based coordinates, ascending, |I| <= 4
  struct Tuple {
    Int c;      // > 0
    Int alpha;  // >= 0
    Int beta;   // >= 0
    int i;      // in I
    int j;      // in I
  };
  std::vector<Tuple> tuples;  // tuples[l-1]: c*x(l) = alpha*x(i) + beta*x(j) on span{u,v}
};

ConeByFour cone_by_four(const IntVec& u, const IntVec& v);

}  // namespace vasreach
