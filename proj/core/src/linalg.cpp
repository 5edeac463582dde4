// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace vasreach {

RatMatrix RatMatrix::from_columns(const std::vector<IntVec>& cols_in) {
  int d = cols_in.empty() ? 0 : cols_in.front().dim();
  RatMatrix m(d, static_cast<int>(cols_in.size()));
  for (int c = 0; c < m.cols; ++c) {
    if (cols_in[static_cast<std::size_t>(c)].dim() != d) throw MalformedError("column dimension mismatch");
    for (int r = 0; r < d; ++r) m.at(r, c) = Rat(cols_in[static_cast<std::size_t>(c)](r + 1));
  }
  return m;
}

RatVec SpanReducer::reduce(const IntVec& v) const {
  if (v.dim() != dim_) throw MalformedError("SpanReducer dimension mismatch");
  RatVec w(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) w[static_cast<std::size_t>(i)] = Rat(v(i + 1));
  for (const auto& [p, row] : rows_) {
    const Rat& f = w[static_cast<std::size_t>(p)];
    if (f != 0) {
      Rat factor = f;  // row has a 1 at its pivot
      for (int i = 0; i < dim_; ++i) w[static_cast<std::size_t>(i)] -= factor * row[static_cast<std::size_t>(i)];
    }
  }
  return w;
}

bool SpanReducer::add(const IntVec& v) {
  RatVec w = reduce(v);
  int pivot = -1;
  for (int i = 0; i < dim_; ++i) {
    if (w[static_cast<std::size_t>(i)] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return false;
  Rat inv = Rat(1) / w[static_cast<std::size_t>(pivot)];
  for (auto& x : w) x *= inv;
  rows_.emplace_back(pivot, std::move(w));
  return true;
}

bool SpanReducer::contains(const IntVec& v) const {
  RatVec w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](const Rat& x) { return x == 0; });
}

SpanBasis span_basis(const std::vector<IntVec>& vectors) {
  SpanBasis out;
  if (vectors.empty()) return out;
  SpanReducer red(vectors.front().dim());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (red.add(vectors[i])) {
      out.basis.push_back(vectors[i]);
      out.indices.push_back(static_cast<int>(i));
    }
  }
  out.rank = static_cast<int>(out.basis.size());
  return out;
}

// --- simplex ---

namespace {

// Dense tableau; row `rows` is the reduced-cost row, column `cols` the rhs.
struct Tableau {
  int rows, cols;
  std::vector<RatVec> t;  // (rows+1) x (cols+1)
  std::vector<int> basis; // basic variable per row

  Tableau(int r, int c) : rows(r), cols(c), t(static_cast<std::size_t>(r) + 1, RatVec(static_cast<std::size_t>(c) + 1)), basis(static_cast<std::size_t>(r), -1) {}

  void pivot(int pr, int pc) {
    Rat inv = Rat(1) / t[static_cast<std::size_t>(pr)][static_cast<std::size_t>(pc)];
    for (auto& x : t[static_cast<std::size_t>(pr)]) x *= inv;
    for (int r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      Rat f = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(pc)];
      if (f == 0) continue;
      for (int c = 0; c <= cols; ++c)
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * t[static_cast<std::size_t>(pr)][static_cast<std::size_t>(c)];
    }
    basis[static_cast<std::size_t>(pr)] = pc;
  }

  // Bland's rule; returns false when optimal
  bool step() {
    int enter = -1;
    for (int c = 0; c < cols; ++c) {
      if (t[static_cast<std::size_t>(rows)][static_cast<std::size_t>(c)] < 0) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rat best;
    for (int r = 0; r < rows; ++r) {
      const Rat& a = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (a > 0) {
        Rat ratio = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)] / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave < 0) throw InternalError("simplex: unbounded phase objective");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpSolution lp_solve(const LpProblem& p) {
  const int m = p.A.rows;
  const int n = p.A.cols;
  if (static_cast<int>(p.b.size()) != m || static_cast<int>(p.cost.size()) != n)
    throw MalformedError("lp_solve: inconsistent sizes");

  // Phase 1: artificials on every row, rhs normalized nonnegative.
  Tableau tab(m, n + m);
  for (int r = 0; r < m; ++r) {
    bool neg = p.b[static_cast<std::size_t>(r)] < 0;
    for (int c = 0; c < n; ++c) {
      Rat v = p.A.at(r, c);
      tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = neg ? Rat(-v) : v;
    }
    tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + r)] = 1;
    Rat rhs = p.b[static_cast<std::size_t>(r)];
    tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + m)] = neg ? Rat(-rhs) : rhs;
    tab.basis[static_cast<std::size_t>(r)] = n + r;
  }
  // reduced costs for min(sum of artificials): c_j - sum of column entries
  for (int c = 0; c <= n + m; ++c) {
    Rat s = 0;
    for (int r = 0; r < m; ++r) s += tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    Rat cj = (c >= n && c < n + m) ? Rat(1) : Rat(0);
    tab.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)] = cj - s;
  }
  while (tab.step()) {
  }
  LpSolution sol;
  Rat phase1 = -tab.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(n + m)];
  if (phase1 != 0) {
    sol.feasible = false;
    return sol;
  }
  // Drive leftover artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (tab.basis[static_cast<std::size_t>(r)] >= n) {
      for (int c = 0; c < n; ++c) {
        if (tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
          tab.pivot(r, c);
          break;
        }
      }
      // A row that stays artificial is redundant (all-zero over the
      // structural columns); its basic value is zero, which is harmless.
    }
  }

  // Phase 2 over the structural columns.
  tab.t[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(n + m) + 1, Rat(0));
  for (int c = 0; c < n; ++c) tab.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)] = p.cost[static_cast<std::size_t>(c)];
  for (int r = 0; r < m; ++r) {
    int bv = tab.basis[static_cast<std::size_t>(r)];
    if (bv < n && p.cost[static_cast<std::size_t>(bv)] != 0) {
      Rat f = p.cost[static_cast<std::size_t>(bv)];
      for (int c = 0; c <= n + m; ++c)
        tab.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)] -= f * tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  // forbid artificials from re-entering
  for (int c = n; c < n + m; ++c) {
    Rat& rc = tab.t[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)];
    if (rc < 0) rc = 0;
  }
  while (tab.step()) {
  }

  sol.feasible = true;
  sol.x.assign(static_cast<std::size_t>(n), Rat(0));
  for (int r = 0; r < m; ++r) {
    int bv = tab.basis[static_cast<std::size_t>(r)];
    if (bv < n) sol.x[static_cast<std::size_t>(bv)] = tab.t[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + m)];
  }
  sol.objective = 0;
  for (int c = 0; c < n; ++c) sol.objective += p.cost[static_cast<std::size_t>(c)] * sol.x[static_cast<std::size_t>(c)];
  return sol;
}

std::optional<RatVec> lp_feasible_point(const RatMatrix& A, const RatVec& b) {
  LpProblem p{A, b, RatVec(static_cast<std::size_t>(A.cols), Rat(0))};
  LpSolution s = lp_solve(p);
  if (!s.feasible) return std::nullopt;
  return s.x;
}

std::optional<ConeMembershipCertificate> in_cone(const IntVec& x, const std::vector<IntVec>& generators) {
  for (const auto& g : generators)
    if (g.dim() != x.dim()) throw MalformedError("in_cone: dimension mismatch");
  if (x.is_zero()) return ConeMembershipCertificate{RatVec(generators.size(), Rat(0))};
  if (generators.empty()) return std::nullopt;
  RatMatrix A = RatMatrix::from_columns(generators);
  RatVec b;
  b.reserve(static_cast<std::size_t>(x.dim()));
  for (int i = 1; i <= x.dim(); ++i) b.emplace_back(x(i));
  auto pt = lp_feasible_point(A, b);
  if (!pt) return std::nullopt;
  return ConeMembershipCertificate{std::move(*pt)};
}

bool cone_equals_span(const std::vector<IntVec>& generators) {
  for (const auto& g : generators) {
    if (!in_cone(-g, generators)) return false;
  }
  return true;
}

namespace {

Int cross2(const IntVec& a, const IntVec& b) { return a(1) * b(2) - a(2) * b(1); }
Int dot2(const IntVec& a, const IntVec& b) { return a(1) * b(1) + a(2) * b(2); }

}  // namespace

bool in_cone_2d(const IntVec& x, const std::vector<IntVec>& generators) {
  if (x.dim() != 2) throw MalformedError("in_cone_2d: dimension must be 2");
  if (x.is_zero()) return true;
  std::vector<const IntVec*> gens;
  for (const auto& g : generators) {
    if (g.dim() != 2) throw MalformedError("in_cone_2d: dimension must be 2");
    if (!g.is_zero()) gens.push_back(&g);
  }
  // single generator: x on the same ray
  for (const auto* g : gens)
    if (cross2(*g, x) == 0 && dot2(*g, x) > 0) return true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const IntVec& g = *gens[i];
      const IntVec& h = *gens[j];
      Int det = cross2(g, h);
      if (det != 0) {
        // solve a*g + b*h = x by Cramer; membership iff a, b >= 0
        Int an = cross2(x, h);
        Int bn = cross2(g, x);
        if (sgn(det) < 0) {
          an = -an;
          bn = -bn;
        }
        if (an >= 0 && bn >= 0) return true;
      } else if (dot2(g, h) < 0) {
        // opposite rays span a full line
        if (cross2(g, x) == 0) return true;
      }
    }
  }
  return false;
}

std::optional<IntVec> nonneg_integer_solution(const RatMatrix& A, const IntVec& b, const Int& bound) {
  if (bound < 0) throw PreconditionError("nonneg_integer_solution: bound must be >= 0");
  const int m = A.rows;
  const int n = A.cols;
  if (b.dim() != m) throw MalformedError("nonneg_integer_solution: rhs dimension mismatch");

  // suffix interval bounds: what columns j..n-1 can still contribute per row
  std::vector<RatVec> lo(static_cast<std::size_t>(n) + 1, RatVec(static_cast<std::size_t>(m), Rat(0)));
  std::vector<RatVec> hi = lo;
  for (int j = n - 1; j >= 0; --j) {
    for (int r = 0; r < m; ++r) {
      Rat v = A.at(r, j) * Rat(bound);
      lo[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          lo[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(r)] + std::min(Rat(0), v);
      hi[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          hi[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(r)] + std::max(Rat(0), v);
    }
  }

  RatVec residual;
  residual.reserve(static_cast<std::size_t>(m));
  for (int r = 1; r <= m; ++r) residual.emplace_back(b(r));

  std::vector<Int> assign(static_cast<std::size_t>(n));
  std::map<std::pair<int, RatVec>, bool> failed;

  auto column_suffix = [&](int j) {
    RatMatrix S(m, n - j);
    for (int r = 0; r < m; ++r)
      for (int c = j; c < n; ++c) S.at(r, c - j) = A.at(r, c);
    return S;
  };

  std::function<bool(int)> dfs = [&](int j) -> bool {
    if (j == n) {
      return std::all_of(residual.begin(), residual.end(), [](const Rat& x) { return x == 0; });
    }
    for (int r = 0; r < m; ++r) {
      const Rat& res = residual[static_cast<std::size_t>(r)];
      if (res < lo[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] ||
          res > hi[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)])
        return false;
    }
    auto key = std::make_pair(j, residual);
    auto it = failed.find(key);
    if (it != failed.end()) return false;
    // rational relaxation: no lambda >= 0 over the remaining columns
    if (!lp_feasible_point(column_suffix(j), residual)) {
      failed.emplace(std::move(key), true);
      return false;
    }
    for (Int v = 0; v <= bound; ++v) {
      assign[static_cast<std::size_t>(j)] = v;
      if (v > 0)
        for (int r = 0; r < m; ++r) residual[static_cast<std::size_t>(r)] -= A.at(r, j);
      if (dfs(j + 1)) return true;
    }
    // restore residual after trying 0..bound
    for (int r = 0; r < m; ++r) residual[static_cast<std::size_t>(r)] += Rat(bound) * A.at(r, j);
    failed.emplace(std::make_pair(j, residual), true);
    return false;
  };

  if (!dfs(0)) return std::nullopt;
  return IntVec(std::move(assign));
}

IntVec scale_to_integer(const RatVec& v) {
  if (v.empty()) return IntVec();
  RatVec w = v;
  for (auto& x : w) x.canonicalize();
  Int lcm = 1;
  for (const auto& x : w) {
    Int den = x.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<Int> out;
  out.reserve(w.size());
  Int g = 0;
  for (const auto& x : w) {
    Rat scaled = x * Rat(lcm);
    Int num = scaled.get_num();  // canonical, denominator 1
    out.push_back(num);
    Int a = abs_int(num);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return IntVec(std::move(out));
}

std::optional<IntVec> strict_homogeneous_solution(const std::vector<IntVec>& R0,
                                                  const std::vector<IntVec>& R1,
                                                  const Int& bound) {
  int d = -1;
  for (const auto& r : R0) d = std::max(d, r.dim());
  for (const auto& r : R1) d = std::max(d, r.dim());
  if (d < 0) return std::nullopt;  // no rows at all: nothing constrains n, but also nothing to satisfy
  for (const auto& r : R0)
    if (r.dim() != d) throw MalformedError("strict_homogeneous_solution: row dimensions disagree");
  for (const auto& r : R1)
    if (r.dim() != d) throw MalformedError("strict_homogeneous_solution: row dimensions disagree");

  const int m0 = static_cast<int>(R0.size());
  const int m1 = static_cast<int>(R1.size());
  // variables: n+ (d), n- (d), slack (m1);  R0(n+ - n-) = 0,  R1(n+ - n-) - s = 1
  RatMatrix A(m0 + m1, 2 * d + m1);
  RatVec b(static_cast<std::size_t>(m0 + m1), Rat(0));
  for (int r = 0; r < m0; ++r) {
    for (int c = 0; c < d; ++c) {
      A.at(r, c) = Rat(R0[static_cast<std::size_t>(r)](c + 1));
      A.at(r, d + c) = Rat(-R0[static_cast<std::size_t>(r)](c + 1));
    }
  }
  for (int r = 0; r < m1; ++r) {
    for (int c = 0; c < d; ++c) {
      A.at(m0 + r, c) = Rat(R1[static_cast<std::size_t>(r)](c + 1));
      A.at(m0 + r, d + c) = Rat(-R1[static_cast<std::size_t>(r)](c + 1));
    }
    A.at(m0 + r, 2 * d + r) = Rat(-1);
    b[static_cast<std::size_t>(m0 + r)] = 1;
  }
  // minimize the L1 surrogate so the basic solution stays small
  RatVec cost(static_cast<std::size_t>(2 * d + m1), Rat(0));
  for (int c = 0; c < 2 * d; ++c) cost[static_cast<std::size_t>(c)] = 1;
  LpSolution sol = lp_solve(LpProblem{std::move(A), std::move(b), std::move(cost)});
  if (!sol.feasible) return std::nullopt;  // rationally infeasible: no integer solution either

  RatVec nrat(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c)
    nrat[static_cast<std::size_t>(c)] = sol.x[static_cast<std::size_t>(c)] - sol.x[static_cast<std::size_t>(d + c)];
  IntVec n = scale_to_integer(nrat);
  auto satisfies = [&](const IntVec& cand) {
    for (const auto& r : R0)
      if (r.inner(cand) != 0) return false;
    for (const auto& r : R1)
      if (r.inner(cand) < 1) return false;
    return true;
  };
  if (satisfies(n) && n.norm() <= bound) return n;

  // Iterative-deepening bounded search; complete within the requested bound.
  for (Int cap = 1; cap <= bound; cap = std::min(Int(cap * 4), bound)) {
    std::vector<Int> cur(static_cast<std::size_t>(d));
    std::function<bool(int)> dfs = [&](int j) -> bool {
      if (j == d) return satisfies(IntVec(std::vector<Int>(cur)));
      // ascending absolute value: 0, 1, -1, 2, -2, ...
      for (Int a = 0; a <= cap; ++a) {
        for (int s = 0; s < (a == 0 ? 1 : 2); ++s) {
          cur[static_cast<std::size_t>(j)] = s == 0 ? a : Int(-a);
          if (dfs(j + 1)) return true;
        }
      }
      return false;
    };
    if (dfs(0)) return IntVec(std::move(cur));
    if (cap == bound) break;
  }
  return std::nullopt;
}

std::vector<int> minimal_cone_generators_2d(const std::vector<IntVec>& vectors) {
  for (const auto& v : vectors)
    if (v.dim() != 2) throw MalformedError("minimal_cone_generators_2d: dimension must be 2");

  // one candidate per ray, lowest index wins
  std::vector<int> candidates;
  std::map<std::pair<Int, Int>, int> seen;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const IntVec& v = vectors[i];
    if (v.is_zero()) continue;
    Int g;
    Int a1 = abs_int(v(1)), a2 = abs_int(v(2));
    mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    auto key = std::make_pair(Int(v(1) / g), Int(v(2) / g));
    if (!seen.count(key)) {
      seen.emplace(key, static_cast<int>(i));
      candidates.push_back(static_cast<int>(i));
    }
  }
  if (candidates.empty()) return {};

  auto generates_all = [&](const std::vector<int>& sel) {
    std::vector<IntVec> gens;
    gens.reserve(sel.size());
    for (int i : sel) gens.push_back(vectors[static_cast<std::size_t>(i)]);
    for (const auto& v : vectors) {
      if (v.is_zero()) continue;
      if (!in_cone_2d(v, gens)) return false;
    }
    return true;
  };

  const int nc = static_cast<int>(candidates.size());
  for (int size = 1; size <= std::min(nc, 4); ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::function<bool(int, int)> choose = [&](int from, int k) -> bool {
      if (k == size) {
        std::vector<int> sel;
        for (int p : pick) sel.push_back(candidates[static_cast<std::size_t>(p)]);
        return generates_all(sel);
      }
      for (int i = from; i < nc; ++i) {
        pick[static_cast<std::size_t>(k)] = i;
        if (choose(i + 1, k + 1)) return true;
      }
      return false;
    };
    if (choose(0, 0)) {
      std::vector<int> sel;
      for (int p : pick) sel.push_back(candidates[static_cast<std::size_t>(p)]);
      return sel;
    }
  }
  throw InternalError("minimal_cone_generators_2d: no generating subset of size <= 4");
}

}  // namespace vasreach
