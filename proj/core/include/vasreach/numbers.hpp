// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vasreach {

// All integer arithmetic is arbitrary precision. Reductions multiply norms
// (bounds like 6*size^3 appear as state-space boxes), and silent overflow
// would corrupt certificates, so fixed-width integers are banned from the
// data model.
using Int = mpz_class;
// Exact rationals, kept canonical (gcd-reduced, positive denominator) by GMP.
using Rat = mpq_class;

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedError : std::runtime_error {
  explicit MalformedError(const std::string& what) : std::runtime_error(what) {}
};

struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

inline Int abs_int(const Int& a) { return a >= 0 ? a : Int(-a); }

// ceil(a / b) for b > 0, mathematically correct for negative a.
inline Int ceil_div(const Int& a, const Int& b) {
  if (b <= 0) throw PreconditionError("ceil_div: divisor must be positive");
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline long to_long(const Int& a) {
  if (!a.fits_slong_p()) throw CapacityError("integer does not fit in long: " + a.get_str());
  return a.get_si();
}

inline std::size_t hash_int(const Int& a) {
  // cheap stable digest: value mod a Mersenne prime, sign folded in
  std::size_t h = mpz_fdiv_ui(a.get_mpz_t(), 0x1fffffffffffffffUL);
  return sgn(a) < 0 ? ~h : h;
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace vasreach
