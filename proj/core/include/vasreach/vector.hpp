// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "vasreach/numbers.hpp"

namespace vasreach {

// Dense integer vector of a fixed dimension. Coordinates are 1-based in the
// public API mirroring the usual x(i) notation; storage is 0-based.
class IntVec {
 public:
  IntVec() = default;
  explicit IntVec(int dim) : e_(static_cast<std::size_t>(dim)) {}
  IntVec(std::initializer_list<long> xs) {
    e_.reserve(xs.size());
    for (long x : xs) e_.emplace_back(x);
  }
  explicit IntVec(std::vector<Int> entries) : e_(std::move(entries)) {}

  int dim() const { return static_cast<int>(e_.size()); }

  const Int& operator()(int i) const { return e_.at(static_cast<std::size_t>(i - 1)); }
  Int& operator()(int i) { return e_.at(static_cast<std::size_t>(i - 1)); }

  const std::vector<Int>& entries() const { return e_; }

  static IntVec zero(int dim) { return IntVec(dim); }
  static IntVec unit(int dim, int i) {
    IntVec v(dim);
    v(i) = 1;
    return v;
  }
  static IntVec ones(int dim) {
    IntVec v(dim);
    for (auto& x : v.e_) x = 1;
    return v;
  }

  IntVec& operator+=(const IntVec& o) {
    check_dim(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  IntVec& operator-=(const IntVec& o) {
    check_dim(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  friend IntVec operator+(IntVec a, const IntVec& b) { return a += b; }
  friend IntVec operator-(IntVec a, const IntVec& b) { return a -= b; }
  friend IntVec operator-(const IntVec& a) {
    IntVec r(a.dim());
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = -a.e_[k];
    return r;
  }
  friend IntVec operator*(const Int& c, IntVec a) {
    for (auto& x : a.e_) x *= c;
    return a;
  }

  friend bool operator==(const IntVec& a, const IntVec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const IntVec& a, const IntVec& b) { return !(a == b); }
  // lexicographic, for use as map keys
  friend bool operator<(const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
  }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
  }
  bool is_nonneg() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x >= 0; });
  }
  // component-wise a >= b
  bool dominates(const IntVec& b) const {
    check_dim(b);
    for (std::size_t k = 0; k < e_.size(); ++k)
      if (e_[k] < b.e_[k]) return false;
    return true;
  }

  // max norm
  Int norm() const {
    Int m = 0;
    for (const auto& x : e_) {
      Int a = abs_int(x);
      if (a > m) m = a;
    }
    return m;
  }

  Int inner(const IntVec& o) const {
    check_dim(o);
    Int s = 0;
    for (std::size_t k = 0; k < e_.size(); ++k) s += e_[k] * o.e_[k];
    return s;
  }

  // projection x|_I; coordinates keep the ascending order of I
  IntVec restrict(const std::set<int>& I) const {
    std::vector<Int> out;
    out.reserve(I.size());
    for (int i : I) out.push_back((*this)(i));
    return IntVec(std::move(out));
  }

  // drop the coordinates in I
  IntVec without(const std::set<int>& I) const {
    std::vector<Int> out;
    for (int i = 1; i <= dim(); ++i)
      if (!I.count(i)) out.push_back((*this)(i));
    return IntVec(std::move(out));
  }

  std::set<int> support() const {
    std::set<int> s;
    for (int i = 1; i <= dim(); ++i)
      if ((*this)(i) != 0) s.insert(i);
    return s;
  }

  std::size_t hash() const {
    std::size_t h = 0x51ed270b;
    for (const auto& x : e_) h = hash_combine(h, hash_int(x));
    return h;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 1; i <= dim(); ++i) {
      if (i > 1) s += ",";
      s += (*this)(i).get_str();
    }
    return s + ")";
  }

 private:
  void check_dim(const IntVec& o) const {
    if (o.dim() != dim()) throw MalformedError("dimension mismatch: " + std::to_string(dim()) + " vs " + std::to_string(o.dim()));
  }

  std::vector<Int> e_;
};

inline Int norm_of(const std::vector<IntVec>& xs) {
  Int m = 0;
  for (const auto& x : xs) {
    Int n = x.norm();
    if (n > m) m = n;
  }
  return m;
}

}  // namespace vasreach
