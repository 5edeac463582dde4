// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "vasreach/vector.hpp"

namespace vasreach {

using StateId = int;

struct Transition {
  StateId src;
  IntVec effect;
  StateId dst;

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.src == b.src && a.dst == b.dst && a.effect == b.effect;
  }
};

// Finite-state machine over integer-vector transitions; the carrier for every
// construction in this library. A VAS is a Vass with the single state "*".
// Constructed states (encodings, gadgets, products) follow the naming scheme
// "orig#tag(args)" so transformed systems stay debuggable.
class Vass {
 public:
  Vass() : Vass(0) {}
  explicit Vass(int dim) : dim_(dim) {
    if (dim < 0) throw MalformedError("negative dimension");
  }

  int dim() const { return dim_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  const std::string& state_name(StateId s) const { return names_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& state_names() const { return names_; }
  const std::vector<Transition>& transitions() const { return trans_; }
  const Transition& transition(int t) const { return trans_.at(static_cast<std::size_t>(t)); }

  StateId intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    StateId id = static_cast<StateId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }
  std::optional<StateId> find_state(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int add_transition(StateId src, IntVec effect, StateId dst) {
    if (src < 0 || src >= num_states() || dst < 0 || dst >= num_states())
      throw MalformedError("transition references undeclared state");
    if (effect.dim() != dim_) throw MalformedError("transition effect has wrong dimension");
    trans_.push_back(Transition{src, std::move(effect), dst});
    return static_cast<int>(trans_.size()) - 1;
  }

  bool is_vas() const { return num_states() == 1; }

  Int transition_norm() const {
    Int m = 0;
    for (const auto& t : trans_) {
      Int n = t.effect.norm();
      if (n > m) m = n;
    }
    return m;
  }

  // size(V) = |Q| + d * |T| * (||T|| + 1), unary-encoded size
  Int size() const {
    return Int(num_states()) + Int(dim_) * Int(trans_.size()) * (transition_norm() + 1);
  }

  std::vector<IntVec> effects() const {
    std::vector<IntVec> out;
    out.reserve(trans_.size());
    for (const auto& t : trans_) out.push_back(t.effect);
    return out;
  }

  static const std::string kVasState;  // canonical single state of a VAS

  static Vass vas(int dim, std::vector<IntVec> effects) {
    Vass v(dim);
    StateId q = v.intern(kVasState);
    for (auto& e : effects) v.add_transition(q, std::move(e), q);
    return v;
  }

  friend bool operator==(const Vass& a, const Vass& b) {
    return a.dim_ == b.dim_ && a.names_ == b.names_ && a.trans_ == b.trans_;
  }

 private:
  int dim_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> index_;
  std::vector<Transition> trans_;
};

// Base VAS plus an ordered bridge list; expands to the chain of states
// q0..qk with the base effects as self-loops on every state.
struct SequentialVas {
  int dim = 0;
  std::vector<IntVec> base;
  std::vector<IntVec> bridges;

  int num_expanded_states() const { return static_cast<int>(bridges.size()) + 1; }
  StateId source_state() const { return 0; }
  StateId target_state() const { return static_cast<int>(bridges.size()); }

  friend bool operator==(const SequentialVas& a, const SequentialVas& b) {
    return a.dim == b.dim && a.base == b.base && a.bridges == b.bridges;
  }

  // positions within the expansion's transition list
  int self_loop_index(StateId state, int base_idx) const {
    return state * (static_cast<int>(base.size()) + 1) + base_idx;
  }
  int bridge_index(int bridge_no) const {  // 1-based, bridge j goes q_{j-1} -> q_j
    return (bridge_no - 1) * (static_cast<int>(base.size()) + 1) + static_cast<int>(base.size());
  }

  void validate() const {
    for (const auto& a : base)
      if (a.dim() != dim) throw MalformedError("base effect has wrong dimension");
    for (const auto& a : bridges)
      if (a.dim() != dim) throw MalformedError("bridge has wrong dimension");
  }
};

// Expansion per the chain construction: for each j the self-loops (q_j, a, q_j)
// in base order, then the bridge (q_j, a_{j+1}, q_{j+1}). Transition indices of
// runs on a sequential VAS always refer to this ordering.
Vass expand_sequential(const SequentialVas& s);

struct Config {
  StateId state = 0;
  IntVec vec;

  friend bool operator==(const Config& a, const Config& b) {
    return a.state == b.state && a.vec == b.vec;
  }
  friend bool operator<(const Config& a, const Config& b) {
    if (a.state != b.state) return a.state < b.state;
    return a.vec < b.vec;
  }
  std::size_t hash() const { return hash_combine(static_cast<std::size_t>(state) * 0x9e3779b1, vec.hash()); }
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const { return c.hash(); }
};

// A path is a word over transition indices of a fixed Vass.
struct Path {
  std::vector<int> transitions;

  std::size_t length() const { return transitions.size(); }
  bool empty() const { return transitions.empty(); }
  Path& append(int t) {
    transitions.push_back(t);
    return *this;
  }
  Path& append(const Path& o) {
    transitions.insert(transitions.end(), o.transitions.begin(), o.transitions.end());
    return *this;
  }
};

// A run stores only start and path; intermediate configurations are recomputed
// on demand so memory stays linear in path length.
struct Run {
  Config start;
  Path path;
};

enum class Semantics { N, Z };

struct ReplayBlocked {
  int step;        // 1-based index of the blocking transition
  int coordinate;  // 1-based coordinate that went negative
};

struct ReplayResult {
  std::optional<Config> end;
  std::optional<ReplayBlocked> blocked;
  bool ok() const { return end.has_value(); }
};

void check_chained(const Vass& v, const Path& p);
bool is_chained(const Vass& v, const Path& p);

// All configurations along a run, start included; throws MalformedError when
// the run blocks under N-semantics.
std::vector<Config> run_configs(const Vass& v, const Run& run);

IntVec effect(const Vass& v, const Path& p);
// per coordinate, the maximum decrease over prefixes; any start >= drop(p) can fire p
IntVec drop(const Vass& v, const Path& p);
ReplayResult replay(const Vass& v, const Config& start, const Path& p, Semantics sem);

Vass reverse(const Vass& v);
Path reverse_path(const Vass& v, const Vass& vrev, const Path& p);

struct ReachInstance {
  std::variant<Vass, SequentialVas> system;
  Config source;
  Config target;

  bool is_sequential() const { return std::holds_alternative<SequentialVas>(system); }
  const SequentialVas& sequential() const { return std::get<SequentialVas>(system); }
  // the Vass the semantics runs on (expands sequential systems)
  Vass expanded() const {
    if (is_sequential()) return expand_sequential(sequential());
    return std::get<Vass>(system);
  }
  int dim() const {
    return is_sequential() ? sequential().dim : std::get<Vass>(system).dim();
  }

  friend bool operator==(const ReachInstance& a, const ReachInstance& b) {
    return a.system == b.system && a.source == b.source && a.target == b.target;
  }
};

ReachInstance make_vas_instance(int dim, std::vector<IntVec> effects, IntVec s, IntVec t);
ReachInstance make_seq_instance(SequentialVas s, IntVec src, IntVec tgt);

// size(V, s, t) = size(V) + d * (||s|| + ||t|| + 1)
Int instance_size(const Vass& v, const Config& s, const Config& t);
Int instance_size(const ReachInstance& inst);

}  // namespace vasreach
