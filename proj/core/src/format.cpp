// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "vasreach/format.hpp"

#include <optional>
#include <sstream>

namespace vasreach {

const char* kind_name(DocKind k) {
  switch (k) {
    case DocKind::Vas: return "vas";
    case DocKind::Vass: return "vass";
    case DocKind::SeqVas: return "seqvas";
  }
  return "?";
}

namespace {

struct Token {
  std::string text;
  int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  // '#' at a token boundary starts a comment; inside a token it is literal,
  // so constructed state names like "q#vec(0,1)" survive the round trip
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back(Token{line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

Int parse_int(const Token& tok, int line_no) {
  const std::string& s = tok.text;
  bool ok = !s.empty();
  for (std::size_t i = 0; i < s.size() && ok; ++i) {
    char c = s[i];
    if (i == 0 && (c == '-' || c == '+')) {
      ok = s.size() > 1;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) ok = false;
  }
  if (!ok) throw ParseError(line_no, tok.col, "malformed integer '" + s + "'");
  return Int(s);
}

IntVec parse_vector(const std::vector<Token>& toks, std::size_t from, int dim, int line_no) {
  if (static_cast<int>(toks.size() - from) != dim)
    throw ParseError(line_no, toks.empty() ? 1 : toks[std::min(from, toks.size() - 1)].col,
                     "expected " + std::to_string(dim) + " integers, got " + std::to_string(toks.size() - from));
  std::vector<Int> entries;
  entries.reserve(static_cast<std::size_t>(dim));
  for (std::size_t k = from; k < toks.size(); ++k) entries.push_back(parse_int(toks[k], line_no));
  return IntVec(std::move(entries));
}

}  // namespace

VassDocument parse_document(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  std::optional<int> dim;
  std::optional<DocKind> kind;
  std::vector<std::string> states;
  struct RawTrans {
    std::string src, dst;
    IntVec effect;
    int line, col;
  };
  std::vector<RawTrans> transitions;
  std::vector<IntVec> base, bridges;
  std::optional<std::pair<std::string, IntVec>> init, target;
  int init_line = 0, target_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;

    auto need_dim = [&]() -> int {
      if (!dim) throw ParseError(line_no, toks[0].col, "'dim' must precede this line");
      return *dim;
    };
    auto need_kind = [&]() -> DocKind {
      if (!kind) throw ParseError(line_no, toks[0].col, "'kind' must precede this line");
      return *kind;
    };

    if (head == "dim") {
      if (dim) throw ParseError(line_no, toks[0].col, "duplicate 'dim'");
      if (toks.size() != 2) throw ParseError(line_no, toks[0].col, "usage: dim <d>");
      Int d = parse_int(toks[1], line_no);
      if (d < 0) throw ParseError(line_no, toks[1].col, "dimension must be nonnegative");
      dim = static_cast<int>(d.get_si());
    } else if (head == "kind") {
      if (kind) throw ParseError(line_no, toks[0].col, "duplicate 'kind'");
      if (toks.size() != 2) throw ParseError(line_no, toks[0].col, "usage: kind vas|vass|seqvas");
      const std::string& k = toks[1].text;
      if (k == "vas") kind = DocKind::Vas;
      else if (k == "vass") kind = DocKind::Vass;
      else if (k == "seqvas") kind = DocKind::SeqVas;
      else throw ParseError(line_no, toks[1].col, "unknown kind '" + k + "'");
    } else if (head == "state") {
      if (need_kind() != DocKind::Vass) throw ParseError(line_no, toks[0].col, "'state' lines are for kind vass");
      if (toks.size() != 2) throw ParseError(line_no, toks[0].col, "usage: state <id>");
      states.push_back(toks[1].text);
    } else if (head == "trans") {
      int d = need_dim();
      DocKind k = need_kind();
      if (k == DocKind::Vass) {
        if (toks.size() < 3) throw ParseError(line_no, toks[0].col, "usage: trans <src> <dst> <ints>");
        transitions.push_back(RawTrans{toks[1].text, toks[2].text, parse_vector(toks, 3, d, line_no), line_no, toks[1].col});
      } else {
        if (toks.size() < 2 || toks[1].text != "*")
          throw ParseError(line_no, toks[0].col, "usage: trans * <ints> for vas/seqvas");
        base.push_back(parse_vector(toks, 2, d, line_no));
      }
    } else if (head == "bridge") {
      if (need_kind() != DocKind::SeqVas) throw ParseError(line_no, toks[0].col, "'bridge' lines are for kind seqvas");
      bridges.push_back(parse_vector(toks, 1, need_dim(), line_no));
    } else if (head == "init" || head == "target") {
      int d = need_dim();
      need_kind();
      if (toks.size() < 2) throw ParseError(line_no, toks[0].col, "usage: " + head + " <state|*> <ints>");
      auto val = std::make_pair(toks[1].text, parse_vector(toks, 2, d, line_no));
      if (head == "init") {
        if (init) throw ParseError(line_no, toks[0].col, "duplicate 'init'");
        init = std::move(val);
        init_line = line_no;
      } else {
        if (target) throw ParseError(line_no, toks[0].col, "duplicate 'target'");
        target = std::move(val);
        target_line = line_no;
      }
    } else {
      throw ParseError(line_no, toks[0].col, "unknown directive '" + head + "'");
    }
  }

  if (!dim) throw ParseError(line_no + 1, 1, "dim required");
  if (!kind) throw ParseError(line_no + 1, 1, "kind required");
  if (!init) throw ParseError(line_no + 1, 1, "init required");
  if (!target) throw ParseError(line_no + 1, 1, "target required");
  for (const auto& [name, vec] : {*init, *target})
    if (!vec.is_nonneg()) throw ParseError(*init == std::make_pair(name, vec) ? init_line : target_line, 1,
                                           "init/target vectors must be nonnegative");

  VassDocument doc;
  doc.kind = *kind;
  if (*kind == DocKind::SeqVas) {
    SequentialVas sv;
    sv.dim = *dim;
    sv.base = std::move(base);
    sv.bridges = std::move(bridges);
    if (init->first != "*") throw ParseError(init_line, 1, "seqvas init state must be *");
    if (target->first != "*") throw ParseError(target_line, 1, "seqvas target state must be *");
    doc.instance = make_seq_instance(std::move(sv), init->second, target->second);
    return doc;
  }
  if (*kind == DocKind::Vas) {
    if (init->first != "*") throw ParseError(init_line, 1, "vas init state must be *");
    if (target->first != "*") throw ParseError(target_line, 1, "vas target state must be *");
    doc.instance = make_vas_instance(*dim, std::move(base), init->second, target->second);
    return doc;
  }

  Vass v(*dim);
  for (const auto& s : states) v.intern(s);
  for (const auto& rt : transitions) {
    auto src = v.find_state(rt.src);
    auto dst = v.find_state(rt.dst);
    if (!src) throw ParseError(rt.line, rt.col, "undeclared state '" + rt.src + "'");
    if (!dst) throw ParseError(rt.line, rt.col, "undeclared state '" + rt.dst + "'");
    v.add_transition(*src, rt.effect, *dst);
  }
  auto src = v.find_state(init->first);
  if (!src) throw ParseError(init_line, 1, "undeclared init state '" + init->first + "'");
  auto dst = v.find_state(target->first);
  if (!dst) throw ParseError(target_line, 1, "undeclared target state '" + target->first + "'");
  doc.instance = ReachInstance{std::move(v), Config{*src, init->second}, Config{*dst, target->second}};
  return doc;
}

ReachInstance parse_instance(const std::string& text) { return parse_document(text).instance; }

DocKind infer_kind(const ReachInstance& inst) {
  if (inst.is_sequential()) return DocKind::SeqVas;
  const Vass& v = std::get<Vass>(inst.system);
  if (v.is_vas() && v.state_name(0) == Vass::kVasState) return DocKind::Vas;
  return DocKind::Vass;
}

namespace {

void write_ints(std::ostream& os, const IntVec& v) {
  for (int i = 1; i <= v.dim(); ++i) os << " " << v(i).get_str();
}

}  // namespace

std::string serialize_document(const VassDocument& doc, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  const ReachInstance& inst = doc.instance;
  os << "dim " << inst.dim() << "\n";
  os << "kind " << kind_name(doc.kind) << "\n";
  if (doc.kind == DocKind::SeqVas) {
    const SequentialVas& sv = inst.sequential();
    for (const auto& a : sv.base) {
      os << "trans *";
      write_ints(os, a);
      os << "\n";
    }
    for (const auto& a : sv.bridges) {
      os << "bridge";
      write_ints(os, a);
      os << "\n";
    }
    os << "init *";
    write_ints(os, inst.source.vec);
    os << "\ntarget *";
    write_ints(os, inst.target.vec);
    os << "\n";
    return os.str();
  }
  const Vass& v = std::get<Vass>(inst.system);
  if (doc.kind == DocKind::Vas) {
    for (const auto& tr : v.transitions()) {
      os << "trans *";
      write_ints(os, tr.effect);
      os << "\n";
    }
    os << "init *";
    write_ints(os, inst.source.vec);
    os << "\ntarget *";
    write_ints(os, inst.target.vec);
    os << "\n";
    return os.str();
  }
  for (const auto& name : v.state_names()) os << "state " << name << "\n";
  for (const auto& tr : v.transitions()) {
    os << "trans " << v.state_name(tr.src) << " " << v.state_name(tr.dst);
    write_ints(os, tr.effect);
    os << "\n";
  }
  os << "init " << v.state_name(inst.source.state);
  write_ints(os, inst.source.vec);
  os << "\ntarget " << v.state_name(inst.target.state);
  write_ints(os, inst.target.vec);
  os << "\n";
  return os.str();
}

std::string serialize_instance(const ReachInstance& inst, const std::vector<std::string>& comments) {
  return serialize_document(VassDocument{infer_kind(inst), inst}, comments);
}

}  // namespace vasreach
