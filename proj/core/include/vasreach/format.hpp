// Copyright (c) vasreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vasreach/model.hpp"

namespace vasreach {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
        line(line_),
        col(col_) {}
};

enum class DocKind { Vas, Vass, SeqVas };

const char* kind_name(DocKind k);

// Line-oriented text format, '#' starts a comment:
//   dim <d>
//   kind vas|vass|seqvas
//   state <id>                  (vass)
//   trans <src> <dst> <d ints>  (vass)
//   trans * <d ints>            (vas / seqvas base)
//   bridge <d ints>             (seqvas, ordered)
//   init <state|*> <d ints>
//   target <state|*> <d ints>
struct VassDocument {
  DocKind kind = DocKind::Vas;
  ReachInstance instance;
};

VassDocument parse_document(const std::string& text);
ReachInstance parse_instance(const std::string& text);

// Round-trips with parse up to whitespace and comment placement; `comments`
// are emitted as leading '#' lines.
std::string serialize_document(const VassDocument& doc, const std::vector<std::string>& comments = {});
std::string serialize_instance(const ReachInstance& inst, const std::vector<std::string>& comments = {});

DocKind infer_kind(const ReachInstance& inst);

}  // namespace vasreach
