// Copyright 2026 The cgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CGT_MODEL_IO_HPP_
#define CGT_MODEL_IO_HPP_

#include <optional>
#include <string>

#include "cgt/bayesian_game.hpp"
#include "cgt/cbg.hpp"
#include "cgt/extensive_form.hpp"
#include "cgt/maid.hpp"

namespace cgt {

struct CbgModel {
  GraphFamily family;
  BeliefProfile beliefs;
};

enum class ModelType { kBn, kNfg, kEfg, kBayesianGame, kMaid, kCbg };

const char* model_type_name(ModelType type);

// One self-describing JSON document per model. Exactly one payload member is
// populated, matching `type`.
struct ModelDocument {
  int format_version = 1;
  ModelType type = ModelType::kBn;
  std::optional<BayesNet> bn;
  std::optional<NormalFormGame> nfg;
  std::optional<GameTree> efg;
  std::optional<BayesianGame> bayesian;
  std::optional<Maid> maid;
  std::optional<CbgModel> cbg;
};

// Throws kParseError (with line/column), kSchemaViolation or
// kUnresolvedReference. The parser resolves every cross-reference, so a
// successfully parsed document is structurally sound; numeric invariants are
// checked by validate_document.
ModelDocument parse_model(const std::string& text);

// Canonical text form; serialize(parse(t)) is a projection (applying it to
// its own output reproduces the bytes).
std::string serialize_model(const ModelDocument& doc);

ValidationReport validate_document(const ModelDocument& doc);

// Strategy files assign one decision rule per decision node of a MAID.
MaidProfile parse_strategy(const std::string& text, const Maid& maid);

std::string read_file(const std::string& path);  // throws kIoError

}  // namespace cgt

#endif  // CGT_MODEL_IO_HPP_
