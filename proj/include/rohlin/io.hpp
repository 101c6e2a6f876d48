#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rohlin/actions.hpp"
#include "rohlin/expr.hpp"

namespace rohlin {

// JSON documents accepted by the command-line tool. Validation mirrors the
// schemas under schemas/ and reports failures as SchemaError with a JSON
// pointer to the offending value.

/// { "n": int, "u": expr, "v": expr }; other members are ignored.
struct PairDocument {
  std::int64_t n;
  MatrixExpr u;
  MatrixExpr v;
};

nlohmann::json read_json_file(const std::filesystem::path& path);

PairDocument parse_pair_document(const nlohmann::json& doc);
nlohmann::json pair_document_to_json(const PairDocument& pair);

/// { "blocks": [ { "q": int, "u1": expr, "u2": expr } ... ],
///   "tail": { "kind": "trivial" | "periodic",
///             "period": [ { "q": int, "s": int } ... ],
///             "start_exponent": int } }
ProductActionSpec parse_action_spec(const nlohmann::json& doc);
nlohmann::json action_spec_to_json(const ProductActionSpec& spec);

}  // namespace rohlin
