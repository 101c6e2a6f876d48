#include "rohlin/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

using nlohmann::json;

std::string child(const std::string& pointer, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

const json& require_object(const json& doc, const std::string& pointer) {
  if (!doc.is_object()) throw SchemaError(pointer, "expected an object");
  return doc;
}

void reject_unknown(const json& doc, const std::string& pointer,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!allowed.count(key)) throw SchemaError(child(pointer, key), "unexpected member");
  }
}

const json& member(const json& doc, const std::string& pointer, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(child(pointer, key), "missing required member");
  return *it;
}

std::int64_t integer(const json& value, const std::string& pointer, std::int64_t min,
                     std::int64_t max) {
  if (!value.is_number_integer()) throw SchemaError(pointer, "expected an integer");
  const auto v = value.get<std::int64_t>();
  if (v < min || v > max) {
    throw SchemaError(pointer, "value " + std::to_string(v) + " outside [" +
                                   std::to_string(min) + ", " + std::to_string(max) + "]");
  }
  return v;
}

MatrixExpr expression(const json& value, const std::string& pointer) {
  if (!value.is_string()) throw SchemaError(pointer, "expected a matrix expression string");
  try {
    return MatrixExpr::parse(value.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(pointer, "at offset " + std::to_string(e.position()) + ": " + e.detail());
  }
}

void require_size(const MatrixExpr& e, std::int64_t n, const std::string& pointer) {
  const ComplexMatrix m = e.evaluate();
  if (m.rows() != n) {
    throw SchemaError(pointer, "expression is " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()) + ", expected " +
                                   std::to_string(n) + "x" + std::to_string(n));
  }
}

constexpr std::int64_t kMaxDimension = 4096;
constexpr std::int64_t kMaxTailBase = 1 << 20;

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

PairDocument parse_pair_document(const json& doc) {
  require_object(doc, "");
  const std::int64_t n = integer(member(doc, "", "n"), "/n", 1, kMaxDimension);
  MatrixExpr u = expression(member(doc, "", "u"), "/u");
  MatrixExpr v = expression(member(doc, "", "v"), "/v");
  require_size(u, n, "/u");
  require_size(v, n, "/v");
  return {n, std::move(u), std::move(v)};
}

json pair_document_to_json(const PairDocument& pair) {
  return json{{"n", pair.n}, {"u", pair.u.to_string()}, {"v", pair.v.to_string()}};
}

ProductActionSpec parse_action_spec(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"blocks", "tail"});
  ProductActionSpec spec;

  const json& blocks = member(doc, "", "blocks");
  if (!blocks.is_array()) throw SchemaError("/blocks", "expected an array");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string at = child("/blocks", k);
    const json& b = require_object(blocks[k], at);
    reject_unknown(b, at, {"q", "u1", "u2"});
    const std::int64_t q = integer(member(b, at, "q"), child(at, "q"), 1, kMaxDimension);
    MatrixExpr u1 = expression(member(b, at, "u1"), child(at, "u1"));
    MatrixExpr u2 = expression(member(b, at, "u2"), child(at, "u2"));
    require_size(u1, q, child(at, "u1"));
    require_size(u2, q, child(at, "u2"));
    spec.blocks.push_back({q, std::move(u1), std::move(u2)});
  }

  const json& tail = require_object(member(doc, "", "tail"), "/tail");
  reject_unknown(tail, "/tail", {"kind", "period", "start_exponent"});
  const json& kind = member(tail, "/tail", "kind");
  if (kind == "trivial") {
    spec.tail.kind = TailSpec::Kind::kTrivial;
    if (tail.contains("period") && !tail["period"].empty()) {
      throw SchemaError("/tail/period", "a trivial tail has no period");
    }
  } else if (kind == "periodic") {
    spec.tail.kind = TailSpec::Kind::kPeriodic;
    const json& period = member(tail, "/tail", "period");
    if (!period.is_array() || period.empty()) {
      throw SchemaError("/tail/period", "expected a nonempty array");
    }
    for (std::size_t k = 0; k < period.size(); ++k) {
      const std::string at = child("/tail/period", k);
      const json& e = require_object(period[k], at);
      reject_unknown(e, at, {"q", "s"});
      const std::int64_t q = integer(member(e, at, "q"), child(at, "q"), 2, kMaxTailBase);
      const std::int64_t s = integer(member(e, at, "s"), child(at, "s"), 0, q - 1);
      spec.tail.period.push_back({q, s});
    }
  } else {
    throw SchemaError("/tail/kind", "expected \"trivial\" or \"periodic\"");
  }
  if (tail.contains("start_exponent")) {
    spec.tail.start_exponent = integer(tail["start_exponent"], "/tail/start_exponent", 1, 1 << 20);
  }
  return spec;
}

json action_spec_to_json(const ProductActionSpec& spec) {
  json blocks = json::array();
  for (const ActionBlock& b : spec.blocks) {
    blocks.push_back({{"q", b.q}, {"u1", b.u1.to_string()}, {"u2", b.u2.to_string()}});
  }
  json tail = {{"kind", spec.tail.kind == TailSpec::Kind::kPeriodic ? "periodic" : "trivial"}};
  if (spec.tail.kind == TailSpec::Kind::kPeriodic) {
    json period = json::array();
    for (const TailEntry& e : spec.tail.period) period.push_back({{"q", e.q}, {"s", e.s}});
    tail["period"] = std::move(period);
    tail["start_exponent"] = spec.tail.start_exponent;
  }
  return json{{"blocks", std::move(blocks)}, {"tail", std::move(tail)}};
}

}  // namespace rohlin
