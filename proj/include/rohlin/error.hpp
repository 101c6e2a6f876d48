#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rohlin {

// Every failure mode a library operation can report. The CLI prints the
// name() of the code, so names are part of the external interface.
enum class Errc {
  kInvalidArgument,
  kNotUnitary,
  kSingularInput,
  kBranchCut,
  kDimensionMismatch,
  kNonSquareGenerator,
  kParseError,
  kNotScalarCommutator,
  kNonCommuting,
  kDegenerateOrbit,
  kSnapFailure,
  kZeroMultiIndex,
  kCardinalityMismatch,
  kNonCommutingBlock,
  kDimensionCap,
  kHypothesisViolated,
  kMethodDisagreement,
  kStepTooLarge,
  kTooFarFromIdentity,
  kNotScalar,
  kIndexOutOfWindow,
  kCapExceeded,
  kDefectTooLarge,
  kIncomparableShapes,
  kClassMismatch,
  kSchemaViolation,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

/// Raised by the matrix-expression parser; `position` is a 0-based byte
/// offset into the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

/// Input document does not match its schema. `pointer` is an RFC 6901 JSON
/// pointer to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message);

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace rohlin
