#include "rohlin/error.hpp"

namespace rohlin {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kNotUnitary: return "NotUnitary";
    case Errc::kSingularInput: return "SingularInput";
    case Errc::kBranchCut: return "BranchCut";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kNonSquareGenerator: return "NonSquareGenerator";
    case Errc::kParseError: return "ParseError";
    case Errc::kNotScalarCommutator: return "NotScalarCommutator";
    case Errc::kNonCommuting: return "NonCommuting";
    case Errc::kDegenerateOrbit: return "DegenerateOrbit";
    case Errc::kSnapFailure: return "SnapFailure";
    case Errc::kZeroMultiIndex: return "ZeroMultiIndex";
    case Errc::kCardinalityMismatch: return "CardinalityMismatch";
    case Errc::kNonCommutingBlock: return "NonCommutingBlock";
    case Errc::kDimensionCap: return "DimensionCap";
    case Errc::kHypothesisViolated: return "HypothesisViolated";
    case Errc::kMethodDisagreement: return "MethodDisagreement";
    case Errc::kStepTooLarge: return "StepTooLarge";
    case Errc::kTooFarFromIdentity: return "TooFarFromIdentity";
    case Errc::kNotScalar: return "NotScalar";
    case Errc::kIndexOutOfWindow: return "IndexOutOfWindow";
    case Errc::kCapExceeded: return "CapExceeded";
    case Errc::kDefectTooLarge: return "DefectTooLarge";
    case Errc::kIncomparableShapes: return "IncomparableShapes";
    case Errc::kClassMismatch: return "ClassMismatch";
    case Errc::kSchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error(Errc::kParseError,
            "parse error at position " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

SchemaError::SchemaError(std::string pointer, const std::string& message)
    : Error(Errc::kSchemaViolation,
            (pointer.empty() ? std::string("/") : pointer) + ": " + message),
      pointer_(std::move(pointer)) {}

}  // namespace rohlin
