#ifndef QATTR_ERROR_HPP
#define QATTR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qattr {

enum class ErrorCode {
  LengthMismatch,
  InvalidTransition,
  OverlappingSpans,
  SpanOutOfBounds,
  MalformedRow,
  InvalidTag,
  MalformedJson,
  EmptyLexicon,
  BadFractions,
  BadGrammar,
  RaggedDimensions,
  NonNumericValue,
  EmptyInput,
  UnknownTag,
  EmptyCorpus,
  DimensionMismatch,
  NoProductTypes,
  DegenerateLabels,
  EmptyHypotheses,
  EmptyQuery,
  EmptyPairs,
  SchemaMismatch,
  OverlapWithinSide,
  BadSchema,
  BadConfig,
  BadModelFile,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception; carries a code so callers can branch without
/// string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qattr

#endif
