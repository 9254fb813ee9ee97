#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conecalc {

enum class ErrorCode {
  kParse,
  kDifferentialSquare,
  kGrading,
  kFiltration,
  kAsymmetric,
  kTotalHomology,
  kInvalidFlip,
  kMissingFlip,
  kUnknownBuiltin,
  kNotRealizable,
  kNonHomogeneous,
  kNotChainMap,
  kNotCycle,
  kLatticeInput,
  kArithmeticOverflow,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conecalc
