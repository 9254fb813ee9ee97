#include "conecalc/error.hpp"

namespace conecalc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDifferentialSquare: return "differential-square";
    case ErrorCode::kGrading: return "grading";
    case ErrorCode::kFiltration: return "filtration";
    case ErrorCode::kAsymmetric: return "asymmetric";
    case ErrorCode::kTotalHomology: return "total-homology";
    case ErrorCode::kInvalidFlip: return "invalid-flip";
    case ErrorCode::kMissingFlip: return "missing-flip";
    case ErrorCode::kUnknownBuiltin: return "unknown-builtin";
    case ErrorCode::kNotRealizable: return "not-realizable";
    case ErrorCode::kNonHomogeneous: return "non-homogeneous";
    case ErrorCode::kNotChainMap: return "not-chain-map";
    case ErrorCode::kNotCycle: return "not-cycle";
    case ErrorCode::kLatticeInput: return "lattice-input";
    case ErrorCode::kArithmeticOverflow: return "overflow";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace conecalc
