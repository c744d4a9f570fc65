#include "arxid/error.hpp"

namespace arxid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kRootOnUnitCircle: return "RootOnUnitCircle";
    case ErrorCode::kNotAntiStable: return "NotAntiStable";
    case ErrorCode::kAlgebraicLoop: return "AlgebraicLoop";
    case ErrorCode::kPoleOnGrid: return "PoleOnGrid";
    case ErrorCode::kUnstableClosedLoop: return "UnstableClosedLoop";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kInverselyUnstableH: return "InverselyUnstableH";
    case ErrorCode::kUnstableZ: return "UnstableZ";
    case ErrorCode::kUnstableExpansion: return "UnstableExpansion";
    case ErrorCode::kRunFailures: return "RunFailures";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace arxid
