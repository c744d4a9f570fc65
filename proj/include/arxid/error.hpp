#ifndef ARXID_ERROR_HPP
#define ARXID_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace arxid {

enum class ErrorCode {
  kInvalidArgument,
  kZeroPolynomial,
  kRootOnUnitCircle,
  kNotAntiStable,
  kAlgebraicLoop,
  kPoleOnGrid,
  kUnstableClosedLoop,
  kRankDeficient,
  kInverselyUnstableH,
  kUnstableZ,
  kUnstableExpansion,
  kRunFailures,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; callers branch on
// code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arxid

#endif  // ARXID_ERROR_HPP
