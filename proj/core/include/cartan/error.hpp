#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cartan {

enum class ErrorCode {
  NonFinite,
  SectorMismatch,
  NonBlockDiagonal,
  NumericallySingular,
  NotNormalized,
  NotInGroup,
  ZeroBranch,
  EmptySequence,
  Degenerate,
  Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// command-line layer can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cartan
