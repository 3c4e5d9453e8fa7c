#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfrac {

enum class ErrorCode {
  kInvalidElement,             // zero element where s_n(w) = 1/(b + w) needs b != 0
  kDomain,                     // argument outside the operation's domain
  kSectorTooWide,              // origin-disk request with half-angle >= pi/4
  kInvalidCertificateRequest,  // certificate precondition not met
  kOutOfRange,                 // index beyond the materialized sequence
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cfrac
