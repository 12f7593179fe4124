#pragma once

#include <stdexcept>
#include <string>

namespace dnov {

// All library errors derive from Error and carry a stable machine-readable
// code ("PoleAtDelta", "DimensionMismatch", ...) next to the human message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

inline Error pole_at_delta(const std::string& poly, const std::string& at) {
  return Error("PoleAtDelta", "denominator " + poly + " vanishes at delta = " + at);
}

inline Error dimension_mismatch(const std::string& what) {
  return Error("DimensionMismatch", what);
}

inline Error parse_error(const std::string& what) { return Error("ParseError", what); }

}  // namespace dnov
