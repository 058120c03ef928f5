#pragma once

#include <stdexcept>
#include <string>

namespace resistnet {

enum class Errc {
  parse,
  io,
  self_loop,
  duplicate_edge,
  nonpositive_weight,
  disconnected,
  out_of_range,
  invalid_argument,
  not_an_edge,
  eigensolver,
  mismatch,
};

/// Single exception type for the library; `code()` tells callers which
/// contract was violated without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace resistnet
