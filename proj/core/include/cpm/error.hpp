#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpm {

enum class Errc {
  invalid_argument,
  invalid_formula,
  syntax_error,
  empty_product,
  non_s5_result,
  not_bipartite,
  out_of_horizon,
  malformed_adversary,
  scale_limit,
};

std::string_view to_string(Errc code);

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI in particular) map failures to exit statuses without
/// string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the formula parser. `position` is a zero-based byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(Errc::syntax_error,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cpm
