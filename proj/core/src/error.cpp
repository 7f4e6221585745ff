#include "cpm/error.hpp"

namespace cpm {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
      return "invalid-argument";
    case Errc::invalid_formula:
      return "invalid-formula";
    case Errc::syntax_error:
      return "syntax-error";
    case Errc::empty_product:
      return "empty-product";
    case Errc::non_s5_result:
      return "non-s5-result";
    case Errc::not_bipartite:
      return "not-bipartite";
    case Errc::out_of_horizon:
      return "out-of-horizon";
    case Errc::malformed_adversary:
      return "malformed-adversary";
    case Errc::scale_limit:
      return "scale-limit";
  }
  return "unknown";
}

}  // namespace cpm
