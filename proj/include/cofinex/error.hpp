#ifndef COFINEX_ERROR_HPP
#define COFINEX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cofinex {

enum class Errc {
  dangling_reference,
  duplicate_id,
  kind_mismatch,
  unknown_element,
  unknown_vertex,
  law_kind_mismatch,
  law_check_failed,
  carrier_mismatch,
  quotient_product_undefined,
  not_a_refinement,
  not_a_chain,
  out_of_window,
  status_unknown,
  base_required,
  not_a_congruence,
  not_normal,
  not_coherent,
  not_connected,
  vertices_inseparable,
  bad_parameter,
  parse_error,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library. `witness` carries original element
/// ids (or level/member indices) that pin down the offending data.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::vector<std::string> witness = {});

  Errc code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::string> witness_;
};

}  // namespace cofinex

#endif  // COFINEX_ERROR_HPP
