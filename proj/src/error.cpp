#include "cofinex/error.hpp"

namespace cofinex {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::dangling_reference: return "DanglingReference";
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::unknown_vertex: return "UnknownVertex";
    case Errc::law_kind_mismatch: return "LawKindMismatch";
    case Errc::law_check_failed: return "LawCheckFailed";
    case Errc::carrier_mismatch: return "CarrierMismatch";
    case Errc::quotient_product_undefined: return "QuotientProductUndefined";
    case Errc::not_a_refinement: return "NotARefinement";
    case Errc::not_a_chain: return "NotAChain";
    case Errc::out_of_window: return "OutOfWindow";
    case Errc::status_unknown: return "StatusUnknown";
    case Errc::base_required: return "BaseRequired";
    case Errc::not_a_congruence: return "NotACongruence";
    case Errc::not_normal: return "NotNormal";
    case Errc::not_coherent: return "NotCoherent";
    case Errc::not_connected: return "NotConnected";
    case Errc::vertices_inseparable: return "VerticesInseparable";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string render(Errc code, const std::string& message,
                   const std::vector<std::string>& witness) {
  std::string out(to_string(code));
  out += ": ";
  out += message;
  if (!witness.empty()) {
    out += " [";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out += ", ";
      out += witness[i];
    }
    out += "]";
  }
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::vector<std::string> witness)
    : std::runtime_error(render(code, message, witness)),
      code_(code),
      witness_(std::move(witness)) {}

}  // namespace cofinex
