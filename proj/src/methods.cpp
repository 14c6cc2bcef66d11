#include "octoroot/methods.hpp"

namespace octoroot {

std::string_view method_name(MethodId id) {
  switch (id) {
    case MethodId::m1: return "M1";
    case MethodId::m2: return "M2";
    case MethodId::m3: return "M3";
    case MethodId::m4: return "M4";
    case MethodId::m5: return "M5";
    case MethodId::m6: return "M6";
  }
  return "?";
}

std::optional<MethodId> parse_method(std::string_view text) {
  if (text.size() != 2 || (text[0] != 'm' && text[0] != 'M')) return std::nullopt;
  if (text[1] < '1' || text[1] > '6') return std::nullopt;
  return kAllMethods[static_cast<std::size_t>(text[1] - '1')];
}

}  // namespace octoroot
