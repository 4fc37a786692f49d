#include "aoib/policy_kind.hpp"

#include <array>
#include <cctype>

namespace aoib {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::OracleRR: return "OracleRR";
    case PolicyKind::IID: return "IID";
    case PolicyKind::DLF: return "DLF";
    case PolicyKind::DLTS: return "DL-TS";
    case PolicyKind::DLH: return "DLH";
    case PolicyKind::DLF_AA: return "DLF-AA";
    case PolicyKind::DLTS_AA: return "DL-TS-AA";
    case PolicyKind::DLH_AA: return "DLH-AA";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  // Normalize: uppercase, drop '-' and '_'.
  std::string key;
  key.reserve(name.size());
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (PolicyKind kind : kAllPolicies) {
    std::string canon;
    for (char c : to_string(kind)) {
      if (c == '-' || c == '_') continue;
      canon.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (key == canon) return kind;
  }
  return std::nullopt;
}

}  // namespace aoib
