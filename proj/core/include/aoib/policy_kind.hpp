#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace aoib {

/// The eight scheduling policies.
enum class PolicyKind {
  OracleRR,  // collision-free round-robin over the best-M channels
  IID,       // fresh shared uniform permutation of the best-M every slot
  DLF,       // fairness-indexed UCB
  DLTS,      // fairness-indexed Thompson sampling
  DLH,       // per-slot random switch between DLF and DLTS
  DLF_AA,    // DLF with age-triggered exploitation
  DLTS_AA,   // DLTS with age-triggered exploitation
  DLH_AA,    // DLH with age-triggered exploitation
};

inline constexpr PolicyKind kAllPolicies[] = {
    PolicyKind::OracleRR, PolicyKind::IID,     PolicyKind::DLF,
    PolicyKind::DLTS,     PolicyKind::DLH,     PolicyKind::DLF_AA,
    PolicyKind::DLTS_AA,  PolicyKind::DLH_AA,
};

/// The six learning policies compared in the experiments.
inline constexpr PolicyKind kLearningPolicies[] = {
    PolicyKind::DLF,    PolicyKind::DLTS,    PolicyKind::DLH,
    PolicyKind::DLF_AA, PolicyKind::DLTS_AA, PolicyKind::DLH_AA,
};

/// Display/CSV name, e.g. "DLF-AA", "DL-TS", "OracleRR".
std::string_view to_string(PolicyKind kind);

/// Parses a policy name (case-insensitive, '-'/'_' interchangeable).
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

}  // namespace aoib
