#pragma once

// Catalog of greatest digit elimination rules and their transport to
// shifted alphabets.

#include <cstdint>
#include <optional>

#include "carryfree/local_engine.hpp"

namespace carryfree {

enum class RootSign { Positive, Negative };

/// {0..b+1} -> {0..b} in base -b; window (0,2).
LocalRule gde_negative_integer(std::int64_t b);
/// {0..b+1} -> {0..b} for beta^k = b (Positive) or beta^k = -b
/// (Negative); window (0,2k). k = 1 Positive is the integer base b.
LocalRule gde_root(std::int64_t b, std::int64_t k, RootSign sign);
/// {0..2a-2} -> {0..a} for beta^2 = a beta - 1; window (2,2).
LocalRule algorithm_a(std::int64_t a);
/// {0..a} -> {0..a-1} for beta^2 = a beta - 1; window (3,3).
LocalRule gde_pisot_minus(std::int64_t a);
/// {0..a+2} -> {0..a+1} for beta^2 = a beta + 1; window (2,2).
LocalRule gde_pisot_plus(std::int64_t a);
/// {0..a+b} -> {0..a+b-1} for beta = a/b; window (0,1).
LocalRule gde_rational_pos(std::int64_t a, std::int64_t b);
/// {0..a+b} -> {0..a+b-1} for beta = -a/b; window (0,2).
LocalRule gde_rational_neg(std::int64_t a, std::int64_t b);

/// Catalog GDE rule {0..K} -> {0..K-1} for a base, K its minimal
/// alphabet size.
LocalRule gde_for_base(const BaseSpec& base);

/// Smallest digit elimination {m-1..M} -> {m..M} for an alphabet of the
/// minimal size, built by shifting the GDE rule to the mirrored alphabet
/// and negating. Throws ShiftNotLicensed when the needed letter is not
/// fixed.
LocalRule sde_for_alphabet(const BaseSpec& base, const Alphabet& alphabet);

struct RulePair {
  Alphabet alphabet;
  /// d with alphabet = {-d, ..., K-1-d}.
  Digit d = 0;
  /// Present when M >= 1.
  std::optional<LocalRule> gde;
  /// Present when m <= -1.
  std::optional<LocalRule> sde;
};

/// GDE and SDE rules for A_{-d}, licensed when both d and K-1-d are fixed
/// letters of the base GDE rule (each only where the rule is needed).
RulePair rule_for_alphabet(const BaseSpec& base, const Alphabet& alphabet);

/// Rebuild a rule from its JSON export: from the table when present,
/// otherwise by replaying the catalog description.
LocalRule rule_from_json(const json& j);

}  // namespace carryfree
