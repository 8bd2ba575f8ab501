#pragma once

// Lower bounds on the size of an alphabet allowing parallel addition,
// minimal-form checks for roots, and the per-base minimal alphabet report.

#include <cstdint>
#include <optional>
#include <string>

#include "carryfree/core.hpp"

namespace carryfree {

struct MinimalForm {
  bool minimal = true;
  /// Reduced pair (c, k) with c^(1/k) equal to the original root; equals
  /// the input when minimal.
  std::int64_t c = 0;
  std::int64_t k = 1;
};

/// b^(1/k) is in minimal form iff b is not a perfect k'-th power for any
/// k' >= 2 dividing k.
MinimalForm minimal_form(std::int64_t b, std::int64_t k);

/// ceil(beta) for real beta > 1. Throws NotApplicable otherwise.
std::int64_t lower_bound_ceil(const BaseSpec& base);

struct F1Bound {
  IntPoly minimal_poly;
  /// |f(1)| for the minimal polynomial f.
  std::int64_t value = 0;
  /// Whether the strengthened bound |f(1)| + 2 applies.
  bool plus2 = false;
  /// False when the polynomial used is not known to be minimal.
  bool proven_minimal = true;

  std::int64_t bound() const noexcept { return plus2 ? value + 2 : value; }
};

/// Bound from the minimal polynomial. Throws NotApplicable for bases
/// that are not algebraic integers.
F1Bound lower_bound_f1(const BaseSpec& base);

enum class ShiftSupport { AllShifts, ListedShapes };

struct BoundReport {
  BaseSpec base;
  std::optional<std::int64_t> ceil_bound;
  std::optional<std::int64_t> f1_bound;
  bool f1_plus2_applicable = false;
  bool f1_proven_minimal = true;
  std::optional<std::int64_t> rational_bound;
  std::int64_t minimal_size = 0;
  ShiftSupport supported_alphabets = ShiftSupport::AllShifts;
  std::string description;
};

BoundReport minimal_alphabet_report(const BaseSpec& base);

json to_json(const BoundReport& report);
std::string format_report(const BoundReport& report);

}  // namespace carryfree
