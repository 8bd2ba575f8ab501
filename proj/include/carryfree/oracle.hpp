#pragma once

// Brute-force verification of rules and pipelines against exact value
// arithmetic, and the lower-bound claims as executable properties.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carryfree/adder.hpp"
#include "carryfree/local_engine.hpp"

namespace carryfree {

struct Failure {
  std::string property;
  DigitString input;
  std::optional<DigitString> output;
  std::string detail;
};

struct VerificationReport {
  std::string id;
  std::uint64_t instances_checked = 0;
  /// First witnesses, sorted by (property, input).
  std::vector<Failure> failures;
  std::uint64_t failure_count = 0;
  int max_len = 0;
  std::uint64_t budget = 0;

  bool passed() const noexcept { return failure_count == 0; }
};

json to_json(const VerificationReport& report);
std::string format_report(const VerificationReport& report);

struct VerifyOptions {
  int max_len = 6;
  /// Maximum number of exhaustively enumerated strings.
  std::uint64_t budget = 10'000'000;
  /// Random strings of length max_len+1 .. random_max_len checked after
  /// the exhaustive part.
  std::uint64_t random_samples = 0;
  int random_max_len = 24;
  /// Paired mutations for the locality witness.
  std::uint64_t locality_samples = 200;
  std::uint64_t seed = 0x5eed;
  std::size_t max_witnesses = 16;
};

/// Every string of length 1..max_len over the input alphabet, placed at
/// lsd exponent 0, -1 or -2 in turn: output alphabet membership, exact
/// value preservation, zero preservation, plus sampled locality. The
/// instance count covers the enumerated and random strings only.
/// Throws BudgetExceeded when the enumeration exceeds options.budget.
VerificationReport verify_conversion(const LocalRule& rule, const BaseSpec& base,
                                     const VerifyOptions& options = {});

/// Phi(x^p) = x mod |f(1)| for every letter x of the input alphabet.
/// Throws NotApplicable for bases that are not algebraic integers.
VerificationReport verify_congruence(const LocalRule& rule, const BaseSpec& base);

/// With lambda, Lambda the extremes of the input alphabet:
/// Phi(Lambda^p) != lambda, Phi(lambda^p) != Lambda, Phi(Lambda^p) !=
/// Lambda when Lambda != 0 and Phi(lambda^p) != lambda when lambda != 0.
/// Throws NotApplicable unless the base is real and greater than one.
VerificationReport verify_boundary_claims(const LocalRule& rule, const BaseSpec& base);

/// Phi(x^p) of a whole pipeline on the constant input x, read off the
/// middle of a long constant string.
Digit pipeline_constant_output(const AdderPipeline& pipeline, Digit x);

/// The congruence for the composed addition map, every x in A+A.
VerificationReport verify_pipeline_congruence(const AdderPipeline& pipeline);
/// The boundary claims for the composed addition map with lambda, Lambda
/// the extremes of A.
VerificationReport verify_pipeline_boundary_claims(const AdderPipeline& pipeline);

/// For every fixed letter h and every string u of length 1..max_len:
/// shift(rule, h) on u - h over background -h equals rule on u minus h,
/// digit by digit.
VerificationReport verify_shift_coherence(const LocalRule& rule, int max_len = 5);

/// negate(negate(rule)) agrees with rule on every window (sampled past
/// the budget), and negate(rule) on -u equals -(rule on u).
VerificationReport verify_negation(const LocalRule& rule, int max_len = 5,
                                   std::uint64_t budget = 1'000'000);

/// Random pairs of length 1..max_len plus every single-digit pair:
/// closure, exact sum, commutativity, and the zero identity.
VerificationReport verify_pipeline(const AdderPipeline& pipeline, std::uint64_t samples,
                                   int max_len = 8, std::uint64_t seed = 0x5eed,
                                   std::size_t max_witnesses = 16);

/// Paired mutations: changing an input digit outside the effective
/// window of position j leaves output digit j unchanged.
VerificationReport verify_pipeline_locality(const AdderPipeline& pipeline, std::uint64_t samples,
                                            std::uint64_t seed = 0x5eed);

/// The digitwise sum, the exact witness any adder output must equal in
/// value.
DigitString reference_add(const DigitString& x, const DigitString& y, const BaseSpec& base);

/// Sequential carry-propagating addition for integer, negative-integer
/// and rational bases, with digits in {0, ..., |a|-1} (a the numerator).
/// Throws UnsupportedBase for other kinds.
DigitString ripple_carry_add(const DigitString& x, const DigitString& y, const BaseSpec& base);

struct CatalogEntry {
  LocalRule rule;
  BaseSpec base;
  /// Exhaustive length used by the default suite at full size.
  int max_len;
};

/// Catalog rules over a spread of parameters.
std::vector<CatalogEntry> catalog_rules();

/// Summary-table systems at their smallest parameters.
std::vector<NumerationSystem> summary_systems();

/// Catalog rules and summary-table pipelines checked by the verify
/// command. Rule lengths are capped at max_len.
std::vector<VerificationReport> run_default_suite(int max_len, std::uint64_t pipeline_samples);

}  // namespace carryfree
