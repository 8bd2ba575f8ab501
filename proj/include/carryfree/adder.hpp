#pragma once

// Parallel addition and subtraction as a fixed number of local
// conversion passes.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carryfree/local_engine.hpp"
#include "carryfree/rules.hpp"

namespace carryfree {

struct PipelineStep {
  LocalRule rule;
  int passes = 1;
};

struct PipelineOptions {
  /// Use Algorithm A followed by GDE(beta-) for pisot-minus bases on
  /// {0..a-1}; otherwise the generic elimination plan.
  bool pisot_fast_path = true;
};

struct AdderPipeline {
  NumerationSystem system;
  std::optional<LocalRule> gde;
  std::optional<LocalRule> sde;
  /// Passes in execution order, consecutive repeats merged.
  std::vector<PipelineStep> plan;
  /// Digit range the plan accepts.
  Digit input_lo = 0;
  Digit input_hi = 0;
  std::pair<int, int> effective_window{0, 0};
};

/// Plan for inputs over A + A.
AdderPipeline build_pipeline(const NumerationSystem& system, const PipelineOptions& options = {});
/// Plan for inputs over an arbitrary digit range [lo, hi] containing A.
AdderPipeline build_pipeline_for_range(const NumerationSystem& system, Digit lo, Digit hi,
                                       const PipelineOptions& options = {});

/// Componentwise sum of the plan windows.
std::pair<int, int> effective_window(const AdderPipeline& pipeline);

/// One executed pass, for tracing.
struct TraceStep {
  std::string rule;
  DigitString input;
  /// Digits clamped into the rule's input alphabet (z').
  DigitString clamped;
  /// Carries q_j, when the rule is built from a carry rule.
  std::optional<DigitString> carries;
  DigitString output;
};

/// Run the plan: each pass splits z = z' + z'' with z' clamped into the
/// rule's input alphabet, converts z' and adds z'' back. threads as in
/// apply(): 0 is the serial reference.
DigitString reduce_to_alphabet(const DigitString& z, const AdderPipeline& pipeline, int threads = 0,
                               std::vector<TraceStep>* trace = nullptr);

DigitString add(const DigitString& x, const DigitString& y, const AdderPipeline& pipeline,
                int threads = 0, std::vector<TraceStep>* trace = nullptr);
DigitString add(const DigitString& x, const DigitString& y, const NumerationSystem& system);

/// Pipeline for differences, inputs over A - A. Requires {-1,0,1} in A.
AdderPipeline build_subtraction_pipeline(const NumerationSystem& system);
DigitString subtract(const DigitString& x, const DigitString& y, const AdderPipeline& pipeline,
                     int threads = 0, std::vector<TraceStep>* trace = nullptr);
DigitString subtract(const DigitString& x, const DigitString& y, const NumerationSystem& system);

json to_json(const AdderPipeline& pipeline);

}  // namespace carryfree
