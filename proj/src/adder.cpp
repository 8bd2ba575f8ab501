#include "carryfree/adder.hpp"

#include <algorithm>

namespace carryfree {

namespace {

void push_step(std::vector<PipelineStep>& plan, const LocalRule& rule) {
  if (!plan.empty() && plan.back().rule.name() == rule.name()) {
    ++plan.back().passes;
    return;
  }
  plan.push_back({rule, 1});
}

const LocalRule& need(const std::optional<LocalRule>& rule, const NumerationSystem& system,
                      const char* which) {
  if (!rule) {
    throw Error(ErrorKind::AlphabetUnsupported,
                std::string("inputs exceed alphabet ") + system.alphabet.to_string() + " on the " +
                    which + " side, but no such elimination rule exists for it");
  }
  return *rule;
}

void check_range(const DigitString& z, Digit lo, Digit hi) {
  for (Digit d : z.digits()) {
    if (d < lo || d > hi) {
      throw Error(ErrorKind::DigitOutOfRange, "digit " + std::to_string(d) +
                                                  " outside the pipeline input range " +
                                                  std::to_string(lo) + ".." + std::to_string(hi));
    }
  }
}

void check_alphabet(const DigitString& x, const Alphabet& alphabet) {
  for (Digit d : x.digits()) {
    if (!alphabet.contains(d)) {
      throw Error(ErrorKind::DigitOutOfAlphabet,
                  "digit " + std::to_string(d) + " outside alphabet " + alphabet.to_string());
    }
  }
}

// One pass: z = z' + z'' with z' clamped into the rule input alphabet;
// returns Phi(z') + z''. Serial reference, built from apply_raw.
DigitString run_pass_serial(const LocalRule& rule, const DigitString& z, TraceStep* trace) {
  const Alphabet& in = rule.input_alphabet();
  const std::size_t n = z.size();
  const auto& zd = z.digits();
  std::vector<Digit> clamped(n), excess(n);
  for (std::size_t i = 0; i < n; ++i) {
    clamped[i] = std::clamp(zd[i], in.lo(), in.hi());
    excess[i] = zd[i] - clamped[i];
  }
  const DigitString zc(z.lsd_exponent(), std::move(clamped));
  DigitString converted = apply_raw(rule, zc);
  std::vector<Digit> out = converted.digits();
  const auto r = static_cast<std::size_t>(rule.memory());
  for (std::size_t i = 0; i < n; ++i) out[r + i] += excess[i];
  DigitString result = normalize(DigitString(converted.lsd_exponent(), std::move(out)));
  if (trace) {
    trace->rule = rule.name();
    trace->input = z;
    trace->clamped = normalize(zc);
    if (rule.carry_source()) trace->carries = carries(rule, zc);
    trace->output = result;
  }
  return result;
}

// The same pass fused into one parallel region: clamp into a padded
// buffer, then each worker converts its slice and adds the excess back.
DigitString run_pass_parallel(const LocalRule& rule, const DigitString& z, int threads) {
  const Alphabet& in = rule.input_alphabet();
  const Digit lo = in.lo(), hi = in.hi();
  const auto t = static_cast<std::size_t>(rule.anticipation());
  const auto r = static_cast<std::size_t>(rule.memory());
  const std::size_t n = z.size();
  const std::size_t pad = t + r;
  const Digit* zd = z.digits().data();
  std::vector<Digit> padded(n + 2 * pad);
  std::vector<Digit> out(n + pad);
  const auto n_pad = static_cast<std::int64_t>(padded.size());
  const std::size_t n_out = out.size();
#pragma omp parallel num_threads(threads)
  {
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n_pad; ++i) {
      const auto k = static_cast<std::size_t>(i) - pad;
      padded[static_cast<std::size_t>(i)] = k < n ? std::clamp(zd[k], lo, hi) : Digit{0};
    }
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < threads; ++c) {
      const std::size_t chunk = (n_out + static_cast<std::size_t>(threads) - 1) /
                                static_cast<std::size_t>(threads);
      const std::size_t begin = static_cast<std::size_t>(c) * chunk;
      if (begin < n_out) {
        const std::size_t end = std::min(n_out, begin + chunk);
        apply_kernel_serial(rule, padded.data() + begin, end - begin, out.data() + begin);
        for (std::size_t i = std::max(begin, r); i < end && i - r < n; ++i) {
          out[i] += zd[i - r] - padded[i - r + pad];
        }
      }
    }
  }
  return normalize(DigitString(z.lsd_exponent() - static_cast<Exponent>(t), std::move(out)));
}

DigitString run_pass(const LocalRule& rule, const DigitString& z, int threads, TraceStep* trace) {
  if (threads <= 0 || trace || z.empty()) return run_pass_serial(rule, z, trace);
  return run_pass_parallel(rule, z, threads);
}

}  // namespace

AdderPipeline build_pipeline_for_range(const NumerationSystem& system, Digit lo, Digit hi,
                                       const PipelineOptions& options) {
  const RulePair pair = rule_for_alphabet(system.base, system.alphabet);
  AdderPipeline p{system, pair.gde, pair.sde, {}, lo, hi, {0, 0}};
  const Digit m = system.alphabet.lo();
  const Digit big_m = system.alphabet.hi();
  const BaseSpec& base = system.base;

  const bool fast = options.pisot_fast_path && base.kind() == BaseKind::PisotMinus && m == 0 &&
                    lo >= 0 && hi > base.a() && hi <= 2 * base.a() - 2;
  if (fast) {
    push_step(p.plan, algorithm_a(base.a()));
    push_step(p.plan, need(p.gde, system, "upper"));
  } else {
    const int g = std::max(0, hi - big_m);
    const int s = std::max(0, m - lo);
    for (int i = 0; i < std::max(g, s); ++i) {
      if (i < g) push_step(p.plan, need(p.gde, system, "upper"));
      if (i < s) push_step(p.plan, need(p.sde, system, "lower"));
    }
  }
  p.effective_window = effective_window(p);
  return p;
}

AdderPipeline build_pipeline(const NumerationSystem& system, const PipelineOptions& options) {
  const Alphabet& a = system.alphabet;
  return build_pipeline_for_range(system, 2 * a.lo(), 2 * a.hi(), options);
}

AdderPipeline build_subtraction_pipeline(const NumerationSystem& system) {
  const Alphabet& a = system.alphabet;
  if (!a.contains(-1) || !a.contains(1)) {
    throw Error(ErrorKind::AlphabetLacksNegatives,
                "subtraction needs {-1,0,1} inside the alphabet, got " + a.to_string());
  }
  return build_pipeline_for_range(system, a.lo() - a.hi(), a.hi() - a.lo());
}

std::pair<int, int> effective_window(const AdderPipeline& pipeline) {
  std::pair<int, int> w{0, 0};
  for (const auto& step : pipeline.plan) {
    w.first += step.passes * step.rule.anticipation();
    w.second += step.passes * step.rule.memory();
  }
  return w;
}

DigitString reduce_to_alphabet(const DigitString& z, const AdderPipeline& pipeline, int threads,
                               std::vector<TraceStep>* trace) {
  check_range(z, pipeline.input_lo, pipeline.input_hi);
  DigitString cur = normalize(z);
  for (const auto& step : pipeline.plan) {
    for (int pass = 0; pass < step.passes; ++pass) {
      TraceStep record;
      cur = run_pass(step.rule, cur, threads, trace ? &record : nullptr);
      if (trace) trace->push_back(std::move(record));
    }
  }
  if (!cur.all_in(pipeline.system.alphabet)) {
    throw Error(ErrorKind::OutputEscapesAlphabet,
                "pipeline output " + format_digit_string(cur) + " leaves alphabet " +
                    pipeline.system.alphabet.to_string());
  }
  return cur;
}

DigitString add(const DigitString& x, const DigitString& y, const AdderPipeline& pipeline,
                int threads, std::vector<TraceStep>* trace) {
  check_alphabet(x, pipeline.system.alphabet);
  check_alphabet(y, pipeline.system.alphabet);
  return reduce_to_alphabet(digitwise_sum(x, y), pipeline, threads, trace);
}

DigitString add(const DigitString& x, const DigitString& y, const NumerationSystem& system) {
  return add(x, y, build_pipeline(system));
}

DigitString subtract(const DigitString& x, const DigitString& y, const AdderPipeline& pipeline,
                     int threads, std::vector<TraceStep>* trace) {
  check_alphabet(x, pipeline.system.alphabet);
  check_alphabet(y, pipeline.system.alphabet);
  return reduce_to_alphabet(digitwise_sum(x, negate_digits(y)), pipeline, threads, trace);
}

DigitString subtract(const DigitString& x, const DigitString& y, const NumerationSystem& system) {
  return subtract(x, y, build_subtraction_pipeline(system));
}

json to_json(const AdderPipeline& pipeline) {
  json plan = json::array();
  for (const auto& step : pipeline.plan) {
    plan.push_back({{"rule", step.rule.name()},
                    {"t", step.rule.anticipation()},
                    {"r", step.rule.memory()},
                    {"passes", step.passes}});
  }
  return json{
      {"base", to_json(pipeline.system.base)},
      {"alphabet", pipeline.system.alphabet.to_string()},
      {"input_range", std::to_string(pipeline.input_lo) + ".." + std::to_string(pipeline.input_hi)},
      {"plan", plan},
      {"effective_window", {pipeline.effective_window.first, pipeline.effective_window.second}},
  };
}

}  // namespace carryfree
