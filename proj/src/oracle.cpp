#include "carryfree/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "carryfree/bounds.hpp"
#include "carryfree/rules.hpp"

namespace carryfree {

namespace {

class Recorder {
 public:
  Recorder(std::string id, int max_len, std::uint64_t budget, std::size_t cap) : cap_(cap) {
    report_.id = std::move(id);
    report_.max_len = max_len;
    report_.budget = budget;
  }

  void count() { ++report_.instances_checked; }

  void fail(std::string property, const DigitString& input,
            std::optional<DigitString> output = std::nullopt, std::string detail = {}) {
    ++report_.failure_count;
    if (report_.failures.size() < cap_) {
      report_.failures.push_back({std::move(property), input, std::move(output), std::move(detail)});
    }
  }

  VerificationReport finish() {
    std::stable_sort(report_.failures.begin(), report_.failures.end(),
                     [](const Failure& a, const Failure& b) {
                       if (a.property != b.property) return a.property < b.property;
                       return format_digit_string(a.input) < format_digit_string(b.input);
                     });
    return std::move(report_);
  }

 private:
  VerificationReport report_;
  std::size_t cap_;
};

std::uint64_t enumeration_size(std::int64_t k, int max_len) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (int len = 1; len <= max_len; ++len) {
    if (power > UINT64_MAX / static_cast<std::uint64_t>(k)) return UINT64_MAX;
    power *= static_cast<std::uint64_t>(k);
    total += power;
    if (total < power) return UINT64_MAX;
  }
  return total;
}

/// Calls fn(digits) for every string of length 1..max_len over [lo, hi].
template <class Fn>
void for_each_string(Digit lo, Digit hi, int max_len, Fn&& fn) {
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Digit> d(static_cast<std::size_t>(len), lo);
    while (true) {
      fn(d);
      int i = len - 1;
      while (i >= 0 && d[static_cast<std::size_t>(i)] == hi) {
        d[static_cast<std::size_t>(i)] = lo;
        --i;
      }
      if (i < 0) break;
      ++d[static_cast<std::size_t>(i)];
    }
  }
}

std::vector<Digit> random_digits(std::mt19937_64& rng, std::size_t len, Digit lo, Digit hi) {
  std::uniform_int_distribution<Digit> digit(lo, hi);
  std::vector<Digit> d(len);
  for (auto& x : d) x = digit(rng);
  return d;
}

DigitString constant_window(Digit x, int p) {
  return DigitString(0, std::vector<Digit>(static_cast<std::size_t>(p), x));
}

void check_conversion(const LocalRule& rule, const BaseSpec& base, const DigitString& input,
                      Recorder& rec) {
  rec.count();
  const DigitString out = apply_raw(rule, input);
  if (!out.all_in(rule.output_alphabet())) rec.fail("output-alphabet", input, normalize(out));
  if (!values_equal(out, input, base)) rec.fail("value", input, normalize(out));
  if (input.is_zero() && !out.is_zero()) rec.fail("zero", input, normalize(out));
}

template <class Convert>
void check_locality(const Convert& convert, Digit lo, Digit hi, int t, int r, std::uint64_t samples,
                    std::mt19937_64& rng, Recorder& rec, bool counted) {
  if (lo == hi) return;
  std::uniform_int_distribution<int> length(2 * (t + r) + 4, 2 * (t + r) + 16);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto n = static_cast<std::size_t>(length(rng));
    const DigitString u(0, random_digits(rng, n, lo, hi));
    const DigitString out = convert(u);
    std::uniform_int_distribution<Exponent> pos(-r, static_cast<Exponent>(n) - 1 + t);
    const Exponent j = pos(rng);
    std::vector<Exponent> far;
    for (Exponent e = 0; e < static_cast<Exponent>(n); ++e) {
      if (e > j + t || e < j - r) far.push_back(e);
    }
    if (far.empty()) continue;
    const Exponent e = far[std::uniform_int_distribution<std::size_t>(0, far.size() - 1)(rng)];
    std::vector<Digit> mutated = u.digits();
    Digit& target = mutated[static_cast<std::size_t>(static_cast<Exponent>(n) - 1 - e)];
    target = target == hi ? lo : target + 1;
    const DigitString v(0, std::move(mutated));
    if (counted) rec.count();
    const DigitString out2 = convert(v);
    if (out.at(j) != out2.at(j)) {
      rec.fail("locality", u, out,
               "mutating exponent " + std::to_string(e) + " changed output exponent " +
                   std::to_string(j));
    }
  }
}

}  // namespace

json to_json(const VerificationReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    json j{{"property", f.property}, {"input", format_digit_string(f.input)}};
    if (f.output) j["output"] = format_digit_string(*f.output);
    if (!f.detail.empty()) j["detail"] = f.detail;
    failures.push_back(std::move(j));
  }
  return json{{"id", report.id},
              {"passed", report.passed()},
              {"instances_checked", report.instances_checked},
              {"failure_count", report.failure_count},
              {"failures", failures},
              {"budget", {{"max_len", report.max_len}, {"max_strings", report.budget}}}};
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream os;
  os << (report.passed() ? "PASS " : "FAIL ") << report.id << "  (" << report.instances_checked
     << " instances";
  if (report.max_len > 0) os << ", max_len " << report.max_len;
  os << ")\n";
  for (const auto& f : report.failures) {
    os << "  " << f.property << ": input " << format_digit_string(f.input);
    if (f.output) os << " -> " << format_digit_string(*f.output);
    if (!f.detail.empty()) os << "  [" << f.detail << "]";
    os << '\n';
  }
  if (report.failure_count > report.failures.size()) {
    os << "  ... " << report.failure_count - report.failures.size() << " more\n";
  }
  return os.str();
}

VerificationReport verify_conversion(const LocalRule& rule, const BaseSpec& base,
                                     const VerifyOptions& options) {
  const Alphabet& in = rule.input_alphabet();
  const std::uint64_t total = enumeration_size(in.size(), options.max_len);
  if (total > options.budget) {
    throw Error(ErrorKind::BudgetExceeded,
                std::to_string(in.size()) + " letters to length " + std::to_string(options.max_len) +
                    " exceeds the budget of " + std::to_string(options.budget) + " strings");
  }
  Recorder rec("conversion " + rule.name(), options.max_len, options.budget,
               options.max_witnesses);
  std::uint64_t index = 0;
  for_each_string(in.lo(), in.hi(), options.max_len, [&](const std::vector<Digit>& d) {
    const auto lsd = -static_cast<Exponent>(index++ % 3);
    check_conversion(rule, base, DigitString(lsd, d), rec);
  });

  std::mt19937_64 rng(options.seed);
  if (options.random_samples > 0) {
    std::uniform_int_distribution<int> length(options.max_len + 1,
                                              std::max(options.max_len + 1, options.random_max_len));
    std::uniform_int_distribution<int> lsd(-2, 0);
    for (std::uint64_t s = 0; s < options.random_samples; ++s) {
      const auto n = static_cast<std::size_t>(length(rng));
      check_conversion(rule, base, DigitString(lsd(rng), random_digits(rng, n, in.lo(), in.hi())),
                       rec);
    }
  }
  check_locality([&](const DigitString& u) { return apply(rule, u); }, in.lo(), in.hi(),
                 rule.anticipation(), rule.memory(), options.locality_samples, rng, rec, false);
  return rec.finish();
}

VerificationReport verify_congruence(const LocalRule& rule, const BaseSpec& base) {
  const std::int64_t f1 = lower_bound_f1(base).value;
  Recorder rec("congruence " + rule.name(), 0, 0, 64);
  const Alphabet& in = rule.input_alphabet();
  for (Digit x = in.lo(); x <= in.hi(); ++x) {
    rec.count();
    const Digit y = rule.eval_constant(x);
    if ((static_cast<std::int64_t>(y) - x) % f1 != 0) {
      rec.fail("congruence", constant_window(x, rule.window_size()),
               DigitString(0, {y}), "|f(1)| = " + std::to_string(f1));
    }
  }
  return rec.finish();
}

namespace {

void check_boundary(Digit lambda, Digit big_lambda, Digit at_big, Digit at_small, int p,
                    Recorder& rec) {
  const auto big = constant_window(big_lambda, p);
  const auto small = constant_window(lambda, p);
  rec.count();
  if (at_big == lambda) rec.fail("Phi(Lambda^p) != lambda", big, DigitString(0, {at_big}));
  rec.count();
  if (at_small == big_lambda) rec.fail("Phi(lambda^p) != Lambda", small, DigitString(0, {at_small}));
  if (big_lambda != 0) {
    rec.count();
    if (at_big == big_lambda) rec.fail("Phi(Lambda^p) != Lambda", big, DigitString(0, {at_big}));
  }
  if (lambda != 0) {
    rec.count();
    if (at_small == lambda) rec.fail("Phi(lambda^p) != lambda", small, DigitString(0, {at_small}));
  }
}

void require_real_above_one(const BaseSpec& base) {
  if (!base.is_real_greater_than_one()) {
    throw Error(ErrorKind::NotApplicable,
                "boundary claims need a real base greater than one, got " + base.mnemonic());
  }
}

}  // namespace

VerificationReport verify_boundary_claims(const LocalRule& rule, const BaseSpec& base) {
  require_real_above_one(base);
  Recorder rec("boundary " + rule.name(), 0, 0, 64);
  const Alphabet& in = rule.input_alphabet();
  check_boundary(in.lo(), in.hi(), rule.eval_constant(in.hi()), rule.eval_constant(in.lo()),
                 rule.window_size(), rec);
  return rec.finish();
}

Digit pipeline_constant_output(const AdderPipeline& pipeline, Digit x) {
  const auto [t, r] = pipeline.effective_window;
  const int n = 2 * (t + r) + 3;
  const DigitString z(0, std::vector<Digit>(static_cast<std::size_t>(n), x));
  const DigitString out = reduce_to_alphabet(z, pipeline);
  return out.at(n / 2);
}

namespace {

std::string pipeline_id(const AdderPipeline& pipeline) {
  return pipeline.system.base.mnemonic() + " on " + pipeline.system.alphabet.to_string();
}

int pipeline_window_size(const AdderPipeline& pipeline) {
  return pipeline.effective_window.first + pipeline.effective_window.second + 1;
}

}  // namespace

VerificationReport verify_pipeline_congruence(const AdderPipeline& pipeline) {
  const std::int64_t f1 = lower_bound_f1(pipeline.system.base).value;
  Recorder rec("pipeline congruence " + pipeline_id(pipeline), 0, 0, 64);
  for (Digit x = pipeline.input_lo; x <= pipeline.input_hi; ++x) {
    rec.count();
    const Digit y = pipeline_constant_output(pipeline, x);
    if ((static_cast<std::int64_t>(y) - x) % f1 != 0) {
      rec.fail("congruence", constant_window(x, pipeline_window_size(pipeline)),
               DigitString(0, {y}), "|f(1)| = " + std::to_string(f1));
    }
  }
  return rec.finish();
}

VerificationReport verify_pipeline_boundary_claims(const AdderPipeline& pipeline) {
  require_real_above_one(pipeline.system.base);
  Recorder rec("pipeline boundary " + pipeline_id(pipeline), 0, 0, 64);
  const Alphabet& a = pipeline.system.alphabet;
  check_boundary(a.lo(), a.hi(), pipeline_constant_output(pipeline, a.hi()),
                 pipeline_constant_output(pipeline, a.lo()), pipeline_window_size(pipeline), rec);
  return rec.finish();
}

VerificationReport verify_shift_coherence(const LocalRule& rule, int max_len) {
  Recorder rec("shift coherence " + rule.name(), max_len, 0, 16);
  const Alphabet& in = rule.input_alphabet();
  for (Digit h : fixed_letters(rule)) {
    const LocalRule shifted = shift_alphabet(rule, h);
    for_each_string(in.lo(), in.hi(), max_len, [&](const std::vector<Digit>& d) {
      rec.count();
      const DigitString u(0, d);
      const DigitString expect = apply_raw(rule, u);
      const DigitString got = apply_raw(shifted, offset_digits(u, h), -h);
      if (got != offset_digits(expect, h)) {
        rec.fail("shift h=" + std::to_string(h), u, got);
      }
    });
  }
  return rec.finish();
}

VerificationReport verify_negation(const LocalRule& rule, int max_len, std::uint64_t budget) {
  Recorder rec("negation " + rule.name(), max_len, budget, 16);
  const LocalRule neg = negate_rule(rule);
  const LocalRule twice = negate_rule(neg);
  const Alphabet& in = rule.input_alphabet();
  const int p = rule.window_size();
  rec.count();
  if (!(twice.input_alphabet() == in) || !(twice.output_alphabet() == rule.output_alphabet()) ||
      twice.window() != rule.window()) {
    rec.fail("involution shape", DigitString());
  }
  auto check_window = [&](const std::vector<Digit>& w) {
    rec.count();
    if (twice.eval(w.data()) != rule.eval(w.data())) {
      rec.fail("involution", DigitString(0, w), DigitString(0, {twice.eval(w.data())}));
    }
  };
  if (enumeration_size(in.size(), p) - enumeration_size(in.size(), p - 1) <= budget) {
    std::vector<Digit> w(static_cast<std::size_t>(p), in.lo());
    while (true) {
      check_window(w);
      int i = p - 1;
      while (i >= 0 && w[static_cast<std::size_t>(i)] == in.hi()) {
        w[static_cast<std::size_t>(i)] = in.lo();
        --i;
      }
      if (i < 0) break;
      ++w[static_cast<std::size_t>(i)];
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    for (std::uint64_t s = 0; s < budget; ++s) {
      check_window(random_digits(rng, static_cast<std::size_t>(p), in.lo(), in.hi()));
    }
  }
  for_each_string(in.lo(), in.hi(), max_len, [&](const std::vector<Digit>& d) {
    rec.count();
    const DigitString u(0, d);
    const DigitString got = apply_raw(neg, negate_digits(u));
    if (got != negate_digits(apply_raw(rule, u))) rec.fail("negated conversion", u, got);
  });
  return rec.finish();
}

DigitString reference_add(const DigitString& x, const DigitString& y, const BaseSpec&) {
  return digitwise_sum(x, y);
}

VerificationReport verify_pipeline(const AdderPipeline& pipeline, std::uint64_t samples,
                                   int max_len, std::uint64_t seed, std::size_t max_witnesses) {
  Recorder rec("addition " + pipeline_id(pipeline), max_len, samples, max_witnesses);
  const Alphabet& a = pipeline.system.alphabet;
  const BaseSpec& base = pipeline.system.base;
  auto check = [&](const DigitString& x, const DigitString& y) {
    rec.count();
    const DigitString witness = reference_add(x, y, base);
    const DigitString z = add(x, y, pipeline);
    if (!z.all_in(a)) rec.fail("closure", witness, z);
    if (!values_equal(z, witness, base)) rec.fail("value", witness, z);
    if (!values_equal(z, add(y, x, pipeline), base)) rec.fail("commutativity", witness, z);
  };
  for (Digit u = a.lo(); u <= a.hi(); ++u) {
    for (Digit v = a.lo(); v <= a.hi(); ++v) check(DigitString(0, {u}), DigitString(0, {v}));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, max_len);
  std::uniform_int_distribution<int> lsd(-2, 0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const DigitString x(lsd(rng), random_digits(rng, static_cast<std::size_t>(length(rng)), a.lo(), a.hi()));
    const DigitString y(lsd(rng), random_digits(rng, static_cast<std::size_t>(length(rng)), a.lo(), a.hi()));
    check(x, y);
    if (s % 16 == 0) {
      rec.count();
      const DigitString z = add(x, DigitString(), pipeline);
      if (!values_equal(z, x, base) || !z.all_in(a)) rec.fail("zero identity", x, z);
    }
  }
  return rec.finish();
}

VerificationReport verify_pipeline_locality(const AdderPipeline& pipeline, std::uint64_t samples,
                                            std::uint64_t seed) {
  Recorder rec("pipeline locality " + pipeline_id(pipeline), 0, samples, 16);
  std::mt19937_64 rng(seed);
  check_locality([&](const DigitString& z) { return reduce_to_alphabet(z, pipeline); },
                 pipeline.input_lo, pipeline.input_hi, pipeline.effective_window.first,
                 pipeline.effective_window.second, samples, rng, rec, true);
  return rec.finish();
}

DigitString ripple_carry_add(const DigitString& x, const DigitString& y, const BaseSpec& base) {
  // beta = sign * num / den, so num at exponent e equals sign * den at e+1.
  std::int64_t num = 0, den = 1, sign = 1;
  switch (base.kind()) {
    case BaseKind::Integer: num = base.b(); break;
    case BaseKind::NegativeInteger: num = base.b(); sign = -1; break;
    case BaseKind::RationalPos: num = base.a(); den = base.b(); break;
    case BaseKind::RationalNeg: num = base.a(); den = base.b(); sign = -1; break;
    default:
      throw Error(ErrorKind::UnsupportedBase,
                  "ripple-carry addition needs an integer or rational base, got " + base.mnemonic());
  }
  const DigitString s = digitwise_sum(x, y);
  if (s.empty()) return s;
  std::vector<Digit> lsd_first;
  lsd_first.reserve(s.size() + 64);
  std::int64_t carry = 0;
  for (Exponent e = s.lsd_exponent(); e <= s.msd_exponent() || carry != 0; ++e) {
    const std::int64_t v = s.at(e) + carry;
    std::int64_t c = v / num;
    std::int64_t rem = v % num;
    if (rem < 0) {
      rem += num;
      --c;
    }
    lsd_first.push_back(static_cast<Digit>(rem));
    carry = sign * den * c;
  }
  return normalize(DigitString::from_lsd_first(s.lsd_exponent(), std::move(lsd_first)));
}

std::vector<CatalogEntry> catalog_rules() {
  std::vector<CatalogEntry> out;
  for (std::int64_t b : {2, 3, 5, 10}) {
    out.push_back({gde_negative_integer(b), BaseSpec::negative_integer(b), 6});
  }
  out.push_back({gde_root(2, 1, RootSign::Positive), BaseSpec::integer(2), 6});
  out.push_back({gde_root(2, 2, RootSign::Negative), BaseSpec::negative_root(2, 2), 6});
  out.push_back({gde_root(4, 2, RootSign::Negative), BaseSpec::negative_root(4, 2), 6});
  out.push_back({gde_root(4, 4, RootSign::Negative), BaseSpec::negative_root(4, 4), 4});
  for (std::int64_t a : {3, 4, 6}) {
    out.push_back({algorithm_a(a), BaseSpec::pisot_minus(a), 6});
    out.push_back({gde_pisot_minus(a), BaseSpec::pisot_minus(a), 6});
  }
  for (std::int64_t a : {2, 3, 5}) {
    out.push_back({gde_pisot_plus(a), BaseSpec::pisot_plus(a), 6});
  }
  for (auto [a, b] : {std::pair<std::int64_t, std::int64_t>{3, 2}, {5, 2}, {5, 3}, {7, 4}}) {
    out.push_back({gde_rational_pos(a, b), BaseSpec::rational_pos(a, b), 6});
    out.push_back({gde_rational_neg(a, b), BaseSpec::rational_neg(a, b), 6});
  }
  return out;
}

std::vector<NumerationSystem> summary_systems() {
  std::vector<NumerationSystem> out;
  const std::vector<BaseSpec> bases = {
      BaseSpec::integer(2),        BaseSpec::negative_integer(2), BaseSpec::root(2, 2),
      BaseSpec::minus_one_plus_i(), BaseSpec::two_i(),            BaseSpec::i_sqrt2(),
      BaseSpec::pisot_minus(3),    BaseSpec::pisot_plus(2),       BaseSpec::rational_pos(3, 2),
      BaseSpec::rational_neg(3, 2)};
  for (const auto& base : bases) {
    const std::int64_t k = minimal_alphabet_report(base).minimal_size;
    for (std::int64_t d = 0; d < k; ++d) {
      const Alphabet alphabet(static_cast<Digit>(-d), static_cast<Digit>(k - 1 - d));
      try {
        rule_for_alphabet(base, alphabet);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::AlphabetUnsupported) continue;
        throw;
      }
      out.push_back(make_system(base, alphabet));
    }
  }
  return out;
}

std::vector<VerificationReport> run_default_suite(int max_len, std::uint64_t pipeline_samples) {
  std::vector<VerificationReport> out;
  for (const auto& entry : catalog_rules()) {
    VerifyOptions options;
    options.max_len = std::min(max_len, entry.max_len);
    options.random_samples = pipeline_samples;
    out.push_back(verify_conversion(entry.rule, entry.base, options));
    if (entry.base.is_algebraic_integer()) out.push_back(verify_congruence(entry.rule, entry.base));
    if (entry.base.is_real_greater_than_one()) {
      out.push_back(verify_boundary_claims(entry.rule, entry.base));
    }
  }
  for (const auto& system : summary_systems()) {
    const AdderPipeline pipeline = build_pipeline(system);
    out.push_back(verify_pipeline(pipeline, pipeline_samples));
    out.push_back(verify_pipeline_locality(pipeline, 50));
    if (system.base.is_algebraic_integer()) out.push_back(verify_pipeline_congruence(pipeline));
    if (system.base.is_real_greater_than_one()) {
      out.push_back(verify_pipeline_boundary_claims(pipeline));
    }
  }
  return out;
}

}  // namespace carryfree
