#include "doctest.h"

#include <random>

#include "carryfree/adder.hpp"
#include "carryfree/rules.hpp"
#include "support/field_value.hpp"

using namespace carryfree;

namespace {

DigitString random_string(std::mt19937_64& rng, const Alphabet& a, std::size_t len) {
  std::uniform_int_distribution<Digit> d(a.lo(), a.hi());
  std::vector<Digit> v(len);
  for (auto& x : v) x = d(rng);
  return DigitString(static_cast<Exponent>(rng() % 3) - 1, v);
}

std::string sum(const char* base, const char* alphabet, const char* x, const char* y) {
  const auto system = make_system(parse_base(base), Alphabet::parse(alphabet));
  return format_digit_string(add(parse_digit_string(x), parse_digit_string(y), system));
}

ErrorKind pipeline_error(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidRule;
}

}  // namespace

TEST_CASE("addition examples") {
  CHECK(sum("-2", "0..2", "1 1 .", "1 .") == ".");
  CHECK(sum("pisot-:3", "0..2", "1 .", "1 .") == "2 .");
  CHECK(sum("-2", "0..2", ".", ".") == ".");
}

TEST_CASE("subtraction example") {
  const auto system = make_system(BaseSpec::negative_integer(2), Alphabet(-1, 1));
  CHECK(format_digit_string(subtract(parse_digit_string("1 ."), parse_digit_string("1 1 ."), system)) ==
        "-1 0 .");
}

TEST_CASE("plans and effective windows") {
  using W = std::pair<int, int>;
  const auto pm = make_system(BaseSpec::pisot_minus(3), Alphabet(0, 2));
  const auto fast = build_pipeline(pm);
  CHECK(fast.effective_window == W{5, 5});
  CHECK(fast.effective_window.first + fast.effective_window.second + 1 == 11);
  for (std::int64_t a : {3, 4, 6}) {
    const auto p = build_pipeline(make_system(BaseSpec::pisot_minus(a), Alphabet(0, static_cast<Digit>(a - 1))),
                                  PipelineOptions{false});
    CHECK(p.plan.size() == 1);
    CHECK(p.plan[0].passes == a - 1);
    CHECK(p.effective_window == W{static_cast<int>(3 * a - 3), static_cast<int>(3 * a - 3)});
  }
  const auto rp = build_pipeline(make_system(BaseSpec::rational_pos(3, 2), Alphabet(0, 4)));
  CHECK(rp.plan.size() == 1);
  CHECK(rp.plan[0].passes == 4);
  CHECK(rp.input_lo == 0);
  CHECK(rp.input_hi == 8);
  CHECK(effective_window(rp) == rp.effective_window);
  const auto sym = build_pipeline(make_system(BaseSpec::negative_integer(2), Alphabet(-1, 1)));
  CHECK(sym.plan.size() == 2);
  CHECK(sym.plan[0].rule.name() == sym.gde->name());
  CHECK(sym.plan[1].rule.name() == sym.sde->name());
}

TEST_CASE("unsupported alphabets") {
  CHECK(pipeline_error([] {
          build_pipeline(make_system(BaseSpec::rational_pos(3, 2), Alphabet(-1, 3)));
        }) == ErrorKind::AlphabetUnsupported);
  CHECK(pipeline_error([] {
          build_subtraction_pipeline(make_system(BaseSpec::rational_pos(3, 2), Alphabet(0, 4)));
        }) == ErrorKind::AlphabetLacksNegatives);
}

TEST_CASE("inputs must lie in the alphabet") {
  const auto system = make_system(BaseSpec::negative_integer(2), Alphabet(0, 2));
  CHECK(pipeline_error([&] { add(parse_digit_string("3 ."), parse_digit_string("1 ."), system); }) ==
        ErrorKind::DigitOutOfAlphabet);
  const auto p = build_pipeline(system);
  CHECK(pipeline_error([&] { reduce_to_alphabet(parse_digit_string("5 ."), p); }) ==
        ErrorKind::DigitOutOfRange);
}

TEST_CASE("random sums are exact and closed") {
  std::mt19937_64 rng(41);
  const std::vector<NumerationSystem> systems = {
      make_system(BaseSpec::negative_integer(2), Alphabet(-1, 1)),
      make_system(BaseSpec::integer(2), Alphabet(0, 2)),
      make_system(BaseSpec::minus_one_plus_i(), Alphabet(-2, 2)),
      make_system(BaseSpec::pisot_plus(2), Alphabet(-1, 2)),
      make_system(BaseSpec::rational_pos(3, 2), Alphabet(-2, 2)),
      make_system(BaseSpec::rational_neg(3, 2), Alphabet(-3, 1)),
  };
  for (const auto& system : systems) {
    const auto p = build_pipeline(system);
    for (int n = 0; n < 300; ++n) {
      const auto x = random_string(rng, system.alphabet, 1 + rng() % 12);
      const auto y = random_string(rng, system.alphabet, 1 + rng() % 12);
      const auto z = add(x, y, p);
      CHECK(z.all_in(system.alphabet));
      CHECK(testing_support::field_value(z, system.base) ==
            testing_support::field_value(digitwise_sum(x, y), system.base));
    }
  }
}

TEST_CASE("random differences are exact and closed") {
  std::mt19937_64 rng(43);
  for (const auto& system : {make_system(BaseSpec::negative_integer(2), Alphabet(-1, 1)),
                             make_system(BaseSpec::pisot_minus(3), Alphabet(-1, 1)),
                             make_system(BaseSpec::rational_neg(3, 2), Alphabet(-2, 2))}) {
    const auto p = build_subtraction_pipeline(system);
    for (int n = 0; n < 300; ++n) {
      const auto x = random_string(rng, system.alphabet, 1 + rng() % 12);
      const auto y = random_string(rng, system.alphabet, 1 + rng() % 12);
      const auto z = subtract(x, y, p);
      CHECK(z.all_in(system.alphabet));
      CHECK(testing_support::field_value(z, system.base) ==
            testing_support::field_value(digitwise_sum(x, negate_digits(y)), system.base));
    }
  }
}

TEST_CASE("thread counts do not change the result") {
  std::mt19937_64 rng(47);
  const auto system = make_system(BaseSpec::rational_pos(3, 2), Alphabet(0, 4));
  const auto p = build_pipeline(system);
  const auto x = random_string(rng, system.alphabet, 50000);
  const auto y = random_string(rng, system.alphabet, 50000);
  const auto ref = add(x, y, p, 0);
  for (int threads : {1, 2, 3, 8}) CHECK(add(x, y, p, threads) == ref);
}

TEST_CASE("trace records every pass") {
  const auto system = make_system(BaseSpec::rational_pos(3, 2), Alphabet(0, 4));
  const auto p = build_pipeline(system);
  std::vector<TraceStep> trace;
  const auto z = add(parse_digit_string("4 4 ."), parse_digit_string("4 3 ."), p, 0, &trace);
  REQUIRE(trace.size() == 4);
  CHECK(trace.front().input == parse_digit_string("8 7 ."));
  CHECK(normalize(trace.back().output) == z);
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].input == trace[i - 1].output);
  for (const auto& step : trace) {
    CHECK(step.carries);
    CHECK(step.clamped.all_in(p.plan[0].rule.input_alphabet()));
  }
}

TEST_CASE("pipeline JSON") {
  const auto j = to_json(build_pipeline(make_system(BaseSpec::pisot_minus(3), Alphabet(0, 2))));
  CHECK(j.at("alphabet") == "0..2");
  CHECK(j.at("input_range") == "0..4");
  CHECK(j.at("plan").size() == 2);
  CHECK(j.at("effective_window") == json::array({5, 5}));
}
