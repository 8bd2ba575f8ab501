#include "doctest.h"

#include "carryfree/rules.hpp"

using namespace carryfree;

namespace {

ErrorKind refusal(const BaseSpec& base, const Alphabet& a) {
  try {
    rule_for_alphabet(base, a);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("alphabet " << a.to_string() << " accepted");
  return ErrorKind::InvalidRule;
}

}  // namespace

TEST_CASE("catalog windows") {
  using W = std::pair<int, int>;
  CHECK(gde_negative_integer(2).window() == W{0, 2});
  CHECK(gde_negative_integer(10).window() == W{0, 2});
  CHECK(gde_root(2, 1, RootSign::Positive).window() == W{0, 2});
  CHECK(gde_root(2, 2, RootSign::Negative).window() == W{0, 4});
  CHECK(gde_root(4, 4, RootSign::Negative).window() == W{0, 8});
  CHECK(algorithm_a(3).window() == W{2, 2});
  CHECK(gde_pisot_minus(4).window() == W{3, 3});
  CHECK(gde_pisot_plus(2).window() == W{2, 2});
  CHECK(gde_rational_pos(3, 2).window() == W{0, 1});
  CHECK(gde_rational_neg(3, 2).window() == W{0, 2});
}

TEST_CASE("catalog alphabets") {
  CHECK(gde_negative_integer(3).input_alphabet() == Alphabet(0, 4));
  CHECK(gde_negative_integer(3).output_alphabet() == Alphabet(0, 3));
  CHECK(algorithm_a(3).input_alphabet() == Alphabet(0, 4));
  CHECK(algorithm_a(3).output_alphabet() == Alphabet(0, 3));
  CHECK(gde_pisot_minus(3).input_alphabet() == Alphabet(0, 3));
  CHECK(gde_pisot_minus(3).output_alphabet() == Alphabet(0, 2));
  CHECK(gde_pisot_plus(2).input_alphabet() == Alphabet(0, 4));
  CHECK(gde_pisot_plus(2).output_alphabet() == Alphabet(0, 3));
  CHECK(gde_rational_pos(5, 3).input_alphabet() == Alphabet(0, 8));
  CHECK(gde_rational_neg(5, 3).output_alphabet() == Alphabet(0, 7));
  for (const auto& base : {BaseSpec::two_i(), BaseSpec::pisot_plus(3), BaseSpec::rational_neg(7, 4)}) {
    const auto g = gde_for_base(base);
    CHECK(g.input_alphabet().lo() == 0);
    CHECK(g.input_alphabet().size() == g.output_alphabet().size() + 1);
  }
}

TEST_CASE("catalog parameter ranges") {
  CHECK_THROWS_AS(gde_negative_integer(1), Error);
  CHECK_THROWS_AS(algorithm_a(2), Error);
  CHECK_THROWS_AS(gde_pisot_plus(1), Error);
  CHECK_THROWS_AS(gde_rational_pos(2, 3), Error);
}

TEST_CASE("rule_for_alphabet on base -2 covers every shift") {
  const auto base = BaseSpec::negative_integer(2);
  const auto p0 = rule_for_alphabet(base, Alphabet(0, 2));
  CHECK(p0.d == 0);
  CHECK(p0.gde);
  CHECK_FALSE(p0.sde);
  CHECK(p0.gde->input_alphabet() == Alphabet(0, 3));
  const auto p1 = rule_for_alphabet(base, Alphabet(-1, 1));
  CHECK(p1.gde);
  CHECK(p1.sde);
  CHECK(p1.gde->input_alphabet() == Alphabet(-1, 2));
  CHECK(p1.sde->input_alphabet() == Alphabet(-2, 1));
  CHECK(p1.sde->output_alphabet() == Alphabet(-1, 1));
  const auto p2 = rule_for_alphabet(base, Alphabet(-2, 0));
  CHECK_FALSE(p2.gde);
  CHECK(p2.sde);
}

TEST_CASE("rule_for_alphabet on base 3/2 licenses exactly d = 0, 2, 4") {
  const auto base = BaseSpec::rational_pos(3, 2);
  CHECK_NOTHROW(rule_for_alphabet(base, Alphabet(0, 4)));
  CHECK_NOTHROW(rule_for_alphabet(base, Alphabet(-2, 2)));
  CHECK_NOTHROW(rule_for_alphabet(base, Alphabet(-4, 0)));
  CHECK(refusal(base, Alphabet(-1, 3)) == ErrorKind::AlphabetUnsupported);
  CHECK(refusal(base, Alphabet(-3, 1)) == ErrorKind::AlphabetUnsupported);
}

TEST_CASE("rule_for_alphabet on base -3/2 covers every shift") {
  const auto base = BaseSpec::rational_neg(3, 2);
  for (Digit d = 0; d < 5; ++d) CHECK_NOTHROW(rule_for_alphabet(base, Alphabet(-d, 4 - d)));
}

TEST_CASE("rule_for_alphabet size checks") {
  CHECK(refusal(BaseSpec::negative_integer(2), Alphabet(0, 1)) == ErrorKind::AlphabetTooSmall);
  CHECK(refusal(BaseSpec::negative_integer(2), Alphabet(0, 3)) == ErrorKind::AlphabetUnsupported);
  CHECK(refusal(BaseSpec::rational_pos(3, 2), Alphabet(-1, 2)) == ErrorKind::AlphabetTooSmall);
}

TEST_CASE("sde_for_alphabet") {
  const auto s = sde_for_alphabet(BaseSpec::pisot_minus(3), Alphabet(-1, 1));
  CHECK(s.input_alphabet() == Alphabet(-2, 1));
  CHECK(s.output_alphabet() == Alphabet(-1, 1));
  CHECK(s.window() == std::pair<int, int>{3, 3});
  try {
    sde_for_alphabet(BaseSpec::rational_pos(3, 2), Alphabet(-1, 3));
    FAIL("unlicensed shift accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShiftNotLicensed);
  }
}

TEST_CASE("rule JSON round trip") {
  const auto pair = rule_for_alphabet(BaseSpec::negative_integer(2), Alphabet(-1, 1));
  for (const auto& rule : {gde_negative_integer(2), gde_pisot_plus(2), *pair.sde, *pair.gde}) {
    const auto back = rule_from_json(rule_to_json(rule));
    CHECK(back.window() == rule.window());
    CHECK(back.input_alphabet() == rule.input_alphabet());
    CHECK(back.table() == rule.table());
  }
  auto j = rule_to_json(algorithm_a(6));
  j.erase("table");
  const auto replayed = rule_from_json(j);
  CHECK(replayed.table() == algorithm_a(6).table());
  CHECK_THROWS_AS(rule_from_json(json::parse(R"({"t":0})")), Error);
}
