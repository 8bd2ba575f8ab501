#include "doctest.h"

#include <random>

#include "carryfree/algebra.hpp"
#include "carryfree/local_engine.hpp"
#include "carryfree/rules.hpp"
#include "support/field_value.hpp"

using namespace carryfree;

namespace {

std::string run(const LocalRule& rule, const char* text, int threads = 0) {
  return format_digit_string(apply(rule, parse_digit_string(text), threads));
}

DigitString random_string(std::mt19937_64& rng, const Alphabet& a, std::size_t len) {
  std::uniform_int_distribution<Digit> d(a.lo(), a.hi());
  std::vector<Digit> v(len);
  for (auto& x : v) x = d(rng);
  return DigitString(static_cast<Exponent>(rng() % 5) - 2, v);
}

}  // namespace

TEST_CASE("catalog examples") {
  CHECK(run(gde_negative_integer(2), "3 .") == "1 1 1 .");
  CHECK(run(algorithm_a(3), "4 .") == "1 1 . 1");
  CHECK(run(gde_pisot_minus(3), "3 .") == "1 0 . 1");
  CHECK(run(gde_pisot_plus(2), "4 .") == "1 1 . 1 1");
  CHECK(run(gde_rational_pos(3, 2), "5 .") == "2 2 .");
  CHECK(run(gde_rational_neg(3, 2), "5 .") == "2 1 2 .");
  CHECK(run(gde_negative_integer(2), ".") == ".");
}

TEST_CASE("apply preserves value on random strings") {
  std::mt19937_64 rng(3);
  const std::vector<std::pair<LocalRule, BaseSpec>> cases = {
      {gde_negative_integer(3), BaseSpec::negative_integer(3)},
      {gde_root(4, 4, RootSign::Negative), BaseSpec::minus_one_plus_i()},
      {algorithm_a(4), BaseSpec::pisot_minus(4)},
      {gde_pisot_plus(3), BaseSpec::pisot_plus(3)},
      {gde_rational_neg(5, 3), BaseSpec::rational_neg(5, 3)},
  };
  for (const auto& [rule, base] : cases) {
    for (int n = 0; n < 200; ++n) {
      const auto u = random_string(rng, rule.input_alphabet(), 1 + rng() % 30);
      const auto v = apply(rule, u);
      CHECK(v.all_in(rule.output_alphabet()));
      CHECK(testing_support::same_value(u, v, base));
    }
  }
}

TEST_CASE("serial and OpenMP kernels agree") {
  std::mt19937_64 rng(5);
  for (const auto& rule : {gde_negative_integer(2), gde_rational_pos(3, 2), gde_pisot_minus(3)}) {
    const auto u = random_string(rng, rule.input_alphabet(), 20000);
    const auto ref = apply(rule, u, 0);
    for (int threads : {1, 2, 4}) CHECK(apply(rule, u, threads) == ref);
  }
}

TEST_CASE("apply_raw span and background") {
  const auto rule = gde_negative_integer(2);
  const auto u = parse_digit_string("3 .");
  const auto raw = apply_raw(rule, u);
  CHECK(raw.lsd_exponent() == 0);
  CHECK(raw.msd_exponent() == 2);
  const auto pm = gde_pisot_minus(3);
  const auto raw_pm = apply_raw(pm, u);
  CHECK(raw_pm.lsd_exponent() == -3);
  CHECK(raw_pm.msd_exponent() == 3);
  // a fixed letter as background is reproduced everywhere
  const auto bg = apply_raw(rule, DigitString(0, {1}), 1);
  for (Digit d : bg.digits()) CHECK(d == 1);
}

TEST_CASE("digits outside the input alphabet are rejected") {
  CHECK_THROWS_AS(apply(gde_negative_integer(2), parse_digit_string("4 .")), Error);
  try {
    apply(gde_negative_integer(2), parse_digit_string("-1 ."));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DigitOutOfAlphabet);
  }
}

TEST_CASE("carry rules have value patterns divisible by the base polynomial") {
  const std::vector<std::pair<LocalRule, BaseSpec>> cases = {
      {gde_negative_integer(5), BaseSpec::negative_integer(5)},
      {gde_root(2, 2, RootSign::Negative), BaseSpec::i_sqrt2()},
      {algorithm_a(3), BaseSpec::pisot_minus(3)},
      {gde_pisot_minus(6), BaseSpec::pisot_minus(6)},
      {gde_pisot_plus(5), BaseSpec::pisot_plus(5)},
      {gde_rational_pos(7, 4), BaseSpec::rational_pos(7, 4)},
      {gde_rational_neg(7, 4), BaseSpec::rational_neg(7, 4)},
  };
  for (const auto& [rule, base] : cases) {
    REQUIRE(rule.carry_source());
    const auto& cr = *rule.carry_source()->rule;
    CHECK(is_multiple(cr.pattern_poly(), base.defining_poly()));
    CHECK(cr.window() == rule.window());
  }
}

TEST_CASE("output digits equal input plus placed carries") {
  std::mt19937_64 rng(9);
  const auto rule = gde_pisot_plus(2);
  const auto& cr = *rule.carry_source()->rule;
  for (int n = 0; n < 100; ++n) {
    const auto u = random_string(rng, rule.input_alphabet(), 1 + rng() % 12);
    const auto q = carries(rule, u);
    const auto v = apply_raw(rule, u);
    for (Exponent j = v.lsd_exponent(); j <= v.msd_exponent(); ++j) {
      std::int64_t expect = u.at(j);
      for (const auto& p : cr.placements) expect += p.gamma * q.at(j - p.delta);
      CHECK(v.at(j) == expect);
    }
  }
}

TEST_CASE("derive_local_rule checks its contract") {
  CarryRule bad;
  bad.name = "bad";
  bad.selector = [](WindowView z) { return z(0) >= 2 ? 1 : 0; };
  bad.placements = {{0, -2}, {1, 2}};
  CHECK(bad.window() == std::pair<int, int>{0, 1});
  try {
    derive_local_rule(bad, BaseSpec::negative_integer(2), Alphabet(0, 3), Alphabet(0, 2));
    FAIL("pattern accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValuePatternNotMultiple);
  }
  CarryRule loose;
  loose.name = "loose";
  loose.selector = [](WindowView z) { return z(0) >= 3 ? 1 : 0; };
  loose.placements = {{0, -2}, {1, -1}};
  CHECK_NOTHROW(derive_local_rule(loose, BaseSpec::negative_integer(2), Alphabet(0, 2), Alphabet(0, 3)));
  try {
    derive_local_rule(loose, BaseSpec::negative_integer(2), Alphabet(0, 3), Alphabet(0, 2));
    FAIL("escaping output accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutputEscapesAlphabet);
  }
}

TEST_CASE("rules must fix zero") {
  CHECK_THROWS_AS(LocalRule("one", Alphabet(0, 1), Alphabet(0, 1), 0, 0,
                            [](const Digit*) { return Digit{1}; }),
                  Error);
}

TEST_CASE("tables index windows most significant first") {
  const auto rule = LocalRule::from_table("left", Alphabet(0, 1), Alphabet(0, 1), 1, 0, {0, 0, 1, 1});
  // output at j is u_{j+1}
  CHECK(format_digit_string(apply(rule, parse_digit_string("1 0 ."))) == "1 .");
  const Digit w[2] = {1, 0};
  CHECK(rule.eval(w) == 1);
  CHECK(rule.eval_constant(1) == 1);
}

TEST_CASE("identity and composition") {
  const auto g = gde_negative_integer(2);
  const auto id = identity_rule(Alphabet(0, 3));
  CHECK(id.window() == std::pair<int, int>{0, 0});
  CHECK(run(id, "3 1 .") == "3 1 .");
  const auto gg = compose(g, g);
  CHECK(gg.window() == std::pair<int, int>{0, 4});
  CHECK(gg.input_alphabet() == g.input_alphabet());
  CHECK(gg.output_alphabet() == g.output_alphabet());
  std::mt19937_64 rng(17);
  for (int n = 0; n < 200; ++n) {
    const auto u = random_string(rng, g.input_alphabet(), 1 + rng() % 15);
    CHECK(apply(gg, u) == apply(g, apply(g, u)));
    CHECK(apply(compose(g, identity_rule(g.input_alphabet())), u) == apply(g, u));
  }
  try {
    compose(g, algorithm_a(4));
    FAIL("mismatched alphabets composed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlphabetMismatch);
  }
}

TEST_CASE("fixed letters") {
  CHECK(fixed_letters(gde_negative_integer(2)) == std::vector<Digit>{0, 1, 2});
  CHECK(fixed_letters(gde_pisot_minus(3)) == std::vector<Digit>{0, 1});
  CHECK(fixed_letters(gde_pisot_plus(2)) == std::vector<Digit>{0, 1, 2});
  CHECK(fixed_letters(gde_rational_neg(3, 2)) == std::vector<Digit>{0, 1, 2, 3, 4});
  const auto rp = fixed_letters(gde_rational_pos(3, 2));
  for (Digit h : {0, 1, 2}) CHECK(std::find(rp.begin(), rp.end(), h) != rp.end());
  CHECK(std::find(rp.begin(), rp.end(), 1) != rp.end());
  CHECK(std::find(rp.begin(), rp.end(), 3) == rp.end());
}

TEST_CASE("shift_alphabet") {
  const auto g = gde_negative_integer(2);
  const auto s = shift_alphabet(g, 1);
  CHECK(s.input_alphabet() == Alphabet(-1, 2));
  CHECK(s.output_alphabet() == Alphabet(-1, 1));
  CHECK(s.window() == g.window());
  try {
    shift_alphabet(gde_pisot_minus(3), 2);
    FAIL("non-fixed letter accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LetterNotFixed);
  }
  std::mt19937_64 rng(23);
  for (int n = 0; n < 200; ++n) {
    const auto u = random_string(rng, s.input_alphabet(), 1 + rng() % 10);
    CHECK(testing_support::same_value(apply(s, u), u, BaseSpec::negative_integer(2)));
  }
}

TEST_CASE("negate_rule") {
  const auto g = gde_negative_integer(2);
  const auto n = negate_rule(g);
  CHECK(n.input_alphabet() == Alphabet(-3, 0));
  CHECK(n.output_alphabet() == Alphabet(-2, 0));
  CHECK(negate_rule(n).table() == g.table());
  CHECK(run(n, "-3 .") == "-1 -1 -1 .");
}

TEST_CASE("rule JSON export") {
  const auto j = rule_to_json(gde_negative_integer(2));
  CHECK(j.at("t") == 0);
  CHECK(j.at("r") == 2);
  CHECK(j.at("input_alphabet") == "0..3");
  CHECK(j.at("output_alphabet") == "0..2");
  CHECK(j.at("table").size() == 64);
}
