#include "doctest.h"

#include <random>

#include "carryfree/algebra.hpp"
#include "support/field_value.hpp"

using namespace carryfree;

namespace {

LaurentPoly poly(Exponent lsd, std::vector<long> msd_first) {
  std::vector<mpz_class> c;
  for (long v : msd_first) c.emplace_back(v);
  return LaurentPoly(lsd, std::move(c));
}


}  // namespace

TEST_CASE("to_poly") {
  CHECK(to_poly(parse_digit_string("2 1 .")) == poly(0, {2, 1}));
  CHECK(to_poly(DigitString()).is_zero());
  CHECK(to_poly(parse_digit_string("1 0 . 1")) == poly(-1, {1, 0, 1}));
}

TEST_CASE("sub") {
  CHECK(sub(poly(0, {1, 1, 1}), poly(0, {3})) == poly(0, {1, 1, -2}));
  const auto p = poly(-1, {2, 0, 5});
  CHECK(sub(p, p).is_zero());
  CHECK(sub(poly(0, {2, 1}), poly(-1, {1, 0, 1})) == poly(-1, {1, 1, -1}));
}

TEST_CASE("reduce_mod_base") {
  const auto m2 = BaseSpec::negative_integer(2);
  CHECK(reduce_mod_base(poly(0, {1, 1, -2}), m2).is_zero());
  CHECK(reduce_mod_base(poly(0, {1, -1}), m2) == poly(0, {-3}));
  CHECK(reduce_mod_base(LaurentPoly(), m2).is_zero());
  CHECK(reduce_mod_base(poly(-2, {1, -3, 1}), BaseSpec::pisot_minus(3)).is_zero());
}

TEST_CASE("values_equal") {
  CHECK(values_equal(parse_digit_string("1 1 1 ."), parse_digit_string("3 ."),
                     BaseSpec::negative_integer(2)));
  CHECK(values_equal(parse_digit_string("2 1 ."), parse_digit_string("4 ."),
                     BaseSpec::rational_pos(3, 2)));
  const auto x = parse_digit_string("3 -1 . 2");
  CHECK(values_equal(x, x, BaseSpec::pisot_plus(2)));
  CHECK_FALSE(values_equal(parse_digit_string("2 1 ."), parse_digit_string("5 ."),
                           BaseSpec::rational_pos(3, 2)));
  CHECK(values_equal(parse_digit_string("1 0 . 1"), parse_digit_string("3 ."),
                     BaseSpec::pisot_minus(3)));
  CHECK(values_equal(DigitString(), DigitString(), BaseSpec::integer(2)));
}

TEST_CASE("multiples of the defining polynomial reduce to zero") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-50, 50);
  for (const auto& base :
       {BaseSpec::negative_integer(3), BaseSpec::pisot_plus(2), BaseSpec::rational_neg(5, 3),
        BaseSpec::negative_root(4, 4), BaseSpec::root(3, 2)}) {
    const IntPoly f = base.defining_poly();
    std::vector<mpz_class> fc;
    for (auto it = f.rbegin(); it != f.rend(); ++it) fc.emplace_back(static_cast<long>(*it));
    const LaurentPoly fp(0, fc);
    for (int n = 0; n < 50; ++n) {
      std::vector<long> c(1 + n % 9);
      for (auto& v : c) v = coef(rng);
      const auto p = mul(poly(-static_cast<Exponent>(n % 4), c), fp);
      CHECK(reduce_mod_base(p, base).is_zero());
      CHECK(is_multiple(p, f));
    }
  }
}

TEST_CASE("values_equal agrees with exact field coordinates") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> digit(-3, 3), len(1, 7), lsd(-2, 1);
  for (const auto& base : {BaseSpec::negative_integer(2), BaseSpec::pisot_minus(3),
                           BaseSpec::pisot_plus(2), BaseSpec::rational_pos(3, 2),
                           BaseSpec::rational_neg(3, 2), BaseSpec::two_i()}) {
    for (int n = 0; n < 400; ++n) {
      std::vector<Digit> a(static_cast<std::size_t>(len(rng))), b(static_cast<std::size_t>(len(rng)));
      for (auto& d : a) d = digit(rng);
      for (auto& d : b) d = digit(rng);
      const DigitString x(lsd(rng), a), y(lsd(rng), b);
      CHECK(values_equal(x, y, base) == testing_support::same_value(x, y, base));
    }
  }
}

TEST_CASE("values_equal falls back to big integers") {
  const auto base = BaseSpec::negative_integer(2);
  std::vector<Digit> big(200, 1);
  const DigitString x(0, big);
  DigitString shifted = x.shifted(1);
  // x*beta + x == x*(beta+1) == -x
  CHECK(values_equal(digitwise_sum(shifted, x), negate_digits(x), base));
  CHECK_FALSE(values_equal(digitwise_sum(shifted, x), x, base));
  const DigitString huge(0, std::vector<Digit>(300, 1 << 20));
  CHECK(values_equal(huge, huge, BaseSpec::rational_pos(7, 4)));
  CHECK_FALSE(values_equal(huge, digitwise_sum(huge, DigitString(0, {1})),
                           BaseSpec::rational_pos(7, 4)));
}

TEST_CASE("eval_approx encloses the value") {
  const auto v = eval_approx(parse_digit_string("2 1 ."), BaseSpec::rational_pos(3, 2), 64);
  CHECK(v.re.contains(4.0));
  CHECK(v.im.contains(0.0));
  const auto z = eval_approx(DigitString(), BaseSpec::pisot_minus(3), 32);
  CHECK(z.re.lo == 0.0);
  CHECK(z.re.hi == 0.0);
  const auto r = eval_approx(parse_digit_string("1 0 ."), BaseSpec::minus_one_plus_i(), 64);
  CHECK(r.re.contains(-1.0));
  CHECK(r.im.contains(1.0));
  CHECK(r.re.hi - r.re.lo < 1e-12);
  const auto q = eval_approx(parse_digit_string("1 0 ."), BaseSpec::root(4, 4), 64);
  CHECK(q.re.contains(std::sqrt(2.0)));
}

TEST_CASE("equal values have overlapping enclosures") {
  const auto base = BaseSpec::pisot_minus(3);
  const auto x = parse_digit_string("1 0 . 1");
  const auto y = parse_digit_string("3 .");
  for (int prec : {16, 53, 128}) {
    CHECK(eval_approx(x, base, prec).overlaps(eval_approx(y, base, prec)));
  }
}
