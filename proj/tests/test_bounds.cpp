#include "doctest.h"

#include "carryfree/bounds.hpp"

using namespace carryfree;

TEST_CASE("minimal_form") {
  const auto a = minimal_form(8, 2);
  CHECK(a.minimal);
  CHECK(a.c == 8);
  CHECK(a.k == 2);
  const auto b = minimal_form(4, 4);
  CHECK_FALSE(b.minimal);
  CHECK(b.c == 2);
  CHECK(b.k == 2);
  const auto c = minimal_form(64, 6);
  CHECK(c.c == 2);
  CHECK(c.k == 1);
  CHECK(minimal_form(2, 5).minimal);
}

TEST_CASE("lower_bound_ceil") {
  CHECK(lower_bound_ceil(BaseSpec::rational_pos(3, 2)) == 2);
  CHECK(lower_bound_ceil(BaseSpec::pisot_minus(3)) == 3);
  CHECK(lower_bound_ceil(BaseSpec::pisot_plus(2)) == 3);
  CHECK(lower_bound_ceil(BaseSpec::integer(10)) == 10);
  CHECK(lower_bound_ceil(BaseSpec::root(2, 2)) == 2);
  CHECK(lower_bound_ceil(BaseSpec::root(9, 2)) == 3);
  CHECK(lower_bound_ceil(BaseSpec::rational_pos(7, 4)) == 2);
  CHECK_THROWS_AS(lower_bound_ceil(BaseSpec::negative_integer(2)), Error);
}

TEST_CASE("lower_bound_f1 for complex bases") {
  CHECK(lower_bound_f1(BaseSpec::minus_one_plus_i()).bound() == 5);
  CHECK(lower_bound_f1(BaseSpec::two_i()).bound() == 5);
  CHECK(lower_bound_f1(BaseSpec::i_sqrt2()).bound() == 3);
  CHECK_FALSE(lower_bound_f1(BaseSpec::two_i()).plus2);
  CHECK(lower_bound_f1(BaseSpec::minus_one_plus_i()).minimal_poly == IntPoly{2, 2, 1});
}

TEST_CASE("lower_bound_f1 for real bases") {
  for (std::int64_t a : {3, 4, 7}) {
    const auto f = lower_bound_f1(BaseSpec::pisot_minus(a));
    CHECK(f.value == a - 2);
    CHECK(f.plus2);
    CHECK(f.bound() == a);
  }
  for (std::int64_t a : {2, 3, 5}) CHECK(lower_bound_f1(BaseSpec::pisot_plus(a)).bound() == a + 2);
  CHECK(lower_bound_f1(BaseSpec::negative_integer(2)).bound() == 3);
  CHECK(lower_bound_f1(BaseSpec::integer(2)).bound() == 3);
  CHECK(lower_bound_f1(BaseSpec::root(4, 2)).minimal_poly == IntPoly{-2, 1});
  CHECK_THROWS_AS(lower_bound_f1(BaseSpec::rational_pos(3, 2)), Error);
}

TEST_CASE("minimal alphabet reports") {
  CHECK(minimal_alphabet_report(BaseSpec::negative_integer(2)).minimal_size == 3);
  CHECK(minimal_alphabet_report(BaseSpec::minus_one_plus_i()).minimal_size == 5);
  CHECK(minimal_alphabet_report(BaseSpec::i_sqrt2()).minimal_size == 3);
  CHECK(minimal_alphabet_report(BaseSpec::pisot_minus(3)).minimal_size == 3);
  CHECK(minimal_alphabet_report(BaseSpec::pisot_plus(2)).minimal_size == 4);
  for (auto [a, b] : {std::pair<std::int64_t, std::int64_t>{3, 2}, {5, 2}, {7, 4}}) {
    const auto r = minimal_alphabet_report(BaseSpec::rational_pos(a, b));
    CHECK(r.minimal_size == a + b);
    CHECK(r.rational_bound == a + b);
    CHECK(r.supported_alphabets == ShiftSupport::ListedShapes);
    CHECK(minimal_alphabet_report(BaseSpec::rational_neg(a, b)).supported_alphabets ==
          ShiftSupport::AllShifts);
  }
}

TEST_CASE("minimal sizes meet every applicable bound") {
  for (const auto& base :
       {BaseSpec::integer(2), BaseSpec::negative_integer(5), BaseSpec::root(3, 2),
        BaseSpec::minus_one_plus_i(), BaseSpec::two_i(), BaseSpec::i_sqrt2(), BaseSpec::pisot_minus(5),
        BaseSpec::pisot_plus(4), BaseSpec::rational_pos(5, 3), BaseSpec::rational_neg(5, 3)}) {
    const auto r = minimal_alphabet_report(base);
    if (r.ceil_bound) CHECK(r.minimal_size >= *r.ceil_bound);
    if (r.f1_bound) CHECK(r.minimal_size >= *r.f1_bound + (r.f1_plus2_applicable ? 2 : 0));
    if (r.rational_bound) CHECK(r.minimal_size >= *r.rational_bound);
  }
}

TEST_CASE("report encodings") {
  const auto j = to_json(minimal_alphabet_report(BaseSpec::i_sqrt2()));
  CHECK(j.at("minimal_size") == 3);
  CHECK(j.at("f1_bound") == 3);
  CHECK(j.at("ceil_bound").is_null());
  const auto text = format_report(minimal_alphabet_report(BaseSpec::rational_pos(3, 2)));
  CHECK(text.find("minimal size         5") != std::string::npos);
}
