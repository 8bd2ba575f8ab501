#include "carryfree/rules.hpp"

#include "carryfree/bounds.hpp"

namespace carryfree {

namespace {

Digit to_digit(std::int64_t v) { return static_cast<Digit>(v); }

LocalRule catalog_rule(const CarryRule& cr, const BaseSpec& base, Alphabet in, Alphabet out,
                       const std::string& id, json params) {
  return derive_local_rule(cr, base, in, out)
      .with_description(json{{"catalog", id}, {"params", std::move(params)}});
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ParameterOutOfRange, what);
}

}  // namespace

LocalRule gde_negative_integer(std::int64_t b) {
  require(b >= 2, "GDE(-b) needs b >= 2");
  const Digit bd = to_digit(b);
  CarryRule cr{"GDE(-" + std::to_string(b) + ")", 0, 1,
               [bd](WindowView z) {
                 if (z(0) == bd + 1 || (z(0) == bd && z(-1) == 0)) return 1;
                 if (z(0) == 0 && z(-1) >= bd) return -1;
                 return 0;
               },
               {{0, -b}, {1, -1}}};
  return catalog_rule(cr, BaseSpec::negative_integer(b), Alphabet(0, bd + 1), Alphabet(0, bd),
                      "gde-negative-integer", {{"b", b}});
}

LocalRule gde_root(std::int64_t b, std::int64_t k, RootSign sign) {
  require(b >= 2 && k >= 1, "GDE root rule needs b >= 2 and k >= 1");
  const Digit bd = to_digit(b);
  const int kk = static_cast<int>(k);
  const bool negative = sign == RootSign::Negative;
  CarryRule cr;
  cr.t_q = 0;
  cr.r_q = kk;
  if (negative) {
    cr.name = "GDE(" + std::to_string(k) + "-th root of -" + std::to_string(b) + ")";
    cr.selector = [bd, kk](WindowView z) {
      if (z(0) == bd + 1 || (z(0) == bd && z(-kk) == 0)) return 1;
      if (z(0) == 0 && z(-kk) >= bd) return -1;
      return 0;
    };
    cr.placements = {{0, -b}, {kk, -1}};
  } else {
    cr.name = "GDE(" + std::to_string(k) + "-th root of " + std::to_string(b) + ")";
    cr.selector = [bd, kk](WindowView z) {
      return (z(0) == bd + 1 || (z(0) == bd && z(-kk) >= bd)) ? 1 : 0;
    };
    cr.placements = {{0, -b}, {kk, 1}};
  }
  const BaseSpec base = negative ? BaseSpec::negative_root(b, k) : BaseSpec::root(b, k);
  return catalog_rule(cr, base, Alphabet(0, bd + 1), Alphabet(0, bd), "gde-root",
                      {{"b", b}, {"k", k}, {"sign", negative ? "-" : "+"}});
}

LocalRule algorithm_a(std::int64_t a) {
  require(a >= 3, "Algorithm A needs a >= 3");
  const Digit ad = to_digit(a);
  CarryRule cr{"A(" + std::to_string(a) + ")", 1, 1,
               [ad](WindowView z) {
                 if (z(0) >= ad) return 1;
                 if (z(0) == ad - 1 && z(1) >= ad && z(-1) >= ad) return 1;
                 return 0;
               },
               {{0, -a}, {-1, 1}, {1, 1}}};
  return catalog_rule(cr, BaseSpec::pisot_minus(a), Alphabet(0, 2 * ad - 2), Alphabet(0, ad),
                      "algorithm-a", {{"a", a}});
}

LocalRule gde_pisot_minus(std::int64_t a) {
  require(a >= 3, "GDE(beta-) needs a >= 3");
  const Digit ad = to_digit(a);
  CarryRule cr{"GDE(beta-," + std::to_string(a) + ")", 2, 2,
               [ad](WindowView z) {
                 const Digit top = ad, one = ad - 1, two = ad - 2;
                 if (z(0) == top) return 1;
                 if (z(0) == one && (z(1) >= one || z(-1) >= one)) return 1;
                 if (z(0) != two) return 0;
                 if (z(1) == top && z(-1) == top) return 1;
                 if (z(1) == top && z(-1) == one && z(-2) >= one) return 1;
                 if (z(-1) == top && z(1) == one && z(2) >= one) return 1;
                 if (z(1) == one && z(-1) == one && z(2) >= one && z(-2) >= one) return 1;
                 return 0;
               },
               {{0, -a}, {-1, 1}, {1, 1}}};
  return catalog_rule(cr, BaseSpec::pisot_minus(a), Alphabet(0, ad), Alphabet(0, ad - 1),
                      "gde-pisot-minus", {{"a", a}});
}

LocalRule gde_pisot_plus(std::int64_t a) {
  require(a >= 2, "GDE(beta+) needs a >= 2");
  const Digit ad = to_digit(a);
  CarryRule cr{"GDE(beta+," + std::to_string(a) + ")", 1, 1,
               [ad](WindowView z) {
                 if (z(0) == ad + 2) return 1;
                 if (z(0) == ad + 1 && (z(1) == 0 || z(-1) >= ad + 1)) return 1;
                 if (z(0) == ad && z(1) == 0 && z(-1) >= ad + 1) return 1;
                 if (z(0) == 0 && z(1) >= ad + 1 && z(-1) <= ad) return -1;
                 return 0;
               },
               {{0, -a}, {-1, -1}, {1, 1}}};
  return catalog_rule(cr, BaseSpec::pisot_plus(a), Alphabet(0, ad + 2), Alphabet(0, ad + 1),
                      "gde-pisot-plus", {{"a", a}});
}

LocalRule gde_rational_pos(std::int64_t a, std::int64_t b) {
  const BaseSpec base = BaseSpec::rational_pos(a, b);
  const Digit ad = to_digit(a), bd = to_digit(b);
  CarryRule cr{"GDE(" + std::to_string(a) + "/" + std::to_string(b) + ")", 0, 0,
               [ad, bd](WindowView z) { return (ad <= z(0) && z(0) <= ad + bd) ? 1 : 0; },
               {{0, -a}, {1, b}}};
  return catalog_rule(cr, base, Alphabet(0, ad + bd), Alphabet(0, ad + bd - 1),
                      "gde-rational-pos", {{"a", a}, {"b", b}});
}

LocalRule gde_rational_neg(std::int64_t a, std::int64_t b) {
  const BaseSpec base = BaseSpec::rational_neg(a, b);
  const Digit ad = to_digit(a), bd = to_digit(b);
  CarryRule cr{"GDE(-" + std::to_string(a) + "/" + std::to_string(b) + ")", 0, 1,
               [ad, bd](WindowView z) {
                 if (z(0) == ad + bd) return 1;
                 if (ad <= z(0) && z(0) <= ad + bd - 1 && 0 <= z(-1) && z(-1) <= bd - 1) return 1;
                 if (0 <= z(0) && z(0) <= bd - 1 && ad <= z(-1) && z(-1) <= ad + bd) return -1;
                 return 0;
               },
               {{0, -a}, {1, -b}}};
  return catalog_rule(cr, base, Alphabet(0, ad + bd), Alphabet(0, ad + bd - 1),
                      "gde-rational-neg", {{"a", a}, {"b", b}});
}

LocalRule gde_for_base(const BaseSpec& base) {
  switch (base.kind()) {
    case BaseKind::Integer: return gde_root(base.b(), 1, RootSign::Positive);
    case BaseKind::NegativeInteger: return gde_negative_integer(base.b());
    case BaseKind::Root: return gde_root(base.b(), base.k(), RootSign::Positive);
    case BaseKind::NegativeRoot: return gde_root(base.b(), base.k(), RootSign::Negative);
    case BaseKind::PisotMinus: return gde_pisot_minus(base.a());
    case BaseKind::PisotPlus: return gde_pisot_plus(base.a());
    case BaseKind::RationalPos: return gde_rational_pos(base.a(), base.b());
    case BaseKind::RationalNeg: return gde_rational_neg(base.a(), base.b());
  }
  throw Error(ErrorKind::UnsupportedBase, "no GDE rule for " + base.mnemonic());
}

namespace {

std::int64_t checked_size(const BaseSpec& base, const Alphabet& alphabet) {
  const auto k = minimal_alphabet_report(base).minimal_size;
  if (alphabet.size() < k) {
    throw Error(ErrorKind::AlphabetTooSmall,
                "alphabet " + alphabet.to_string() + " has " + std::to_string(alphabet.size()) +
                    " digits; base " + base.mnemonic() + " needs at least " + std::to_string(k));
  }
  if (alphabet.size() > k) {
    throw Error(ErrorKind::AlphabetUnsupported,
                "only alphabets of the minimal size " + std::to_string(k) +
                    " are catalogued for base " + base.mnemonic());
  }
  return k;
}

std::string refusal_reason(const BaseSpec& base) {
  if (base.kind() == BaseKind::RationalPos) {
    return " (in base a/b no local parallel addition exists on {-d..a+b-1-d} when "
           "1 <= d <= b-1 or a <= d <= a+b-2)";
  }
  return "";
}

LocalRule sde_from(const LocalRule& gde, const BaseSpec& base, const Alphabet& alphabet,
                   std::int64_t k) {
  const Digit h = static_cast<Digit>(k - 1 + alphabet.lo());
  if (gde.eval_constant(h) != h) {
    throw Error(ErrorKind::ShiftNotLicensed,
                "letter " + std::to_string(h) + " is not fixed by " + gde.name() +
                    ", so no smallest digit elimination onto " + alphabet.to_string() +
                    refusal_reason(base));
  }
  return negate_rule(shift_alphabet(gde, h)).renamed("SDE[" + alphabet.to_string() + "] of " + gde.name());
}

}  // namespace

LocalRule sde_for_alphabet(const BaseSpec& base, const Alphabet& alphabet) {
  const auto k = checked_size(base, alphabet);
  return sde_from(gde_for_base(base), base, alphabet, k);
}

RulePair rule_for_alphabet(const BaseSpec& base, const Alphabet& alphabet) {
  const auto k = checked_size(base, alphabet);
  const LocalRule gde = gde_for_base(base);
  RulePair out{alphabet, static_cast<Digit>(-alphabet.lo()), std::nullopt, std::nullopt};
  if (alphabet.hi() >= 1) {
    const Digit d = out.d;
    if (gde.eval_constant(d) != d) {
      throw Error(ErrorKind::AlphabetUnsupported,
                  "alphabet " + alphabet.to_string() + " unsupported for base " + base.mnemonic() +
                      ": letter " + std::to_string(d) + " is not fixed by " + gde.name() +
                      refusal_reason(base));
    }
    out.gde = shift_alphabet(gde, d).renamed("GDE[" + alphabet.to_string() + "] of " + gde.name());
  }
  if (alphabet.lo() <= -1) {
    try {
      out.sde = sde_from(gde, base, alphabet, k);
    } catch (const Error& e) {
      throw Error(ErrorKind::AlphabetUnsupported,
                  "alphabet " + alphabet.to_string() + " unsupported for base " + base.mnemonic() +
                      ": " + e.what());
    }
  }
  return out;
}

namespace {

LocalRule catalog_from_json(const std::string& id, const json& p) {
  auto get = [&](const char* key) { return p.at(key).get<std::int64_t>(); };
  if (id == "gde-negative-integer") return gde_negative_integer(get("b"));
  if (id == "gde-root") {
    return gde_root(get("b"), get("k"),
                    p.at("sign").get<std::string>() == "-" ? RootSign::Negative : RootSign::Positive);
  }
  if (id == "algorithm-a") return algorithm_a(get("a"));
  if (id == "gde-pisot-minus") return gde_pisot_minus(get("a"));
  if (id == "gde-pisot-plus") return gde_pisot_plus(get("a"));
  if (id == "gde-rational-pos") return gde_rational_pos(get("a"), get("b"));
  if (id == "gde-rational-neg") return gde_rational_neg(get("a"), get("b"));
  throw Error(ErrorKind::InvalidRule, "unknown catalog rule '" + id + "'");
}

LocalRule replay(const json& d) {
  LocalRule rule = [&]() {
    if (d.contains("catalog")) return catalog_from_json(d.at("catalog").get<std::string>(), d.at("params"));
    if (d.contains("identity")) return identity_rule(Alphabet::parse(d.at("identity").get<std::string>()));
    if (d.contains("compose")) return compose(replay(d.at("compose").at(0)), replay(d.at("compose").at(1)));
    throw Error(ErrorKind::InvalidRule, "rule description has no catalog entry or table");
  }();
  if (d.contains("transforms")) {
    for (const auto& step : d.at("transforms")) {
      if (step.contains("shift")) rule = shift_alphabet(rule, step.at("shift").get<Digit>());
      if (step.contains("negate")) rule = negate_rule(rule);
    }
  }
  return rule;
}

}  // namespace

LocalRule rule_from_json(const json& j) {
  try {
    if (j.contains("table")) {
      return LocalRule::from_table(j.value("name", std::string("table rule")),
                                   Alphabet::parse(j.at("input_alphabet").get<std::string>()),
                                   Alphabet::parse(j.at("output_alphabet").get<std::string>()),
                                   j.at("t").get<int>(), j.at("r").get<int>(),
                                   j.at("table").get<std::vector<Digit>>(),
                                   j.value("description", json::object()));
    }
    LocalRule rule = replay(j.at("description"));
    if (j.contains("name")) rule = rule.renamed(j.at("name").get<std::string>());
    return rule;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("malformed rule JSON: ") + e.what());
  }
}

}  // namespace carryfree
