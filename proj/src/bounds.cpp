#include "carryfree/bounds.hpp"

#include <sstream>

namespace carryfree {

namespace {

// Exact integer k-th root of b when b is a perfect k-th power.
std::optional<std::int64_t> exact_root(std::int64_t b, std::int64_t k) {
  mpz_class root;
  const int exact = mpz_root(root.get_mpz_t(), mpz_class(static_cast<long>(b)).get_mpz_t(),
                             static_cast<unsigned long>(k));
  if (!exact) return std::nullopt;
  return root.get_si();
}

std::int64_t abs_at_one(const IntPoly& f) {
  std::int64_t s = 0;
  for (auto c : f) s += c;
  return s < 0 ? -s : s;
}

bool has_real_root_above_one(const BaseSpec& base) {
  if (base.is_real_greater_than_one()) return true;
  // The positive real root b^(1/k) is a conjugate of every branch once
  // X^k - b is irreducible.
  return base.kind() == BaseKind::Root && minimal_form(base.b(), base.k()).minimal;
}

}  // namespace

MinimalForm minimal_form(std::int64_t b, std::int64_t k) {
  MinimalForm out{true, b, k};
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (std::int64_t kp = 2; kp <= out.k; ++kp) {
      if (out.k % kp != 0) continue;
      if (auto c = exact_root(out.c, kp)) {
        out.c = *c;
        out.k /= kp;
        out.minimal = false;
        reduced = true;
        break;
      }
    }
  }
  return out;
}

std::int64_t lower_bound_ceil(const BaseSpec& base) {
  switch (base.kind()) {
    case BaseKind::Integer: return base.b();
    case BaseKind::RationalPos: return (base.a() + base.b() - 1) / base.b();
    case BaseKind::PisotMinus: return base.a();
    case BaseKind::PisotPlus: return base.a() + 1;
    case BaseKind::Root: {
      if (base.branch() != 0 && !minimal_form(base.b(), base.k()).minimal) break;
      std::int64_t n = 1;
      while (true) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mpz_class(static_cast<long>(n)).get_mpz_t(),
                   static_cast<unsigned long>(base.k()));
        if (p >= base.b()) return n;
        ++n;
      }
    }
    default: break;
  }
  throw Error(ErrorKind::NotApplicable,
              "no real conjugate greater than one for base " + base.mnemonic());
}

F1Bound lower_bound_f1(const BaseSpec& base) {
  F1Bound out;
  switch (base.kind()) {
    case BaseKind::RationalPos:
    case BaseKind::RationalNeg:
      if (base.b() != 1) {
        throw Error(ErrorKind::NotApplicable,
                    "base " + base.mnemonic() + " is not an algebraic integer");
      }
      out.minimal_poly = base.kind() == BaseKind::RationalPos ? IntPoly{-base.a(), 1}
                                                             : IntPoly{base.a(), 1};
      break;
    case BaseKind::Root: {
      const auto form = minimal_form(base.b(), base.k());
      if (form.minimal) {
        out.minimal_poly = base.defining_poly();
      } else if (base.branch() == 0) {
        out.minimal_poly = BaseSpec::root(form.c, form.k).defining_poly();
      } else {
        out.minimal_poly = base.defining_poly();
        out.proven_minimal = false;
      }
      break;
    }
    case BaseKind::NegativeRoot:
      if (base == BaseSpec::minus_one_plus_i()) {
        out.minimal_poly = {2, 2, 1};
      } else if (base == BaseSpec::two_i() || base == BaseSpec::i_sqrt2()) {
        out.minimal_poly = base.defining_poly();
      } else {
        out.minimal_poly = base.defining_poly();
        out.proven_minimal = false;
      }
      break;
    default: out.minimal_poly = base.defining_poly(); break;
  }
  out.value = abs_at_one(out.minimal_poly);
  out.plus2 = has_real_root_above_one(base);
  return out;
}

BoundReport minimal_alphabet_report(const BaseSpec& base) {
  BoundReport r{base, {}, {}, false, true, {}, 0, ShiftSupport::AllShifts, {}};
  try {
    r.ceil_bound = lower_bound_ceil(base);
  } catch (const Error&) {
  }
  try {
    const auto f1 = lower_bound_f1(base);
    r.f1_bound = f1.value;
    r.f1_plus2_applicable = f1.plus2;
    r.f1_proven_minimal = f1.proven_minimal;
  } catch (const Error&) {
  }
  switch (base.kind()) {
    case BaseKind::Integer:
    case BaseKind::NegativeInteger:
    case BaseKind::Root:
    case BaseKind::NegativeRoot: r.minimal_size = base.b() + 1; break;
    case BaseKind::PisotMinus: r.minimal_size = base.a(); break;
    case BaseKind::PisotPlus: r.minimal_size = base.a() + 2; break;
    case BaseKind::RationalPos:
    case BaseKind::RationalNeg:
      r.rational_bound = base.a() + base.b();
      r.minimal_size = base.a() + base.b();
      break;
  }
  const auto n = std::to_string(r.minimal_size);
  if (base.kind() == BaseKind::RationalPos) {
    r.supported_alphabets = ShiftSupport::ListedShapes;
    const auto top = std::to_string(r.minimal_size - 1);
    r.description = "{0.." + top + "}, {-" + top + "..0}, and all alphabets of size " + n +
                    " containing {-" + std::to_string(base.b()) + ".." +
                    std::to_string(base.b()) + "}";
  } else {
    r.description = "all alphabets of size " + n;
  }
  return r;
}

json to_json(const BoundReport& r) {
  auto opt = [](const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); };
  return json{
      {"base", to_json(r.base)},
      {"ceil_bound", opt(r.ceil_bound)},
      {"f1_bound", opt(r.f1_bound)},
      {"f1_plus2_applicable", r.f1_plus2_applicable},
      {"f1_proven_minimal", r.f1_proven_minimal},
      {"rational_bound", opt(r.rational_bound)},
      {"minimal_size", r.minimal_size},
      {"supported_alphabets",
       r.supported_alphabets == ShiftSupport::AllShifts ? "all-shifts" : "listed-shapes"},
      {"description", r.description},
  };
}

std::string format_report(const BoundReport& r) {
  auto opt = [](const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string("n/a");
  };
  std::ostringstream out;
  out << "base                 " << r.base.mnemonic() << '\n'
      << "ceil bound           " << opt(r.ceil_bound) << '\n'
      << "|f(1)| bound         " << opt(r.f1_bound);
  if (r.f1_bound) {
    if (r.f1_plus2_applicable) out << " (+2 applies: " << *r.f1_bound + 2 << ')';
    if (!r.f1_proven_minimal) out << " [polynomial not proven minimal]";
  }
  out << '\n'
      << "rational bound       " << opt(r.rational_bound) << '\n'
      << "minimal size         " << r.minimal_size << '\n'
      << "supported alphabets  " << r.description << '\n';
  return out.str();
}

}  // namespace carryfree
