#include "carryfree/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "carryfree/bounds.hpp"

namespace carryfree {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AlphabetMissingZero: return "alphabet-missing-zero";
    case ErrorKind::ParameterOutOfRange: return "kind-parameter-out-of-range";
    case ErrorKind::NonCoprime: return "non-coprime";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnsupportedBase: return "unsupported-base";
    case ErrorKind::PrecisionExhausted: return "precision-exhausted";
    case ErrorKind::OutOfWindow: return "x-not-in-window";
    case ErrorKind::NegativeInput: return "negative-input-for-positive-base";
    case ErrorKind::ValuePatternNotMultiple: return "value-pattern-not-multiple-of-base";
    case ErrorKind::OutputEscapesAlphabet: return "output-digit-escapes-alphabet";
    case ErrorKind::DigitOutOfAlphabet: return "digit-out-of-alphabet";
    case ErrorKind::AlphabetMismatch: return "alphabet-mismatch";
    case ErrorKind::LetterNotFixed: return "letter-not-fixed";
    case ErrorKind::ShiftNotLicensed: return "shift-not-licensed";
    case ErrorKind::AlphabetUnsupported: return "alphabet-unsupported";
    case ErrorKind::AlphabetTooSmall: return "alphabet-too-small";
    case ErrorKind::AlphabetLacksNegatives: return "alphabet-lacks-negatives";
    case ErrorKind::DigitOutOfRange: return "digit-out-of-range";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::InvalidRule: return "invalid-rule";
  }
  return "unknown";
}

namespace {

constexpr std::pair<BaseKind, std::string_view> kKindNames[] = {
    {BaseKind::Integer, "integer"},
    {BaseKind::NegativeInteger, "negative-integer"},
    {BaseKind::Root, "root"},
    {BaseKind::NegativeRoot, "negative-root"},
    {BaseKind::PisotMinus, "pisot-minus"},
    {BaseKind::PisotPlus, "pisot-plus"},
    {BaseKind::RationalPos, "rational-pos"},
    {BaseKind::RationalNeg, "rational-neg"},
};

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorKind::ParameterOutOfRange, what);
}

// Largest n with n^k <= b.
std::int64_t integer_root_floor(std::int64_t b, std::int64_t k) {
  std::int64_t n = static_cast<std::int64_t>(std::floor(std::pow(double(b), 1.0 / double(k))));
  auto pow_le = [&](std::int64_t base) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), mpz_class(static_cast<long>(base)).get_mpz_t(),
               static_cast<unsigned long>(k));
    return p <= b;
  };
  while (n > 0 && !pow_le(n)) --n;
  while (pow_le(n + 1)) ++n;
  return n;
}

std::int64_t parse_int(std::string_view text, std::string_view context) {
  std::int64_t value = 0;
  auto* first = text.data();
  auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw Error(ErrorKind::Syntax,
                "invalid integer '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

}  // namespace

std::string_view to_string(BaseKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

BaseKind base_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw Error(ErrorKind::Syntax, "unknown base kind '" + std::string(name) + "'");
}

BaseSpec::BaseSpec(BaseKind kind, std::int64_t a, std::int64_t b, std::int64_t k,
                   std::int64_t branch)
    : kind_(kind), a_(a), b_(b), k_(k), branch_(branch) {}

BaseSpec BaseSpec::integer(std::int64_t b) {
  if (b < 2) out_of_range("integer base needs b >= 2");
  return BaseSpec(BaseKind::Integer, 0, b, 1, 0);
}

BaseSpec BaseSpec::negative_integer(std::int64_t b) {
  if (b < 2) out_of_range("negative integer base needs b >= 2");
  return BaseSpec(BaseKind::NegativeInteger, 0, b, 1, 0);
}

BaseSpec BaseSpec::root(std::int64_t b, std::int64_t k, std::int64_t branch) {
  if (b < 2 || k < 1) out_of_range("root base needs b >= 2 and k >= 1");
  if (branch < 0 || branch >= k) out_of_range("root branch must lie in [0, k)");
  return BaseSpec(BaseKind::Root, 0, b, k, branch);
}

BaseSpec BaseSpec::negative_root(std::int64_t b, std::int64_t k, std::int64_t branch) {
  if (b < 2 || k < 1) out_of_range("root base needs b >= 2 and k >= 1");
  if (branch < 0 || branch >= k) out_of_range("root branch must lie in [0, k)");
  return BaseSpec(BaseKind::NegativeRoot, 0, b, k, branch);
}

BaseSpec BaseSpec::pisot_minus(std::int64_t a) {
  if (a < 3) out_of_range("X^2 - aX + 1 base needs a >= 3");
  return BaseSpec(BaseKind::PisotMinus, a, 0, 1, 0);
}

BaseSpec BaseSpec::pisot_plus(std::int64_t a) {
  if (a < 2) out_of_range("X^2 - aX - 1 base needs a >= 2");
  return BaseSpec(BaseKind::PisotPlus, a, 0, 1, 0);
}

BaseSpec BaseSpec::rational_pos(std::int64_t a, std::int64_t b) {
  if (!(a > b && b >= 1)) out_of_range("rational base needs a > b >= 1");
  if (std::gcd(a, b) != 1) throw Error(ErrorKind::NonCoprime, "rational base needs coprime a, b");
  return BaseSpec(BaseKind::RationalPos, a, b, 1, 0);
}

BaseSpec BaseSpec::rational_neg(std::int64_t a, std::int64_t b) {
  if (!(a > b && b >= 1)) out_of_range("rational base needs a > b >= 1");
  if (std::gcd(a, b) != 1) throw Error(ErrorKind::NonCoprime, "rational base needs coprime a, b");
  return BaseSpec(BaseKind::RationalNeg, a, b, 1, 0);
}

BaseSpec BaseSpec::minus_one_plus_i() { return negative_root(4, 4, 1); }
BaseSpec BaseSpec::two_i() { return negative_root(4, 2, 0); }
BaseSpec BaseSpec::i_sqrt2() { return negative_root(2, 2, 0); }

IntPoly BaseSpec::defining_poly() const {
  switch (kind_) {
    case BaseKind::Integer: return {-b_, 1};
    case BaseKind::NegativeInteger: return {b_, 1};
    case BaseKind::Root:
    case BaseKind::NegativeRoot: {
      IntPoly p(static_cast<std::size_t>(k_) + 1, 0);
      p[0] = kind_ == BaseKind::Root ? -b_ : b_;
      p.back() = 1;
      return p;
    }
    case BaseKind::PisotMinus: return {1, -a_, 1};
    case BaseKind::PisotPlus: return {-1, -a_, 1};
    case BaseKind::RationalPos: return {-a_, b_};
    case BaseKind::RationalNeg: return {a_, b_};
  }
  return {};
}

bool BaseSpec::is_real() const {
  switch (kind_) {
    case BaseKind::Root: return branch_ == 0 || 2 * branch_ == k_;
    case BaseKind::NegativeRoot: return 2 * branch_ + 1 == k_;
    default: return true;
  }
}

bool BaseSpec::is_real_greater_than_one() const {
  switch (kind_) {
    case BaseKind::Integer:
    case BaseKind::PisotMinus:
    case BaseKind::PisotPlus:
    case BaseKind::RationalPos: return true;
    case BaseKind::Root: return branch_ == 0;
    default: return false;
  }
}

bool BaseSpec::is_algebraic_integer() const {
  if (kind_ == BaseKind::RationalPos || kind_ == BaseKind::RationalNeg) return b_ == 1;
  return true;
}

std::optional<RealInterval> BaseSpec::real_interval() const {
  if (!is_real()) return std::nullopt;
  switch (kind_) {
    case BaseKind::Integer: return RealInterval{b_, b_};
    case BaseKind::NegativeInteger: return RealInterval{-b_, -b_};
    case BaseKind::RationalPos: {
      mpq_class v(a_, b_);
      v.canonicalize();
      return RealInterval{v, v};
    }
    case BaseKind::RationalNeg: {
      mpq_class v(-a_, b_);
      v.canonicalize();
      return RealInterval{v, v};
    }
    case BaseKind::PisotMinus: return RealInterval{a_ - 1, a_};
    case BaseKind::PisotPlus: return RealInterval{a_, a_ + 1};
    case BaseKind::Root:
    case BaseKind::NegativeRoot: {
      const std::int64_t n = integer_root_floor(b_, k_);
      mpz_class nk;
      mpz_pow_ui(nk.get_mpz_t(), mpz_class(static_cast<long>(n)).get_mpz_t(),
                 static_cast<unsigned long>(k_));
      const bool exact = nk == b_;
      const bool negative = kind_ == BaseKind::NegativeRoot || branch_ != 0;
      mpq_class lo = n;
      mpq_class hi = exact ? n : n + 1;
      if (negative) return RealInterval{-hi, -lo};
      return RealInterval{lo, hi};
    }
  }
  return std::nullopt;
}

namespace {
double root_angle(const BaseSpec& base) {
  const double pi = std::numbers::pi;
  const auto k = static_cast<double>(base.k());
  const auto l = static_cast<double>(base.branch());
  return base.kind() == BaseKind::Root ? 2.0 * pi * l / k : pi * (2.0 * l + 1.0) / k;
}
}  // namespace

double BaseSpec::approx_real() const {
  switch (kind_) {
    case BaseKind::Integer: return double(b_);
    case BaseKind::NegativeInteger: return -double(b_);
    case BaseKind::RationalPos: return double(a_) / double(b_);
    case BaseKind::RationalNeg: return -double(a_) / double(b_);
    case BaseKind::PisotMinus: return (double(a_) + std::sqrt(double(a_ * a_ - 4))) / 2.0;
    case BaseKind::PisotPlus: return (double(a_) + std::sqrt(double(a_ * a_ + 4))) / 2.0;
    case BaseKind::Root:
    case BaseKind::NegativeRoot:
      return std::pow(double(b_), 1.0 / double(k_)) * std::cos(root_angle(*this));
  }
  return 0.0;
}

double BaseSpec::approx_imag() const {
  if (is_real()) return 0.0;
  return std::pow(double(b_), 1.0 / double(k_)) * std::sin(root_angle(*this));
}

std::string BaseSpec::mnemonic() const {
  switch (kind_) {
    case BaseKind::Integer: return std::to_string(b_);
    case BaseKind::NegativeInteger: return "-" + std::to_string(b_);
    case BaseKind::RationalPos: return std::to_string(a_) + "/" + std::to_string(b_);
    case BaseKind::RationalNeg: return "-" + std::to_string(a_) + "/" + std::to_string(b_);
    case BaseKind::PisotMinus: return "pisot-:" + std::to_string(a_);
    case BaseKind::PisotPlus: return "pisot+:" + std::to_string(a_);
    case BaseKind::Root:
    case BaseKind::NegativeRoot: {
      if (*this == minus_one_plus_i()) return "-1+i";
      if (*this == two_i()) return "2i";
      if (*this == i_sqrt2()) return "isqrt2";
      std::string s = "root:" + std::to_string(b_) + "," + std::to_string(k_) + "," +
                      (kind_ == BaseKind::Root ? "+" : "-");
      if (branch_ != 0) s += "," + std::to_string(branch_);
      return s;
    }
  }
  return "?";
}

json to_json(const BaseSpec& base) {
  json params = json::object();
  switch (base.kind()) {
    case BaseKind::Integer:
    case BaseKind::NegativeInteger: params["b"] = base.b(); break;
    case BaseKind::Root:
    case BaseKind::NegativeRoot:
      params["b"] = base.b();
      params["k"] = base.k();
      params["branch"] = base.branch();
      break;
    case BaseKind::PisotMinus:
    case BaseKind::PisotPlus: params["a"] = base.a(); break;
    case BaseKind::RationalPos:
    case BaseKind::RationalNeg:
      params["a"] = base.a();
      params["b"] = base.b();
      break;
  }
  return json{{"kind", std::string(to_string(base.kind()))}, {"params", params}};
}

BaseSpec base_from_json(const json& j) {
  try {
    const auto kind = base_kind_from_string(j.at("kind").get<std::string>());
    const auto& p = j.at("params");
    switch (kind) {
      case BaseKind::Integer: return BaseSpec::integer(p.at("b").get<std::int64_t>());
      case BaseKind::NegativeInteger:
        return BaseSpec::negative_integer(p.at("b").get<std::int64_t>());
      case BaseKind::Root:
      case BaseKind::NegativeRoot: {
        const auto b = p.at("b").get<std::int64_t>();
        const auto k = p.at("k").get<std::int64_t>();
        const auto branch = p.value("branch", std::int64_t{0});
        return kind == BaseKind::Root ? BaseSpec::root(b, k, branch)
                                      : BaseSpec::negative_root(b, k, branch);
      }
      case BaseKind::PisotMinus: return BaseSpec::pisot_minus(p.at("a").get<std::int64_t>());
      case BaseKind::PisotPlus: return BaseSpec::pisot_plus(p.at("a").get<std::int64_t>());
      case BaseKind::RationalPos:
        return BaseSpec::rational_pos(p.at("a").get<std::int64_t>(), p.at("b").get<std::int64_t>());
      case BaseKind::RationalNeg:
        return BaseSpec::rational_neg(p.at("a").get<std::int64_t>(), p.at("b").get<std::int64_t>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("malformed base JSON: ") + e.what());
  }
  throw Error(ErrorKind::Syntax, "malformed base JSON");
}

BaseSpec parse_base(std::string_view text) {
  if (text == "-1+i") return BaseSpec::minus_one_plus_i();
  if (text == "2i") return BaseSpec::two_i();
  if (text == "isqrt2") return BaseSpec::i_sqrt2();
  if (text.starts_with("pisot-:")) return BaseSpec::pisot_minus(parse_int(text.substr(7), "base"));
  if (text.starts_with("pisot+:")) return BaseSpec::pisot_plus(parse_int(text.substr(7), "base"));
  if (text.starts_with("root:")) {
    std::vector<std::string_view> parts;
    auto rest = text.substr(5);
    while (true) {
      const auto comma = rest.find(',');
      parts.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (parts.size() < 3 || parts.size() > 4 || (parts[2] != "+" && parts[2] != "-")) {
      throw Error(ErrorKind::Syntax, "root base syntax is root:b,k,+|-[,branch]");
    }
    const auto b = parse_int(parts[0], "base");
    const auto k = parse_int(parts[1], "base");
    const auto branch = parts.size() == 4 ? parse_int(parts[3], "base") : 0;
    return parts[2] == "+" ? BaseSpec::root(b, k, branch) : BaseSpec::negative_root(b, k, branch);
  }
  const bool negative = text.starts_with("-");
  const auto body = negative ? text.substr(1) : text;
  const auto slash = body.find('/');
  if (slash != std::string_view::npos) {
    const auto a = parse_int(body.substr(0, slash), "base");
    const auto b = parse_int(body.substr(slash + 1), "base");
    return negative ? BaseSpec::rational_neg(a, b) : BaseSpec::rational_pos(a, b);
  }
  const auto b = parse_int(body, "base");
  return negative ? BaseSpec::negative_integer(b) : BaseSpec::integer(b);
}

Alphabet::Alphabet(Digit lo, Digit hi) : lo_(lo), hi_(hi) {
  if (!(lo <= 0 && 0 <= hi)) {
    throw Error(ErrorKind::AlphabetMissingZero,
                "alphabet {" + std::to_string(lo) + ".." + std::to_string(hi) + "} does not contain 0");
  }
  if (hi == lo) throw Error(ErrorKind::ParameterOutOfRange, "alphabet needs at least two digits");
}

std::string Alphabet::to_string() const {
  return std::to_string(lo_) + ".." + std::to_string(hi_);
}

Alphabet Alphabet::parse(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw Error(ErrorKind::Syntax, "alphabet syntax is lo..hi, got '" + std::string(text) + "'");
  }
  const auto lo = parse_int(text.substr(0, dots), "alphabet");
  const auto hi = parse_int(text.substr(dots + 2), "alphabet");
  return Alphabet(static_cast<Digit>(lo), static_cast<Digit>(hi));
}

DigitString DigitString::from_lsd_first(Exponent lsd_exponent, std::vector<Digit> digits) {
  std::reverse(digits.begin(), digits.end());
  return DigitString(lsd_exponent, std::move(digits));
}

Digit DigitString::at(Exponent e) const noexcept {
  if (e < lsd_ || e > msd_exponent()) return 0;
  return digits_[static_cast<std::size_t>(msd_exponent() - e)];
}

bool DigitString::is_zero() const noexcept {
  return std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d == 0; });
}

bool DigitString::all_in(const Alphabet& alphabet) const noexcept {
  return std::all_of(digits_.begin(), digits_.end(),
                     [&](Digit d) { return alphabet.contains(d); });
}

Digit DigitString::min_digit() const noexcept {
  Digit m = 0;
  for (Digit d : digits_) m = std::min(m, d);
  return m;
}

Digit DigitString::max_digit() const noexcept {
  Digit m = 0;
  for (Digit d : digits_) m = std::max(m, d);
  return m;
}

DigitString normalize(const DigitString& ds) {
  const auto& d = ds.digits();
  auto first = std::find_if(d.begin(), d.end(), [](Digit x) { return x != 0; });
  if (first == d.end()) return {};
  auto last = std::find_if(d.rbegin(), d.rend(), [](Digit x) { return x != 0; }).base();
  const auto trailing = static_cast<Exponent>(d.end() - last);
  return DigitString(ds.lsd_exponent() + trailing, std::vector<Digit>(first, last));
}

DigitString parse_digit_string(std::string_view text) {
  std::vector<Digit> digits;
  std::optional<std::size_t> radix_index;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const auto token = text.substr(start, pos - start);
    if (token == ".") {
      if (radix_index) {
        throw Error(ErrorKind::Syntax,
                    "second radix marker at byte " + std::to_string(start));
      }
      radix_index = digits.size();
      continue;
    }
    std::int64_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last ||
        value < std::numeric_limits<Digit>::min() || value > std::numeric_limits<Digit>::max()) {
      throw Error(ErrorKind::Syntax, "invalid digit '" + std::string(token) + "' at byte " +
                                         std::to_string(start));
    }
    digits.push_back(static_cast<Digit>(value));
  }
  if (!radix_index) {
    throw Error(ErrorKind::Syntax, "missing radix marker '.' at byte " + std::to_string(text.size()));
  }
  const auto fractional = static_cast<Exponent>(digits.size() - *radix_index);
  return normalize(DigitString(-fractional, std::move(digits)));
}

std::string format_digit_string(const DigitString& ds) {
  const auto n = normalize(ds);
  if (n.empty()) return ".";
  const Exponent top = std::max<Exponent>(n.msd_exponent(), 0);
  const Exponent bottom = std::min<Exponent>(n.lsd_exponent(), 0);
  std::ostringstream out;
  bool first = true;
  for (Exponent e = top; e >= bottom; --e) {
    if (!first) out << ' ';
    first = false;
    out << n.at(e);
    if (e == 0) out << " .";
  }
  return out.str();
}

json to_json(const DigitString& ds) {
  return json{{"lsd_exponent", ds.lsd_exponent()}, {"digits", ds.digits()}};
}

DigitString digit_string_from_json(const json& j) {
  try {
    return DigitString(j.at("lsd_exponent").get<Exponent>(),
                       j.at("digits").get<std::vector<Digit>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("malformed digit string JSON: ") + e.what());
  }
}

DigitString digitwise_sum(const DigitString& x, const DigitString& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  const Exponent lo = std::min(x.lsd_exponent(), y.lsd_exponent());
  const Exponent hi = std::max(x.msd_exponent(), y.msd_exponent());
  std::vector<Digit> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Exponent e = hi; e >= lo; --e) out.push_back(x.at(e) + y.at(e));
  return DigitString(lo, std::move(out));
}

DigitString negate_digits(const DigitString& ds) {
  std::vector<Digit> out(ds.digits());
  for (auto& d : out) d = -d;
  return DigitString(ds.lsd_exponent(), std::move(out));
}

DigitString offset_digits(const DigitString& ds, Digit h) {
  std::vector<Digit> out(ds.digits());
  for (auto& d : out) d -= h;
  return DigitString(ds.lsd_exponent(), std::move(out));
}

NumerationSystem make_system(const BaseSpec& base, const Alphabet& alphabet) {
  const auto report = minimal_alphabet_report(base);
  return NumerationSystem{base, alphabet, alphabet.size() >= report.minimal_size};
}

}  // namespace carryfree
