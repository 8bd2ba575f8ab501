#pragma once

// Numeration systems, alphabets and finite digit strings.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

namespace carryfree {

using Digit = std::int32_t;
using Exponent = std::int64_t;
using json = nlohmann::json;

enum class ErrorKind {
  AlphabetMissingZero,
  ParameterOutOfRange,
  NonCoprime,
  Syntax,
  UnsupportedBase,
  PrecisionExhausted,
  OutOfWindow,
  NegativeInput,
  ValuePatternNotMultiple,
  OutputEscapesAlphabet,
  DigitOutOfAlphabet,
  AlphabetMismatch,
  LetterNotFixed,
  ShiftNotLicensed,
  AlphabetUnsupported,
  AlphabetTooSmall,
  AlphabetLacksNegatives,
  DigitOutOfRange,
  NotApplicable,
  BudgetExceeded,
  InvalidRule,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Integer polynomial, coefficients in ascending degree order.
using IntPoly = std::vector<std::int64_t>;

enum class BaseKind {
  Integer,
  NegativeInteger,
  Root,
  NegativeRoot,
  PisotMinus,
  PisotPlus,
  RationalPos,
  RationalNeg,
};

std::string_view to_string(BaseKind kind);
BaseKind base_kind_from_string(std::string_view name);

/// Rational isolating interval [lo, hi] for a real base; lo == hi when the
/// base itself is rational.
struct RealInterval {
  mpq_class lo;
  mpq_class hi;
};

/// A base described by an exact integer relation.
///
/// Parameters per kind:
///   Integer / NegativeInteger   b >= 2           X - b,  X + b
///   Root / NegativeRoot         b >= 2, k >= 1   X^k - b, X^k + b
///   PisotMinus                  a >= 3           X^2 - aX + 1
///   PisotPlus                   a >= 2           X^2 - aX - 1
///   RationalPos / RationalNeg   a > b >= 1       bX - a,  bX + a
///
/// Roots carry a branch index selecting which complex root is meant:
/// the root is |b|^(1/k) * exp(i*theta) with theta = 2*pi*branch/k for
/// Root and theta = pi*(2*branch+1)/k for NegativeRoot. Branch 0 of a
/// positive root is the real positive root.
class BaseSpec {
 public:
  static BaseSpec integer(std::int64_t b);
  static BaseSpec negative_integer(std::int64_t b);
  static BaseSpec root(std::int64_t b, std::int64_t k, std::int64_t branch = 0);
  static BaseSpec negative_root(std::int64_t b, std::int64_t k, std::int64_t branch = 0);
  static BaseSpec pisot_minus(std::int64_t a);
  static BaseSpec pisot_plus(std::int64_t a);
  static BaseSpec rational_pos(std::int64_t a, std::int64_t b);
  static BaseSpec rational_neg(std::int64_t a, std::int64_t b);

  // The three complex bases worked out explicitly.
  static BaseSpec minus_one_plus_i();  // (-1+i)^4 = -4
  static BaseSpec two_i();             // (2i)^2 = -4
  static BaseSpec i_sqrt2();           // (i*sqrt2)^2 = -2

  BaseKind kind() const noexcept { return kind_; }
  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t k() const noexcept { return k_; }
  std::int64_t branch() const noexcept { return branch_; }

  /// Defining relation, generated from kind and parameters.
  IntPoly defining_poly() const;

  /// True when the base is a real number (possibly negative).
  bool is_real() const;
  /// True when the base is a real number greater than one.
  bool is_real_greater_than_one() const;
  /// True for kinds whose base is an algebraic integer.
  bool is_algebraic_integer() const;

  std::optional<RealInterval> real_interval() const;

  /// Approximate value, for diagnostics and root-branch selection only.
  double approx_real() const;
  double approx_imag() const;

  /// Short name, e.g. "-2", "3/2", "root:4,4,-", "pisot-:3", "-1+i".
  std::string mnemonic() const;

  friend bool operator==(const BaseSpec&, const BaseSpec&) = default;

 private:
  BaseSpec(BaseKind kind, std::int64_t a, std::int64_t b, std::int64_t k,
           std::int64_t branch);

  BaseKind kind_;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t k_ = 1;
  std::int64_t branch_ = 0;
};

json to_json(const BaseSpec& base);
BaseSpec base_from_json(const json& j);

/// Parse a base mnemonic: "-2", "10", "3/2", "-3/2", "root:b,k,+",
/// "root:b,k,-" (optionally ",branch"), "pisot-:a", "pisot+:a", "-1+i",
/// "2i", "isqrt2".
BaseSpec parse_base(std::string_view text);

/// Contiguous digit set {lo, ..., hi} with lo <= 0 <= hi.
class Alphabet {
 public:
  Alphabet(Digit lo, Digit hi);

  Digit lo() const noexcept { return lo_; }
  Digit hi() const noexcept { return hi_; }
  std::int64_t size() const noexcept { return std::int64_t{hi_} - lo_ + 1; }
  bool contains(Digit d) const noexcept { return lo_ <= d && d <= hi_; }
  bool contains(const Alphabet& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  Alphabet negated() const { return Alphabet(-hi_, -lo_); }
  Alphabet shifted(Digit h) const { return Alphabet(lo_ - h, hi_ - h); }

  /// Digitwise sum set A + B.
  Alphabet operator+(const Alphabet& other) const {
    return Alphabet(lo_ + other.lo_, hi_ + other.hi_);
  }

  std::string to_string() const;  // "lo..hi"
  static Alphabet parse(std::string_view text);

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Digit lo_;
  Digit hi_;
};

/// Finite-support digit sequence. Digits are stored most significant
/// first; the last stored digit has exponent lsd_exponent.
class DigitString {
 public:
  DigitString() = default;
  DigitString(Exponent lsd_exponent, std::vector<Digit> digits)
      : lsd_(lsd_exponent), digits_(std::move(digits)) {}

  /// Build from digits given least significant first.
  static DigitString from_lsd_first(Exponent lsd_exponent, std::vector<Digit> digits);

  Exponent lsd_exponent() const noexcept { return lsd_; }
  /// Exponent of the first stored digit; lsd_exponent - 1 when empty.
  Exponent msd_exponent() const noexcept {
    return lsd_ + static_cast<Exponent>(digits_.size()) - 1;
  }
  const std::vector<Digit>& digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }

  /// Digit at an exponent, zero outside the stored range.
  Digit at(Exponent e) const noexcept;

  bool is_zero() const noexcept;
  bool all_in(const Alphabet& alphabet) const noexcept;
  Digit min_digit() const noexcept;
  Digit max_digit() const noexcept;

  /// Multiply the represented value by base^shift.
  DigitString shifted(Exponent shift) const { return DigitString(lsd_ + shift, digits_); }

  friend bool operator==(const DigitString&, const DigitString&) = default;

 private:
  Exponent lsd_ = 0;
  std::vector<Digit> digits_;
};

/// Trim leading and trailing zeros; the zero value becomes the empty
/// string with lsd_exponent 0.
DigitString normalize(const DigitString& ds);

DigitString parse_digit_string(std::string_view text);
std::string format_digit_string(const DigitString& ds);

json to_json(const DigitString& ds);
DigitString digit_string_from_json(const json& j);

/// Per-exponent integer sums.
DigitString digitwise_sum(const DigitString& x, const DigitString& y);
DigitString negate_digits(const DigitString& ds);
/// Subtract h from every stored digit (no normalization).
DigitString offset_digits(const DigitString& ds, Digit h);

struct NumerationSystem {
  BaseSpec base;
  Alphabet alphabet;
  /// Whether the alphabet size reaches the base's minimal size; informational.
  bool meets_lower_bound = true;
};

NumerationSystem make_system(const BaseSpec& base, const Alphabet& alphabet);

}  // namespace carryfree
