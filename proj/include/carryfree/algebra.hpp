#pragma once

// Exact arithmetic in Z[beta]: Laurent polynomials with integer
// coefficients, reduction by the defining relation, value equality.

#include <string>
#include <vector>

#include "carryfree/core.hpp"

namespace carryfree {

/// Integer Laurent polynomial. Coefficients are stored most significant
/// first; the last one belongs to X^lsd_exponent.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Exponent lsd_exponent, std::vector<mpz_class> coefficients);

  Exponent lsd_exponent() const noexcept { return lsd_; }
  Exponent msd_exponent() const noexcept {
    return lsd_ + static_cast<Exponent>(coeffs_.size()) - 1;
  }
  const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of X^e, zero outside the stored range.
  mpz_class at(Exponent e) const;

  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  void trim();

  Exponent lsd_ = 0;
  std::vector<mpz_class> coeffs_;
};

LaurentPoly to_poly(const DigitString& ds);
LaurentPoly from_int_poly(const IntPoly& p);
LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);

/// Fraction-free pseudo-remainder of X^s * p by the defining polynomial,
/// where s clears negative exponents. Zero iff the shifted polynomial is
/// a multiple of the defining polynomial over Q.
LaurentPoly reduce_mod_base(const LaurentPoly& p, const BaseSpec& base);

/// True iff X^s * p is a multiple of f in Z[X] (f primitive).
bool is_multiple(const LaurentPoly& p, const IntPoly& f);

/// Equality of represented values, decided by divisibility of the
/// difference polynomial by the defining polynomial.
bool values_equal(const DigitString& x, const DigitString& y, const BaseSpec& base);

/// Closed interval with double endpoints.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
  bool overlaps(const Interval& o) const noexcept { return lo <= o.hi && o.lo <= hi; }
};

/// Certified rectangular enclosure of a complex number.
struct ComplexInterval {
  Interval re;
  Interval im;
  bool overlaps(const ComplexInterval& o) const noexcept {
    return re.overlaps(o.re) && im.overlaps(o.im);
  }
};

/// Enclosure of the value of ds, computed with MPFR interval arithmetic at
/// the given working precision and rounded outward to doubles.
ComplexInterval eval_approx(const DigitString& ds, const BaseSpec& base,
                            unsigned precision_bits = 128);

}  // namespace carryfree
