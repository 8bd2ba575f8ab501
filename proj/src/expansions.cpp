#include "carryfree/expansions.hpp"

#include <algorithm>

#include "carryfree/algebra.hpp"
#include "carryfree/bounds.hpp"

namespace carryfree {

namespace {

using Elem = std::vector<mpq_class>;

constexpr int kMaxRefinements = 4096;

// Q(beta) for a real beta > 1 given by an irreducible polynomial and a
// rational isolating interval. Elements are coefficient vectors in the
// power basis 1, beta, ..., beta^(d-1).
class RealField {
 public:
  explicit RealField(const BaseSpec& base) {
    if (!base.is_real_greater_than_one()) {
      throw Error(ErrorKind::UnsupportedBase,
                  "expansions need a real base greater than one, got " + base.mnemonic());
    }
    BaseSpec effective = base;
    if (base.kind() == BaseKind::Root) {
      const auto form = minimal_form(base.b(), base.k());
      effective = form.k == 1 ? BaseSpec::integer(form.c) : BaseSpec::root(form.c, form.k);
    }
    const IntPoly f = effective.defining_poly();
    f_ = f;
    const mpq_class lc = static_cast<long>(f.back());
    for (auto c : f) monic_.push_back(mpq_class(static_cast<long>(c)) / lc);
    const auto iv = *effective.real_interval();
    lo_ = iv.lo;
    hi_ = iv.hi;
    if (lo_ != hi_) sign_lo_ = sgn(eval_f(lo_));
  }

  std::size_t degree() const { return monic_.size() - 1; }

  Elem from(const mpq_class& q) const {
    Elem e(degree());
    e[0] = q;
    return e;
  }

  static bool is_zero(const Elem& e) {
    return std::all_of(e.begin(), e.end(), [](const mpq_class& c) { return c == 0; });
  }

  Elem mul_beta(const Elem& e) const {
    const std::size_t d = degree();
    Elem out(d);
    for (std::size_t i = 0; i + 1 < d; ++i) out[i + 1] = e[i];
    const mpq_class top = e[d - 1];
    for (std::size_t i = 0; i < d; ++i) out[i] -= top * monic_[i];
    return out;
  }

  Elem div_beta(const Elem& e) const {
    const std::size_t d = degree();
    // 1/beta = -(monic_1 + monic_2 beta + ... + beta^(d-1)) / monic_0
    Elem out(d);
    for (std::size_t i = 1; i < d; ++i) out[i - 1] = e[i];
    const mpq_class c = e[0] / monic_[0];
    for (std::size_t i = 1; i <= d; ++i) out[i - 1] -= c * monic_[i];
    return out;
  }

  static Elem add(Elem a, const Elem& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }

  static Elem sub(Elem a, const Elem& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }

  static Elem add_q(Elem a, const mpq_class& q) {
    a[0] += q;
    return a;
  }

  static Elem scale(Elem a, const mpq_class& q) {
    for (auto& c : a) c *= q;
    return a;
  }

  Elem beta() const {
    if (degree() == 1) return from(-monic_[0]);
    Elem e(degree());
    e[1] = 1;
    return e;
  }

  int sign(const Elem& e) {
    if (is_zero(e)) return 0;
    for (int iter = 0; iter <= kMaxRefinements; ++iter) {
      auto [lo, hi] = enclose(e);
      if (lo > 0) return 1;
      if (hi < 0) return -1;
      refine();
    }
    throw Error(ErrorKind::PrecisionExhausted, "could not decide the sign of a field element");
  }

  /// floor(n / d) for d > 0.
  mpz_class floor_div(const Elem& n, const Elem& d) {
    const mpq_class mid = (lo_ + hi_) / 2;
    const mpq_class dv = eval(d, mid);
    mpz_class q = 0;
    if (dv != 0) {
      const mpq_class approx = eval(n, mid) / dv;
      mpz_fdiv_q(q.get_mpz_t(), approx.get_num_mpz_t(), approx.get_den_mpz_t());
    }
    auto rest = [&](const mpz_class& k) { return sub(n, scale(d, mpq_class(k))); };
    while (sign(rest(q)) < 0) --q;
    while (sign(rest(q + 1)) >= 0) ++q;
    return q;
  }

 private:
  mpq_class eval_f(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = f_.rbegin(); it != f_.rend(); ++it) acc = acc * x + static_cast<long>(*it);
    return acc;
  }

  static mpq_class eval(const Elem& e, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = e.rbegin(); it != e.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Enclosure of e(beta) for beta in [lo_, hi_], lo_ > 0.
  std::pair<mpq_class, mpq_class> enclose(const Elem& e) const {
    mpq_class lo = 0, hi = 0, plo = 1, phi = 1;
    for (const auto& c : e) {
      if (c >= 0) {
        lo += c * plo;
        hi += c * phi;
      } else {
        lo += c * phi;
        hi += c * plo;
      }
      plo *= lo_;
      phi *= hi_;
    }
    return {lo, hi};
  }

  void refine() {
    if (lo_ == hi_) return;
    const mpq_class mid = (lo_ + hi_) / 2;
    const int s = sgn(eval_f(mid));
    if (s == 0) {
      lo_ = hi_ = mid;
    } else if (s == sign_lo_) {
      lo_ = mid;
    } else {
      hi_ = mid;
    }
  }

  IntPoly f_;
  std::vector<mpq_class> monic_;
  mpq_class lo_;
  mpq_class hi_;
  int sign_lo_ = 0;
};

Digit to_digit(const mpz_class& z) {
  if (!z.fits_sint_p()) throw Error(ErrorKind::DigitOutOfRange, "digit does not fit");
  return static_cast<Digit>(z.get_si());
}

// Shared driver: y0 = x / beta^k already in the window; emits digits at
// exponents k-1, k-2, ... using digit_of(beta*y).
template <typename DigitFn>
Expansion run_transformation(RealField& field, Elem y, Exponent k, std::size_t max_digits,
                             DigitFn digit_of) {
  std::vector<Digit> digits;
  while (digits.size() < max_digits && !RealField::is_zero(y)) {
    const Elem by = field.mul_beta(y);
    const mpz_class d = digit_of(by);
    digits.push_back(to_digit(d));
    y = RealField::add_q(by, mpq_class(-d));
  }
  Expansion out;
  const Exponent lsd = k - static_cast<Exponent>(digits.size());
  out.exact = RealField::is_zero(y);
  out.digits = normalize(DigitString(lsd, std::move(digits)));
  out.remainder = std::move(y);
  out.remainder_exponent = lsd;
  return out;
}

}  // namespace

Alphabet canonical_alphabet(const BaseSpec& base) {
  return Alphabet(0, static_cast<Digit>(lower_bound_ceil(base) - 1));
}

std::pair<Digit, Digit> tm_digit_range(const BaseSpec& base, Digit m) {
  return {m, static_cast<Digit>(m + lower_bound_ceil(base) - 1)};
}

Alphabet akiyama_scheicher_alphabet(const BaseSpec& base) {
  RealField field(base);
  // largest n with n < (beta+1)/2, i.e. 2n - 1 < beta
  Digit n = 0;
  while (field.sign(RealField::add_q(field.beta(), mpq_class(-(2 * (n + 1) - 1)))) > 0) ++n;
  return Alphabet(-n, n);
}

Expansion greedy_expansion(const mpq_class& x, const BaseSpec& base, std::size_t max_digits) {
  RealField field(base);
  if (x < 0) {
    throw Error(ErrorKind::NegativeInput, "greedy expansion needs x >= 0");
  }
  Elem y = field.from(x);
  Exponent k = 0;
  while (field.sign(RealField::add_q(y, -1)) >= 0) {
    y = field.div_beta(y);
    ++k;
  }
  const Elem one = field.from(1);
  return run_transformation(field, std::move(y), k, max_digits,
                            [&](const Elem& by) { return field.floor_div(by, one); });
}

Expansion tm_expansion(const mpq_class& x, Digit m, const BaseSpec& base, std::size_t max_digits) {
  RealField field(base);
  if (m > 0) {
    throw Error(ErrorKind::ParameterOutOfRange, "T_m expansion needs m <= 0");
  }
  const Elem beta_minus_one = RealField::add_q(field.beta(), -1);
  const mpq_class mq = m;
  // y in J_m  <=>  m <= (beta-1) y < m + beta - 1
  auto scaled = [&](const Elem& y) {
    Elem w = y;
    return RealField::sub(field.mul_beta(w), w);
  };
  auto left_of_window = [&](const Elem& y) {
    return field.sign(RealField::add_q(scaled(y), -mq)) < 0;
  };
  auto right_of_window = [&](const Elem& y) {
    return field.sign(RealField::sub(RealField::add_q(scaled(y), -mq), beta_minus_one)) >= 0;
  };
  const bool zero_in_window = field.sign(RealField::add_q(beta_minus_one, mq)) > 0;

  Elem y = field.from(x);
  Exponent k = 0;
  while (true) {
    if (left_of_window(y)) {
      if (m == 0) {
        throw Error(ErrorKind::OutOfWindow, "no scaling x / beta^k lies in the T_0 window for x < 0");
      }
      y = field.div_beta(y);
      ++k;
      continue;
    }
    if (right_of_window(y)) {
      if (!zero_in_window) {
        throw Error(ErrorKind::OutOfWindow,
                    "no scaling x / beta^k lies in the T_m window for m = " + std::to_string(m));
      }
      y = field.div_beta(y);
      ++k;
      continue;
    }
    break;
  }
  // D_m(y) = floor(beta y - m/(beta-1)) = floor(((beta-1) beta y - m) / (beta-1))
  return run_transformation(field, std::move(y), k, max_digits, [&](const Elem& by) {
    return field.floor_div(RealField::add_q(scaled(by), -mq), beta_minus_one);
  });
}

Expansion akiyama_scheicher_expansion(const mpq_class& x, const BaseSpec& base,
                                      std::size_t max_digits) {
  RealField field(base);
  const mpq_class half(1, 2);
  Elem y = field.from(x);
  Exponent k = 0;
  while (field.sign(RealField::add_q(y, half)) < 0 || field.sign(RealField::add_q(y, -half)) >= 0) {
    y = field.div_beta(y);
    ++k;
  }
  const Elem one = field.from(1);
  return run_transformation(field, std::move(y), k, max_digits, [&](const Elem& by) {
    return field.floor_div(RealField::add_q(by, half), one);
  });
}

DigitString euclid_expansion(const mpz_class& n, const BaseSpec& base) {
  mpz_class a, b;
  bool negative = false;
  switch (base.kind()) {
    case BaseKind::Integer: a = static_cast<long>(base.b()); b = 1; break;
    case BaseKind::NegativeInteger: a = static_cast<long>(base.b()); b = 1; negative = true; break;
    case BaseKind::RationalPos: a = static_cast<long>(base.a()); b = static_cast<long>(base.b()); break;
    case BaseKind::RationalNeg:
      a = static_cast<long>(base.a());
      b = static_cast<long>(base.b());
      negative = true;
      break;
    default:
      throw Error(ErrorKind::UnsupportedBase,
                  "Euclid expansion needs an integer or rational base, got " + base.mnemonic());
  }
  if (!negative && n < 0) {
    throw Error(ErrorKind::NegativeInput, "Euclid expansion of a negative integer in a positive base");
  }
  std::vector<Digit> lsd_first;
  mpz_class cur = n;
  while (cur != 0) {
    mpz_class d;
    mpz_fdiv_r(d.get_mpz_t(), cur.get_mpz_t(), a.get_mpz_t());
    lsd_first.push_back(static_cast<Digit>(d.get_si()));
    mpz_class next = b * (cur - d) / a;
    cur = negative ? mpz_class(-next) : next;
  }
  return DigitString::from_lsd_first(0, std::move(lsd_first));
}

bool expansion_identity_holds(const Expansion& e, const mpq_class& x, const BaseSpec& base) {
  BaseSpec effective = base;
  if (base.kind() == BaseKind::Root) {
    const auto form = minimal_form(base.b(), base.k());
    effective = form.k == 1 ? BaseSpec::integer(form.c) : BaseSpec::root(form.c, form.k);
  }
  mpz_class l = x.get_den();
  for (const auto& c : e.remainder) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  const LaurentPoly scale(0, {l});
  const mpq_class lx = x * l;
  std::vector<mpz_class> rem;
  for (auto it = e.remainder.rbegin(); it != e.remainder.rend(); ++it) {
    const mpq_class c = *it * l;
    rem.push_back(c.get_num());
  }
  LaurentPoly diff = sub(LaurentPoly(0, {lx.get_num()}), mul(scale, to_poly(e.digits)));
  diff = sub(diff, LaurentPoly(e.remainder_exponent, std::move(rem)));
  return reduce_mod_base(diff, effective).is_zero();
}

}  // namespace carryfree
