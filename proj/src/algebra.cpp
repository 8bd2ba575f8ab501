#include "carryfree/algebra.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <mpfr.h>

namespace carryfree {

LaurentPoly::LaurentPoly(Exponent lsd_exponent, std::vector<mpz_class> coefficients)
    : lsd_(lsd_exponent), coeffs_(std::move(coefficients)) {
  trim();
}

void LaurentPoly::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    lsd_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(),
                           [](const mpz_class& c) { return c != 0; }).base();
  lsd_ += static_cast<Exponent>(coeffs_.end() - last);
  coeffs_.erase(last, coeffs_.end());
  coeffs_.erase(coeffs_.begin(), first);
}

mpz_class LaurentPoly::at(Exponent e) const {
  if (e < lsd_ || e > msd_exponent()) return 0;
  return coeffs_[static_cast<std::size_t>(msd_exponent() - e)];
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (Exponent e = msd_exponent(); e >= lsd_; --e) {
    mpz_class c = at(e);
    if (c == 0) continue;
    if (c < 0) {
      out << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      out << " + ";
    }
    first = false;
    if (c != 1 || e == 0) out << c.get_str();
    if (e != 0) {
      if (c != 1) out << '*';
      out << 'X';
      if (e != 1) out << '^' << e;
    }
  }
  return out.str();
}

LaurentPoly to_poly(const DigitString& ds) {
  std::vector<mpz_class> c;
  c.reserve(ds.size());
  for (Digit d : ds.digits()) c.emplace_back(static_cast<long>(d));
  return LaurentPoly(ds.lsd_exponent(), std::move(c));
}

LaurentPoly from_int_poly(const IntPoly& p) {
  std::vector<mpz_class> c;
  c.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) c.emplace_back(static_cast<long>(*it));
  return LaurentPoly(0, std::move(c));
}

namespace {

template <typename Op>
LaurentPoly combine(const LaurentPoly& p, const LaurentPoly& q, Op op) {
  if (p.is_zero() && q.is_zero()) return {};
  Exponent lo, hi;
  if (p.is_zero()) {
    lo = q.lsd_exponent();
    hi = q.msd_exponent();
  } else if (q.is_zero()) {
    lo = p.lsd_exponent();
    hi = p.msd_exponent();
  } else {
    lo = std::min(p.lsd_exponent(), q.lsd_exponent());
    hi = std::max(p.msd_exponent(), q.msd_exponent());
  }
  std::vector<mpz_class> c;
  c.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Exponent e = hi; e >= lo; --e) c.push_back(op(p.at(e), q.at(e)));
  return LaurentPoly(lo, std::move(c));
}

// Ascending coefficient vector of X^(-lsd) * p.
std::vector<mpz_class> ascending(const LaurentPoly& p) {
  return std::vector<mpz_class>(p.coefficients().rbegin(), p.coefficients().rend());
}

// Exact division from the constant term upward: p = f * q with integer q.
// T is the working integer type; checked() returns nullopt on overflow.
template <typename T, typename Checked>
std::optional<bool> low_end_divides(const std::vector<T>& p, const IntPoly& f, Checked checked) {
  const std::size_t n = p.size() - 1;
  const std::size_t d = f.size() - 1;
  if (n < d) return false;
  const T f0 = T(f[0]);
  std::vector<T> q(n - d + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    T s = p[i];
    const std::size_t k_lo = std::max<std::size_t>(1, i > n - d ? i - (n - d) : 0);
    for (std::size_t k = k_lo; k <= std::min(i, d); ++k) {
      auto next = checked(s, T(f[k]), q[i - k]);
      if (!next) return std::nullopt;
      s = *next;
    }
    if (i <= n - d) {
      if (s % f0 != 0) return false;
      q[i] = s / f0;
    } else if (s != 0) {
      return false;
    }
  }
  return true;
}

std::optional<__int128> checked_sub_mul(__int128 s, __int128 a, __int128 b) {
  __int128 prod;
  if (__builtin_mul_overflow(a, b, &prod)) return std::nullopt;
  __int128 out;
  if (__builtin_sub_overflow(s, prod, &out)) return std::nullopt;
  return out;
}

}  // namespace

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) {
  return combine(p, q, [](const mpz_class& a, const mpz_class& b) { return mpz_class(a + b); });
}

LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& q) {
  return combine(p, q, [](const mpz_class& a, const mpz_class& b) { return mpz_class(a - b); });
}

LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto& a = p.coefficients();
  const auto& b = q.coefficients();
  std::vector<mpz_class> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return LaurentPoly(p.lsd_exponent() + q.lsd_exponent(), std::move(c));
}

LaurentPoly reduce_mod_base(const LaurentPoly& p, const BaseSpec& base) {
  if (p.is_zero()) return {};
  const IntPoly f = base.defining_poly();
  const std::size_t d = f.size() - 1;
  const mpz_class lc = static_cast<long>(f.back());
  std::vector<mpz_class> r = ascending(p);
  while (r.size() > d) {
    const mpz_class top = r.back();
    const std::size_t shift = r.size() - 1 - d;
    for (auto& c : r) c *= lc;
    for (std::size_t k = 0; k <= d; ++k) r[shift + k] -= top * static_cast<long>(f[k]);
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  std::reverse(r.begin(), r.end());
  return LaurentPoly(0, std::move(r));
}

bool is_multiple(const LaurentPoly& p, const IntPoly& f) {
  if (p.is_zero()) return true;
  auto q = ascending(p);
  auto result = low_end_divides<mpz_class>(
      q, f, [](const mpz_class& s, const mpz_class& a, const mpz_class& b) {
        return std::optional<mpz_class>(s - a * b);
      });
  return *result;
}

bool values_equal(const DigitString& x, const DigitString& y, const BaseSpec& base) {
  if (x.empty() && y.empty()) return true;
  Exponent lo, hi;
  if (x.empty()) {
    lo = y.lsd_exponent();
    hi = y.msd_exponent();
  } else if (y.empty()) {
    lo = x.lsd_exponent();
    hi = x.msd_exponent();
  } else {
    lo = std::min(x.lsd_exponent(), y.lsd_exponent());
    hi = std::max(x.msd_exponent(), y.msd_exponent());
  }
  std::vector<__int128> diff;
  diff.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Exponent e = lo; e <= hi; ++e) {
    diff.push_back(static_cast<__int128>(x.at(e)) - y.at(e));
  }
  auto first = std::find_if(diff.begin(), diff.end(), [](__int128 v) { return v != 0; });
  if (first == diff.end()) return true;
  auto last = std::find_if(diff.rbegin(), diff.rend(), [](__int128 v) { return v != 0; }).base();
  std::vector<__int128> p(first, last);
  const IntPoly f = base.defining_poly();
  if (auto fast = low_end_divides<__int128>(p, f, checked_sub_mul)) return *fast;
  std::vector<mpz_class> big;
  big.reserve(p.size());
  for (__int128 v : p) big.emplace_back(static_cast<long>(v));
  std::reverse(big.begin(), big.end());
  return is_multiple(LaurentPoly(0, std::move(big)), f);
}

namespace {

// Closed real interval with MPFR endpoints, rounded outward.
class MpInterval {
 public:
  explicit MpInterval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  MpInterval(const MpInterval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  MpInterval& operator=(const MpInterval& o) {
    if (this != &o) {
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  ~MpInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

  void set_q(const mpq_class& a, const mpq_class& b) {
    mpfr_set_q(lo_, a.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, b.get_mpq_t(), MPFR_RNDU);
  }
  void set_si(long v) {
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
  }
  void widen(mpfr_srcptr eps) {
    mpfr_sub(lo_, lo_, eps, MPFR_RNDD);
    mpfr_add(hi_, hi_, eps, MPFR_RNDU);
  }

  friend MpInterval operator+(const MpInterval& a, const MpInterval& b) {
    MpInterval r(a.prec());
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend MpInterval operator-(const MpInterval& a, const MpInterval& b) {
    MpInterval r(a.prec());
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  MpInterval operator-() const {
    MpInterval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
  }
  friend MpInterval operator*(const MpInterval& a, const MpInterval& b) {
    return corners(a, b, mpfr_mul);
  }
  // Divisor must not contain zero.
  friend MpInterval operator/(const MpInterval& a, const MpInterval& b) {
    return corners(a, b, mpfr_div);
  }

 private:
  template <typename Fn>
  static MpInterval corners(const MpInterval& a, const MpInterval& b, Fn fn) {
    MpInterval r(a.prec());
    mpfr_t t;
    mpfr_init2(t, a.prec());
    bool first = true;
    for (mpfr_srcptr x : {a.lo_, a.hi_}) {
      for (mpfr_srcptr y : {b.lo_, b.hi_}) {
        fn(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        fn(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return r;
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

struct MpComplex {
  MpInterval re;
  MpInterval im;
};

MpComplex operator*(const MpComplex& a, const MpComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

mpq_class eval_int_poly(const IntPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + static_cast<long>(*it);
  return acc;
}

// Enclosure of beta and of 1/beta.
std::pair<MpComplex, MpComplex> base_enclosure(const BaseSpec& base, mpfr_prec_t prec) {
  MpComplex beta{MpInterval(prec), MpInterval(prec)};
  MpComplex inv{MpInterval(prec), MpInterval(prec)};
  if (auto iv = base.real_interval()) {
    mpq_class lo = iv->lo, hi = iv->hi;
    if (lo != hi) {
      const IntPoly f = base.defining_poly();
      const int sign_lo = sgn(eval_int_poly(f, lo));
      mpq_class eps(1);
      eps /= mpz_class(1) << static_cast<mp_bitcnt_t>(prec + 4);
      while (hi - lo > eps) {
        mpq_class mid = (lo + hi) / 2;
        const int s = sgn(eval_int_poly(f, mid));
        if (s == 0) {
          lo = hi = mid;
          break;
        }
        (s == sign_lo ? lo : hi) = mid;
      }
    }
    beta.re.set_q(lo, hi);
    MpInterval one(prec);
    one.set_si(1);
    inv.re = one / beta.re;
    return {beta, inv};
  }
  // Complex root of X^k = +-b on the chosen branch.
  const auto k = static_cast<unsigned long>(base.k());
  MpInterval rho(prec);
  mpfr_set_si(rho.lo(), base.b(), MPFR_RNDD);
  mpfr_set_si(rho.hi(), base.b(), MPFR_RNDU);
  mpfr_rootn_ui(rho.lo(), rho.lo(), k, MPFR_RNDD);
  mpfr_rootn_ui(rho.hi(), rho.hi(), k, MPFR_RNDU);

  mpfr_t theta, eps;
  mpfr_inits2(prec, theta, eps, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(theta, MPFR_RNDN);
  const long num = base.kind() == BaseKind::Root ? 2 * base.branch() : 2 * base.branch() + 1;
  mpfr_mul_si(theta, theta, num, MPFR_RNDN);
  mpfr_div_si(theta, theta, base.k(), MPFR_RNDN);
  // theta carries at most a few ulps of error; cos and sin are 1-Lipschitz.
  mpfr_set_ui_2exp(eps, 1, -static_cast<mpfr_exp_t>(prec) + 4, MPFR_RNDU);
  MpInterval c(prec), s(prec);
  mpfr_cos(c.lo(), theta, MPFR_RNDN);
  mpfr_set(c.hi(), c.lo(), MPFR_RNDN);
  mpfr_sin(s.lo(), theta, MPFR_RNDN);
  mpfr_set(s.hi(), s.lo(), MPFR_RNDN);
  c.widen(eps);
  s.widen(eps);
  mpfr_clears(theta, eps, static_cast<mpfr_ptr>(nullptr));

  beta.re = rho * c;
  beta.im = rho * s;
  // 1/beta = conj(beta) / |beta|^2 with |beta|^2 = rho^2.
  const MpInterval rho2 = rho * rho;
  inv.re = beta.re / rho2;
  inv.im = -(beta.im / rho2);
  return {beta, inv};
}

Interval to_double(const MpInterval& v) {
  return {mpfr_get_d(v.lo(), MPFR_RNDD), mpfr_get_d(v.hi(), MPFR_RNDU)};
}

}  // namespace

ComplexInterval eval_approx(const DigitString& ds, const BaseSpec& base, unsigned precision_bits) {
  const auto prec = static_cast<mpfr_prec_t>(std::max(precision_bits, 16u));
  if (ds.is_zero()) return {};
  auto [beta, inv] = base_enclosure(base, prec);
  MpComplex acc{MpInterval(prec), MpInterval(prec)};
  for (Digit d : ds.digits()) {
    acc = acc * beta;
    MpInterval digit(prec);
    digit.set_si(d);
    acc.re = acc.re + digit;
  }
  const Exponent lsd = ds.lsd_exponent();
  const MpComplex& step = lsd >= 0 ? beta : inv;
  for (Exponent i = 0; i < (lsd >= 0 ? lsd : -lsd); ++i) acc = acc * step;
  return {to_double(acc.re), to_double(acc.im)};
}

}  // namespace carryfree
