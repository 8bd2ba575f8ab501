#pragma once

// Exact value of a digit string as coordinates in Q[X]/(f), computed by
// Horner's rule with the companion relation. Independent of the library's
// divisibility test.

#include <gmpxx.h>

#include <vector>

#include "carryfree/core.hpp"

namespace testing_support {

using carryfree::BaseSpec;
using carryfree::DigitString;
using Coords = std::vector<mpq_class>;

inline Coords times_beta(const Coords& v, const carryfree::IntPoly& f) {
  const std::size_t d = f.size() - 1;
  Coords out(d, 0);
  for (std::size_t i = 0; i + 1 < d; ++i) out[i + 1] = v[i];
  const mpq_class top = v[d - 1];
  if (top != 0) {
    for (std::size_t i = 0; i < d; ++i) out[i] -= top * mpq_class(f[i]) / mpq_class(f[d]);
  }
  return out;
}

inline Coords over_beta(const Coords& v, const carryfree::IntPoly& f) {
  const std::size_t d = f.size() - 1;
  Coords out(d, 0);
  const mpq_class c0 = v[0];
  for (std::size_t i = 1; i < d; ++i) out[i - 1] = v[i];
  // 1/beta = -(f1 + f2 beta + ... + fd beta^(d-1)) / f0
  if (c0 != 0) {
    for (std::size_t i = 0; i < d; ++i) out[i] -= c0 * mpq_class(f[i + 1]) / mpq_class(f[0]);
  }
  return out;
}

inline Coords field_value(const DigitString& ds, const BaseSpec& base) {
  const carryfree::IntPoly f = base.defining_poly();
  const std::size_t d = f.size() - 1;
  Coords v(d, 0);
  for (carryfree::Digit digit : ds.digits()) {
    v = times_beta(v, f);
    v[0] += digit;
  }
  for (carryfree::Exponent e = ds.lsd_exponent(); e < 0; ++e) v = over_beta(v, f);
  for (carryfree::Exponent e = 0; e < ds.lsd_exponent(); ++e) v = times_beta(v, f);
  return v;
}

inline bool same_value(const DigitString& x, const DigitString& y, const BaseSpec& base) {
  return field_value(x, base) == field_value(y, base);
}

inline Coords integer_value(long n, const BaseSpec& base) {
  Coords v(base.defining_poly().size() - 1, 0);
  v[0] = n;
  return v;
}

}  // namespace testing_support
