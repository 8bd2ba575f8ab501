#pragma once

// Finite representations of rationals and integers: greedy (Renyi), T_m,
// Akiyama-Scheicher and the modified Euclidean algorithm.

#include <cstddef>
#include <vector>

#include "carryfree/core.hpp"

namespace carryfree {

struct Expansion {
  DigitString digits;
  /// True when the remainder reached zero, so digits represent x exactly.
  bool exact = true;
  /// Final remainder y, as coefficients of 1, beta, beta^2, ... The input
  /// equals value(digits) + y * beta^lsd, where lsd is the exponent just
  /// below the last emitted digit position.
  std::vector<mpq_class> remainder;
  /// Exponent of the remainder term.
  Exponent remainder_exponent = 0;
};

/// Digit set {0, ..., ceil(beta)-1}.
Alphabet canonical_alphabet(const BaseSpec& base);
/// Digit set {m, ..., m+ceil(beta)-1}; may be all-negative, so returned
/// as a pair rather than an Alphabet.
std::pair<Digit, Digit> tm_digit_range(const BaseSpec& base, Digit m);
/// Z intersected with (-(beta+1)/2, (beta+1)/2).
Alphabet akiyama_scheicher_alphabet(const BaseSpec& base);

Expansion greedy_expansion(const mpq_class& x, const BaseSpec& base, std::size_t max_digits);

/// T_m expansion. Accepts m <= 0 and any x with x / beta^k in the window
/// J_m = [m/(beta-1), m/(beta-1)+1) for some k >= 0.
Expansion tm_expansion(const mpq_class& x, Digit m, const BaseSpec& base,
                       std::size_t max_digits);

Expansion akiyama_scheicher_expansion(const mpq_class& x, const BaseSpec& base,
                                      std::size_t max_digits);

/// Exact check of x = value(digits) + remainder * beta^remainder_exponent
/// in Z[beta], for root bases modulo the minimal form.
bool expansion_identity_holds(const Expansion& e, const mpq_class& x, const BaseSpec& base);

/// Expansion of an integer for integer and rational bases of both signs.
DigitString euclid_expansion(const mpz_class& n, const BaseSpec& base);

}  // namespace carryfree
