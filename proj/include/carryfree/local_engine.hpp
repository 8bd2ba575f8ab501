#pragma once

// (t,r)-local digit set conversions: representation, parallel
// application, composition, alphabet shift and negation.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carryfree/algebra.hpp"
#include "carryfree/core.hpp"

namespace carryfree {

/// Windows are passed most significant digit first: for a (t,r)-local
/// map evaluated at position j, w[0] = u_{j+t} and w[t+r] = u_{j-r}.
using WindowMap = std::function<Digit(const Digit* window)>;

/// Longest window any rule may have.
inline constexpr int kMaxWindow = 256;
/// Rules whose input alphabet size to the power p stays at or below this
/// are materialized as lookup tables.
inline constexpr std::uint64_t kTableLimit = 100'000;

/// Read access to a selector window by offset: z(o) = z_{j+o}.
struct WindowView {
  const Digit* w;
  int t;
  Digit operator()(int offset) const { return w[t - offset]; }
};

/// z_j <- z_j + gamma * q_{j-delta}
struct Placement {
  int delta;
  std::int64_t gamma;
};

/// Carry selector plus placement pattern, the shape shared by every
/// algorithm in the catalog.
struct CarryRule {
  std::string name;
  /// Selector sub-window: the selector at j reads z_{j+t_q} ... z_{j-r_q}.
  int t_q = 0;
  int r_q = 0;
  /// Returns the carry q_j in {-1, 0, 1}.
  std::function<int(WindowView)> selector;
  std::vector<Placement> placements;

  /// Derived anticipation and memory of the conversion.
  std::pair<int, int> window() const;
  /// Sum of gamma * X^delta: the value change caused by a unit carry.
  LaurentPoly pattern_poly() const;
};

/// Affine view of a carry rule: the carries of a derived rule at x are
/// sign * q(sign * x + offset), and its output is
/// sign * Phi(sign * x + offset) - sign * offset.
struct CarrySource {
  std::shared_ptr<const CarryRule> rule;
  int sign = 1;
  Digit offset = 0;
};

class LocalRule {
 public:
  LocalRule(std::string name, Alphabet input, Alphabet output, int t, int r, WindowMap phi,
            json description = json::object());

  static LocalRule from_table(std::string name, Alphabet input, Alphabet output, int t, int r,
                              std::vector<Digit> table, json description = json::object());

  const std::string& name() const noexcept { return name_; }
  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& output_alphabet() const noexcept { return output_; }
  int anticipation() const noexcept { return t_; }
  int memory() const noexcept { return r_; }
  std::pair<int, int> window() const noexcept { return {t_, r_}; }
  int window_size() const noexcept { return t_ + r_ + 1; }

  bool has_table() const noexcept { return !table_.empty(); }
  const std::vector<Digit>& table() const noexcept { return table_; }
  std::size_t table_index(const Digit* window) const;

  Digit eval(const Digit* window) const {
    return has_table() ? table_[table_index(window)] : phi_(window);
  }
  /// Value on the constant window h^p.
  Digit eval_constant(Digit h) const;

  const json& description() const noexcept { return description_; }
  const std::optional<CarrySource>& carry_source() const noexcept { return carry_; }

  LocalRule with_carry_source(CarrySource source) const;
  LocalRule renamed(std::string name) const;
  LocalRule with_description(json description) const;

 private:
  void materialize();

  std::string name_;
  Alphabet input_;
  Alphabet output_;
  int t_;
  int r_;
  WindowMap phi_;
  std::vector<Digit> table_;
  json description_;
  std::optional<CarrySource> carry_;
};

/// Synthesize the local rule of a carry rule and check it: the pattern
/// polynomial must be a multiple of the defining polynomial and every
/// window over the input alphabet must map into the output alphabet
/// (exhaustively up to `budget` windows, sampled beyond).
LocalRule derive_local_rule(const CarryRule& cr, const BaseSpec& base, const Alphabet& input,
                            const Alphabet& output, std::uint64_t budget = 10'000'000);

/// Apply with zero padding; the result is normalized. threads == 0 runs
/// the serial reference kernel, threads >= 1 the OpenMP kernel.
DigitString apply(const LocalRule& rule, const DigitString& ds, int threads = 0);

/// Apply with a constant background digit outside the support. The
/// result covers exponents [lsd - t, msd + r] and is not normalized.
DigitString apply_raw(const LocalRule& rule, const DigitString& ds, Digit background = 0,
                      int threads = 0);

/// Low-level kernels over a padded msd-first buffer of n_out + p - 1
/// digits; output i reads padded[i .. i+p-1].
void apply_kernel_serial(const LocalRule& rule, const Digit* padded, std::size_t n_out,
                         Digit* out);
void apply_kernel_parallel(const LocalRule& rule, const Digit* padded, std::size_t n_out,
                           Digit* out, int threads);

/// Carries q_j of a rule derived from a carry rule, over the exponents
/// where they can be non-zero. Throws InvalidRule for other rules.
DigitString carries(const LocalRule& rule, const DigitString& ds);

LocalRule identity_rule(const Alphabet& alphabet);
LocalRule compose(const LocalRule& outer, const LocalRule& inner);
std::vector<Digit> fixed_letters(const LocalRule& rule);
LocalRule shift_alphabet(const LocalRule& rule, Digit h);
LocalRule negate_rule(const LocalRule& rule);

/// Export for inspection and golden tests: window, alphabets, provenance
/// and the table when the rule is materialized.
json rule_to_json(const LocalRule& rule);

}  // namespace carryfree
