#include "carryfree/local_engine.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <omp.h>

namespace carryfree {

namespace {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / base) return std::nullopt;
    v *= base;
  }
  return v;
}

std::string window_text(const Digit* w, int p) {
  std::ostringstream out;
  for (int i = 0; i < p; ++i) out << (i ? " " : "") << w[i];
  return out.str();
}

// Visit every window over [lo, hi]^p in table order.
template <typename Fn>
void for_each_window(Digit lo, Digit hi, int p, Fn fn) {
  std::vector<Digit> w(static_cast<std::size_t>(p), lo);
  while (true) {
    fn(w.data());
    int i = p - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == hi) {
      w[static_cast<std::size_t>(i)] = lo;
      --i;
    }
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

json append_transform(json description, json step) {
  if (!description.contains("transforms")) description["transforms"] = json::array();
  description["transforms"].push_back(std::move(step));
  return description;
}

}  // namespace

std::pair<int, int> CarryRule::window() const {
  int t = 0, r = 0;
  for (const auto& pl : placements) {
    t = std::max(t, t_q - pl.delta);
    r = std::max(r, r_q + pl.delta);
  }
  return {t, r};
}

LaurentPoly CarryRule::pattern_poly() const {
  LaurentPoly acc;
  for (const auto& pl : placements) {
    acc = add(acc, LaurentPoly(pl.delta, {mpz_class(static_cast<long>(pl.gamma))}));
  }
  return acc;
}

LocalRule::LocalRule(std::string name, Alphabet input, Alphabet output, int t, int r,
                     WindowMap phi, json description)
    : name_(std::move(name)),
      input_(input),
      output_(output),
      t_(t),
      r_(r),
      phi_(std::move(phi)),
      description_(std::move(description)) {
  if (t < 0 || r < 0 || t + r + 1 > kMaxWindow) {
    throw Error(ErrorKind::InvalidRule, "window (" + std::to_string(t) + "," + std::to_string(r) +
                                            ") out of range for rule " + name_);
  }
  materialize();
  if (eval_constant(0) != 0) {
    throw Error(ErrorKind::InvalidRule, "rule " + name_ + " does not map the zero window to 0");
  }
}

LocalRule LocalRule::from_table(std::string name, Alphabet input, Alphabet output, int t, int r,
                                std::vector<Digit> table, json description) {
  const auto expected = checked_pow(static_cast<std::uint64_t>(input.size()), t + r + 1, kTableLimit);
  if (!expected || *expected != table.size()) {
    throw Error(ErrorKind::InvalidRule, "table size does not match the window and input alphabet");
  }
  auto shared = std::make_shared<const std::vector<Digit>>(std::move(table));
  const int p = t + r + 1;
  WindowMap lookup = [shared, input, p](const Digit* w) {
    std::size_t idx = 0;
    for (int i = 0; i < p; ++i) {
      idx = idx * static_cast<std::size_t>(input.size()) + static_cast<std::size_t>(w[i] - input.lo());
    }
    return (*shared)[idx];
  };
  return LocalRule(std::move(name), input, output, t, r, std::move(lookup), std::move(description));
}

void LocalRule::materialize() {
  const int p = window_size();
  const auto count = checked_pow(static_cast<std::uint64_t>(input_.size()), p, kTableLimit);
  if (!count || !phi_) return;
  table_.resize(*count);
  std::size_t i = 0;
  for_each_window(input_.lo(), input_.hi(), p, [&](const Digit* w) { table_[i++] = phi_(w); });
}

std::size_t LocalRule::table_index(const Digit* window) const {
  const auto k = static_cast<std::size_t>(input_.size());
  std::size_t idx = 0;
  for (int i = 0; i < window_size(); ++i) {
    idx = idx * k + static_cast<std::size_t>(window[i] - input_.lo());
  }
  return idx;
}

Digit LocalRule::eval_constant(Digit h) const {
  std::vector<Digit> w(static_cast<std::size_t>(window_size()), h);
  return eval(w.data());
}

LocalRule LocalRule::with_carry_source(CarrySource source) const {
  LocalRule copy = *this;
  copy.carry_ = std::move(source);
  return copy;
}

LocalRule LocalRule::renamed(std::string name) const {
  LocalRule copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

LocalRule LocalRule::with_description(json description) const {
  LocalRule copy = *this;
  copy.description_ = std::move(description);
  return copy;
}

LocalRule derive_local_rule(const CarryRule& cr, const BaseSpec& base, const Alphabet& input,
                            const Alphabet& output, std::uint64_t budget) {
  if (!is_multiple(cr.pattern_poly(), base.defining_poly())) {
    throw Error(ErrorKind::ValuePatternNotMultiple,
                "carry pattern " + cr.pattern_poly().to_string() + " of " + cr.name +
                    " is not a multiple of the defining polynomial of " + base.mnemonic());
  }
  {
    std::vector<Digit> zeros(static_cast<std::size_t>(cr.t_q + cr.r_q + 1), 0);
    if (cr.selector(WindowView{zeros.data(), cr.t_q}) != 0) {
      throw Error(ErrorKind::InvalidRule, "selector of " + cr.name + " fires on the zero window");
    }
  }
  const auto [t, r] = cr.window();
  auto shared = std::make_shared<const CarryRule>(cr);
  WindowMap phi = [shared, t = t](const Digit* w) {
    Digit z = w[t];
    for (const auto& pl : shared->placements) {
      const int q = shared->selector(WindowView{w + t + pl.delta - shared->t_q, shared->t_q});
      z += static_cast<Digit>(pl.gamma * q);
    }
    return z;
  };
  json description = {{"carry_rule", cr.name}};
  LocalRule rule(cr.name, input, output, t, r, std::move(phi), std::move(description));
  rule = rule.with_carry_source(CarrySource{shared, 1, 0});

  const int p = t + r + 1;
  auto escape = [&](const Digit* w, Digit v) {
    throw Error(ErrorKind::OutputEscapesAlphabet,
                "rule " + cr.name + " maps window [" + window_text(w, p) + "] to " +
                    std::to_string(v) + ", outside " + output.to_string());
  };
  const auto count = checked_pow(static_cast<std::uint64_t>(input.size()), p, budget);
  if (count) {
    for_each_window(input.lo(), input.hi(), p, [&](const Digit* w) {
      const Digit v = rule.eval(w);
      if (!output.contains(v)) escape(w, v);
    });
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Digit> digit(input.lo(), input.hi());
    std::vector<Digit> w(static_cast<std::size_t>(p));
    for (int s = 0; s < 100'000; ++s) {
      for (auto& d : w) d = digit(rng);
      const Digit v = rule.eval(w.data());
      if (!output.contains(v)) escape(w.data(), v);
    }
  }
  return rule;
}

void apply_kernel_serial(const LocalRule& rule, const Digit* padded, std::size_t n_out,
                         Digit* out) {
  if (n_out == 0) return;
  const auto p = static_cast<std::size_t>(rule.window_size());
  if (!rule.has_table()) {
    for (std::size_t i = 0; i < n_out; ++i) out[i] = rule.eval(padded + i);
    return;
  }
  const auto& table = rule.table();
  const auto k = static_cast<std::size_t>(rule.input_alphabet().size());
  const Digit lo = rule.input_alphabet().lo();
  std::size_t top = 1;
  for (std::size_t i = 1; i < p; ++i) top *= k;
  std::size_t idx = rule.table_index(padded);
  out[0] = table[idx];
  for (std::size_t i = 1; i < n_out; ++i) {
    idx = (idx - static_cast<std::size_t>(padded[i - 1] - lo) * top) * k +
          static_cast<std::size_t>(padded[i + p - 1] - lo);
    out[i] = table[idx];
  }
}

void apply_kernel_parallel(const LocalRule& rule, const Digit* padded, std::size_t n_out,
                           Digit* out, int threads) {
  threads = std::max(threads, 1);
  const auto chunks = static_cast<std::int64_t>(threads) * 4;
  const auto chunk = static_cast<std::size_t>((n_out + chunks - 1) / chunks);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * chunk;
    if (begin >= n_out) continue;
    const std::size_t len = std::min(chunk, n_out - begin);
    apply_kernel_serial(rule, padded + begin, len, out + begin);
  }
}

DigitString apply_raw(const LocalRule& rule, const DigitString& ds, Digit background, int threads) {
  const Alphabet& in = rule.input_alphabet();
  if (!in.contains(background)) {
    throw Error(ErrorKind::DigitOutOfAlphabet,
                "background digit " + std::to_string(background) + " outside " + in.to_string());
  }
  for (Digit d : ds.digits()) {
    if (!in.contains(d)) {
      throw Error(ErrorKind::DigitOutOfAlphabet, "digit " + std::to_string(d) + " outside " +
                                                     in.to_string() + " for rule " + rule.name());
    }
  }
  if (ds.empty()) return DigitString(ds.lsd_exponent(), {});
  const auto t = static_cast<std::size_t>(rule.anticipation());
  const auto r = static_cast<std::size_t>(rule.memory());
  const std::size_t n = ds.size();
  std::vector<Digit> padded(n + 2 * t + 2 * r, background);
  std::copy(ds.digits().begin(), ds.digits().end(), padded.begin() + static_cast<std::ptrdiff_t>(t + r));
  std::vector<Digit> out(n + t + r);
  if (threads <= 0) {
    apply_kernel_serial(rule, padded.data(), out.size(), out.data());
  } else {
    apply_kernel_parallel(rule, padded.data(), out.size(), out.data(), threads);
  }
  return DigitString(ds.lsd_exponent() - static_cast<Exponent>(t), std::move(out));
}

DigitString apply(const LocalRule& rule, const DigitString& ds, int threads) {
  return normalize(apply_raw(rule, ds, 0, threads));
}

DigitString carries(const LocalRule& rule, const DigitString& ds) {
  const auto& source = rule.carry_source();
  if (!source) {
    throw Error(ErrorKind::InvalidRule, "rule " + rule.name() + " is not built from carries");
  }
  if (ds.empty()) return {};
  const CarryRule& cr = *source->rule;
  const auto tq = static_cast<std::size_t>(cr.t_q);
  const auto rq = static_cast<std::size_t>(cr.r_q);
  const std::size_t n = ds.size();
  std::vector<Digit> padded(n + 2 * tq + 2 * rq, source->offset);
  for (std::size_t i = 0; i < n; ++i) {
    padded[tq + rq + i] = source->sign * ds.digits()[i] + source->offset;
  }
  std::vector<Digit> q(n + tq + rq);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = source->sign * cr.selector(WindowView{padded.data() + i, cr.t_q});
  }
  return normalize(DigitString(ds.lsd_exponent() - static_cast<Exponent>(tq), std::move(q)));
}

LocalRule identity_rule(const Alphabet& alphabet) {
  return LocalRule("identity", alphabet, alphabet, 0, 0, [](const Digit* w) { return w[0]; },
                   json{{"identity", alphabet.to_string()}});
}

LocalRule compose(const LocalRule& outer, const LocalRule& inner) {
  if (!outer.input_alphabet().contains(inner.output_alphabet())) {
    throw Error(ErrorKind::AlphabetMismatch,
                "inner output " + inner.output_alphabet().to_string() +
                    " is not contained in outer input " + outer.input_alphabet().to_string());
  }
  auto o = std::make_shared<const LocalRule>(outer);
  auto i = std::make_shared<const LocalRule>(inner);
  const int po = outer.window_size();
  WindowMap phi = [o, i, po](const Digit* w) {
    Digit mid[kMaxWindow];
    for (int m = 0; m < po; ++m) mid[m] = i->eval(w + m);
    return o->eval(mid);
  };
  return LocalRule(outer.name() + " o " + inner.name(), inner.input_alphabet(),
                   outer.output_alphabet(), outer.anticipation() + inner.anticipation(),
                   outer.memory() + inner.memory(), std::move(phi),
                   json{{"compose", {outer.description(), inner.description()}}});
}

std::vector<Digit> fixed_letters(const LocalRule& rule) {
  std::vector<Digit> out;
  for (Digit h = rule.input_alphabet().lo(); h <= rule.input_alphabet().hi(); ++h) {
    if (rule.eval_constant(h) == h) out.push_back(h);
  }
  return out;
}

LocalRule shift_alphabet(const LocalRule& rule, Digit h) {
  if (!rule.input_alphabet().contains(h) || rule.eval_constant(h) != h) {
    throw Error(ErrorKind::LetterNotFixed,
                "digit " + std::to_string(h) + " is not a fixed letter of " + rule.name());
  }
  auto base = std::make_shared<const LocalRule>(rule);
  const int p = rule.window_size();
  WindowMap phi = [base, h, p](const Digit* w) {
    Digit shifted[kMaxWindow];
    for (int i = 0; i < p; ++i) shifted[i] = w[i] + h;
    return base->eval(shifted) - h;
  };
  LocalRule out(rule.name() + " shifted by " + std::to_string(h), rule.input_alphabet().shifted(h),
                rule.output_alphabet().shifted(h), rule.anticipation(), rule.memory(),
                std::move(phi), append_transform(rule.description(), json{{"shift", h}}));
  if (const auto& c = rule.carry_source()) {
    out = out.with_carry_source(CarrySource{c->rule, c->sign, c->offset + c->sign * h});
  }
  return out;
}

LocalRule negate_rule(const LocalRule& rule) {
  auto base = std::make_shared<const LocalRule>(rule);
  const int p = rule.window_size();
  WindowMap phi = [base, p](const Digit* w) {
    Digit negated[kMaxWindow];
    for (int i = 0; i < p; ++i) negated[i] = -w[i];
    return -base->eval(negated);
  };
  LocalRule out("negated " + rule.name(), rule.input_alphabet().negated(),
                rule.output_alphabet().negated(), rule.anticipation(), rule.memory(),
                std::move(phi), append_transform(rule.description(), json{{"negate", true}}));
  if (const auto& c = rule.carry_source()) {
    out = out.with_carry_source(CarrySource{c->rule, -c->sign, c->offset});
  }
  return out;
}

json rule_to_json(const LocalRule& rule) {
  json j = {
      {"name", rule.name()},
      {"t", rule.anticipation()},
      {"r", rule.memory()},
      {"input_alphabet", rule.input_alphabet().to_string()},
      {"output_alphabet", rule.output_alphabet().to_string()},
      {"description", rule.description()},
  };
  if (rule.has_table()) j["table"] = rule.table();
  return j;
}

}  // namespace carryfree
