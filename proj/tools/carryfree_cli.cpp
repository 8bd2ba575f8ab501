// carryfree: expansions, parallel addition, conversion rules, bounds,
// verification and benchmarks from the command line.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "carryfree/adder.hpp"
#include "carryfree/algebra.hpp"
#include "carryfree/bounds.hpp"
#include "carryfree/expansions.hpp"
#include "carryfree/oracle.hpp"
#include "carryfree/rules.hpp"

using namespace carryfree;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kUnsupportedExpansion = 3, kUnsupportedAlphabet = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> stdin_lines;
std::size_t stdin_next = 0;

std::string resolve_arg(const std::string& arg) {
  if (arg != "-") return arg;
  if (stdin_lines.empty() && stdin_next == 0) {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) stdin_lines.push_back(line);
    }
  }
  if (stdin_next >= stdin_lines.size()) throw UsageError("not enough lines on standard input");
  return stdin_lines[stdin_next++];
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::Syntax, "not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

json expansion_json(const Expansion& e) {
  json rem = json::array();
  for (const auto& c : e.remainder) rem.push_back(c.get_str());
  return json{{"digits", to_json(e.digits)},
              {"exact", e.exact},
              {"remainder", rem},
              {"remainder_exponent", e.remainder_exponent}};
}

void print_digits(const DigitString& ds, bool as_json) {
  if (as_json) {
    std::cout << to_json(ds).dump() << '\n';
  } else {
    std::cout << format_digit_string(ds) << '\n';
  }
}

// expand -------------------------------------------------------------------

struct ExpandArgs {
  std::string base;
  std::string number;
  bool euclid = false, greedy = false, as = false;
  std::optional<int> tm;
  std::size_t digits = 32;
  bool check = false;
  bool json = false;
};

int run_expand(const ExpandArgs& a) {
  const BaseSpec base = parse_base(a.base);
  const mpq_class x = parse_rational(resolve_arg(a.number));
  const int chosen = int{a.euclid} + int{a.greedy} + int{a.as} + int{a.tm.has_value()};
  if (chosen > 1) throw UsageError("choose one of --euclid, --greedy, --tm, --as");
  bool ok = true;
  if (a.euclid || chosen == 0) {
    if (x.get_den() != 1) throw UsageError("--euclid needs an integer");
    const DigitString ds = euclid_expansion(x.get_num(), base);
    if (a.check) {
      ok = reduce_mod_base(sub(to_poly(ds), LaurentPoly(0, {x.get_num()})), base).is_zero();
    }
    print_digits(ds, a.json);
  } else {
    Expansion e;
    if (a.greedy) e = greedy_expansion(x, base, a.digits);
    if (a.as) e = akiyama_scheicher_expansion(x, base, a.digits);
    if (a.tm) e = tm_expansion(x, *a.tm, base, a.digits);
    if (a.check) ok = expansion_identity_holds(e, x, base);
    if (a.json) {
      std::cout << expansion_json(e).dump() << '\n';
    } else {
      std::cout << format_digit_string(e.digits) << (e.exact ? "" : " ...") << '\n';
    }
  }
  if (a.check && !a.json) std::cout << (ok ? "check: ok" : "check: FAILED") << '\n';
  return ok ? kOk : kVerifyFailed;
}

// add ----------------------------------------------------------------------

struct AddArgs {
  std::string base, alphabet, x, y;
  bool trace = false, subtract = false, json = false;
  int threads = 0;
};

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) {
    json j{{"rule", s.rule},
           {"input", to_json(s.input)},
           {"clamped", to_json(s.clamped)},
           {"output", to_json(s.output)}};
    if (s.carries) j["carries"] = to_json(*s.carries);
    out.push_back(std::move(j));
  }
  return out;
}

int run_add(const AddArgs& a) {
  const NumerationSystem system = make_system(parse_base(a.base), Alphabet::parse(a.alphabet));
  const DigitString x = parse_digit_string(resolve_arg(a.x));
  const DigitString y = parse_digit_string(resolve_arg(a.y));
  const AdderPipeline pipeline =
      a.subtract ? build_subtraction_pipeline(system) : build_pipeline(system);
  std::vector<TraceStep> trace;
  std::vector<TraceStep>* tp = a.trace ? &trace : nullptr;
  const DigitString z = a.subtract ? subtract(x, y, pipeline, a.threads, tp)
                                   : add(x, y, pipeline, a.threads, tp);
  if (a.json) {
    if (a.trace) {
      std::cout << json{{"pipeline", to_json(pipeline)}, {"trace", trace_json(trace)},
                        {"result", to_json(z)}}
                       .dump()
                << '\n';
    } else {
      std::cout << to_json(z).dump() << '\n';
    }
    return kOk;
  }
  if (a.trace) {
    const auto [t, r] = pipeline.effective_window;
    std::cout << "plan: " << trace.size() << " passes, effective window (" << t << "," << r << ")\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto& s = trace[i];
      std::cout << "pass " << i + 1 << ": " << s.rule << '\n'
                << "  input    " << format_digit_string(s.input) << '\n'
                << "  clamped  " << format_digit_string(s.clamped) << '\n';
      if (s.carries) std::cout << "  carries  " << format_digit_string(*s.carries) << '\n';
      std::cout << "  output   " << format_digit_string(s.output) << '\n';
    }
  }
  std::cout << format_digit_string(z) << '\n';
  return kOk;
}

// convert ------------------------------------------------------------------

struct ConvertArgs {
  std::string base, alphabet, input, export_rule, rule_file;
  bool gde = false, sde = false, json = false;
  int threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Syntax, where + ": " + e.what());
  }
}

LocalRule select_rule(const ConvertArgs& a) {
  if (!a.rule_file.empty()) return rule_from_json(parse_json_text(read_file(a.rule_file), a.rule_file));
  if (a.base.empty()) throw UsageError("--base is required without --rule-file");
  const BaseSpec base = parse_base(a.base);
  if (a.gde && a.sde) throw UsageError("choose one of --gde, --sde");
  if (a.alphabet.empty()) {
    if (a.sde) throw UsageError("--sde needs --alphabet");
    return gde_for_base(base);
  }
  const Alphabet alphabet = Alphabet::parse(a.alphabet);
  if (a.sde) return sde_for_alphabet(base, alphabet);
  const RulePair pair = rule_for_alphabet(base, alphabet);
  if (!pair.gde) {
    throw Error(ErrorKind::AlphabetUnsupported,
                "alphabet " + alphabet.to_string() + " has no positive digits to eliminate");
  }
  return *pair.gde;
}

int run_convert(const ConvertArgs& a) {
  const LocalRule rule = select_rule(a);
  if (!a.export_rule.empty()) {
    std::ofstream out(a.export_rule);
    if (!out) throw UsageError("cannot write " + a.export_rule);
    out << rule_to_json(rule).dump(2) << '\n';
  }
  if (a.input.empty()) {
    if (a.export_rule.empty()) std::cout << rule_to_json(rule).dump(2) << '\n';
    return kOk;
  }
  print_digits(apply(rule, parse_digit_string(resolve_arg(a.input)), a.threads), a.json);
  return kOk;
}

// bounds -------------------------------------------------------------------

int run_bounds(const std::string& base_text, bool as_json) {
  const BoundReport report = minimal_alphabet_report(parse_base(base_text));
  if (as_json) {
    std::cout << to_json(report).dump() << '\n';
  } else {
    std::cout << format_report(report);
  }
  return kOk;
}

// verify -------------------------------------------------------------------

struct VerifyArgs {
  int max_len = 6;
  std::uint64_t samples = 10'000;
  std::string rule_file, base;
  bool json = false, quiet = false;
};

int run_verify(const VerifyArgs& a) {
  std::vector<VerificationReport> reports;
  if (!a.rule_file.empty()) {
    if (a.base.empty()) throw UsageError("--rule-file needs --base");
    const LocalRule rule =
        rule_from_json(parse_json_text(read_file(a.rule_file), a.rule_file));
    VerifyOptions options;
    options.max_len = a.max_len;
    options.random_samples = a.samples;
    reports.push_back(verify_conversion(rule, parse_base(a.base), options));
  } else {
    reports = run_default_suite(a.max_len, a.samples);
  }
  const bool passed =
      std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (a.json) {
    json all = json::array();
    for (const auto& r : reports) all.push_back(to_json(r));
    std::cout << json{{"passed", passed}, {"reports", all}}.dump() << '\n';
  } else {
    std::size_t failed = 0;
    for (const auto& r : reports) {
      if (!r.passed()) ++failed;
      if (!a.quiet || !r.passed()) std::cout << format_report(r);
    }
    std::cout << reports.size() - failed << " of " << reports.size() << " checks passed\n";
  }
  return passed ? kOk : kVerifyFailed;
}

// bench --------------------------------------------------------------------

struct BenchArgs {
  std::string base = "-2", alphabet;
  std::size_t length = 1'000'000;
  int threads = 8;
  int repeats = 3;
  std::uint64_t seed = 1;
  bool json = false;
};

template <class F>
double best_seconds(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < std::max(1, repeats); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

int run_bench(const BenchArgs& a) {
  if (a.length < 1000) throw UsageError("--length must be at least 1000");
  const BaseSpec base = parse_base(a.base);
  const Alphabet alphabet = a.alphabet.empty()
                                ? Alphabet(0, static_cast<Digit>(minimal_alphabet_report(base).minimal_size - 1))
                                : Alphabet::parse(a.alphabet);
  const AdderPipeline pipeline = build_pipeline(make_system(base, alphabet));
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<Digit> digit(alphabet.lo(), alphabet.hi());
  std::vector<Digit> xd(a.length), yd(a.length);
  for (auto& d : xd) d = digit(rng);
  for (auto& d : yd) d = digit(rng);
  const DigitString x(0, std::move(xd)), y(0, std::move(yd));

  int passes = 0;
  for (const auto& s : pipeline.plan) passes += s.passes;

  DigitString reference;
  const double serial = best_seconds(a.repeats, [&] { reference = add(x, y, pipeline, 0); });
  json rows = json::array();
  bool identical = true;
  std::vector<int> workers;
  for (int w = 1; w < a.threads; w *= 2) workers.push_back(w);
  workers.push_back(std::max(1, a.threads));
  for (int w : workers) {
    DigitString z;
    const double secs = best_seconds(a.repeats, [&] { z = add(x, y, pipeline, w); });
    const bool same = z == reference;
    identical = identical && same;
    rows.push_back({{"workers", w},
                    {"seconds", secs},
                    {"digits_per_second_per_pass", double(a.length) * passes / secs},
                    {"identical_to_serial", same}});
  }
  json ripple = nullptr;
  try {
    DigitString r;
    const double secs = best_seconds(a.repeats, [&] { r = ripple_carry_add(x, y, base); });
    const bool equal = values_equal(r, reference, base);
    identical = identical && equal;
    ripple = {{"seconds", secs}, {"values_equal", equal}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedBase) throw;
  }
  if (a.json) {
    std::cout << json{{"base", to_json(base)},
                      {"alphabet", alphabet.to_string()},
                      {"length", a.length},
                      {"passes", passes},
                      {"serial_seconds", serial},
                      {"parallel", rows},
                      {"ripple", ripple},
                      {"identical", identical}}
                     .dump()
              << '\n';
  } else {
    std::cout << "base " << base.mnemonic() << ", alphabet " << alphabet.to_string() << ", "
              << a.length << " digits, " << passes << " passes\n";
    std::cout << "serial reference   " << serial * 1e3 << " ms\n";
    for (const auto& row : rows) {
      std::cout << "workers " << row["workers"].get<int>() << "          "
                << row["seconds"].get<double>() * 1e3 << " ms  "
                << row["digits_per_second_per_pass"].get<double>() / 1e6 << " Mdigit/s/pass"
                << (row["identical_to_serial"].get<bool>() ? "" : "  MISMATCH") << '\n';
    }
    if (!ripple.is_null()) {
      std::cout << "ripple-carry       " << ripple["seconds"].get<double>() * 1e3 << " ms"
                << (ripple["values_equal"].get<bool>() ? "" : "  VALUE MISMATCH") << '\n';
    }
    std::cout << (identical ? "outputs agree" : "outputs DISAGREE") << '\n';
  }
  return identical ? kOk : kVerifyFailed;
}

int exit_code_for(const Error& e, bool in_expand) {
  switch (e.kind()) {
    case ErrorKind::AlphabetUnsupported:
    case ErrorKind::AlphabetTooSmall:
    case ErrorKind::AlphabetLacksNegatives:
    case ErrorKind::ShiftNotLicensed:
      return kUnsupportedAlphabet;
    case ErrorKind::UnsupportedBase:
    case ErrorKind::NegativeInput:
    case ErrorKind::OutOfWindow:
    case ErrorKind::NotApplicable:
    case ErrorKind::PrecisionExhausted:
      return in_expand ? kUnsupportedExpansion : kUsage;
    case ErrorKind::OutputEscapesAlphabet:
      return kVerifyFailed;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel addition in non-standard numeration systems"};
  app.require_subcommand(1);

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Expand a number in a base");
  expand->add_option("--base", ea.base, "Base mnemonic")->required();
  expand->add_flag("--euclid", ea.euclid, "Modified Euclidean algorithm (integers)");
  expand->add_flag("--greedy", ea.greedy, "Greedy expansion");
  expand->add_option("--tm", ea.tm, "T_m expansion with parameter m <= 0");
  expand->add_flag("--as", ea.as, "Akiyama-Scheicher symmetric expansion");
  expand->add_option("--digits", ea.digits, "Digit cap for non-terminating expansions");
  expand->add_flag("--check", ea.check, "Re-verify the result exactly");
  expand->add_flag("--json", ea.json);
  expand->add_option("number", ea.number, "Integer or fraction a/b, or - for stdin")->required();

  AddArgs aa;
  auto* add_cmd = app.add_subcommand("add", "Add two digit strings in parallel");
  add_cmd->add_option("--base", aa.base)->required();
  add_cmd->add_option("--alphabet", aa.alphabet, "lo..hi")->required();
  add_cmd->add_flag("--trace", aa.trace, "Print every pass with its carries");
  add_cmd->add_flag("--subtract", aa.subtract, "Compute x - y instead");
  add_cmd->add_option("--threads", aa.threads, "0 serial reference, >= 1 OpenMP workers");
  add_cmd->add_flag("--json", aa.json);
  add_cmd->add_option("x", aa.x)->required();
  add_cmd->add_option("y", aa.y)->required();

  ConvertArgs ca;
  auto* convert = app.add_subcommand("convert", "Apply a digit set conversion");
  convert->add_option("--base", ca.base);
  convert->add_option("--alphabet", ca.alphabet, "Target alphabet lo..hi");
  convert->add_flag("--gde", ca.gde, "Greatest digit elimination (default)");
  convert->add_flag("--sde", ca.sde, "Smallest digit elimination");
  convert->add_option("--export-rule", ca.export_rule, "Write the rule as JSON");
  convert->add_option("--rule-file", ca.rule_file, "Apply a rule read from JSON");
  convert->add_option("--threads", ca.threads);
  convert->add_flag("--json", ca.json);
  convert->add_option("input", ca.input, "Digit string, or - for stdin");

  std::string bounds_base;
  bool bounds_json = false;
  auto* bounds = app.add_subcommand("bounds", "Lower bounds on the alphabet size");
  bounds->add_option("--base", bounds_base)->required();
  bounds->add_flag("--json", bounds_json);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the exhaustive oracle");
  verify->add_option("--max-len", va.max_len, "Exhaustive string length");
  verify->add_option("--samples", va.samples, "Random samples per rule and pipeline");
  verify->add_option("--rule-file", va.rule_file, "Verify one rule read from JSON");
  verify->add_option("--base", va.base, "Base for --rule-file");
  verify->add_flag("--quiet", va.quiet, "Print failing checks only");
  verify->add_flag("--json", va.json);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Parallel addition against the serial references");
  bench->add_option("--base", ba.base);
  bench->add_option("--alphabet", ba.alphabet);
  bench->add_option("--length", ba.length);
  bench->add_option("--threads", ba.threads, "Largest worker count");
  bench->add_option("--repeats", ba.repeats, "Timed runs per configuration; the best is kept");
  bench->add_option("--seed", ba.seed);
  bench->add_flag("--json", ba.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const bool in_expand = expand->parsed();
  try {
    if (expand->parsed()) return run_expand(ea);
    if (add_cmd->parsed()) return run_add(aa);
    if (convert->parsed()) return run_convert(ca);
    if (bounds->parsed()) return run_bounds(bounds_base, bounds_json);
    if (verify->parsed()) return run_verify(va);
    if (bench->parsed()) return run_bench(ba);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e, in_expand);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
