// Command-line front end: exact bounded-Poisson redundancies, envelope
// bounds by three methods, small-alphabet chains, lemma verification
// batteries, and CSV sweeps.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shtarkov/budget.hpp"
#include "shtarkov/envelope.hpp"
#include "shtarkov/envelope_json.hpp"
#include "shtarkov/errors.hpp"
#include "shtarkov/iid_small.hpp"
#include "shtarkov/poisson_class.hpp"
#include "shtarkov/verify_suites.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNotSummable = 3;
constexpr int kExitBudget = 4;
constexpr int kExitIo = 5;

struct UnitOptions {
  bool nats = false;
  double convert(double bits) const {
    return nats ? bits * std::numbers::ln2 : bits;
  }
  const char* label() const { return nats ? "nats" : "bits"; }
};

std::string fmt7(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7g", v);
  return buf;
}

int run_poisson_class(double lambda, bool as_json, const UnitOptions& units) {
  shtarkov::BoundedPoissonClass cls(lambda);
  shtarkov::RedundancyValue exact = shtarkov::shtarkov_bounded_poisson(cls);
  shtarkov::RedundancyInterval bracket =
      shtarkov::closed_form_bounds_bounded_poisson(cls);
  if (as_json) {
    json out = {{"s", exact.s()},
                {"bits", exact.bits},
                {"lower", bracket.lower_bits},
                {"upper", bracket.upper_bits}};
    std::cout << out.dump() << "\n";
    return kExitOk;
  }
  std::cout << "bounded-Poisson class, mean cap " << fmt7(lambda) << "\n"
            << "  S           = " << fmt7(exact.s()) << "\n"
            << "  redundancy  = " << fmt7(units.convert(exact.bits)) << " "
            << units.label() << "\n"
            << "  closed form = [" << fmt7(units.convert(bracket.lower_bits))
            << ", " << fmt7(units.convert(bracket.upper_bits)) << "] "
            << units.label() << "\n";
  if (lambda <= 1.0)
    std::cout << "  cap         = "
              << fmt7(units.convert(shtarkov::lambda_cap_bits(lambda))) << " "
              << units.label() << " (Lambda*log2 e, valid for Lambda <= 1)\n";
  return kExitOk;
}

struct MethodResult {
  std::string method;
  shtarkov::RedundancyInterval interval;
};

MethodResult eval_method(const shtarkov::Envelope& e, std::int64_t n,
                         const std::string& method) {
  if (method == "single-letter")
    return {method, shtarkov::single_letter_interval(e, n)};
  if (method == "bgg09") {
    shtarkov::RedundancyInterval iv;
    iv.lower_bits = 0.0;
    iv.upper_bits = shtarkov::bgg09_upper(e, n);
    return {method, iv};
  }
  // closed-form
  if (const auto* p = e.as_power_law())
    return {method, shtarkov::power_law_closed_bounds(p->c, p->alpha, n)};
  if (const auto* x = e.as_exponential())
    return {method, shtarkov::exponential_closed_bounds(x->c, x->alpha, n)};
  throw shtarkov::ParseError(
      "closed-form bounds exist only for power_law and exponential envelopes");
}

int run_envelope(const std::string& spec_path, std::int64_t n,
                 const std::string& method, bool as_json,
                 const UnitOptions& units) {
  shtarkov::Envelope e = shtarkov::load_envelope_spec(spec_path);
  MethodResult r = eval_method(e, n, method);
  if (as_json) {
    json out = {{"n", n},
                {"method", r.method},
                {"lower_bits", r.interval.lower_bits},
                {"upper_bits", r.interval.upper_bits},
                {"truncation_bits", r.interval.truncation_bits},
                {"asymptotic", r.interval.asymptotic}};
    if (method == "closed-form") {
      if (const auto* x = e.as_exponential()) {
        out["proof_central_bits"] =
            r.interval.lower_bits;  // log2^2 n / (4 alpha log2 e)
        out["statement_central_bits"] =
            shtarkov::exponential_statement_central(x->alpha, n);
      }
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
  }
  std::cout << e.kind_name() << " envelope, n = " << n << ", method " << r.method
            << "\n"
            << "  lower      = " << fmt7(units.convert(r.interval.lower_bits))
            << " " << units.label()
            << (r.interval.asymptotic ? "  (asymptotic, o(1) not certified)"
                                      : "")
            << "\n"
            << "  upper      = " << fmt7(units.convert(r.interval.upper_bits))
            << " " << units.label() << "\n"
            << "  truncation = "
            << fmt7(units.convert(r.interval.truncation_bits)) << " "
            << units.label() << "\n";
  if (method == "closed-form") {
    if (const auto* x = e.as_exponential())
      std::cout << "  note: theorem statement variant log2^2(n)/(4 alpha) = "
                << fmt7(units.convert(
                       shtarkov::exponential_statement_central(x->alpha, n)))
                << " " << units.label() << "\n";
  }
  return kExitOk;
}

int run_iid(int k, std::int64_t n, bool exact, bool bounds, bool as_json,
            const UnitOptions& units) {
  shtarkov::SmallAlphabetQuery q{k, n};
  if (!exact && !bounds) exact = true;
  json out = {{"k", k}, {"n", n}};
  std::vector<std::string> lines;
  if (exact) {
    shtarkov::RedundancyValue v = shtarkov::iid_exact(q);
    out["exact_bits"] = v.bits;
    lines.push_back("  exact       = " + fmt7(units.convert(v.bits)) + " " +
                    units.label());
  }
  if (bounds) {
    double upper = shtarkov::iid_upper_bound(q);
    out["upper_chain_bits"] = upper;
    lines.push_back("  upper chain = " + fmt7(units.convert(upper)) + " " +
                    units.label());
    auto lower = shtarkov::iid_lower_chain(q);
    if (lower.has_value()) {
      out["lower_chain_bits"] = lower->bits;
      out["lower_chain_advisory"] = true;
      lines.push_back("  lower chain = " + fmt7(units.convert(lower->bits)) +
                      " " + units.label() + "  (advisory at small n)");
    } else {
      out["lower_chain_bits"] = nullptr;
      lines.push_back("  lower chain = (not applicable: n' <= 0 or k < 2)");
    }
  }
  if (as_json) {
    std::cout << out.dump() << "\n";
    return kExitOk;
  }
  std::cout << "iid class D_k, k = " << k << ", n = " << n << "\n";
  for (const auto& line : lines) std::cout << line << "\n";
  return kExitOk;
}

int run_verify(const std::string& suite_name, std::uint64_t seed) {
  shtarkov::VerifySuite suite = shtarkov::parse_suite(suite_name);
  std::vector<shtarkov::CheckReport> reports =
      shtarkov::run_suite(suite, seed);
  bool all_passed = true;
  for (const auto& r : reports) {
    std::printf("%-4s %-52s instances=%-6" PRId64 " worst_violation=%.3e\n",
                r.passed ? "ok" : "FAIL", r.name.c_str(), r.instances_tested,
                r.worst_violation);
    if (!r.passed) {
      all_passed = false;
      std::printf("     offending instance: %s\n", r.detail.c_str());
    }
  }
  std::printf("%zu checks, %s\n", reports.size(),
              all_passed ? "all passed" : "FAILURES PRESENT");
  return all_passed ? kExitOk : 1;
}

int run_sweep(const std::string& spec_path, std::int64_t n_from,
              std::int64_t n_to, int points, const std::string& out_path) {
  if (n_from < 1 || n_to < n_from || points < 1)
    throw shtarkov::ParseError("sweep: need 1 <= n-from <= n-to and points >= 1");
  shtarkov::Envelope e = shtarkov::load_envelope_spec(spec_path);

  std::vector<std::int64_t> ns;
  for (int i = 0; i < points; ++i) {
    double t = points == 1 ? 0.0
                           : static_cast<double>(i) /
                                 static_cast<double>(points - 1);
    double log_n = std::log(static_cast<double>(n_from)) +
                   t * (std::log(static_cast<double>(n_to)) -
                        std::log(static_cast<double>(n_from)));
    ns.push_back(std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::llround(std::exp(log_n)))));
  }

  std::vector<std::string> methods = {"single-letter", "bgg09"};
  if (e.as_power_law() || e.as_exponential()) methods.push_back("closed-form");

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitIo;
  }
  out << "n,lower_bits,upper_bits,method,truncation_bits\n";
  char buf[256];
  for (std::int64_t n : ns) {
    for (const auto& method : methods) {
      MethodResult r = eval_method(e, n, method);
      std::snprintf(buf, sizeof(buf), "%" PRId64 ",%.10g,%.10g,%s,%.10g\n", n,
                    r.interval.lower_bits, r.interval.upper_bits,
                    method.c_str(), r.interval.truncation_bits);
      out << buf;
    }
  }
  if (!out.good()) {
    std::cerr << "error: write failure on " << out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shtarkov-sum redundancy bounds for envelope classes"};
  app.require_subcommand(1);

  // poisson-class
  double lambda = 0.0;
  bool pc_json = false;
  bool pc_nats = false;
  auto* pc = app.add_subcommand(
      "poisson-class", "Exact redundancy of the bounded-Poisson class");
  pc->add_option("--lambda", lambda, "Mean cap Lambda (>= 0)")->required();
  pc->add_flag("--json", pc_json, "Machine-readable output");
  pc->add_flag("--nats", pc_nats, "Report in nats instead of bits");

  // envelope
  std::string env_spec;
  std::int64_t env_n = 0;
  std::string env_method = "single-letter";
  bool env_json = false;
  bool env_nats = false;
  auto* env = app.add_subcommand("envelope", "Envelope-class redundancy bounds");
  env->add_option("--spec", env_spec, "Envelope spec JSON file")->required();
  env->add_option("--n", env_n, "Sequence length n (>= 1)")->required();
  env->add_option("--method", env_method, "Bound method")
      ->check(CLI::IsMember({"single-letter", "bgg09", "closed-form"}));
  env->add_flag("--json", env_json, "Machine-readable output");
  env->add_flag("--nats", env_nats, "Report in nats instead of bits");

  // iid
  int iid_k = 0;
  std::int64_t iid_n = 0;
  bool iid_exact_flag = false;
  bool iid_bounds_flag = false;
  bool iid_json = false;
  bool iid_nats = false;
  auto* iid = app.add_subcommand("iid", "Small-alphabet iid class D_k^n");
  iid->add_option("--k", iid_k, "Alphabet size (>= 1)")->required();
  iid->add_option("--n", iid_n, "Sequence length (>= 1)")->required();
  iid->add_flag("--exact", iid_exact_flag, "Brute-force exact value");
  iid->add_flag("--bounds", iid_bounds_flag, "Upper/lower chain bounds");
  iid->add_flag("--json", iid_json, "Machine-readable output");
  iid->add_flag("--nats", iid_nats, "Report in nats instead of bits");

  // verify
  std::string suite = "all";
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run lemma verification batteries");
  verify->add_option("--suite", suite, "all|preliminary|poisson|envelope")
      ->check(CLI::IsMember({"all", "preliminary", "poisson", "envelope"}));
  verify->add_option("--seed", seed, "Battery seed");

  // sweep
  std::string sweep_spec;
  std::int64_t n_from = 0;
  std::int64_t n_to = 0;
  int points = 0;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over log-spaced n");
  sweep->add_option("--spec", sweep_spec, "Envelope spec JSON file")->required();
  sweep->add_option("--n-from", n_from, "Smallest n")->required();
  sweep->add_option("--n-to", n_to, "Largest n")->required();
  sweep->add_option("--points", points, "Number of log-spaced n values")
      ->required();
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (pc->parsed()) return run_poisson_class(lambda, pc_json, {pc_nats});
    if (env->parsed())
      return run_envelope(env_spec, env_n, env_method, env_json, {env_nats});
    if (iid->parsed())
      return run_iid(iid_k, iid_n, iid_exact_flag, iid_bounds_flag, iid_json,
                     {iid_nats});
    if (verify->parsed()) return run_verify(suite, seed);
    if (sweep->parsed())
      return run_sweep(sweep_spec, n_from, n_to, points, out_path);
  } catch (const shtarkov::NotSummable& e) {
    std::cerr << "error: envelope is not summable (sum_i f_i = infinity), so "
                 "the class has infinite redundancy: "
              << e.what() << "\n";
    return kExitNotSummable;
  } catch (const shtarkov::BudgetExceeded& e) {
    std::cerr << "error: enumeration budget exceeded (raise SHTARKOV_BUDGET "
                 "to override): "
              << e.what() << "\n";
    return kExitBudget;
  } catch (const shtarkov::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
