#pragma once

#include <ffdigits/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace ffdigits {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitNumerical = 3, kExitBudget = 4 };

namespace cli_detail {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::optional<std::uint64_t> q;
  std::optional<std::string> ext_modulus;
  std::optional<std::string> n;
  std::string forbid;
  std::optional<int> d_max;
  std::optional<unsigned> workers;
  std::optional<double> budget;
  bool seedless = false;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
  std::string check = "all";
};

inline std::optional<FieldSpec> field_spec(const Options& o) {
  if (!o.q) {
    if (o.ext_modulus) throw UsageError("--ext-modulus needs --q");
    return std::nullopt;
  }
  FieldSpec spec = Field::of_order(*o.q)->spec();
  if (o.ext_modulus) {
    if (spec.k == 1) throw UsageError("--ext-modulus only applies to q = p^k with k > 1");
    spec.modulus = detail::parse_u32_list(*o.ext_modulus, "--ext-modulus");
  }
  return spec;
}

inline FieldPtr require_field(const Options& o) {
  auto spec = field_spec(o);
  if (!spec) throw UsageError("--q is required");
  return Field::make(*spec);
}

/// "5" or "2..5".
inline std::pair<int, int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  auto one = [](std::string_view s) {
    const auto v = detail::parse_u64(s, "--n");
    if (v > 1000) throw UsageError("--n out of range");
    return static_cast<int>(v);
  };
  if (dots == std::string::npos) {
    const int v = one(text);
    return {v, v};
  }
  return {one(std::string_view(text).substr(0, dots)), one(std::string_view(text).substr(dots + 2))};
}

inline int require_single_n(const Options& o) {
  if (!o.n) throw UsageError("--n is required");
  const auto [lo, hi] = parse_n_range(*o.n);
  if (lo != hi) throw UsageError("--n takes a single degree here");
  if (lo < 1) throw UsageError("--n must be >= 1");
  return lo;
}

inline CensusOptions census_options(const Options& o) {
  CensusOptions c;
  c.workers = resolve_workers(o.workers);
  if (o.budget) {
    if (!(*o.budget >= 1.0) || *o.budget > 1.8e19) throw UsageError("--budget must be a positive count");
    c.budget = static_cast<std::uint64_t>(*o.budget);
  }
  return c;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  return f;
}

inline void flag_large_s(const RestrictedSet& R, std::ostream& err) {
  if (double(R.s()) > std::sqrt(double(R.q())) / 2.0)
    err << "note: s = " << R.s() << " exceeds sqrt(q)/2 = " << std::sqrt(double(R.q())) / 2.0
        << "; outside the range of the asymptotic\n";
}

inline int run_count(const Options& o, std::ostream& out, std::ostream& err) {
  const auto F = require_field(o);
  const int n = require_single_n(o);
  const auto R = RestrictedSet::parse(F, o.forbid);
  const auto opts = census_options(o);
  if (o.json_path || o.csv_path) {
    const auto rep = census_report(R, n, opts);
    if (rep.error) throw BudgetExceeded("census", *rep.error);
    out << rep.exact.str() << '\n';
    if (o.json_path) {
      auto f = open_output(*o.json_path);
      write_json_lines(f, std::vector<CensusReport>{rep});
    }
    if (o.csv_path) {
      auto f = open_output(*o.csv_path);
      write_csv(f, {rep});
    }
    return kExitOk;
  }
  out << count_restricted(R, n, opts).str() << '\n';
  (void)err;
  return kExitOk;
}

inline int run_predict(const Options& o, std::ostream& out, std::ostream& err) {
  const auto F = require_field(o);
  const int n = require_single_n(o);
  const auto R = RestrictedSet::parse(F, o.forbid);
  flag_large_s(R, err);
  const auto P = PredictorParams::of(R, n);
  const auto M = main_term(P);
  const auto B = error_budget(P.q, P.s, n);
  auto row = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(18) << k << v << '\n'; };
  row("field", F->spec().to_string());
  row("forbidden", "{" + R.format() + "}");
  row("n", std::to_string(n));
  row("lambda", detail::rational_to_string(P.lambda()));
  row("predictor", detail::fixed(predictor(P), 6));
  row("main_term", detail::fixed(to_double(M), 6) + "  (" + detail::rational_to_string(M) + ")");
  std::ostringstream b;
  b << std::scientific << std::setprecision(4);
  b << B.total;
  row("budget_total", b.str());
  b.str("");
  b << B.term_weil << " / " << B.term_minor_small << " / " << B.term_minor_large << "  (U=" << B.U << ")";
  row("budget_terms", b.str());
  return kExitOk;
}

inline int run_scan(const Options& o, std::ostream& out, std::ostream& err) {
  const auto F = require_field(o);
  if (!o.n) throw UsageError("--n is required");
  const auto [lo, hi] = parse_n_range(*o.n);
  if (lo < 1) throw UsageError("--n must be >= 1");
  const auto R = RestrictedSet::parse(F, o.forbid);
  flag_large_s(R, err);
  const auto rows = scan(R, lo, hi, census_options(o));
  write_census_table(out, rows);
  if (o.json_path) {
    auto f = open_output(*o.json_path);
    write_json_lines(f, rows);
  }
  if (o.csv_path) {
    auto f = open_output(*o.csv_path);
    write_csv(f, rows);
  }
  for (const auto& r : rows)
    if (r.error) return kExitBudget;
  return kExitOk;
}

inline int run_verify(const Options& o, std::ostream& out, std::ostream&) {
  CheckParams P;
  P.field = field_spec(o);
  if (o.n) {
    const auto [lo, hi] = parse_n_range(*o.n);
    if (lo < 1) throw UsageError("--n must be >= 1");
    P.n_lo = lo;
    P.n_hi = hi;
  }
  if (o.d_max && *o.d_max < 1) throw UsageError("--d-max must be >= 1");
  P.d_max = o.d_max;
  if (!o.forbid.empty()) P.forbid = o.forbid;
  const auto co = census_options(o);
  P.workers = co.workers;
  P.budget = co.budget;
  P.seedless = o.seedless;

  std::vector<std::string> ids;
  if (o.check == "all") {
    ids = check_ids();
  } else {
    if (std::find(check_ids().begin(), check_ids().end(), o.check) == check_ids().end())
      throw UsageError("unknown check id: " + o.check);
    ids = {o.check};
  }
  std::vector<CheckResult> results;
  for (const auto& id : ids) results.push_back(run_check(id, P));
  write_check_table(out, results);
  if (o.json_path) {
    auto f = open_output(*o.json_path);
    write_json_lines(f, results);
  }
  for (const auto& r : results)
    if (!r.pass) return kExitFailed;
  return kExitOk;
}

inline int run_bench(const Options& o, std::ostream& out, std::ostream&) {
  Options d = o;
  if (!d.q) d.q = 17;
  if (!d.n) d.n = "4";
  if (!o.q && d.forbid.empty()) d.forbid = "0";
  const auto F = require_field(d);
  const int n = require_single_n(d);
  const auto R = RestrictedSet::parse(F, d.forbid);
  auto opts = census_options(d);
  std::vector<unsigned> counts = {1};
  if (opts.workers > 1) counts.push_back(opts.workers);
  out << std::left << std::setw(9) << "workers" << std::right << std::setw(14) << "count" << std::setw(10) << "secs"
      << std::setw(14) << "polys/s" << '\n';
  std::optional<BigInt> first;
  for (unsigned w : counts) {
    opts.workers = w;
    const auto start = std::chrono::steady_clock::now();
    const BigInt c = count_restricted(R, n, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double polys = to_double(ipow(R.complement().size(), static_cast<unsigned>(n)));
    out << std::left << std::setw(9) << w << std::right << std::setw(14) << c.str() << std::setw(10)
        << detail::fixed(secs, 3) << std::setw(14) << detail::fixed(polys / std::max(secs, 1e-9), 0) << '\n';
    if (first && *first != c) throw NumericalFailure("worker counts disagree");
    first = c;
  }
  return kExitOk;
}

}  // namespace cli_detail

/// Returns the process exit code; never throws.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli_detail;
  Options o;
  CLI::App app{"Irreducible polynomials with restricted coefficients over finite fields"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "field order (prime power)");
    sub->add_option("--ext-modulus", o.ext_modulus, "modulus coefficients m0,...,mk for q = p^k");
    sub->add_option("--forbid", o.forbid, "forbidden coefficients, comma separated");
    sub->add_option("--workers", o.workers, "worker threads (default: FFDIGITS_WORKERS or hardware)");
    sub->add_option("--budget", o.budget, "polynomial test budget");
  };
  auto* count = app.add_subcommand("count", "exact count of restricted irreducibles");
  add_common(count);
  count->add_option("--n", o.n, "degree");
  count->add_option("--json", o.json_path, "write a JSON report line to FILE");
  count->add_option("--csv", o.csv_path, "write a CSV report to FILE");

  auto* predict = app.add_subcommand("predict", "asymptotic predictor, main term and error budget");
  add_common(predict);
  predict->add_option("--n", o.n, "degree");

  auto* scan_cmd = app.add_subcommand("scan", "census over a degree range, e.g. --n 2..5");
  add_common(scan_cmd);
  scan_cmd->add_option("--n", o.n, "degree or range lo..hi");
  scan_cmd->add_option("--json", o.json_path, "write JSON lines to FILE");
  scan_cmd->add_option("--csv", o.csv_path, "write CSV to FILE");

  auto* verify = app.add_subcommand("verify", "run one check or all of them");
  add_common(verify);
  verify->add_option("check", o.check, "check id or 'all'");
  verify->add_option("--n", o.n, "degree or range lo..hi");
  verify->add_option("--d-max", o.d_max, "maximum denominator degree");
  verify->add_flag("--seedless", o.seedless, "sample subsets by stride instead of a seeded generator");
  verify->add_option("--json", o.json_path, "write JSON lines to FILE");

  auto* bench = app.add_subcommand("bench", "census throughput for 1 and N workers");
  add_common(bench);
  bench->add_option("--n", o.n, "degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (count->parsed()) return run_count(o, out, err);
    if (predict->parsed()) return run_predict(o, out, err);
    if (scan_cmd->parsed()) return run_scan(o, out, err);
    if (verify->parsed()) return run_verify(o, out, err);
    return run_bench(o, out, err);
  } catch (const BudgetExceeded& e) {
    err << e.what() << '\n';
    return kExitBudget;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::logic_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace ffdigits
