#pragma once

#include <ffdigits/census.hpp>

#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ffdigits {

using Json = nlohmann::json;

struct Witness {
  std::string instance;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CheckResult {
  std::string check_id;
  Json params = Json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
  double max_violation = 0.0;
  std::uint64_t instances = 0;
  std::vector<Witness> witnesses;
  double elapsed_s = 0.0;
};

namespace detail {

inline std::string big_to_string(const BigInt& v) { return v.str(); }

inline std::string rational_to_string(const BigRational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string fixed(double v, int prec) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

}  // namespace detail

inline Json to_json(const Witness& w) { return {{"instance", w.instance}, {"lhs", w.lhs}, {"rhs", w.rhs}}; }

/// Elapsed time is left out so that records are reproducible run to run.
inline Json to_json(const CheckResult& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w));
  return {{"check", r.check_id}, {"params", r.params},         {"lhs", r.lhs},
          {"rhs", r.rhs},        {"pass", r.pass},             {"max_violation", r.max_violation},
          {"instances", r.instances}, {"witnesses", std::move(ws)}};
}

inline Json to_json(const CensusReport& r) {
  Json j = {{"q", r.q},
            {"s", r.s},
            {"forbidden", r.forbidden},
            {"n", r.n},
            {"exact", r.error ? Json(nullptr) : Json(detail::big_to_string(r.exact))},
            {"predictor", r.predictor},
            {"main_term", detail::rational_to_string(r.main_term)},
            {"ratio", r.error ? Json(nullptr) : Json(r.ratio)},
            {"lambda", detail::rational_to_string(r.lambda)},
            {"budget",
             {{"U", r.budget.U},
              {"term_weil", r.budget.term_weil},
              {"term_minor_small", r.budget.term_minor_small},
              {"term_minor_large", r.budget.term_minor_large},
              {"total", r.budget.total}}},
            {"elapsed_s", r.elapsed_s}};
  if (r.consecutive_l1_bound) j["consecutive_l1_bound"] = *r.consecutive_l1_bound;
  if (r.error) j["error"] = *r.error;
  return j;
}

/// One compact JSON document per line.
template <class T>
void write_json_lines(std::ostream& os, const std::vector<T>& items) {
  for (const auto& it : items) os << to_json(it).dump() << '\n';
}

inline const char* kCsvHeader = "q,s,forbidden,n,exact,predictor,ratio,lambda,budget_total,elapsed_s";

inline void write_csv(std::ostream& os, const std::vector<CensusReport>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.q << ',' << r.s << ',' << detail::csv_quote(r.forbidden) << ',' << r.n << ','
       << (r.error ? std::string() : detail::big_to_string(r.exact)) << ',' << detail::fixed(r.predictor, 6) << ','
       << (r.error ? std::string() : detail::fixed(r.ratio, 9)) << ',' << detail::rational_to_string(r.lambda) << ','
       << std::scientific << std::setprecision(6) << r.budget.total << std::defaultfloat << ','
       << detail::fixed(r.elapsed_s, 3) << '\n';
  }
}

inline void write_census_table(std::ostream& os, const std::vector<CensusReport>& rows) {
  os << std::left << std::setw(4) << "n" << std::right << std::setw(14) << "exact" << std::setw(18) << "predictor"
     << std::setw(14) << "ratio" << std::setw(10) << "lambda" << std::setw(14) << "|ratio-L|" << std::setw(14)
     << "budget" << std::setw(10) << "secs" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(4) << r.n << std::right;
    if (r.error) {
      os << "  error: " << *r.error << '\n';
      continue;
    }
    os << std::setw(14) << detail::big_to_string(r.exact) << std::setw(18) << detail::fixed(r.predictor, 4)
       << std::setw(14) << detail::fixed(r.ratio, 6) << std::setw(10) << detail::rational_to_string(r.lambda)
       << std::setw(14) << detail::fixed(r.deviation(), 6);
    std::ostringstream b;
    b << std::scientific << std::setprecision(3) << r.budget.total;
    os << std::setw(14) << b.str() << std::setw(10) << detail::fixed(r.elapsed_s, 3) << '\n';
  }
}

inline void write_check_table(std::ostream& os, const std::vector<CheckResult>& rows) {
  auto sci = [](double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(4) << v;
    return s.str();
  };
  os << std::left << std::setw(14) << "check" << std::setw(6) << "pass" << std::right << std::setw(14) << "lhs"
     << std::setw(14) << "rhs" << std::setw(14) << "max_viol" << std::setw(12) << "instances" << std::setw(9) << "secs"
     << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(14) << r.check_id << std::setw(6) << (r.pass ? "yes" : "NO") << std::right
       << std::setw(14) << sci(r.lhs) << std::setw(14) << sci(r.rhs) << std::setw(14) << sci(r.max_violation)
       << std::setw(12) << r.instances << std::setw(9) << detail::fixed(r.elapsed_s, 2) << '\n';
    if (!r.pass)
      for (const auto& w : r.witnesses)
        os << "    " << w.instance << "  lhs=" << sci(w.lhs) << " rhs=" << sci(w.rhs) << '\n';
  }
}

}  // namespace ffdigits
