#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "netnl/criteria.hpp"
#include "netnl/errors.hpp"

namespace netnl {

struct GridAxis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  int point_count() const { return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1; }
  double value(int i) const { return lo + i * step; }
};

inline const std::set<std::string>& sweep_axis_names() {
  static const std::set<std::string> names = {"q", "p", "t", "l1", "l3", "k", "n", "m1", "m2"};
  return names;
}

// Grid spec format: "t=0:1:0.02,l1=0:1:0.02,l3=0:1:0.02".
inline std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> axes;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string part = spec.substr(pos, comma - pos);
    pos = comma + 1;
    if (part.empty()) continue;
    const size_t eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("grid axis '" + part + "' is missing '='");
    GridAxis axis;
    axis.name = part.substr(0, eq);
    if (!sweep_axis_names().count(axis.name))
      throw ParseError("unknown grid axis '" + axis.name + "'");
    const std::string range = part.substr(eq + 1);
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
      throw ParseError("grid axis '" + part + "' must have the form name=lo:hi:step");
    if (!(step > 0.0)) throw ParseError("grid step must be positive");
    if (hi < lo) throw ParseError("grid range must be non-decreasing");
    axis.lo = lo;
    axis.hi = hi;
    axis.step = step;
    axes.push_back(axis);
  }
  if (axes.empty()) throw ParseError("grid spec is empty");
  return axes;
}

struct SweepRow {
  std::vector<double> axis_values;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string verdict;  // breaking | preserving | inconclusive
};

struct SweepResult {
  std::vector<std::string> columns;  // axis names, then lhs, rhs, verdict
  std::vector<SweepRow> rows;
};

namespace detail {

inline double param_or(const std::map<std::string, double>& p, const std::string& name,
                       double fallback) {
  auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

inline int int_param(const std::map<std::string, double>& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw ParseError("sweep criterion needs parameter '" + name + "'");
  return static_cast<int>(std::llround(it->second));
}

inline RandomUnitaryChannel ru_from_params(const std::map<std::string, double>& p) {
  if (p.count("q")) return depolarizing(p.at("q"));
  if (p.count("p")) return dephasing(p.at("p"));
  throw ParseError("unital sweep criteria need a 'q' or 'p' parameter");
}

inline PauliDampingChannel nu_from_params(const std::map<std::string, double>& p) {
  PauliDampingChannel c;
  c.t = param_or(p, "t", 0.0);
  c.lambda1 = param_or(p, "l1", 0.0);
  c.lambda3 = param_or(p, "l3", 0.0);
  return c;
}

inline std::string verdict_token(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::breaking_certified:
      return "breaking";
    case VerdictStatus::preserving_certified:
      return "preserving";
    case VerdictStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace detail

// Evaluates one criterion at one parameter point. Channels outside their
// validity region are never certified; their raw lhs/rhs are still reported
// so region plots cover the full grid.
inline SweepRow evaluate_sweep_point(const std::string& criterion,
                                     const std::map<std::string, double>& p) {
  SweepRow row;
  auto from_verdict = [&row](const Verdict& v) {
    row.lhs = v.criterion_lhs;
    row.rhs = v.criterion_rhs;
    row.verdict = detail::verdict_token(v.status);
  };
  if (criterion == "thm1") {
    from_verdict(thm1_unital_linear(detail::ru_from_params(p), detail::int_param(p, "k")));
  } else if (criterion == "thm2") {
    from_verdict(thm2_unital_preserving(detail::ru_from_params(p),
                                        static_cast<int>(detail::param_or(p, "n", 2)),
                                        static_cast<int>(detail::param_or(p, "k", 1))));
  } else if (criterion == "thm4") {
    from_verdict(thm4_unital_star(detail::ru_from_params(p), detail::int_param(p, "k"),
                                  detail::int_param(p, "n")));
  } else if (criterion == "thm5") {
    from_verdict(thm5_unital_preserving_star(detail::ru_from_params(p),
                                             static_cast<int>(detail::param_or(p, "n", 2)),
                                             static_cast<int>(detail::param_or(p, "k", 1))));
  } else if (criterion == "thm8") {
    from_verdict(thm8_unital_fnn(detail::ru_from_params(p), detail::int_param(p, "k")));
  } else if (criterion == "thm3" || criterion == "thm6" || criterion == "thm7" ||
             criterion == "thm9") {
    const PauliDampingChannel c = detail::nu_from_params(p);
    const bool valid = pauli_damping_valid(c);
    if (criterion == "thm3") {
      if (valid) {
        from_verdict(thm3_nonunital_linear(c));
      } else {
        const NonUnitalTerms terms = nonunital_criterion_terms(c);
        row.lhs = std::max(terms.quadratic, terms.quartic);
        row.rhs = 1.0;
        row.verdict = "inconclusive";
      }
    } else if (criterion == "thm6") {
      const int m1 = detail::int_param(p, "m1"), m2 = detail::int_param(p, "m2");
      const int n = detail::int_param(p, "n");
      if (valid) {
        from_verdict(thm6_nonunital_star(c, m1, m2, n));
      } else {
        const NonUnitalTerms terms = nonunital_criterion_terms(c);
        row.lhs = std::pow(terms.quartic, m2) * std::pow(terms.quadratic, m1);
        row.rhs = std::pow(2.0, 0.5 * (2.0 - n) * (m1 + m2));
        row.verdict = "inconclusive";
      }
    } else if (criterion == "thm7") {
      const int m1 = detail::int_param(p, "m1"), m2 = detail::int_param(p, "m2");
      const int n = detail::int_param(p, "n");
      if (valid) {
        from_verdict(thm7_nonunital_preserving_star(c, m1, m2, n));
      } else {
        const double l1sq = c.lambda1 * c.lambda1, l3sq = c.lambda3 * c.lambda3;
        const double two_sided = c.t * c.t + l3sq;
        row.lhs = std::sqrt(
            std::pow(std::max(l1sq, l3sq), static_cast<double>(m1) / n) *
                std::pow(std::max(l1sq * l1sq, two_sided * two_sided),
                         static_cast<double>(m2) / n) +
            std::pow(std::min(l1sq, l3sq), static_cast<double>(m1) / n) *
                std::pow(std::min(l1sq * l1sq, two_sided * two_sided),
                         static_cast<double>(m2) / n));
        row.rhs = 1.0;
        row.verdict = "inconclusive";
      }
    } else {
      const int m1 = detail::int_param(p, "m1"), m2 = detail::int_param(p, "m2");
      if (valid) {
        from_verdict(thm9_nonunital_fnn(c, m1, m2));
      } else {
        const NonUnitalTerms terms = nonunital_criterion_terms(c);
        row.lhs = std::pow(terms.quartic, m2) * std::pow(terms.quadratic, m1);
        row.rhs = std::pow(2.0, (2.0 - 3.0 * (m1 + m2)) / 6.0);
        row.verdict = "inconclusive";
      }
    }
  } else {
    throw ParseError("unknown sweep criterion '" + criterion + "'");
  }
  return row;
}

// Row order is the lexicographic grid order: first axis slowest, last
// fastest, independent of evaluation strategy.
inline SweepResult run_sweep(const std::string& criterion, const std::vector<GridAxis>& axes,
                             const std::map<std::string, double>& fixed) {
  SweepResult result;
  for (const auto& a : axes) result.columns.push_back(a.name);
  result.columns.insert(result.columns.end(), {"lhs", "rhs", "verdict"});

  std::vector<int> counts;
  long total = 1;
  for (const auto& a : axes) {
    counts.push_back(a.point_count());
    total *= a.point_count();
  }
  result.rows.reserve(static_cast<size_t>(total));
  std::vector<int> idx(axes.size(), 0);
  for (long row_i = 0; row_i < total; ++row_i) {
    std::map<std::string, double> params = fixed;
    std::vector<double> values;
    values.reserve(axes.size());
    for (size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].value(idx[a]);
      params[axes[a].name] = v;
      values.push_back(v);
    }
    SweepRow row = evaluate_sweep_point(criterion, params);
    row.axis_values = std::move(values);
    result.rows.push_back(std::move(row));
    for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
      if (++idx[static_cast<size_t>(a)] < counts[static_cast<size_t>(a)]) break;
      idx[static_cast<size_t>(a)] = 0;
    }
  }
  return result;
}

inline std::string format_17g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv(const SweepResult& result, std::ostream& os) {
  for (size_t i = 0; i < result.columns.size(); ++i)
    os << (i ? "," : "") << result.columns[i];
  os << "\n";
  for (const auto& row : result.rows) {
    for (const auto& v : row.axis_values) os << format_17g(v) << ",";
    os << format_17g(row.lhs) << "," << format_17g(row.rhs) << "," << row.verdict << "\n";
  }
}

}  // namespace netnl
