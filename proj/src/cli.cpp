#include "qsroots/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsroots/error.hpp"

namespace qsroots::cli {

namespace {

using nlohmann::json;

double number_from(const json& v, const char* field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && std::isfinite(x)) return x;
  }
  throw ParseError(std::string("field '") + field + "' holds a non-numeric entry");
}

std::vector<double> numbers_from(const json& obj, const char* field) {
  if (!obj.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const json& arr = obj.at(field);
  if (!arr.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(number_from(v, field));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double_field(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double x = std::stod(s, &used);
  if (used != s.size()) throw ParseError("bad number '" + s + "'");
  return x;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

void write_report_json(const JobSpec& job, const RootReport& r, std::optional<double> eps,
                       std::ostream& out) {
  json j;
  j["status"] = "ok";
  j["basis"] = job.poly.basis == BasisKind::Monomial ? "monomial" : "orthogonal";
  j["balance"] = job.cfg.balance;
  j["roots"] = r.roots;
  j["iters"] = r.iters;
  j["total_iters"] = r.total_iters;
  j["iters_per_root"] = r.iters_per_root;
  j["breakdown_retries"] = r.breakdown_retries;
  json log = json::array();
  for (const auto& e : r.deflation_log)
    log.push_back({{"active_size", e.active_size},
                   {"shift", e.shift},
                   {"trailing_diagonal", e.trailing_diagonal},
                   {"criterion", e.criterion}});
  j["deflation_log"] = log;
  if (eps) j["epsilon"] = *eps;
  out << j.dump(2) << "\n";
}

void write_report_csv(const RootReport& r, std::optional<double> eps, std::ostream& out) {
  out << "index,root,iters\n";
  for (std::size_t i = 0; i < r.roots.size(); ++i)
    out << i << "," << fmt17(r.roots[i]) << "," << r.iters[i] << "\n";
  out << "# total_iters," << r.total_iters << "\n";
  out << "# iters_per_root," << fmt17(r.iters_per_root) << "\n";
  if (eps) out << "# epsilon," << fmt17(*eps) << "\n";
}

void write_report_text(const RootReport& r, std::optional<double> eps, std::ostream& out) {
  std::vector<double> sorted = r.roots;
  std::sort(sorted.begin(), sorted.end());
  out << "degree " << r.roots.size() << ", " << r.total_iters << " sweeps, "
      << std::setprecision(3) << r.iters_per_root << " per root\n";
  for (std::size_t i = 0; i < sorted.size(); ++i)
    out << std::setw(4) << i + 1 << "  " << std::setw(26) << std::setprecision(17) << sorted[i]
        << "\n";
  if (eps) out << "relative error " << std::scientific << std::setprecision(3) << *eps
               << std::defaultfloat << "\n";
}

BalanceMode parse_balance_mode(const std::string& s) {
  if (s == "on") return BalanceMode::On;
  if (s == "off") return BalanceMode::Off;
  if (s == "both") return BalanceMode::Both;
  throw ParseError("balance must be on, off or both");
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("polynomial must be a JSON object");
  const std::string basis = j.value("basis", std::string("monomial"));
  std::vector<double> coeffs = numbers_from(j, "coeffs");
  if (coeffs.empty()) throw ParseError("polynomial degree must be at least 1");
  if (j.contains("degree")) {
    if (!j["degree"].is_number_integer() || j["degree"].get<long>() != static_cast<long>(coeffs.size()))
      throw ParseError("declared degree does not match the number of coefficients");
  }

  Polynomial p;
  if (basis == "monomial") {
    p = Polynomial::monomial(std::move(coeffs));
  } else if (basis == "orthogonal") {
    p = Polynomial::orthogonal(numbers_from(j, "alpha"), numbers_from(j, "beta"), std::move(coeffs));
  } else {
    throw ParseError("unknown basis '" + basis + "'");
  }
  try {
    p.check();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return p;
}

std::vector<double> parse_roots(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number_from(v, "true_roots"));
    return out;
  }
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      out.push_back(parse_double_field(tok));
    } catch (const std::exception&) {
      throw ParseError("bad root value '" + tok + "'");
    }
  }
  return out;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw ParseError("unknown format '" + name + "'");
}

double relative_error(const std::vector<double>& truth, const std::vector<double>& computed) {
  std::vector<double> t = truth;
  std::sort(t.begin(), t.end());
  std::vector<bool> used(computed.size(), false);
  double eps = 0.0;
  for (double x : t) {
    std::size_t best = computed.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < computed.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(computed[i] - x);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best == computed.size()) return std::numeric_limits<double>::infinity();
    used[best] = true;
    eps = std::max(eps, best_dist / std::abs(x));
  }
  return eps;
}

int cmd_roots(const JobSpec& job, std::ostream& out) {
  RootReport report;
  try {
    report = roots(job.poly, job.cfg);
  } catch (const Error& e) {
    if (job.format == OutputFormat::Json) {
      json j{{"status", "error"}, {"error", std::string(e.name())}, {"message", e.what()}};
      out << j.dump(2) << "\n";
    } else {
      out << "error," << e.name() << "," << e.what() << "\n";
    }
    return kExitSolver;
  }

  std::optional<double> eps;
  if (job.true_roots) eps = relative_error(*job.true_roots, report.roots);
  switch (job.format) {
    case OutputFormat::Json: write_report_json(job, report, eps, out); break;
    case OutputFormat::Csv: write_report_csv(report, eps, out); break;
    case OutputFormat::Text: write_report_text(report, eps, out); break;
  }
  return kExitOk;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wilkinson1", "wilkinson1_reversed", "wilkinson2",
                                              "random_loguniform", "wilkinson1_chebyshev"};
  return names;
}

TestProblem make_problem(const std::string& suite, std::size_t n, std::uint64_t seed,
                         std::size_t trial) {
  if (n == 0) throw ParseError("degree must be at least 1");
  TestProblem tp;
  tp.roots.resize(n);
  if (suite == "wilkinson1" || suite == "wilkinson1_chebyshev") {
    for (std::size_t i = 0; i < n; ++i) tp.roots[i] = static_cast<double>(i + 1);
  } else if (suite == "wilkinson1_reversed") {
    for (std::size_t i = 0; i < n; ++i) tp.roots[i] = 1.0 / static_cast<double>(i + 1);
  } else if (suite == "wilkinson2") {
    for (std::size_t i = 0; i < n; ++i) tp.roots[i] = std::pow(0.6, static_cast<double>(i + 1));
  } else if (suite == "random_loguniform") {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (auto& r : tp.roots) {
      const double x = unit(rng);
      const double y = unit(rng);
      r = x * std::pow(10.0, 5.0 * y);
    }
  } else {
    throw ParseError("unknown suite '" + suite + "'");
  }

  if (suite == "wilkinson1_chebyshev") {
    const auto [lo, hi] = std::minmax_element(tp.roots.begin(), tp.roots.end());
    const auto [alpha, beta] = chebyshev2_recurrence(n, *lo - 1.0, *hi + 1.0);
    tp.poly = orthogonal_from_roots(tp.roots, alpha, beta);
  } else {
    tp.poly = Polynomial::monomial(coefficients_from_roots(tp.roots));
  }
  return tp;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  if (std::find(suite_names().begin(), suite_names().end(), spec.suite) == suite_names().end())
    throw ParseError("unknown suite '" + spec.suite + "'");
  if (spec.n_from == 0 || spec.n_to < spec.n_from || spec.n_step == 0)
    throw ParseError("invalid degree range");
  const std::size_t trials = spec.suite == "random_loguniform" ? std::max<std::size_t>(spec.trials, 1) : 1;

  std::vector<bool> modes;
  if (spec.balance != BalanceMode::On) modes.push_back(false);
  if (spec.balance != BalanceMode::Off) modes.push_back(true);

  std::vector<BenchRow> rows;
  for (std::size_t n = spec.n_from; n <= spec.n_to; n += spec.n_step) {
    std::vector<TestProblem> problems;
    for (std::size_t t = 0; t < trials; ++t) problems.push_back(make_problem(spec.suite, n, spec.seed, t));
    for (bool balance : modes) {
      BenchRow row;
      row.suite = spec.suite;
      row.n = n;
      row.balance = balance;
      row.trials = trials;
      SolveConfig cfg = spec.cfg;
      cfg.balance = balance;
      std::vector<double> eps;
      double ni_sum = 0.0;
      for (const auto& tp : problems) {
        try {
          const RootReport r = roots(tp.poly, cfg);
          eps.push_back(relative_error(tp.roots, r.roots));
          ni_sum += r.iters_per_root;
        } catch (const Error&) {
          ++row.failures;
        }
      }
      row.epsilon_median = median(eps);
      row.epsilon_max = eps.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : *std::max_element(eps.begin(), eps.end());
      row.ni_mean = eps.empty() ? std::numeric_limits<double>::quiet_NaN()
                                : ni_sum / static_cast<double>(eps.size());
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "suite,n,balance,trials,failures,epsilon_median,epsilon_max,ni_mean\n";
  for (const auto& r : rows)
    out << r.suite << "," << r.n << "," << (r.balance ? "on" : "off") << "," << r.trials << ","
        << r.failures << "," << fmt17(r.epsilon_median) << "," << fmt17(r.epsilon_max) << ","
        << fmt17(r.ni_mean) << "\n";
}

void write_bench_text(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << std::left << std::setw(22) << "suite" << std::right << std::setw(5) << "n" << std::setw(9)
      << "balance" << std::setw(8) << "trials" << std::setw(6) << "fail" << std::setw(12)
      << "eps(med)" << std::setw(12) << "eps(max)" << std::setw(8) << "ni" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(22) << r.suite << std::right << std::setw(5) << r.n
        << std::setw(9) << (r.balance ? "on" : "off") << std::setw(8) << r.trials << std::setw(6)
        << r.failures << std::scientific << std::setprecision(2) << std::setw(12)
        << r.epsilon_median << std::setw(12) << r.epsilon_max << std::fixed << std::setprecision(2)
        << std::setw(8) << r.ni_mean << std::defaultfloat << "\n";
  }
}

std::vector<BenchRow> read_bench_csv(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw ParseError("bench row needs 8 fields: " + line);
    BenchRow r;
    r.suite = f[0];
    r.n = std::stoul(f[1]);
    r.balance = f[2] == "on";
    r.trials = std::stoul(f[3]);
    r.failures = std::stoul(f[4]);
    r.epsilon_median = parse_double_field(f[5]);
    r.epsilon_max = parse_double_field(f[6]);
    r.ni_mean = parse_double_field(f[7]);
    rows.push_back(r);
  }
  return rows;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial roots by quasiseparable dqds iterations", "qsroots"};
  app.require_subcommand(1);

  std::string input, true_roots_file, balance = "on", format = "json";
  double tol = SolveConfig{}.deflation_tol;
  int max_iter = SolveConfig{}.max_iters_per_root;
  auto* roots_cmd = app.add_subcommand("roots", "find the roots of one polynomial");
  roots_cmd->add_option("--input", input, "polynomial JSON file")->required();
  roots_cmd->add_option("--balance", balance, "on|off")->check(CLI::IsMember({"on", "off"}));
  roots_cmd->add_option("--tol", tol, "deflation tolerance")->check(CLI::PositiveNumber);
  roots_cmd->add_option("--max-iter", max_iter, "sweeps allowed per root")->check(CLI::PositiveNumber);
  roots_cmd->add_option("--true-roots", true_roots_file, "exact roots for error reporting");
  roots_cmd->add_option("--format", format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));

  BenchSpec bench;
  std::string bench_balance = "both", bench_format = "csv";
  auto* bench_cmd = app.add_subcommand("bench", "run a test-polynomial suite");
  bench_cmd->add_option("--suite", bench.suite, "suite name")->required();
  bench_cmd->add_option("--n-from", bench.n_from, "first degree")->required();
  bench_cmd->add_option("--n-to", bench.n_to, "last degree")->required();
  bench_cmd->add_option("--n-step", bench.n_step, "degree increment");
  bench_cmd->add_option("--seed", bench.seed, "random suite seed");
  bench_cmd->add_option("--trials", bench.trials, "random suite polynomials per degree");
  bench_cmd->add_option("--balance", bench_balance, "both|on|off")
      ->check(CLI::IsMember({"both", "on", "off"}));
  bench_cmd->add_option("--format", bench_format, "csv|text")->check(CLI::IsMember({"csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*roots_cmd) {
      JobSpec job;
      job.poly = parse_polynomial(read_file(input));
      job.cfg.balance = balance == "on";
      job.cfg.deflation_tol = tol;
      job.cfg.max_iters_per_root = max_iter;
      job.format = parse_format(format);
      if (!true_roots_file.empty()) {
        job.true_roots = parse_roots(read_file(true_roots_file));
        if (job.true_roots->size() != job.poly.degree())
          throw ParseError("number of true roots differs from the degree");
      }
      return cmd_roots(job, out);
    }
    bench.balance = parse_balance_mode(bench_balance);
    const auto rows = run_bench(bench);
    if (bench_format == "text")
      write_bench_text(rows, out);
    else
      write_bench_csv(rows, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "qsroots: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace qsroots::cli
