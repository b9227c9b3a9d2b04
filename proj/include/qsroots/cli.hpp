#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsroots/eigensolver.hpp"
#include "qsroots/polyroots.hpp"

namespace qsroots::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSolver = 3;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv, Text };

struct JobSpec {
  Polynomial poly;
  SolveConfig cfg;
  std::optional<std::vector<double>> true_roots;
  OutputFormat format = OutputFormat::Json;
};

// {"basis":"monomial","coeffs":[m0,...]} or
// {"basis":"orthogonal","alpha":[...],"beta":[...],"coeffs":[...]}; numbers
// may be JSON numbers or decimal strings. An optional "degree" must match.
Polynomial parse_polynomial(const std::string& text);
// A JSON array of numbers/strings, or whitespace/comma separated numbers.
std::vector<double> parse_roots(const std::string& text);
OutputFormat parse_format(const std::string& name);

// max_i |x_i - x^_i| / |x_i| with each true root paired greedily (in
// ascending order) to the nearest unused computed root.
double relative_error(const std::vector<double>& truth, const std::vector<double>& computed);

// Writes the report (or the solver error) and returns kExitOk/kExitSolver.
int cmd_roots(const JobSpec& job, std::ostream& out);

enum class BalanceMode { Off, On, Both };

struct BenchSpec {
  std::string suite;
  std::size_t n_from = 10;
  std::size_t n_to = 10;
  std::size_t n_step = 1;
  std::uint64_t seed = 1;
  std::size_t trials = 10;  // random suite only
  BalanceMode balance = BalanceMode::Both;
  SolveConfig cfg;
};

struct BenchRow {
  std::string suite;
  std::size_t n = 0;
  bool balance = false;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double epsilon_median = 0.0;
  double epsilon_max = 0.0;
  double ni_mean = 0.0;
};

struct TestProblem {
  Polynomial poly;
  std::vector<double> roots;
};

const std::vector<std::string>& suite_names();
// Builds one polynomial of the suite from its exact roots. The random suite
// draws trial `trial` of degree n from a generator seeded with (seed, n, trial).
TestProblem make_problem(const std::string& suite, std::size_t n, std::uint64_t seed,
                         std::size_t trial);

std::vector<BenchRow> run_bench(const BenchSpec& spec);
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);
void write_bench_text(const std::vector<BenchRow>& rows, std::ostream& out);
std::vector<BenchRow> read_bench_csv(std::istream& in);

// Full command line entry point: `roots` and `bench` subcommands.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qsroots::cli
