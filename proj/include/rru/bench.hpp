#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rru/engine.hpp"

namespace rru {

struct BenchRow {
  std::string program;
  std::string mode;
  std::string input;
  double unfold_ms = 0;
  double interp_ms = 0;
  double total_ms = 0;
  std::size_t apps = 0;
  std::size_t rounds = 0;
  std::size_t deck_size = 0;
};

// "program,mode,input,unfold_ms,interp_ms,total_ms,apps,rounds,deck_size"
std::string_view csv_header();
std::string to_csv(const BenchRow& row);
// Throws ParseError on malformed lines; the header line is required.
std::vector<BenchRow> read_csv(std::istream& in);

// Suites: sum, fib, gcd (second input 37), gcd2 (second input
// 2^(k/2) + 2^(k/4) - 1), rev, sort (random permutation).
struct BenchConfig {
  std::string suite;
  Mode mode = Mode::Unfold;
  // Exponents k, read as input 2^k (list length 2^k for rev and sort), or
  // literal sizes when `literal` is set.
  std::vector<std::size_t> sizes;
  bool literal = false;
  std::size_t reps = 1;
  bool cap_override = false;
};

// "18..22", "25,50,100" or a mix such as "4..6,10".
std::vector<std::size_t> parse_sizes(std::string_view text);

const std::vector<std::string>& bench_suites();

// Runs sizes in the given order; each row holds per-column medians over the
// repetitions. `on_row` sees each row as soon as it is measured.
std::vector<BenchRow> run_bench(const BenchConfig& config,
                                const std::function<void(const BenchRow&)>& on_row = {});

// One line for stderr describing compiler, build type and GMP version.
std::string environment_line();

struct FitReport {
  std::string program;
  std::string mode;
  // constant, linear, loglinear, polynomial, exponential or polylog
  std::string model;
  // Regression coefficient of the chosen model (the exponent k of a
  // polylog fit, the log-log slope of a power law, d ln t / dn for
  // exponential).
  double slope = 0;
  double intercept = 0;
  // Root mean square residual in ln(time).
  double residual = 0;
  std::size_t points = 0;
};

// Naive series are fitted on log-log axes and against an exponential;
// unfold series as ln t against ln log2 n. Series need two or more points.
std::vector<FitReport> fit_rows(const std::vector<BenchRow>& rows);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;
};
// Least squares y = intercept + slope * x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rru
