// rru: run, unfold and benchmark guarded-rule programs.
//
// Exit codes: 0 success, 1 logical failure, 2 no progress, 3 parse or
// configuration error, 4 resource limit.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <new>
#include <sstream>

#include "CLI11.hpp"
#include "rru/bench.hpp"
#include "rru/engine.hpp"
#include "rru/errors.hpp"
#include "rru/oracle.hpp"
#include "rru/printer.hpp"
#include "rru/programs.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kNoProgress = 2, kConfig = 3, kResource = 4 };

struct QueryArgs {
  std::vector<std::string> positional;
  std::string program_file;
  std::string mode = "unfold";
  bool cap_override = false;
};

void add_query_options(CLI::App* cmd, QueryArgs& q, bool with_mode) {
  // Positionals are collected raw: CLI11 would split bracketed lists.
  cmd->allow_extras();
  cmd->positionals_at_end(false);
  cmd->usage(cmd->get_name() + " [OPTIONS] PROGRAM INPUT...  (only INPUT... with --program-file)");
  cmd->add_option("--program-file", q.program_file, "Load the program from a rule file");
  if (with_mode) {
    cmd->add_option("--mode", q.mode, "unfold or naive")->check(CLI::IsMember({"unfold", "naive"}));
    cmd->add_flag("--cap-override", q.cap_override, "Allow naive runs above the input caps");
  }
}

struct Query {
  rru::Engine engine;
  rru::Term goal;
  std::vector<rru::Integer> int_inputs;
};

Query make_query(const QueryArgs& q) {
  std::vector<std::string> args = q.positional;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) == 0) throw rru::ConfigError("unknown option '" + a + "'");
  }
  std::optional<rru::Engine> engine;
  if (!q.program_file.empty()) {
    engine.emplace(rru::Engine::from_file(q.program_file));
  } else {
    if (args.empty()) throw rru::ParseError(1, 1, "missing program name");
    if (!rru::shipped_program_text(args.front())) {
      throw rru::ConfigError("unknown program '" + args.front() + "'");
    }
    engine.emplace(rru::Engine::shipped(args.front()));
    args.erase(args.begin());
  }
  std::vector<rru::Term> inputs;
  std::vector<rru::Integer> ints;
  for (const std::string& a : args) {
    inputs.push_back(rru::parse_input(a, engine->session()));
    const rru::Term& t = rru::deref(inputs.back());
    if (t.is_int()) ints.push_back(t.integer_value());
  }
  rru::Term goal = engine->make_goal(inputs);
  return Query{std::move(*engine), goal, ints};
}

void print_answer(const rru::RunResult& r) {
  rru::VarNaming names;
  std::cout << "R = " << rru::format_term(r.answer, names) << '\n';
}

void print_stats(const rru::RunResult& r) {
  auto ms = [](std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); };
  std::cerr << std::fixed << std::setprecision(3) << "% apps=" << r.applications << " rounds=" << r.rounds
            << " unfold_steps=" << r.unfold_steps << " decks=[";
  for (std::size_t i = 0; i < r.deck_sizes.size(); ++i) std::cerr << (i ? "," : "") << r.deck_sizes[i];
  std::cerr << "] unfold_ms=" << ms(r.unfold_time) << " interp_ms=" << ms(r.interp_time)
            << " total_ms=" << ms(r.total_time) << '\n';
}

int cmd_run(const QueryArgs& q, bool force_naive) {
  Query query = make_query(q);
  rru::RunOptions opts;
  opts.mode = force_naive ? rru::Mode::Naive : rru::parse_mode(q.mode);
  opts.cap_override = q.cap_override;
  const rru::RunResult r = query.engine.run(query.goal, opts);
  if (!r.success) {
    std::cout << "false\n";
    print_stats(r);
    return kFailure;
  }
  print_answer(r);
  if (force_naive) {
    try {
      const rru::Integer expected = rru::closed_form(query.engine.program().name, query.int_inputs);
      const rru::Term& a = rru::deref(r.answer);
      const bool agrees = a.is_int() && a.integer_value() == expected;
      std::cout << "% closed form " << (agrees ? "agrees" : "DIFFERS: " + expected.to_string()) << '\n';
      if (!agrees) return kFailure;
    } catch (const rru::UnsupportedPredicate&) {
      // no closed form for this program
    }
  }
  print_stats(r);
  return kOk;
}

int cmd_unfold(const QueryArgs& q) {
  Query query = make_query(q);
  const std::vector<rru::UnfoldResult> decks = query.engine.unfold(query.goal);
  for (std::size_t i = 0; i < decks.size(); ++i) {
    std::cout << "% deck " << i << ": " << decks[i].deck.size() << " rules, " << decks[i].stats.steps
              << " unfolding steps\n";
    std::cout << rru::format_deck(decks[i].deck);
  }
  return kOk;
}

int cmd_bench(const std::string& suite, const std::string& mode, const std::string& sizes, std::size_t reps,
              bool literal, bool cap_override) {
  rru::BenchConfig c;
  c.suite = suite;
  c.mode = rru::parse_mode(mode);
  c.sizes = rru::parse_sizes(sizes);
  c.literal = literal;
  c.reps = reps;
  c.cap_override = cap_override;
  std::cerr << rru::environment_line() << '\n';
  std::cout << rru::csv_header() << '\n' << std::flush;
  rru::run_bench(c, [](const rru::BenchRow& row) { std::cout << rru::to_csv(row) << '\n' << std::flush; });
  return kOk;
}

int cmd_fit(const std::string& path) {
  std::vector<rru::BenchRow> rows;
  if (path.empty() || path == "-") {
    rows = rru::read_csv(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) throw rru::ParseError(1, 1, "cannot read " + path);
    rows = rru::read_csv(in);
  }
  std::cout << "program,mode,model,slope,intercept,residual,points\n";
  std::cout << std::fixed << std::setprecision(4);
  for (const rru::FitReport& f : rru::fit_rows(rows)) {
    std::cout << f.program << ',' << f.mode << ',' << f.model << ',' << f.slope << ',' << f.intercept << ','
              << f.residual << ',' << f.points << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guarded-rule programs with runtime repeated recursion unfolding"};
  app.require_subcommand(1);

  QueryArgs run_q;
  CLI::App* run = app.add_subcommand("run", "Solve a query and print the answer");
  add_query_options(run, run_q, true);

  QueryArgs oracle_q;
  CLI::App* oracle = app.add_subcommand("oracle", "Solve a query with the naive interpreter");
  add_query_options(oracle, oracle_q, false);
  oracle->add_flag("--cap-override", oracle_q.cap_override, "Allow inputs above the naive caps");

  QueryArgs unfold_q;
  CLI::App* unfold = app.add_subcommand("unfold", "Print the unfolded decks for a query");
  add_query_options(unfold, unfold_q, false);

  std::string suite;
  std::string bench_mode = "unfold";
  std::string sizes;
  std::size_t reps = 1;
  bool literal = false;
  bool bench_cap_override = false;
  CLI::App* bench = app.add_subcommand("bench", "Benchmark a suite and write CSV to stdout");
  bench->add_option("suite", suite, "sum, fib, gcd, gcd2, rev or sort")->required();
  bench->add_option("--mode", bench_mode, "unfold or naive")->check(CLI::IsMember({"unfold", "naive"}));
  bench->add_option("--sizes", sizes, "Exponents k (input 2^k), e.g. 18..22 or 25,50,100")->required();
  bench->add_option("--reps", reps, "Repetitions per size; the median is reported")->check(CLI::PositiveNumber);
  bench->add_flag("--literal", literal, "Read sizes as the inputs themselves");
  bench->add_flag("--cap-override", bench_cap_override, "Allow naive runs above the input caps");

  std::string csv_path;
  CLI::App* fit = app.add_subcommand("fit", "Fit growth models to bench CSV");
  fit->add_option("csv", csv_path, "CSV file, or - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  run_q.positional = run->remaining();
  oracle_q.positional = oracle->remaining();
  unfold_q.positional = unfold->remaining();

  try {
    if (*run) return cmd_run(run_q, false);
    if (*oracle) return cmd_run(oracle_q, true);
    if (*unfold) return cmd_unfold(unfold_q);
    if (*bench) return cmd_bench(suite, bench_mode, sizes, reps, literal, bench_cap_override);
    if (*fit) return cmd_fit(csv_path);
  } catch (const rru::NoProgress& e) {
    std::cerr << "no progress: " << e.what() << '\n';
    return kNoProgress;
  } catch (const rru::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kConfig;
  } catch (const rru::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const rru::CapExceeded& e) {
    std::cerr << "resource limit: " << e.what() << " (use --cap-override)\n";
    return kResource;
  } catch (const rru::StepLimitExceeded& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kResource;
  } catch (const rru::EngineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kConfig;
}
