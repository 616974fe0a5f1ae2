#include "rru/engine.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "rru/oracle.hpp"
#include "rru/parser.hpp"
#include "rru/printer.hpp"
#include "rru/programs.hpp"
#include "rru/round_robin.hpp"

namespace rru {

namespace {

constexpr std::int64_t kNaiveFibCap = 34;
constexpr unsigned kNaiveSumCapLog2 = 23;
constexpr std::size_t kNaiveListCap = std::size_t{1} << 15;
// Subtraction steps of the naive gcd: the sum of the Euclid quotients.
constexpr unsigned kNaiveGcdStepsCapLog2 = 24;

std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t n = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError(1, 1, "bad " + std::string(what) + " '" + std::string(s) + "'");
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (s.empty()) throw ParseError(1, 1, "missing " + std::string(what));
  return n;
}

Term int_list(const std::vector<std::int64_t>& xs) {
  std::vector<Term> items;
  items.reserve(xs.size());
  for (std::int64_t x : xs) items.push_back(Term::integer(x));
  return Term::list(items);
}

}  // namespace

Mode parse_mode(std::string_view text) {
  if (text == "unfold") return Mode::Unfold;
  if (text == "naive") return Mode::Naive;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected unfold or naive)");
}

std::string_view mode_name(Mode mode) { return mode == Mode::Unfold ? "unfold" : "naive"; }

Term parse_input(std::string_view text, Session& session) {
  if (text.substr(0, 2) == "2^") {
    std::string_view rest = text.substr(2);
    const std::size_t op = rest.find_first_of("+-");
    const std::size_t k = parse_count(rest.substr(0, op), "exponent");
    Integer v = Integer::pow2(k);
    if (op != std::string_view::npos) {
      const Integer j = Integer::from_string(rest.substr(op + 1));
      v = rest[op] == '+' ? v + j : v - j;
    }
    return Term::integer(std::move(v));
  }
  if (text.substr(0, 5) == "list:") {
    std::vector<std::int64_t> xs(parse_count(text.substr(5), "length"));
    std::iota(xs.begin(), xs.end(), 1);
    return int_list(xs);
  }
  if (text.substr(0, 5) == "perm:") {
    std::string_view rest = text.substr(5);
    const std::size_t colon = rest.find(':');
    const std::size_t n = parse_count(rest.substr(0, colon), "length");
    const std::uint64_t seed = colon == std::string_view::npos ? 1 : parse_count(rest.substr(colon + 1), "seed");
    std::vector<std::int64_t> xs(n);
    std::iota(xs.begin(), xs.end(), 1);
    std::mt19937_64 rng(seed);
    // Fisher-Yates with explicit index draws, so the permutation does not
    // depend on the standard library's shuffle.
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(xs[i - 1], xs[j]);
    }
    return int_list(xs);
  }
  return parse_term(text, session).term;
}

Engine::Engine(Program program, SchemeRegistry registry)
    : program_(std::move(program)), registry_(std::move(registry)) {
  for (std::size_t i = 0; i < program_.decks.size(); ++i) scheme_for(i);
}

Engine Engine::shipped(std::string_view name) {
  auto text = shipped_program_text(name);
  if (!text) throw ConfigError("unknown program '" + std::string(name) + "'");
  Session s;
  return Engine(parse_program(*text, s));
}

Engine Engine::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EngineError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Session s;
  return Engine(parse_program(buf.str(), s));
}

const Scheme& Engine::scheme_for(std::size_t deck) const {
  const std::string& name = deck < program_.schemes.size() ? program_.schemes[deck] : std::string();
  const Scheme* s = registry_.find(name);
  if (!s) throw ConfigError("deck " + std::to_string(deck) + " names no known scheme ('" + name + "')");
  return *s;
}

Term Engine::make_goal(const std::vector<Term>& inputs) {
  if (inputs.size() + 1 != program_.entry_arity) {
    throw ParseError(1, 1,
                     program_.entry.name() + "/" + std::to_string(program_.entry_arity) + " takes " +
                         std::to_string(program_.entry_arity - 1) + " input(s), got " +
                         std::to_string(inputs.size()));
  }
  std::vector<Term> args = inputs;
  args.push_back(session_.fresh_var());
  return Term::compound(program_.entry, args);
}

void Engine::check_naive_cap(const Term& goal) const {
  const Term& g = deref(goal);
  auto int_arg = [&](std::size_t i) -> const Integer* {
    if (i >= g.arity() || !deref(g.arg(i)).is_int()) return nullptr;
    return &deref(g.arg(i)).integer_value();
  };
  const std::string& name = program_.name;
  if (name == "fib") {
    const Integer* n = int_arg(0);
    if (n && *n > Integer(kNaiveFibCap)) {
      throw CapExceeded("naive fib is capped at n <= " + std::to_string(kNaiveFibCap));
    }
  } else if (name == "sum") {
    const Integer* n = int_arg(0);
    if (n && *n > Integer::pow2(kNaiveSumCapLog2)) {
      throw CapExceeded("naive sum is capped at n <= 2^" + std::to_string(kNaiveSumCapLog2));
    }
  } else if (name == "rev" || name == "sort") {
    std::vector<Term> items;
    if (g.arity() > 0 && list_elements(g.arg(0), items) && items.size() > kNaiveListCap) {
      throw CapExceeded("naive " + name + " is capped at lists of length <= " + std::to_string(kNaiveListCap));
    }
  } else if (name == "gcd") {
    const Integer* m = int_arg(0);
    const Integer* n = int_arg(1);
    if (m && n && m->sign() > 0 && n->sign() > 0) {
      mpz_class a = m->to_mpz();
      mpz_class b = n->to_mpz();
      mpz_class steps = 0;
      while (b != 0) {
        steps += a / b;
        mpz_class r = a % b;
        a = b;
        b = r;
      }
      if (steps > mpz_class(1) << kNaiveGcdStepsCapLog2) {
        throw CapExceeded("naive gcd is capped at 2^" + std::to_string(kNaiveGcdStepsCapLog2) +
                          " subtraction steps");
      }
    }
  }
}

RunResult Engine::run(const Term& goal, const RunOptions& options) {
  using Clock = std::chrono::steady_clock;
  RunResult r;
  const auto start = Clock::now();
  if (options.mode == Mode::Naive) {
    if (!options.cap_override) check_naive_cap(goal);
    const OracleConfig config = OracleConfig::for_program(program_, options.naive_step_limit);
    OracleStats stats;
    r.success = solve_naive(goal, config, session_, &stats);
    r.applications = stats.calls;
    r.interp_time = Clock::now() - start;
  } else if (program_.decks.size() == 1) {
    UnfoldResult unfolded = unfold_repeat(goal, program_.decks[0], scheme_for(0), session_);
    const auto mid = Clock::now();
    MipStats stats;
    r.success = mip(goal, unfolded.deck, session_, &stats);
    r.unfold_time = mid - start;
    r.interp_time = Clock::now() - mid;
    r.applications = stats.applications();
    r.unfold_steps = unfolded.stats.steps;
    r.deck_sizes.push_back(unfolded.deck.size());
    // Same outcome umr gives when no guard holds for the entry goal.
    if (!r.success && r.applications == 0) {
      throw NoProgress("no rule applied to " + format_term(resolve(goal)));
    }
  } else {
    RoundRobinState state = RoundRobinState::initial(program_, registry_, goal);
    state.max_entries = options.max_entries;
    umr(goal, state, session_);
    r.success = true;
    r.unfold_time = state.unfold_time;
    r.interp_time = state.interp_time;
    r.applications = state.mip_stats.applications();
    r.rounds = rounds_used(state);
    r.unfold_steps = state.unfold_stats.steps;
    for (const RuleDeck* d : state.decks()) r.deck_sizes.push_back(d ? d->size() : 0);
  }
  r.total_time = Clock::now() - start;
  r.deck_size = std::accumulate(r.deck_sizes.begin(), r.deck_sizes.end(), std::size_t{0});
  r.goal = resolve(goal);
  const Term& g = deref(r.goal);
  if (g.arity() > 0) r.answer = g.arg(g.arity() - 1);
  return r;
}

std::vector<UnfoldResult> Engine::unfold(const Term& goal) {
  std::vector<UnfoldResult> out;
  for (std::size_t i = 0; i < program_.decks.size(); ++i) {
    out.push_back(unfold_repeat(goal, program_.decks[i], scheme_for(i), session_));
  }
  return out;
}

}  // namespace rru
