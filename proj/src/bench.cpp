#include "rru/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <sstream>

#include "rru/errors.hpp"

namespace rru {

std::string_view csv_header() { return "program,mode,input,unfold_ms,interp_ms,total_ms,apps,rounds,deck_size"; }

std::string to_csv(const BenchRow& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << r.program << ',' << r.mode << ',' << r.input << ',' << r.unfold_ms << ',' << r.interp_ms << ','
     << r.total_ms << ',' << r.apps << ',' << r.rounds << ',' << r.deck_size;
  return os.str();
}

std::vector<BenchRow> read_csv(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != csv_header()) throw ParseError(lineno, 1, "expected the bench CSV header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw ParseError(lineno, 1, "expected 9 fields, got " + std::to_string(f.size()));
    try {
      rows.push_back({f[0], f[1], f[2], std::stod(f[3]), std::stod(f[4]), std::stod(f[5]), std::stoul(f[6]),
                      std::stoul(f[7]), std::stoul(f[8])});
    } catch (const std::logic_error&) {
      throw ParseError(lineno, 1, "bad number in '" + line + "'");
    }
  }
  if (!header) throw ParseError(1, 1, "empty CSV");
  return rows;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> out;
  auto number = [&](std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(1, 1, "bad size '" + std::string(s) + "' in '" + std::string(text) + "'");
    }
    return static_cast<std::size_t>(std::stoull(std::string(s)));
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(number(item));
    } else {
      const std::size_t lo = number(item.substr(0, dots));
      const std::size_t hi = number(item.substr(dots + 2));
      if (hi < lo) throw ParseError(1, 1, "empty range '" + std::string(item) + "'");
      for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
    }
    pos = comma + 1;
  }
  return out;
}

const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> kSuites{"sum", "fib", "gcd", "gcd2", "rev", "sort"};
  return kSuites;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

struct SuiteCase {
  std::string program;
  std::string descriptor;
  std::vector<std::string> inputs;
};

SuiteCase suite_case(const BenchConfig& c, std::size_t size) {
  const std::string k = std::to_string(size);
  const std::string n = c.literal ? k : "2^" + k;
  if (c.suite == "sum" || c.suite == "fib") return {c.suite, n, {n}};
  if (c.suite == "gcd") return {"gcd", n, {n, "37"}};
  if (c.suite == "gcd2") {
    if (c.literal) throw ParseError(1, 1, "gcd2 sizes are exponents");
    const Integer m = Integer::pow2(size / 2) + Integer::pow2(size / 4) - Integer(1);
    return {"gcd", n, {n, m.to_string()}};
  }
  if (c.suite == "rev" || c.suite == "sort") {
    if (!c.literal && size >= 40) throw ParseError(1, 1, "list length 2^" + k + " is too large");
    const std::size_t len = c.literal ? size : std::size_t{1} << size;
    const std::string list = (c.suite == "rev" ? "list:" : "perm:") + std::to_string(len);
    return {c.suite, n, {list}};
  }
  throw ParseError(1, 1, "unknown suite '" + c.suite + "'");
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config, const std::function<void(const BenchRow&)>& on_row) {
  if (config.reps == 0) throw ParseError(1, 1, "repetitions must be at least 1");
  std::vector<BenchRow> rows;
  for (std::size_t size : config.sizes) {
    const SuiteCase sc = suite_case(config, size);
    Engine engine = Engine::shipped(sc.program);
    std::vector<double> unfold;
    std::vector<double> interp;
    std::vector<double> total;
    BenchRow row{config.suite, std::string(mode_name(config.mode)), sc.descriptor};
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      RunResult r;
      {
        std::vector<Term> inputs;
        for (const std::string& in : sc.inputs) inputs.push_back(parse_input(in, engine.session()));
        const Term goal = engine.make_goal(inputs);
        RunOptions opts;
        opts.mode = config.mode;
        opts.cap_override = config.cap_override;
        r = engine.run(goal, opts);
      }
      if (!r.success) throw EngineError("bench run failed for " + config.suite + " " + sc.descriptor);
      unfold.push_back(ms(r.unfold_time));
      interp.push_back(ms(r.interp_time));
      total.push_back(ms(r.total_time));
      row.apps = r.applications;
      row.rounds = r.rounds;
      row.deck_size = r.deck_size;
    }
    row.unfold_ms = median(unfold);
    row.interp_ms = median(interp);
    row.total_ms = median(total);
    if (on_row) on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string environment_line() {
  std::ostringstream os;
  os << "# env: ";
#if defined(__clang__)
  os << "clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  os << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#else
  os << "unknown compiler";
#endif
#ifdef NDEBUG
  os << ", optimized";
#else
  os << ", assertions on";
#endif
  os << ", gmp " << gmp_version << ", steady_clock";
  return os.str();
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  LineFit f;
  if (n == 0) return f;
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxx > 0 ? sxy / sxx : 0;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / static_cast<double>(n));
  return f;
}

namespace {

// log2 of an input descriptor: "2^k", "2^k+j", "2^k-j" or a decimal n.
double input_log2(const std::string& d) {
  if (d.rfind("2^", 0) == 0) {
    const std::size_t op = d.find_first_of("+-", 2);
    const double k = std::stod(d.substr(2, op - 2));
    if (op == std::string::npos || k > 1000) return k;
    const double j = std::stod(d.substr(op + 1));
    return std::log2(std::exp2(k) + (d[op] == '+' ? j : -j));
  }
  return std::log2(std::stod(d));
}

std::string power_model(double slope) {
  if (std::abs(slope) < 0.2) return "constant";
  if (slope < 1.15) return "linear";
  if (slope < 1.5) return "loglinear";
  return "polynomial";
}

}  // namespace

std::vector<FitReport> fit_rows(const std::vector<BenchRow>& rows) {
  std::map<std::pair<std::string, std::string>, std::vector<const BenchRow*>> series;
  std::vector<std::pair<std::string, std::string>> order;
  for (const BenchRow& r : rows) {
    auto key = std::make_pair(r.program, r.mode);
    if (!series.count(key)) order.push_back(key);
    series[key].push_back(&r);
  }
  std::vector<FitReport> out;
  for (const auto& key : order) {
    const auto& pts = series[key];
    FitReport rep;
    rep.program = key.first;
    rep.mode = key.second;
    rep.points = pts.size();
    if (pts.size() < 2) {
      rep.model = "insufficient";
      out.push_back(rep);
      continue;
    }
    std::vector<double> lg;
    std::vector<double> lt;
    for (const BenchRow* r : pts) {
      lg.push_back(input_log2(r->input));
      lt.push_back(std::log(std::max(r->total_ms, 1e-6)));
    }
    if (key.second == "naive") {
      std::vector<double> ln;
      std::vector<double> n;
      bool finite = true;
      for (double l : lg) {
        ln.push_back(l * std::log(2.0));
        n.push_back(std::exp2(l));
        finite = finite && l < 1000;
      }
      const LineFit power = fit_line(ln, lt);
      rep.model = power_model(power.slope);
      rep.slope = power.slope;
      rep.intercept = power.intercept;
      rep.residual = power.residual;
      if (finite && rep.model != "constant") {
        const LineFit ex = fit_line(n, lt);
        if (ex.residual < power.residual) {
          rep.model = "exponential";
          rep.slope = ex.slope;
          rep.intercept = ex.intercept;
          rep.residual = ex.residual;
        }
      }
    } else {
      std::vector<double> llg;
      for (double l : lg) llg.push_back(std::log(std::max(l, 1e-9)));
      const LineFit poly = fit_line(llg, lt);
      rep.model = std::abs(poly.slope) < 0.2 ? "constant" : "polylog";
      rep.slope = poly.slope;
      rep.intercept = poly.intercept;
      rep.residual = poly.residual;
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace rru
