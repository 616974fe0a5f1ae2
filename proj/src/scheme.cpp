#include "rru/scheme.hpp"

#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "rru/builtins.hpp"
#include "rru/errors.hpp"
#include "rru/parser.hpp"
#include "rru/printer.hpp"

namespace rru {

struct TemplateScheme::Template {
  Session session;
  GuardedRule rule;
  Term shape;
  // Parameter variables, in parameter order.
  std::vector<Term> params;
};

TemplateScheme::TemplateScheme(std::string name, const std::vector<std::string>& templates,
                               std::vector<std::string> params, Update update)
    : name_(std::move(name)), param_names_(std::move(params)), update_(update) {
  for (const std::string& text : templates) {
    auto t = std::make_unique<Template>();
    std::vector<std::pair<std::string, Term>> vars;
    t->rule = parse_rule(text, t->session, &vars);
    t->shape = t->rule.as_term();
    for (const std::string& p : param_names_) {
      Term found;
      for (const auto& [n, v] : vars) {
        if (n == p) found = v;
      }
      if (!found) throw EngineError("template for " + name_ + " lacks parameter " + p);
      t->params.push_back(found);
    }
    templates_.push_back(std::move(t));
  }
}

TemplateScheme::~TemplateScheme() = default;

namespace {

// Matches a rule term against a template term. Parameter variables must
// meet integers (the same integer at every occurrence); other template
// variables must meet rule variables one-to-one.
bool match_shape(const Term& tmpl, const Term& rule, const std::vector<Term>& params,
                 std::vector<std::optional<Integer>>& values) {
  std::unordered_map<const detail::Node*, const detail::Node*> fwd;
  std::unordered_set<const detail::Node*> used;
  std::vector<std::pair<const Term*, const Term*>> stack{{&tmpl, &rule}};
  while (!stack.empty()) {
    auto [tp, rp] = stack.back();
    stack.pop_back();
    const Term& t = deref(*tp);
    const Term& r = deref(*rp);
    if (t.is_var()) {
      std::size_t pi = 0;
      while (pi < params.size() && !params[pi].same_node(t)) ++pi;
      if (pi < params.size()) {
        if (!r.is_int()) return false;
        if (values[pi] && *values[pi] != r.integer_value()) return false;
        values[pi] = r.integer_value();
        continue;
      }
      if (!r.is_var()) return false;
      auto it = fwd.find(t.node());
      if (it != fwd.end()) {
        if (it->second != r.node()) return false;
        continue;
      }
      if (!used.insert(r.node()).second) return false;
      fwd.emplace(t.node(), r.node());
      continue;
    }
    if (t.kind() != r.kind()) return false;
    switch (t.kind()) {
      case Kind::Int:
        if (t.integer_value() != r.integer_value()) return false;
        break;
      case Kind::Atom:
        if (t.functor() != r.functor()) return false;
        break;
      case Kind::Compound:
        if (t.functor() != r.functor() || t.arity() != r.arity()) return false;
        for (std::size_t i = t.arity(); i-- > 0;) stack.emplace_back(&t.arg(i), &r.arg(i));
        break;
      case Kind::Var:
        break;
    }
  }
  return true;
}

Term substitute(const Term& t, std::unordered_map<const detail::Node*, Term>& map, Session& session) {
  const Term& d = deref(t);
  if (d.ground()) return d;
  if (d.is_var()) {
    auto it = map.find(d.node());
    if (it == map.end()) it = map.emplace(d.node(), session.fresh_var()).first;
    return it->second;
  }
  std::vector<Term> args;
  args.reserve(d.arity());
  for (const Term& a : d.args()) args.push_back(substitute(a, map, session));
  return Term::compound(d.functor(), args);
}

}  // namespace

std::optional<TemplateScheme::Match> TemplateScheme::match(const GuardedRule& rule) const {
  const Term shape = rule.as_term();
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const Template& t = *templates_[i];
    std::vector<std::optional<Integer>> values(t.params.size());
    if (!match_shape(t.shape, shape, t.params, values)) continue;
    Match m{i, {}};
    for (auto& v : values) m.params.push_back(std::move(*v));
    return m;
  }
  return std::nullopt;
}

GuardedRule TemplateScheme::instantiate(std::size_t template_index, const Params& params, Session& session) const {
  const Template& t = *templates_.at(template_index);
  std::unordered_map<const detail::Node*, Term> map;
  for (std::size_t i = 0; i < t.params.size(); ++i) map.emplace(t.params[i].node(), Term::integer(params.at(i)));
  const GuardedRule& r = t.rule;
  return {substitute(r.head, map, session), substitute(r.guard, map, session), substitute(r.before, map, session),
          substitute(r.rec_goals, map, session), substitute(r.after, map, session)};
}

bool TemplateScheme::applies_to(const GuardedRule& rule) const { return match(rule).has_value(); }

std::optional<GuardedRule> TemplateScheme::step(const GuardedRule& rule, Session& session) const {
  auto m = match(rule);
  if (!m) throw TemplateMismatch(name_ + " scheme does not apply to " + format_rule(rule));
  return instantiate(m->template_index, update_(m->params), session);
}

std::unique_ptr<TemplateScheme> make_sum_scheme() {
  return std::make_unique<TemplateScheme>(
      "sum", std::vector<std::string>{"s(A,C) :- A>V ,!, B is A-V, s(B,D), C is V*A-W+D."},
      std::vector<std::string>{"V", "W"}, [](const TemplateScheme::Params& p) {
        const Integer& v = p[0];
        const Integer& w = p[1];
        return TemplateScheme::Params{Integer(2) * v, Integer(2) * w + v * v};
      });
}

std::unique_ptr<TemplateScheme> make_fib_scheme() {
  return std::make_unique<TemplateScheme>(
      "fib",
      std::vector<std::string>{
          "f(N,F) :- N>A ,!, (N1 is N-A, N2 is N1-1), (f(N1,F1), f(N2,F2)), F is P*F1+Q*F2."},
      std::vector<std::string>{"A", "P", "Q"}, [](const TemplateScheme::Params& x) {
        const Integer& p = x[1];
        const Integer& q = x[2];
        const Integer qq = q * q;
        return TemplateScheme::Params{Integer(2) * x[0], p * p + qq, Integer(2) * p * q - qq};
      });
}

std::unique_ptr<TemplateScheme> make_gcd_scheme() {
  return std::make_unique<TemplateScheme>(
      "gcd",
      std::vector<std::string>{"g(M,N,X) :- A*M<N ,!, L is N-A*M, g(M,L,X), true.",
                               "g(M,N,X) :- M>A*N ,!, L is M-A*N, g(L,N,X), true."},
      std::vector<std::string>{"A"},
      [](const TemplateScheme::Params& p) { return TemplateScheme::Params{Integer(2) * p[0]}; });
}

namespace {

bool distinct_vars(const std::vector<Term>& vars) {
  std::unordered_set<const detail::Node*> seen;
  for (const Term& v : vars) {
    const Term& d = deref(v);
    if (!d.is_var() || !seen.insert(d.node()).second) return false;
  }
  return true;
}

// [e1..ek|Tail] with k >= 1; elements and tail are returned dereferenced.
bool open_list(const Term& t, std::vector<Term>& elems, Term& tail) {
  const Term* cur = &deref(t);
  while (cur->is_compound(sym::kDot, 2)) {
    elems.push_back(deref(cur->arg(0)));
    cur = &deref(cur->arg(1));
  }
  tail = *cur;
  return !elems.empty();
}

Term list_concat(const Term& a, const Term& b) {
  std::vector<Term> items;
  list_elements(a, items);
  std::vector<Term> rest;
  list_elements(b, rest);
  items.insert(items.end(), rest.begin(), rest.end());
  return Term::list(items);
}

bool same(const Term& a, const Term& b) { return deref(a).same_node(deref(b)); }

GuardedRule resolved(const GuardedRule& r) {
  return {resolve(r.head), resolve(r.guard), resolve(r.before), resolve(r.rec_goals), resolve(r.after)};
}

class RevScheme : public Scheme {
 public:
  std::string_view name() const override { return "rev"; }

  bool applies_to(const GuardedRule& rule) const override { return parts(rule).has_value(); }

  std::optional<GuardedRule> step(const GuardedRule& rule, Session& session) const override {
    auto p = parts(rule);
    if (!p) throw TemplateMismatch("rev scheme does not apply to " + format_rule(rule));
    // Two copies of the open list E (ending in C) and its reversal F; the
    // first copy's tail is the second copy's list.
    Renamer first(session);
    Renamer second(session);
    const Term e1 = first(p->e);
    const Term c1 = first(p->c);
    const Term f1 = first(p->f);
    const Term e2 = second(p->e);
    const Term c2 = second(p->c);
    const Term f2 = second(p->f);
    Bindings::Checkpoint cp(session.bindings());
    unify(c1, e2, session.bindings());
    const Symbol r = deref(rule.head).functor();
    const Term a = session.fresh_var();
    const Term b = session.fresh_var();
    const Term d = session.fresh_var();
    GuardedRule out{Term::compound(r, {a, b}), Term::compound(sym::kEq, {a, resolve(e1)}), Term::atom(sym::kTrue),
                    Term::compound(r, {c2, d}),
                    Term::compound(sym::kAppend, {d, list_concat(resolve(f2), resolve(f1)), b})};
    cp.rollback();
    return out;
  }

 private:
  struct Parts {
    Term e;
    Term c;
    Term f;
  };

  static std::optional<Parts> parts(const GuardedRule& rule) {
    const Term& h = deref(rule.head);
    const Term& g = deref(rule.guard);
    const Term& rec = deref(rule.rec_goals);
    const Term& after = deref(rule.after);
    if (!h.is_compound() || h.arity() != 2) return std::nullopt;
    if (!g.is_compound(sym::kEq, 2) || !same(g.arg(0), h.arg(0))) return std::nullopt;
    if (!deref(rule.before).is_atom(sym::kTrue)) return std::nullopt;
    if (!rec.is_compound(h.functor(), 2)) return std::nullopt;
    if (!after.is_compound(sym::kAppend, 3)) return std::nullopt;
    std::vector<Term> elems;
    Term tail;
    if (!open_list(g.arg(1), elems, tail)) return std::nullopt;
    std::vector<Term> rev;
    if (!list_elements(after.arg(1), rev) || rev.size() != elems.size()) return std::nullopt;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (!same(elems[i], rev[rev.size() - 1 - i])) return std::nullopt;
    }
    std::vector<Term> vars = elems;
    vars.insert(vars.end(), {h.arg(0), h.arg(1), tail, rec.arg(1)});
    if (!distinct_vars(vars)) return std::nullopt;
    if (!same(rec.arg(0), tail) || !same(after.arg(0), rec.arg(1)) || !same(after.arg(2), h.arg(1))) {
      return std::nullopt;
    }
    return Parts{g.arg(1), tail, after.arg(1)};
  }
};

class SortScheme : public Scheme {
 public:
  std::string_view name() const override { return "sort"; }

  bool applies_to(const GuardedRule& rule) const override {
    const Term& h = deref(rule.head);
    const Term& g = deref(rule.guard);
    const Term& rec = deref(rule.rec_goals);
    const Term& after = deref(rule.after);
    if (!h.is_compound() || h.arity() != 2) return false;
    if (!g.is_compound(sym::kEq, 2) || !same(g.arg(0), h.arg(0))) return false;
    if (!rec.is_compound(h.functor(), 2)) return false;
    if (!after.is_compound(sym::kMerge, 3)) return false;
    std::vector<Term> elems;
    Term tail;
    if (!open_list(g.arg(1), elems, tail)) return false;
    std::vector<Term> vars = elems;
    vars.insert(vars.end(), {h.arg(0), h.arg(1), tail, rec.arg(1)});
    if (!distinct_vars(vars)) return false;
    if (!same(rec.arg(0), tail) || !same(after.arg(1), rec.arg(1)) || !same(after.arg(2), h.arg(1))) {
      return false;
    }
    std::vector<Term> merges;
    const Term flat = flatten_conjunction(rule.before);
    if (flat.is_atom(sym::kTrue)) return true;
    const Term* cur = &flat;
    while (cur->is_compound(sym::kComma, 2)) {
      if (!deref(cur->arg(0)).is_compound(sym::kMerge, 3)) return false;
      cur = &deref(cur->arg(1));
    }
    return cur->is_compound(sym::kMerge, 3);
  }

  std::optional<GuardedRule> step(const GuardedRule& rule, Session& session) const override {
    if (!applies_to(rule)) throw TemplateMismatch("sort scheme does not apply to " + format_rule(rule));
    // Unfold the recursive call with a second copy of the rule, merge the
    // two merge results once more, and let the open list grow by L1 = AL1.
    const GuardedRule c1 = rule.renamed(session);
    const GuardedRule c2 = rule.renamed(session);
    Bindings& bindings = session.bindings();
    Bindings::Checkpoint cp(bindings);
    if (!unify(c2.head, c1.rec_goals, bindings)) throw TemplateMismatch("sort scheme copies do not unify");
    const Term& rec1 = deref(c1.rec_goals);
    const Term& after1 = deref(c1.after);
    const Term& after2 = deref(c2.after);
    const Term s0 = session.fresh_var();
    const Term merge = Term::compound(sym::kMerge, {after1.arg(0), after2.arg(0), s0});
    const Term mg = Term::compound(sym::kComma, {c1.before, Term::compound(sym::kComma, {c2.before, merge})});
    if (!unify(rec1.arg(0), deref(c2.guard).arg(1), bindings)) throw TemplateMismatch("open lists do not unify");
    const Term& rec2 = deref(c2.rec_goals);
    GuardedRule out{c1.head, c1.guard, flatten_conjunction(clean_conjunction(mg)), c2.rec_goals,
                    Term::compound(sym::kMerge, {s0, rec2.arg(1), deref(c1.head).arg(1)})};
    out = resolved(out);
    cp.rollback();
    return out;
  }
};

const TemplateScheme& sum_scheme() {
  static const auto s = make_sum_scheme();
  return *s;
}
const TemplateScheme& fib_scheme() {
  static const auto s = make_fib_scheme();
  return *s;
}
const TemplateScheme& gcd_scheme() {
  static const auto s = make_gcd_scheme();
  return *s;
}

}  // namespace

std::unique_ptr<Scheme> make_rev_scheme() { return std::make_unique<RevScheme>(); }
std::unique_ptr<Scheme> make_sort_scheme() { return std::make_unique<SortScheme>(); }

SchemeRegistry SchemeRegistry::with_builtin_schemes() {
  SchemeRegistry r;
  r.add(make_sum_scheme());
  r.add(make_fib_scheme());
  r.add(make_gcd_scheme());
  r.add(make_rev_scheme());
  r.add(make_sort_scheme());
  return r;
}

void SchemeRegistry::add(std::unique_ptr<Scheme> scheme) {
  std::string key(scheme->name());
  schemes_[key] = std::move(scheme);
}

const Scheme* SchemeRegistry::find(std::string_view name) const {
  auto it = schemes_.find(name);
  return it == schemes_.end() ? nullptr : it->second.get();
}

std::vector<std::string> SchemeRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : schemes_) out.push_back(k);
  return out;
}

std::optional<SumParams> sum_params(const GuardedRule& rule) {
  auto m = sum_scheme().match(rule);
  if (!m) return std::nullopt;
  return SumParams{m->params[0], m->params[1]};
}

std::optional<FibParams> fib_params(const GuardedRule& rule) {
  auto m = fib_scheme().match(rule);
  if (!m) return std::nullopt;
  return FibParams{m->params[0], m->params[1], m->params[2]};
}

std::optional<GcdParams> gcd_params(const GuardedRule& rule) {
  auto m = gcd_scheme().match(rule);
  if (!m) return std::nullopt;
  return GcdParams{m->params[0], m->template_index};
}

std::optional<std::size_t> consumed_elements(const GuardedRule& rule) {
  const Term& g = deref(rule.guard);
  if (!g.is_compound(sym::kEq, 2)) return std::nullopt;
  std::vector<Term> elems;
  Term tail;
  if (!open_list(g.arg(1), elems, tail)) return std::nullopt;
  return elems.size();
}

}  // namespace rru
