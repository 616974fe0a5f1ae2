#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rru/integer.hpp"
#include "rru/rule.hpp"

namespace rru {

// One unfolding-with-simplification step: maps an instance of a rule
// template to the instance that covers twice as many original steps.
class Scheme {
 public:
  virtual ~Scheme() = default;
  virtual std::string_view name() const = 0;
  virtual bool applies_to(const GuardedRule& rule) const = 0;
  // The next rule, or nullopt if the scheme cannot produce one. Throws
  // TemplateMismatch if `rule` is not an instance of the template. Never
  // modifies `rule`.
  virtual std::optional<GuardedRule> step(const GuardedRule& rule, Session& session) const = 0;
};

// Schemes whose rules differ only in integer parameters. Each template is a
// clause in rule-file syntax; the variables named in `params` are the
// parameter slots, every other variable must match a distinct variable of
// the rule.
class TemplateScheme : public Scheme {
 public:
  using Params = std::vector<Integer>;
  // Computes the next parameters from the current ones, in `params` order.
  using Update = Params (*)(const Params&);

  TemplateScheme(std::string name, const std::vector<std::string>& templates, std::vector<std::string> params,
                 Update update);
  ~TemplateScheme() override;

  std::string_view name() const override { return name_; }
  bool applies_to(const GuardedRule& rule) const override;
  std::optional<GuardedRule> step(const GuardedRule& rule, Session& session) const override;

  struct Match {
    std::size_t template_index;
    Params params;
  };
  std::optional<Match> match(const GuardedRule& rule) const;
  GuardedRule instantiate(std::size_t template_index, const Params& params, Session& session) const;

 private:
  struct Template;
  std::string name_;
  std::vector<std::string> param_names_;
  std::vector<std::unique_ptr<Template>> templates_;
  Update update_;
};

std::unique_ptr<TemplateScheme> make_sum_scheme();
std::unique_ptr<TemplateScheme> make_fib_scheme();
std::unique_ptr<TemplateScheme> make_gcd_scheme();
// r(A,B) :- A=[e1..ek|C] ,!, true, r(C,D), append(D,[ek..e1],B).
std::unique_ptr<Scheme> make_rev_scheme();
// s(L,S) :- L=[e1..ek|L2] ,!, Merges, s(L2,S2), m(S0,S2,S).
std::unique_ptr<Scheme> make_sort_scheme();

class SchemeRegistry {
 public:
  // Registry with sum, fib, gcd, rev and sort.
  static SchemeRegistry with_builtin_schemes();

  void add(std::unique_ptr<Scheme> scheme);
  // Null if unknown.
  const Scheme* find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::unique_ptr<Scheme>, std::less<>> schemes_;
};

// Parameter readers for rules produced by the shipped schemes.
struct SumParams {
  Integer v;
  Integer w;
};
struct FibParams {
  Integer a;
  Integer p;
  Integer q;
};
struct GcdParams {
  Integer a;
  // 0 for the A*M<N rule, 1 for M>A*N.
  std::size_t which;
};
std::optional<SumParams> sum_params(const GuardedRule& rule);
std::optional<FibParams> fib_params(const GuardedRule& rule);
std::optional<GcdParams> gcd_params(const GuardedRule& rule);
// List elements taken off the input by one application of a rev or sort
// rule: the length of the open-list pattern in its guard.
std::optional<std::size_t> consumed_elements(const GuardedRule& rule);

}  // namespace rru
