#include "rru/term.hpp"

#include <algorithm>
#include <new>
#include <unordered_set>

namespace rru {

namespace detail {

namespace {

// Size-class free lists for node memory. Interpretation allocates and
// frees millions of small nodes; recycling them avoids most malloc traffic.
// Blocks are never returned to the system while the thread lives.
constexpr std::size_t kGranule = 16;
constexpr std::size_t kPooledClasses = 6;  // up to 96 bytes

struct FreeBlock {
  FreeBlock* next;
};

// Trivially destructible, so terms released during static destruction
// can still return their memory here.
struct Pool {
  FreeBlock* heads[kPooledClasses] = {};
};

thread_local Pool pool;

std::size_t size_class(std::size_t bytes) { return (bytes + kGranule - 1) / kGranule - 1; }

void* node_alloc(std::size_t bytes) {
  const std::size_t c = size_class(bytes);
  if (c >= kPooledClasses) return ::operator new(bytes);
  if (FreeBlock* b = pool.heads[c]) {
    pool.heads[c] = b->next;
    return b;
  }
  return ::operator new((c + 1) * kGranule);
}

void node_free(void* p, std::size_t bytes) noexcept {
  const std::size_t c = size_class(bytes);
  if (c >= kPooledClasses) {
    ::operator delete(p);
    return;
  }
  auto* b = static_cast<FreeBlock*>(p);
  b->next = pool.heads[c];
  pool.heads[c] = b;
}

template <class N>
N* new_node() {
  return new (node_alloc(sizeof(N))) N{};
}

template <class N>
void delete_node(N* n) noexcept {
  n->~N();
  node_free(n, sizeof(N));
}

CompoundNode* alloc_compound(Symbol functor, std::size_t arity) {
  void* mem = node_alloc(sizeof(CompoundNode) + arity * sizeof(Term));
  auto* c = new (mem) CompoundNode{};
  c->kind = Kind::Compound;
  c->ground = false;
  c->functor = functor;
  c->arity = static_cast<std::uint32_t>(arity);
  for (std::size_t i = 0; i < arity; ++i) new (c->args() + i) Term();
  return c;
}

void free_node(Node* n) noexcept {
  switch (n->kind) {
    case Kind::Var:
      delete_node(static_cast<VarNode*>(n));
      break;
    case Kind::Int:
      delete_node(static_cast<IntNode*>(n));
      break;
    case Kind::Atom:
      delete_node(static_cast<AtomNode*>(n));
      break;
    case Kind::Compound: {
      auto* c = static_cast<CompoundNode*>(n);
      const std::uint32_t arity = c->arity;
      for (std::uint32_t i = 0; i < arity; ++i) c->args()[i].~Term();
      c->~CompoundNode();
      node_free(c, sizeof(CompoundNode) + arity * sizeof(Term));
      break;
    }
  }
}

thread_local std::vector<Node*>* pending_frees = nullptr;

}  // namespace

// Freeing a node drops references to its children; a long list would
// otherwise recurse once per cell. Nested releases are queued on the
// outermost call's worklist instead.
void destroy(Node* n) noexcept {
  if (pending_frees) {
    pending_frees->push_back(n);
    return;
  }
  // Deliberately leaked for the same reason as the pool.
  thread_local auto* work = new std::vector<Node*>();
  pending_frees = work;
  free_node(n);
  while (!work->empty()) {
    Node* x = work->back();
    work->pop_back();
    free_node(x);
  }
  pending_frees = nullptr;
}

Node* new_int_node() { return new_node<IntNode>(); }
Node* new_atom_node() { return new_node<AtomNode>(); }
Node* new_var_node() { return new_node<VarNode>(); }

}  // namespace detail

using detail::CompoundNode;
using detail::Node;
using detail::VarNode;

Term Term::integer(Integer v) {
  auto* n = static_cast<detail::IntNode*>(detail::new_int_node());
  n->kind = Kind::Int;
  n->ground = true;
  n->value = std::move(v);
  return Term(n);
}

Term Term::atom(Symbol name) {
  auto* n = static_cast<detail::AtomNode*>(detail::new_atom_node());
  n->kind = Kind::Atom;
  n->ground = true;
  n->name = name;
  return Term(n);
}

Term Term::compound(Symbol functor, std::span<const Term> args) {
  if (args.empty()) return atom(functor);
  CompoundNode* c = detail::alloc_compound(functor, args.size());
  bool ground = true;
  for (std::size_t i = 0; i < args.size(); ++i) {
    c->args()[i] = args[i];
    ground = ground && args[i].ground();
  }
  c->ground = ground;
  return Term(c);
}

Term Term::list(std::span<const Term> items, Term tail) {
  Term result = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    result = compound(sym::kDot, {*it, result});
  }
  return result;
}

Term Term::conjunction(std::span<const Term> goals) {
  if (goals.empty()) return atom(sym::kTrue);
  Term result = goals.back();
  for (std::size_t i = goals.size() - 1; i-- > 0;) {
    result = compound(sym::kComma, {goals[i], result});
  }
  return result;
}

void Bindings::bind(const Term& var, Term value) {
  auto* v = static_cast<VarNode*>(const_cast<Node*>(var.node()));
  v->ref = std::move(value);
  if (depth_ > 0) trail_.push_back(var);
}

void Bindings::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    auto* v = static_cast<VarNode*>(const_cast<Node*>(trail_.back().node()));
    v->ref = Term();
    trail_.pop_back();
  }
}

void Bindings::Checkpoint::commit() {
  if (--bindings_->depth_ == 0) bindings_->trail_.clear();
  bindings_ = nullptr;
}

void Bindings::Checkpoint::rollback() {
  bindings_->undo_to(mark_);
  --bindings_->depth_;
  bindings_ = nullptr;
}

Term Session::fresh_var() {
  auto* v = static_cast<VarNode*>(detail::new_var_node());
  v->kind = Kind::Var;
  v->ground = false;
  v->id = next_id_++;
  return Term(v);
}

namespace {

// Rebuilds compound structure, handing every non-compound (or ground)
// subterm to `leaf`. Recursion only happens on non-last arguments, so list
// spines of any length are walked in a loop.
template <class Leaf>
Term rebuild(const Term& root, Leaf& leaf) {
  Term result;
  Term* hole = &result;
  const Term* cur = &root;
  // Most spines are short; only long lists touch the heap.
  CompoundNode* inline_spine[16];
  std::size_t depth = 0;
  std::vector<CompoundNode*> overflow;
  auto push = [&](CompoundNode* c) {
    if (depth < 16) {
      inline_spine[depth] = c;
    } else {
      overflow.push_back(c);
    }
    ++depth;
  };
  while (true) {
    const Term& t = deref(*cur);
    if (!t.is_compound() || t.ground()) {
      *hole = leaf(t);
      break;
    }
    const std::size_t n = t.arity();
    CompoundNode* c = detail::alloc_compound(t.functor(), n);
    *hole = Term::adopt(c);
    for (std::size_t i = 0; i + 1 < n; ++i) c->args()[i] = rebuild(t.arg(i), leaf);
    push(c);
    hole = c->args() + (n - 1);
    cur = &t.arg(n - 1);
  }
  while (depth > 0) {
    --depth;
    CompoundNode* c = depth < 16 ? inline_spine[depth] : overflow[depth - 16];
    c->ground = std::all_of(c->args(), c->args() + c->arity, [](const Term& a) { return a.ground(); });
  }
  return result;
}

struct ResolveLeaf {
  Term operator()(const Term& t) const { return t; }
};

struct VarPair {
  const Term* a;
  const Term* b;
};

}  // namespace

bool unify(const Term& a, const Term& b, Bindings& bindings) {
  Bindings::Checkpoint cp(bindings);
  // unify never re-enters itself, so one worklist per thread suffices.
  thread_local std::vector<VarPair> stack;
  stack.clear();
  stack.push_back({&a, &b});
  while (!stack.empty()) {
    auto [pa, pb] = stack.back();
    stack.pop_back();
    const Term& x = deref(*pa);
    const Term& y = deref(*pb);
    if (x.same_node(y)) continue;
    if (x.is_var() && y.is_var()) {
      // Younger variable points at the older one.
      if (x.var_id() > y.var_id()) {
        bindings.bind(x, y);
      } else {
        bindings.bind(y, x);
      }
      continue;
    }
    if (x.is_var()) {
      bindings.bind(x, y);
      continue;
    }
    if (y.is_var()) {
      bindings.bind(y, x);
      continue;
    }
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::Int:
        if (x.integer_value() != y.integer_value()) return false;
        break;
      case Kind::Atom:
        if (x.functor() != y.functor()) return false;
        break;
      case Kind::Compound: {
        if (x.functor() != y.functor() || x.arity() != y.arity()) return false;
        auto xs = x.args();
        auto ys = y.args();
        for (std::size_t i = xs.size(); i-- > 0;) stack.push_back({&xs[i], &ys[i]});
        break;
      }
      case Kind::Var:
        break;
    }
  }
  cp.commit();
  return true;
}

bool unifiable(const Term& a, const Term& b, Bindings& bindings) {
  Bindings::Checkpoint cp(bindings);
  return unify(a, b, bindings);  // cp rolls back on scope exit
}

Term resolve(const Term& t) {
  ResolveLeaf leaf;
  return rebuild(t, leaf);
}

Term Renamer::fresh_for(const Node* var) {
  if (index_.empty()) {
    for (std::size_t i = 0; i < small_count_; ++i) {
      if (small_[i].first == var) return small_[i].second;
    }
    Term f = session_->fresh_var();
    if (small_count_ < kSmall) {
      small_[small_count_++] = {var, f};
      return f;
    }
    for (std::size_t i = 0; i < small_count_; ++i) index_.emplace(small_[i].first, std::move(small_[i].second));
    small_count_ = 0;
    index_.emplace(var, f);
    return f;
  }
  auto [it, inserted] = index_.try_emplace(var);
  if (inserted) it->second = session_->fresh_var();
  return it->second;
}

Term Renamer::operator()(const Term& t) {
  auto leaf = [this](const Term& x) -> Term {
    if (x.is_var()) return fresh_for(x.node());
    return x;
  };
  return rebuild(t, leaf);
}

Term rename_apart(const Term& t, Session& session) {
  Renamer r(session);
  return r(t);
}

namespace {

template <class OnVars>
bool parallel_walk(const Term& a, const Term& b, OnVars&& on_vars) {
  std::vector<VarPair> stack{{&a, &b}};
  while (!stack.empty()) {
    auto [pa, pb] = stack.back();
    stack.pop_back();
    const Term& x = deref(*pa);
    const Term& y = deref(*pb);
    if (x.is_var() || y.is_var()) {
      if (!x.is_var() || !y.is_var()) return false;
      if (!on_vars(x, y)) return false;
      continue;
    }
    if (x.same_node(y)) continue;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::Int:
        if (x.integer_value() != y.integer_value()) return false;
        break;
      case Kind::Atom:
        if (x.functor() != y.functor()) return false;
        break;
      case Kind::Compound: {
        if (x.functor() != y.functor() || x.arity() != y.arity()) return false;
        auto xs = x.args();
        auto ys = y.args();
        for (std::size_t i = xs.size(); i-- > 0;) stack.push_back({&xs[i], &ys[i]});
        break;
      }
      case Kind::Var:
        break;
    }
  }
  return true;
}

}  // namespace

bool structurally_equal(const Term& a, const Term& b) {
  return parallel_walk(a, b, [](const Term& x, const Term& y) { return x.same_node(y); });
}

bool is_variant(const Term& a, const Term& b) {
  std::unordered_map<const Node*, const Node*> fwd;
  std::unordered_map<const Node*, const Node*> back;
  return parallel_walk(a, b, [&](const Term& x, const Term& y) {
    auto [fi, fnew] = fwd.emplace(x.node(), y.node());
    auto [bi, bnew] = back.emplace(y.node(), x.node());
    return fi->second == y.node() && bi->second == x.node();
  });
}

bool is_acyclic(const Term& t) {
  struct Frame {
    const Term* term;
    bool exiting;
  };
  std::unordered_set<const Node*> on_path;
  std::unordered_set<const Node*> done;
  std::vector<Frame> stack{{&t, false}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const Node* n = f.term->node();
    if (f.exiting) {
      on_path.erase(n);
      done.insert(n);
      continue;
    }
    if (on_path.count(n)) return false;
    if (done.count(n)) continue;
    if (f.term->is_var()) {
      if (!f.term->binding()) continue;
      on_path.insert(n);
      stack.push_back({f.term, true});
      stack.push_back({&f.term->binding(), false});
      continue;
    }
    if (!f.term->is_compound() || f.term->ground()) continue;
    on_path.insert(n);
    stack.push_back({f.term, true});
    auto args = f.term->args();
    for (std::size_t i = args.size(); i-- > 0;) stack.push_back({&args[i], false});
  }
  return true;
}

void collect_vars(const Term& t, std::vector<Term>& out) {
  std::unordered_set<const Node*> seen;
  for (const Term& v : out) seen.insert(v.node());
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term& x = deref(*stack.back());
    stack.pop_back();
    if (x.is_var()) {
      if (seen.insert(x.node()).second) out.push_back(x);
      continue;
    }
    if (!x.is_compound() || x.ground()) continue;
    auto args = x.args();
    for (std::size_t i = args.size(); i-- > 0;) stack.push_back(&args[i]);
  }
}

bool list_elements(const Term& t, std::vector<Term>& out) {
  const Term* cur = &deref(t);
  while (cur->is_compound(sym::kDot, 2)) {
    out.push_back(cur->arg(0));
    cur = &deref(cur->arg(1));
  }
  return cur->is_atom(sym::kNil);
}

}  // namespace rru
