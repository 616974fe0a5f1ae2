#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

#include "rru/integer.hpp"
#include "rru/symbol.hpp"

namespace rru {

enum class Kind : std::uint8_t { Var, Int, Atom, Compound };

namespace detail {

struct Node {
  std::uint32_t refs = 0;
  Kind kind;
  // Conservative: true only if the subtree had no variable when built.
  bool ground;
};

void destroy(Node* n) noexcept;

}  // namespace detail

class Session;
class Bindings;

// Handle to an immutable, reference-counted term node. Variables are the
// one exception to immutability: their binding slot is written through
// Bindings, which trails the write so it can be undone.
//
// Reference counts are not atomic. A term graph belongs to one execution
// context at a time; handing a whole graph to another thread is fine,
// sharing one concurrently is not.
class Term {
 public:
  Term() noexcept = default;
  Term(const Term& o) noexcept : node_(o.node_) { retain(); }
  Term(Term&& o) noexcept : node_(o.node_) { o.node_ = nullptr; }
  Term& operator=(const Term& o) noexcept {
    Term(o).swap(*this);
    return *this;
  }
  Term& operator=(Term&& o) noexcept {
    Term(std::move(o)).swap(*this);
    return *this;
  }
  ~Term() { release(); }

  void swap(Term& o) noexcept { std::swap(node_, o.node_); }
  explicit operator bool() const { return node_ != nullptr; }

  static Term integer(Integer v);
  static Term atom(Symbol name);
  static Term compound(Symbol functor, std::span<const Term> args);
  static Term compound(Symbol functor, std::initializer_list<Term> args) {
    return compound(functor, std::span<const Term>(args.begin(), args.size()));
  }
  // [items... | tail]
  static Term list(std::span<const Term> items, Term tail = Term::atom(sym::kNil));
  static Term list(std::initializer_list<Term> items) {
    return list(std::span<const Term>(items.begin(), items.size()));
  }
  // Right-associated ','/2 over goals; "true" when empty.
  static Term conjunction(std::span<const Term> goals);

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::Var; }
  bool is_int() const { return node_->kind == Kind::Int; }
  bool is_atom() const { return node_->kind == Kind::Atom; }
  bool is_compound() const { return node_->kind == Kind::Compound; }
  bool is_atom(Symbol s) const;
  bool is_compound(Symbol f, std::size_t arity) const;
  bool ground() const { return node_->ground; }

  std::uint64_t var_id() const;
  // Binding slot of a variable; null Term when unbound.
  const Term& binding() const;

  const Integer& integer_value() const;
  // Atom name or compound functor.
  Symbol functor() const;
  std::size_t arity() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  std::span<const Term> args() const;

  bool same_node(const Term& o) const { return node_ == o.node_; }
  const detail::Node* node() const { return node_; }

  // Takes a reference to a freshly allocated node. Internal use.
  static Term adopt(detail::Node* n) { return Term(n); }

 private:
  friend class Session;
  friend class Bindings;
  explicit Term(detail::Node* n) noexcept : node_(n) { retain(); }

  void retain() const noexcept {
    if (node_) ++node_->refs;
  }
  void release() noexcept {
    if (node_ && --node_->refs == 0) detail::destroy(node_);
    node_ = nullptr;
  }

  detail::Node* node_ = nullptr;
};

namespace detail {

struct VarNode : Node {
  std::uint64_t id;
  Term ref;
};

struct IntNode : Node {
  Integer value;
};

struct AtomNode : Node {
  Symbol name;
};

struct CompoundNode : Node {
  Symbol functor;
  std::uint32_t arity;
  Term* args() { return reinterpret_cast<Term*>(this + 1); }
  const Term* args() const { return reinterpret_cast<const Term*>(this + 1); }
};

}  // namespace detail

inline std::uint64_t Term::var_id() const { return static_cast<const detail::VarNode*>(node_)->id; }
inline const Term& Term::binding() const { return static_cast<const detail::VarNode*>(node_)->ref; }
inline const Integer& Term::integer_value() const {
  return static_cast<const detail::IntNode*>(node_)->value;
}
inline Symbol Term::functor() const {
  if (node_->kind == Kind::Atom) return static_cast<const detail::AtomNode*>(node_)->name;
  return static_cast<const detail::CompoundNode*>(node_)->functor;
}
inline std::size_t Term::arity() const {
  if (node_->kind != Kind::Compound) return 0;
  return static_cast<const detail::CompoundNode*>(node_)->arity;
}
inline std::span<const Term> Term::args() const {
  if (node_->kind != Kind::Compound) return {};
  const auto* c = static_cast<const detail::CompoundNode*>(node_);
  return {c->args(), c->arity};
}
inline bool Term::is_atom(Symbol s) const {
  return node_->kind == Kind::Atom && static_cast<const detail::AtomNode*>(node_)->name == s;
}
inline bool Term::is_compound(Symbol f, std::size_t n) const {
  if (node_->kind != Kind::Compound) return false;
  const auto* c = static_cast<const detail::CompoundNode*>(node_);
  return c->functor == f && c->arity == n;
}

// Follows variable bindings to the first unbound variable or non-variable.
// The reference stays valid while `t` is alive and no binding on the chain
// is undone.
inline const Term& deref(const Term& t) {
  const Term* p = &t;
  while (p->is_var() && p->binding()) p = &p->binding();
  return *p;
}

// Substitution store. Bindings are written into the variable cells; the
// trail records them so that a checkpoint can restore the exact prior
// binding set. Outside every checkpoint nothing is trailed, since a
// committed computation never rolls back.
class Bindings {
 public:
  class Checkpoint {
   public:
    explicit Checkpoint(Bindings& b) : bindings_(&b), mark_(b.trail_.size()) { ++b.depth_; }
    Checkpoint(const Checkpoint&) = delete;
    Checkpoint& operator=(const Checkpoint&) = delete;
    ~Checkpoint() {
      if (bindings_) rollback();
    }
    // Keeps the bindings made since construction.
    void commit();
    // Undoes every binding made since construction.
    void rollback();

   private:
    Bindings* bindings_;
    std::size_t mark_;
  };

  // `var` must be an unbound variable.
  void bind(const Term& var, Term value);
  std::size_t trail_size() const { return trail_.size(); }
  int checkpoint_depth() const { return depth_; }

 private:
  void undo_to(std::size_t mark);

  std::vector<Term> trail_;
  int depth_ = 0;
};

// One execution context: the fresh-variable counter and the bindings.
class Session {
 public:
  Term fresh_var();
  Bindings& bindings() { return bindings_; }
  std::uint64_t vars_created() const { return next_id_; }

 private:
  std::uint64_t next_id_ = 0;
  Bindings bindings_;
};

// Syntactic unification without occurs check. On failure every binding made
// by the attempt is undone.
bool unify(const Term& a, const Term& b, Bindings& bindings);

// True iff unify(a, b) would succeed; bindings are unchanged either way.
bool unifiable(const Term& a, const Term& b, Bindings& bindings);

// Replaces bound variables transitively. Ground subterms are shared.
Term resolve(const Term& t);

// Copies terms with fresh variables, keeping sharing consistent across all
// calls on the same renamer (copy_term over several terms at once).
class Renamer {
 public:
  explicit Renamer(Session& session) : session_(&session) {}
  Term operator()(const Term& t);

 private:
  Term fresh_for(const detail::Node* var);

  Session* session_;
  // Linear scan while small; switches to a hash map for large rules.
  static constexpr std::size_t kSmall = 16;
  std::pair<const detail::Node*, Term> small_[kSmall];
  std::size_t small_count_ = 0;
  std::unordered_map<const detail::Node*, Term> index_;
};

Term rename_apart(const Term& t, Session& session);

// Structural equality after dereferencing; variables equal only themselves.
bool structurally_equal(const Term& a, const Term& b);

// Equal up to a consistent bijective renaming of variables.
bool is_variant(const Term& a, const Term& b);

// False if following bindings from t revisits a node on the current path.
bool is_acyclic(const Term& t);

// Collects the distinct unbound variables of t in order of first appearance.
void collect_vars(const Term& t, std::vector<Term>& out);

// Proper list -> elements. Returns false for partial or improper lists.
bool list_elements(const Term& t, std::vector<Term>& out);

}  // namespace rru
