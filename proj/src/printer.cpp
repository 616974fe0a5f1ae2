#include "rru/printer.hpp"

#include <ostream>
#include <sstream>

namespace rru {

namespace {

enum class Assoc { XFX, XFY, YFX };

struct OpInfo {
  int precedence;
  Assoc assoc;
  const char* text;
};

bool infix_op(const Term& t, OpInfo& out) {
  if (!t.is_compound() || t.arity() != 2) return false;
  const Symbol f = t.functor();
  if (f == sym::kComma) {
    out = {1000, Assoc::XFY, ", "};
  } else if (f == sym::kIs) {
    out = {700, Assoc::XFX, " is "};
  } else if (f == sym::kEq) {
    out = {700, Assoc::XFX, "="};
  } else if (f == sym::kNotEq) {
    out = {700, Assoc::XFX, "\\="};
  } else if (f == sym::kLt) {
    out = {700, Assoc::XFX, "<"};
  } else if (f == sym::kGt) {
    out = {700, Assoc::XFX, ">"};
  } else if (f == sym::kLe) {
    out = {700, Assoc::XFX, "=<"};
  } else if (f == sym::kGe) {
    out = {700, Assoc::XFX, ">="};
  } else if (f == sym::kPlus) {
    out = {500, Assoc::YFX, "+"};
  } else if (f == sym::kMinus) {
    out = {500, Assoc::YFX, "-"};
  } else if (f == sym::kTimes) {
    out = {400, Assoc::YFX, "*"};
  } else {
    return false;
  }
  return true;
}

void write_list(std::ostream& os, const Term& t, VarNaming& names) {
  os << '[';
  const Term* cur = &t;
  bool first = true;
  while (true) {
    const Term& c = deref(*cur);
    if (c.is_compound(sym::kDot, 2)) {
      if (!first) os << ',';
      write_term(os, c.arg(0), names, 999);
      first = false;
      cur = &c.arg(1);
      continue;
    }
    if (!c.is_atom(sym::kNil)) {
      os << '|';
      write_term(os, c, names, 999);
    }
    break;
  }
  os << ']';
}

}  // namespace

const std::string& VarNaming::name_for(const Term& var) {
  auto it = names_.find(var.node());
  if (it != names_.end()) return it->second;
  const std::size_t k = names_.size();
  std::string name(1, static_cast<char>('A' + k % 26));
  if (k >= 26) name += std::to_string(k / 26);
  return names_.emplace(var.node(), std::move(name)).first->second;
}

void write_term(std::ostream& os, const Term& term, VarNaming& names, int max_precedence) {
  const Term& t = deref(term);
  switch (t.kind()) {
    case Kind::Var:
      os << names.name_for(t);
      return;
    case Kind::Int:
      if (t.integer_value().sign() < 0 && max_precedence < 999) {
        os << '(' << t.integer_value() << ')';
      } else {
        os << t.integer_value();
      }
      return;
    case Kind::Atom:
      os << t.functor().name();
      return;
    case Kind::Compound:
      break;
  }
  if (t.is_compound(sym::kDot, 2)) {
    write_list(os, t, names);
    return;
  }
  OpInfo op{};
  if (infix_op(t, op)) {
    const bool parens = op.precedence > max_precedence;
    if (parens) os << '(';
    if (op.assoc == Assoc::XFY) {
      // Right spine of a ','/2 chain is walked in a loop; conjunctions in
      // large unfolded rules are long.
      const Term* cur = &t;
      while (true) {
        const Term& c = deref(*cur);
        OpInfo inner{};
        if (infix_op(c, inner) && c.functor() == t.functor()) {
          write_term(os, c.arg(0), names, op.precedence - 1);
          os << op.text;
          cur = &c.arg(1);
          continue;
        }
        write_term(os, c, names, op.precedence);
        break;
      }
    } else {
      const int left = op.assoc == Assoc::YFX ? op.precedence : op.precedence - 1;
      write_term(os, t.arg(0), names, left);
      os << op.text;
      write_term(os, t.arg(1), names, op.precedence - 1);
    }
    if (parens) os << ')';
    return;
  }
  os << t.functor().name() << '(';
  auto args = t.args();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    write_term(os, args[i], names, 999);
  }
  os << ')';
}

std::string format_term(const Term& t, VarNaming& names, int max_precedence) {
  std::ostringstream os;
  write_term(os, t, names, max_precedence);
  return os.str();
}

std::string format_term(const Term& t) {
  VarNaming names;
  return format_term(t, names);
}

}  // namespace rru
