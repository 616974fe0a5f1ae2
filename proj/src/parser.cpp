#include "rru/parser.hpp"

#include <cctype>
#include <optional>

#include "rru/errors.hpp"

namespace rru {

namespace {

enum class Tok { Var, Atom, Int, Punct, Op, End, Eof };

struct Token {
  Tok type = Tok::Eof;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
  // Whitespace or a comment came right before this token.
  bool spaced = false;
};

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    const bool spaced = skip_layout();
    Token t;
    t.line = line_;
    t.column = column_;
    t.spaced = spaced;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.type = Tok::Int;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) t.text += take();
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.type = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Var : Tok::Atom;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) t.text += take();
      return t;
    }
    if (c == '.') {
      const char n = pos_ + 1 < text_.size() ? text_[pos_ + 1] : ' ';
      if (std::isspace(static_cast<unsigned char>(n)) || n == '%') {
        take();
        t.type = Tok::End;
        t.text = ".";
        return t;
      }
      throw ParseError(t.line, t.column, "unexpected '.'");
    }
    static constexpr std::string_view kOps[] = {":-", "\\=", "=<", ">=", "=", "<", ">", "+", "-", "*", "/"};
    for (std::string_view op : kOps) {
      if (text_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) take();
        t.type = Tok::Op;
        t.text = std::string(op);
        return t;
      }
    }
    if (std::string_view("()[]|,!").find(c) != std::string_view::npos) {
      t.type = Tok::Punct;
      t.text = std::string(1, take());
      return t;
    }
    throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
  }

 private:
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  bool skip_layout() {
    bool any = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        break;
      }
      any = true;
    }
    return any;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct InfixOp {
  Symbol functor;
  int precedence;
  bool left_assoc;
};

std::optional<InfixOp> infix_op(const Token& t) {
  if (t.type == Tok::Atom && t.text == "is") return InfixOp{sym::kIs, 700, false};
  if (t.type != Tok::Op) return std::nullopt;
  if (t.text == "=") return InfixOp{sym::kEq, 700, false};
  if (t.text == "\\=") return InfixOp{sym::kNotEq, 700, false};
  if (t.text == "<") return InfixOp{sym::kLt, 700, false};
  if (t.text == ">") return InfixOp{sym::kGt, 700, false};
  if (t.text == "=<") return InfixOp{sym::kLe, 700, false};
  if (t.text == ">=") return InfixOp{sym::kGe, 700, false};
  if (t.text == "+") return InfixOp{sym::kPlus, 500, true};
  if (t.text == "-") return InfixOp{sym::kMinus, 500, true};
  if (t.text == "*") return InfixOp{sym::kTimes, 400, true};
  return std::nullopt;
}

// Appends the conjuncts of g, splicing nested ','/2 but keeping `true`.
void splice_conjuncts(const Term& g, std::vector<Term>& out) {
  std::vector<const Term*> stack{&g};
  while (!stack.empty()) {
    const Term& c = *stack.back();
    stack.pop_back();
    if (c.is_compound(sym::kComma, 2)) {
      stack.push_back(&c.arg(1));
      stack.push_back(&c.arg(0));
    } else {
      out.push_back(c);
    }
  }
}

class Parser {
 public:
  Parser(std::string_view text, Session& session) : lexer_(text), session_(&session) { advance(); }

  Program program() {
    Program p;
    p.name = "program";
    bool have_entry = false;
    std::vector<std::pair<std::size_t, std::size_t>> deck_pos;
    while (tok_.type != Tok::Eof) {
      const Token start = tok_;
      vars_.clear();
      if (is_op(":-")) {
        advance();
        directive(p, have_entry, deck_pos, start);
        continue;
      }
      GuardedRule r = clause();
      expect_end();
      if (p.decks.empty()) open_deck(p, deck_pos, start);
      if (!have_entry) {
        p.entry = r.predicate();
        p.entry_arity = r.arity();
        have_entry = true;
      }
      if (r.predicate() != p.entry || r.arity() != p.entry_arity) {
        throw ParseError(start.line, start.column,
                         "clause for " + r.predicate().name() + "/" + std::to_string(r.arity()) +
                             " in a program with entry " + p.entry.name() + "/" + std::to_string(p.entry_arity));
      }
      p.decks.back().push_back(std::move(r));
    }
    for (std::size_t i = 0; i < p.decks.size(); ++i) {
      if (p.decks[i].empty()) throw ParseError(deck_pos[i].first, deck_pos[i].second, "empty deck");
    }
    if (p.decks.empty()) throw ParseError(tok_.line, tok_.column, "program has no clauses");
    return p;
  }

  GuardedRule single_rule(std::vector<std::pair<std::string, Term>>* variables) {
    GuardedRule r = clause();
    optional_end();
    if (variables) *variables = vars_;
    return r;
  }

  ParsedTerm single_term() {
    ParsedTerm out;
    out.term = expr(1200).first;
    optional_end();
    out.variables = vars_;
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = tok_.type == Tok::Eof ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(tok_.line, tok_.column, "expected " + expected + ", got " + got);
  }

  void advance() { tok_ = lexer_.next(); }
  bool is_punct(char c) const { return tok_.type == Tok::Punct && tok_.text[0] == c; }
  bool is_op(std::string_view s) const { return tok_.type == Tok::Op && tok_.text == s; }

  void expect_punct(char c) {
    if (!is_punct(c)) fail(std::string("'") + c + "'");
    advance();
  }

  void expect_end() {
    if (tok_.type != Tok::End) fail("'.'");
    advance();
  }

  void optional_end() {
    if (tok_.type == Tok::End) advance();
    if (tok_.type != Tok::Eof) fail("end of input");
  }

  std::string expect_atom() {
    if (tok_.type != Tok::Atom) fail("an atom");
    std::string s = tok_.text;
    advance();
    return s;
  }

  static void open_deck(Program& p, std::vector<std::pair<std::size_t, std::size_t>>& pos, const Token& at) {
    p.decks.emplace_back();
    p.schemes.emplace_back();
    pos.emplace_back(at.line, at.column);
  }

  void directive(Program& p, bool& have_entry, std::vector<std::pair<std::size_t, std::size_t>>& deck_pos,
                 const Token& start) {
    const Token name_tok = tok_;
    const std::string name = expect_atom();
    if (name == "program") {
      p.name = expect_atom();
    } else if (name == "entry") {
      p.entry = Symbol::intern(expect_atom());
      if (!is_op("/")) fail("'/'");
      advance();
      if (tok_.type != Tok::Int) fail("an arity");
      p.entry_arity = std::stoul(tok_.text);
      advance();
      have_entry = true;
    } else if (name == "deck") {
      open_deck(p, deck_pos, start);
    } else if (name == "scheme") {
      if (p.decks.empty()) open_deck(p, deck_pos, start);
      p.schemes.back() = expect_atom();
    } else {
      throw ParseError(name_tok.line, name_tok.column, "unknown directive '" + name + "'");
    }
    expect_end();
  }

  GuardedRule clause() {
    const Token start = tok_;
    Term head = expr(999).first;
    const Term& h = head;
    if (h.is_var() || h.is_int()) throw ParseError(start.line, start.column, "clause head must be a predicate");
    std::vector<Term> guard_items;
    std::vector<Term> body;
    bool cut = false;
    if (is_op(":-")) {
      advance();
      while (true) {
        if (is_punct('!')) {
          if (cut) fail("a goal (only one '!' allowed)");
          cut = true;
          advance();
          guard_items = std::move(body);
          body.clear();
        } else {
          body.push_back(expr(999).first);
        }
        if (!is_punct(',')) break;
        advance();
      }
    }
    std::vector<Term> guard_goals;
    for (const Term& g : guard_items) splice_conjuncts(g, guard_goals);
    try {
      return normalize_clause(head, Term::conjunction(guard_goals), body);
    } catch (const ParseError&) {
      throw;
    } catch (const EngineError& e) {
      throw ParseError(start.line, start.column, e.what());
    }
  }

  Term variable(const std::string& name) {
    if (name == "_") return session_->fresh_var();
    for (const auto& [n, v] : vars_) {
      if (n == name) return v;
    }
    Term v = session_->fresh_var();
    vars_.emplace_back(name, v);
    return v;
  }

  // Returns the term and the precedence of its principal operator.
  std::pair<Term, int> expr(int max_prec) {
    Term left = primary();
    int left_prec = 0;
    while (true) {
      if (is_punct(',') && max_prec >= 1000) {
        std::vector<Term> items;
        splice_conjuncts(left, items);
        while (is_punct(',')) {
          advance();
          splice_conjuncts(expr(999).first, items);
        }
        left = Term::conjunction(items);
        left_prec = 1000;
        continue;
      }
      const auto op = infix_op(tok_);
      if (!op || op->precedence > max_prec) break;
      const int left_max = op->left_assoc ? op->precedence : op->precedence - 1;
      if (left_prec > left_max) fail("parentheses around a non-associative operator");
      advance();
      Term right = expr(op->precedence - 1).first;
      left = Term::compound(op->functor, {left, right});
      left_prec = op->precedence;
    }
    return {left, left_prec};
  }

  Term primary() {
    if (tok_.type == Tok::Int) {
      Term t = Term::integer(Integer::from_string(tok_.text));
      advance();
      return t;
    }
    if (is_op("-")) {
      advance();
      if (tok_.type != Tok::Int || tok_.spaced) fail("an integer after '-'");
      Term t = Term::integer(-Integer::from_string(tok_.text));
      advance();
      return t;
    }
    if (tok_.type == Tok::Var) {
      Term v = variable(tok_.text);
      advance();
      return v;
    }
    if (tok_.type == Tok::Atom) {
      const Symbol name = Symbol::intern(tok_.text);
      advance();
      if (!is_punct('(') || tok_.spaced) return Term::atom(name);
      advance();
      std::vector<Term> args{expr(999).first};
      while (is_punct(',')) {
        advance();
        args.push_back(expr(999).first);
      }
      expect_punct(')');
      return Term::compound(name, args);
    }
    if (is_punct('(')) {
      advance();
      Term t = expr(1200).first;
      expect_punct(')');
      return t;
    }
    if (is_punct('[')) {
      advance();
      if (is_punct(']')) {
        advance();
        return Term::atom(sym::kNil);
      }
      std::vector<Term> items{expr(999).first};
      while (is_punct(',')) {
        advance();
        items.push_back(expr(999).first);
      }
      Term tail = Term::atom(sym::kNil);
      if (is_punct('|')) {
        advance();
        tail = expr(999).first;
      }
      expect_punct(']');
      return Term::list(items, tail);
    }
    if (is_punct('!')) fail("a term ('!' may only separate guard and body)");
    fail("a term");
  }

  Lexer lexer_;
  Session* session_;
  Token tok_;
  std::vector<std::pair<std::string, Term>> vars_;
};

}  // namespace

Program parse_program(std::string_view text, Session& session) { return Parser(text, session).program(); }

GuardedRule parse_rule(std::string_view text, Session& session,
                       std::vector<std::pair<std::string, Term>>* variables) {
  return Parser(text, session).single_rule(variables);
}

ParsedTerm parse_term(std::string_view text, Session& session) { return Parser(text, session).single_term(); }

}  // namespace rru
