#include "peg/expr.hpp"

#include <stdexcept>

#include "peg/unicode.hpp"

namespace peg {

Terminal Terminal::single(char32_t c) {
  Terminal t;
  t.kind = Kind::Single;
  t.domain = CharSet::single(c);
  t.label = quote_char(c);
  return t;
}

Terminal Terminal::any() {
  Terminal t;
  t.kind = Kind::Any;
  t.domain = CharSet::all();
  t.label = "[.]";
  return t;
}

Terminal Terminal::char_class(std::string label, CharSet domain) {
  if (domain.empty()) throw std::invalid_argument("character class with empty domain: " + label);
  Terminal t;
  t.kind = Kind::Class;
  t.domain = std::move(domain);
  t.label = std::move(label);
  return t;
}

bool match_terminal(const Terminal& t, char32_t c) { return t.domain.contains(c); }

namespace {

Expr node(ExprKind k, Expr a = nullptr, Expr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Expr empty() { return node(ExprKind::Empty); }

Expr term(Terminal t) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Term;
  n->term = std::move(t);
  return n;
}

Expr term(char32_t c) { return term(Terminal::single(c)); }

Expr nonterm(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::NonTerm;
  n->text = std::move(name);
  return n;
}

Expr seq(Expr a, Expr b) { return node(ExprKind::Seq, std::move(a), std::move(b)); }
Expr choice(Expr a, Expr b) { return node(ExprKind::Choice, std::move(a), std::move(b)); }
Expr star(Expr e) { return node(ExprKind::Star, std::move(e)); }
Expr neg(Expr e) { return node(ExprKind::Not, std::move(e)); }
Expr throw_expr() { return node(ExprKind::Throw); }
Expr cut() { return node(ExprKind::Cut); }
Expr catch_expr(Expr e) { return node(ExprKind::Catch, std::move(e)); }
Expr try_expr(Expr e) { return node(ExprKind::Try, std::move(e)); }
Expr and_pred(Expr e) { return node(ExprKind::And, std::move(e)); }
Expr opt(Expr e) { return node(ExprKind::Opt, std::move(e)); }
Expr plus(Expr e) { return node(ExprKind::Plus, std::move(e)); }
Expr check(Expr e) { return node(ExprKind::Check, std::move(e)); }

Expr lit(std::string_view utf8) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Lit;
  n->text = std::string(utf8);
  return n;
}

bool is_sugar(ExprKind k) {
  switch (k) {
    case ExprKind::And:
    case ExprKind::Opt:
    case ExprKind::Plus:
    case ExprKind::Check:
    case ExprKind::Lit:
      return true;
    default:
      return false;
  }
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Term:
      return a->term == b->term;
    case ExprKind::NonTerm:
    case ExprKind::Lit:
      return a->text == b->text;
    default:
      break;
  }
  if (!!a->a != !!b->a || !!a->b != !!b->b) return false;
  if (a->a && !expr_equal(a->a, b->a)) return false;
  if (a->b && !expr_equal(a->b, b->b)) return false;
  return true;
}

bool contains_cut(const Expr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::Cut) return true;
  return contains_cut(e->a) || contains_cut(e->b);
}

std::string to_string(const Terminal& t) { return t.label; }

namespace {

// Binding strength, loosest to tightest: choice < seq < prefix < postfix < atom.
int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Choice:
      return 0;
    case ExprKind::Seq:
      return 1;
    case ExprKind::Not:
    case ExprKind::And:
      return 2;
    case ExprKind::Star:
    case ExprKind::Opt:
    case ExprKind::Plus:
      return 3;
    default:
      return 4;
  }
}

void print(std::string& out, const Expr& e, int min_prec) {
  int p = precedence(e->kind);
  bool parens = p < min_prec;
  if (parens) out += "(";
  switch (e->kind) {
    case ExprKind::Empty:
      out += "eps";
      break;
    case ExprKind::Term:
      out += e->term.label;
      break;
    case ExprKind::NonTerm:
      out += e->text;
      break;
    case ExprKind::Seq:
      print(out, e->a, 2);
      out += " ";
      print(out, e->b, 1);
      break;
    case ExprKind::Choice:
      print(out, e->a, 1);
      out += " / ";
      print(out, e->b, 0);
      break;
    case ExprKind::Star:
      print(out, e->a, 4);
      out += "*";
      break;
    case ExprKind::Not:
      out += "!";
      print(out, e->a, 2);
      break;
    case ExprKind::Throw:
      out += "throw";
      break;
    case ExprKind::Cut:
      out += "^";
      break;
    case ExprKind::Catch:
      out += "catch(";
      print(out, e->a, 0);
      out += ")";
      break;
    case ExprKind::Try:
      out += "try(";
      print(out, e->a, 0);
      out += ")";
      break;
    case ExprKind::And:
      out += "&";
      print(out, e->a, 2);
      break;
    case ExprKind::Opt:
      print(out, e->a, 4);
      out += "?";
      break;
    case ExprKind::Plus:
      print(out, e->a, 4);
      out += "+";
      break;
    case ExprKind::Check:
      out += "check(";
      print(out, e->a, 0);
      out += ")";
      break;
    case ExprKind::Lit:
      out += quote_string(e->text);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  if (e) print(out, e, 0);
  return out;
}

}  // namespace peg
