#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "peg/charset.hpp"

namespace peg {

// A terminal matches one input character against a character domain.
struct Terminal {
  enum class Kind { Single, Class, Any };

  Kind kind = Kind::Any;
  CharSet domain = CharSet::all();
  std::string label = "[.]";  // display form, e.g. "a", [0-9], [.]

  static Terminal single(char32_t c);
  static Terminal any();
  // `domain` must be non-empty; throws std::invalid_argument otherwise.
  static Terminal char_class(std::string label, CharSet domain);

  bool operator==(const Terminal& o) const { return kind == o.kind && domain == o.domain; }
};

bool match_terminal(const Terminal& t, char32_t c);

enum class ExprKind {
  Empty,
  Term,
  NonTerm,
  Seq,
  Choice,
  Star,
  Not,
  Throw,
  Cut,
  Catch,
  Try,
  // Derived operators, rewritten away by desugar().
  And,
  Opt,
  Plus,
  Check,
  Lit,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Empty;
  Terminal term;     // Term
  std::string text;  // NonTerm name, Lit contents (UTF-8)
  Expr a, b;         // children
};

Expr empty();
Expr term(Terminal t);
Expr term(char32_t c);
Expr nonterm(std::string name);
Expr seq(Expr a, Expr b);
Expr choice(Expr a, Expr b);
Expr star(Expr e);
Expr neg(Expr e);
Expr throw_expr();
Expr cut();
Expr catch_expr(Expr e);
Expr try_expr(Expr e);
Expr and_pred(Expr e);
Expr opt(Expr e);
Expr plus(Expr e);
Expr check(Expr e);
Expr lit(std::string_view utf8);

template <class... Rest>
Expr seq(Expr a, Expr b, Expr c, Rest... rest) {
  return seq(std::move(a), seq(std::move(b), std::move(c), std::move(rest)...));
}

template <class... Rest>
Expr choice(Expr a, Expr b, Expr c, Rest... rest) {
  return choice(std::move(a), choice(std::move(b), std::move(c), std::move(rest)...));
}

bool is_sugar(ExprKind k);
bool expr_equal(const Expr& a, const Expr& b);
bool contains_cut(const Expr& e);

std::string to_string(const Terminal& t);
std::string to_string(const Expr& e);  // grammar-file syntax

}  // namespace peg
