#include "peg/grammar.hpp"
#include "peg/unicode.hpp"

namespace peg {

Expr desugar(const Expr& e) {
  if (!e) return e;
  switch (e->kind) {
    case ExprKind::And:
      return neg(neg(desugar(e->a)));
    case ExprKind::Opt:
      return choice(desugar(e->a), empty());
    case ExprKind::Plus: {
      Expr body = desugar(e->a);
      return seq(body, star(body));
    }
    case ExprKind::Check:
      return choice(desugar(e->a), throw_expr());
    case ExprKind::Lit: {
      std::u32string chars = decode_utf8(e->text);
      if (chars.empty()) return empty();
      Expr out = term(chars.back());
      for (std::size_t i = chars.size() - 1; i-- > 0;) out = seq(term(chars[i]), out);
      return out;
    }
    default:
      break;
  }
  Expr a = e->a ? desugar(e->a) : nullptr;
  Expr b = e->b ? desugar(e->b) : nullptr;
  if (a == e->a && b == e->b) return e;  // share unchanged subtrees
  auto n = std::make_shared<ExprNode>(*e);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Grammar desugar(const Grammar& g) {
  Grammar out = g;
  for (auto& [name, body] : out.rules) body = desugar(body);
  out.start = desugar(out.start);
  return out;
}

}  // namespace peg
