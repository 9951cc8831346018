#include "peg/grammar_parser.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "peg/errors.hpp"
#include "peg/unicode.hpp"

namespace peg {

namespace {

bool is_ident_start(char32_t c) {
  return (c >= U'A' && c <= U'Z') || (c >= U'a' && c <= U'z') || c == U'_';
}

bool is_ident_cont(char32_t c) {
  return is_ident_start(c) || (c >= U'0' && c <= U'9') || c == U'-';
}

bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\r' || c == U'\n'; }

bool is_reserved(const std::string& name) {
  return name == "eps" || name == "throw" || name == "check" || name == "catch" || name == "try";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : src_(decode_utf8(text)) {}

  Grammar parse() {
    skip_ws();
    while (!eof()) {
      if (peek() == U'%') {
        parse_directive();
      } else if (is_ident_start(peek())) {
        parse_rule();
      } else {
        fail("expected a rule or a %directive");
      }
      skip_ws();
    }
    if (!have_start_) throw parse_error("missing %start directive", line_, col_);
    validate();
    return std::move(g_);
  }

 private:
  // -- cursor ---------------------------------------------------------------

  bool eof() const { return pos_ >= src_.size(); }
  char32_t peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : 0; }

  char32_t get() {
    char32_t c = src_[pos_++];
    if (c == U'\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw parse_error(message, line_, col_);
  }

  void skip_ws() {
    while (!eof()) {
      if (is_space(peek())) {
        get();
      } else if (peek() == U'#') {
        while (!eof() && peek() != U'\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char32_t c, const char* what) {
    if (eof() || peek() != c) fail(std::string("expected ") + what);
    get();
  }

  // -- top level ------------------------------------------------------------

  void parse_directive() {
    get();  // %
    if (!is_ident_start(peek())) fail("expected a directive name after '%'");
    std::string name = read_ident();
    if (name == "start") {
      if (have_start_) fail("duplicate %start directive");
      skip_ws();
      g_.start = parse_expr();
      have_start_ = true;
    } else if (name == "token") {
      bool any = false;
      skip_ws();
      while (!eof() && is_ident_start(peek()) && !followed_by_arrow()) {
        std::size_t at_line = line_, at_col = col_;
        std::string token = read_ident();
        g_.lexical.insert(token);
        token_pos_.emplace(token, std::make_pair(at_line, at_col));
        any = true;
        skip_ws();
      }
      if (!any) fail("%token expects at least one nonterminal name");
    } else if (name == "alphabet") {
      skip_ws();
      expect(U'"', "a quoted string after %alphabet");
      g_.alphabet = read_quoted();
    } else {
      fail("unknown directive %" + name);
    }
  }

  void parse_rule() {
    std::size_t at_line = line_, at_col = col_;
    std::string name = read_ident();
    if (is_reserved(name)) {
      throw parse_error("'" + name + "' is reserved and cannot name a rule", at_line, at_col);
    }
    if (g_.find_rule(name)) {
      throw parse_error("duplicate definition of rule '" + name + "'", at_line, at_col);
    }
    skip_ws();
    if (eof() || peek() != U'<' || peek(1) != U'-') fail("expected '<-' after rule name");
    get();
    get();
    Expr body = parse_expr();
    skip_ws();
    expect(U';', "';' after rule body");
    g_.add_rule(std::move(name), std::move(body));
  }

  // -- expressions ----------------------------------------------------------

  Expr parse_expr() {
    Expr first = parse_seq();
    skip_ws();
    if (!eof() && peek() == U'/') {
      get();
      return choice(std::move(first), parse_expr());
    }
    return first;
  }

  Expr parse_seq() {
    std::vector<Expr> parts;
    parts.push_back(parse_prefix());
    while (at_expr_start()) parts.push_back(parse_prefix());
    Expr out = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = seq(parts[i], std::move(out));
    return out;
  }

  Expr parse_prefix() {
    skip_ws();
    if (!eof() && peek() == U'!') {
      get();
      return neg(parse_prefix());
    }
    if (!eof() && peek() == U'&') {
      get();
      return and_pred(parse_prefix());
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_atom();
    for (;;) {
      skip_ws();
      if (eof()) return e;
      switch (peek()) {
        case U'*':
          get();
          e = star(std::move(e));
          break;
        case U'+':
          get();
          e = plus(std::move(e));
          break;
        case U'?':
          get();
          e = opt(std::move(e));
          break;
        default:
          return e;
      }
    }
  }

  Expr parse_atom() {
    skip_ws();
    if (eof()) fail("expected an expression");
    char32_t c = peek();
    if (c == U'"') {
      get();
      return lit(encode_utf8(read_quoted()));
    }
    if (c == U'[') return parse_class();
    if (c == U'(') {
      get();
      Expr e = parse_expr();
      skip_ws();
      expect(U')', "')'");
      return e;
    }
    if (c == U'^') {
      get();
      return cut();
    }
    if (is_ident_start(c)) {
      std::size_t at_line = line_, at_col = col_;
      std::string name = read_ident();
      if (name == "eps") return empty();
      if (name == "throw") return throw_expr();
      if (name == "check" || name == "catch" || name == "try") {
        skip_ws();
        expect(U'(', ("'(' after " + name).c_str());
        Expr body = parse_expr();
        skip_ws();
        expect(U')', "')'");
        if (name == "check") return check(std::move(body));
        if (name == "catch") return catch_expr(std::move(body));
        return try_expr(std::move(body));
      }
      ref_pos_.emplace(name, std::make_pair(at_line, at_col));
      return nonterm(std::move(name));
    }
    fail("expected an expression");
  }

  Expr parse_class() {
    std::size_t start = pos_;
    get();  // [
    if (peek() == U'.' && peek(1) == U']') {
      get();
      get();
      return term(Terminal::any());
    }
    CharSet set;
    bool any_item = false;
    while (!eof() && peek() != U']') {
      char32_t lo = read_class_char();
      if (peek() == U'-' && peek(1) != U']' && peek(1) != 0) {
        get();
        char32_t hi = read_class_char();
        if (hi < lo) fail("character range out of order");
        set = set.unite(CharSet::range(lo, hi));
      } else {
        set = set.unite(CharSet::single(lo));
      }
      any_item = true;
    }
    if (eof()) fail("unterminated character class");
    get();  // ]
    if (!any_item) fail("empty character class");
    std::string label = encode_utf8(std::u32string_view(src_).substr(start, pos_ - start));
    return term(Terminal::char_class(std::move(label), std::move(set)));
  }

  char32_t read_class_char() {
    char32_t c = get();
    if (c == U'\\') return read_escape();
    return c;
  }

  std::u32string read_quoted() {
    std::u32string out;
    for (;;) {
      if (eof()) fail("unterminated string literal");
      char32_t c = get();
      if (c == U'"') return out;
      if (c == U'\n') fail("newline inside string literal");
      if (c == U'\\') {
        out.push_back(read_escape());
      } else {
        out.push_back(c);
      }
    }
  }

  char32_t read_escape() {
    if (eof()) fail("dangling escape");
    char32_t c = get();
    switch (c) {
      case U'n':
        return U'\n';
      case U't':
        return U'\t';
      case U'r':
        return U'\r';
      case U'\\':
      case U'"':
      case U']':
      case U'[':
      case U'-':
        return c;
      case U'x': {
        char32_t value = 0;
        for (int k = 0; k < 2; ++k) {
          if (eof()) fail("truncated \\x escape");
          char32_t h = get();
          value <<= 4;
          if (h >= U'0' && h <= U'9') {
            value |= h - U'0';
          } else if (h >= U'a' && h <= U'f') {
            value |= h - U'a' + 10;
          } else if (h >= U'A' && h <= U'F') {
            value |= h - U'A' + 10;
          } else {
            fail("invalid hex digit in \\x escape");
          }
        }
        return value;
      }
      default:
        fail("unknown escape sequence");
    }
  }

  std::string read_ident() {
    std::u32string name;
    name.push_back(get());
    while (!eof() && is_ident_cont(peek())) name.push_back(get());
    return encode_utf8(name);
  }

  // An identifier directly followed by `<-` begins the next rule and never
  // continues an expression; this is what lets `%start` go without its own
  // terminator.
  bool followed_by_arrow() const {
    std::size_t j = pos_;
    while (j < src_.size() && is_ident_cont(src_[j])) ++j;
    for (;;) {
      while (j < src_.size() && is_space(src_[j])) ++j;
      if (j < src_.size() && src_[j] == U'#') {
        while (j < src_.size() && src_[j] != U'\n') ++j;
        continue;
      }
      break;
    }
    return j + 1 < src_.size() && src_[j] == U'<' && src_[j + 1] == U'-';
  }

  bool at_expr_start() {
    skip_ws();
    if (eof()) return false;
    char32_t c = peek();
    switch (c) {
      case U'"':
      case U'[':
      case U'(':
      case U'!':
      case U'&':
      case U'^':
        return true;
      default:
        return is_ident_start(c) && !followed_by_arrow();
    }
  }

  // -- validation -----------------------------------------------------------

  void validate() const {
    for (const auto& [name, where] : ref_pos_) {
      if (!g_.find_rule(name)) {
        throw parse_error("undefined nonterminal '" + name + "'", where.first, where.second);
      }
    }
    for (const auto& token : g_.lexical) {
      if (!g_.find_rule(token)) {
        auto it = token_pos_.find(token);
        throw parse_error("%token name '" + token + "' has no rule",
                          it == token_pos_.end() ? 0 : it->second.first,
                          it == token_pos_.end() ? 0 : it->second.second);
      }
    }
  }

  std::u32string src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Grammar g_;
  bool have_start_ = false;
  std::map<std::string, std::pair<std::size_t, std::size_t>> ref_pos_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> token_pos_;
};

}  // namespace

Grammar parse_grammar(std::string_view utf8_text) { return Parser(utf8_text).parse(); }

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open grammar file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_grammar(buffer.str());
}

}  // namespace peg
