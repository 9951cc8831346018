#pragma once

#include <string>
#include <string_view>

#include "peg/grammar.hpp"

namespace peg {

// Parses the grammar file surface syntax:
//
//   %start <expr>             required, single line
//   %token Name1 Name2 ...    declares the lexical nonterminals
//   %alphabet "<chars>"       optional, default alphabet for enumeration
//   Name <- expr ;
//
// Binding, loosest to tightest: choice `/`, sequence by juxtaposition,
// prefix `!` `&`, postfix `*` `+` `?`. Atoms: "literal" (escapes \n \t \r
// \\ \" \xHH), [0-9]-style classes, [.], eps, throw, ^ (cut), check(e),
// catch(e), try(e), (e), identifiers. `#` starts a comment.
//
// The result still contains the derived operators; run desugar() before
// handing it to an evaluator. Errors throw parse_error with line/column.
Grammar parse_grammar(std::string_view utf8_text);

// Reads and parses a grammar file; IO failures throw std::runtime_error.
Grammar load_grammar(const std::string& path);

}  // namespace peg
