#pragma once

#include <string>

#include "uhatlab/logic.hpp"
#include "uhatlab/program.hpp"

namespace uhatlab {

// Line-oriented program DSL:
//   init <charonly|charposlen|custom> alphabet=a,b [expr=<expr>]
//   L<k>(i) = <expr>
//   L<k>(i) = attend <rightmost|leftmost> j [mask=<none|future|past>,
//             score=<expr>] value=<expr> default=<expr>
//   accept at <last|first> when <expr>
//   empty <accept|reject>
// Expressions use i, j, n, L<k>[i], L<k>[j], pow(b,e), if(c,t,f),
// tuple(...), postfix .k, quoted letters, and rational literals p/q.
// '#' starts a comment. Throws SyntaxError with line/column diagnostics
// and StaticCheckError for ill-formed programs.
Recognizer parse_program(const std::string& text);

// Canonical DSL text; parse(program_to_dsl(r)) is structurally identical
// to r. Only expression scores are representable; other score kinds need
// the JSON form.
std::string program_to_dsl(const Recognizer& rec);

// Temporal formulas: atoms [abc] (letter sets), $name (monadic predicates),
// true/false; connectives ! & | ->; operators X, U, Y, S.
Ltl parse_ltl(const std::string& text);

// First-order formulas: exists x. / forall x., [abc](x), $name(x), x < y,
// ! & | ->.
Fo parse_fo(const std::string& text);

} // namespace uhatlab
