#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "uhatlab/value.hpp"

namespace uhatlab {

// Which column a layer reference reads: the current position i or the
// attended position j.
enum class Side { I, J };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct RatLit { Rat value; };
struct IntLit { Int value; };
struct SymLit { Symbol value; };
struct BoolLit { bool value; };
// Value of layer `layer` at the position selected by `side`.
struct VarRef { Side side; int layer; };
struct PosI {};
struct PosJ {};
struct Len {};
struct Add { Expr lhs, rhs; };
struct Sub { Expr lhs, rhs; };
struct Mul { Expr lhs, rhs; };
struct Neg { Expr arg; };
// Exponent must evaluate to a non-negative integer.
struct Pow { Expr base, exponent; };
struct Eq { Expr lhs, rhs; };
struct Lt { Expr lhs, rhs; };
struct And { Expr lhs, rhs; };
struct Or { Expr lhs, rhs; };
struct Not { Expr arg; };
struct IfThenElse { Expr cond, then_branch, else_branch; };
struct TupleMake { std::vector<Expr> items; };
struct TupleGet { Expr tuple; int index; };

struct ExprNode {
    using Storage = std::variant<RatLit, IntLit, SymLit, BoolLit, VarRef, PosI, PosJ, Len,
                                 Add, Sub, Mul, Neg, Pow, Eq, Lt, And, Or, Not,
                                 IfThenElse, TupleMake, TupleGet>;
    Storage node;
};

namespace ex {

Expr rat(const Rat& r);
Expr rat(long long num, long long den = 1);
Expr intlit(const Int& v);
Expr sym(char c);
Expr boolean(bool b);
Expr var(Side side, int layer);
Expr pos_i();
Expr pos_j();
Expr len();
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr base, Expr exponent);
Expr eq(Expr a, Expr b);
Expr lt(Expr a, Expr b);
Expr logic_and(Expr a, Expr b);
Expr logic_or(Expr a, Expr b);
Expr logic_not(Expr a);
Expr ite(Expr c, Expr t, Expr f);
Expr tuple(std::vector<Expr> items);
Expr get(Expr tuple, int index);

// Literal expression denoting exactly the given value (tuples recurse).
Expr lit(const Value& v);

} // namespace ex

// Structural equality of expression trees.
bool expr_equal(const Expr& a, const Expr& b);

// True if the expression mentions the J column or the position j.
bool references_j(const Expr& e);
// True if the expression mentions PosI, PosJ or Len anywhere.
bool references_positions(const Expr& e);
// Largest layer index referenced, or -1 if none.
int max_layer_ref(const Expr& e);

// Rewrites layer references through `map`; map[l] gives the new index of
// old layer l. Positions and literals are untouched.
Expr remap_layers(const Expr& e, const std::vector<int>& map);
// Swaps I-side and J-side references (VarRef sides and PosI/PosJ).
Expr swap_sides(const Expr& e);
// Replaces every reference to layer 0 by component `index` of layer 0;
// used when an initialization is widened from plain letters to tuples.
Expr project_layer0(const Expr& e, int index);

std::string expr_to_string(const Expr& e);

} // namespace uhatlab
