#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>

#include "uhatlab/eval.hpp"

namespace uhatlab {

struct LtlNode;
using Ltl = std::shared_ptr<const LtlNode>;

struct LtlTrue {};
struct LtlFalse {};
// Holds at position i iff the letter there belongs to the set.
struct LetterPred { std::set<char> letters; };
// Monadic numerical predicate, resolved through the registry.
struct MonPred { std::string name; };
struct LtlNot { Ltl arg; };
struct LtlAnd { Ltl lhs, rhs; };
struct LtlOr { Ltl lhs, rhs; };
struct LtlNext { Ltl arg; };
struct LtlUntil { Ltl lhs, rhs; };      // strict: the witness is after i
struct LtlYesterday { Ltl arg; };
struct LtlSince { Ltl lhs, rhs; };      // strict: the witness is before i

struct LtlNode {
    using Storage = std::variant<LtlTrue, LtlFalse, LetterPred, MonPred, LtlNot, LtlAnd, LtlOr,
                                 LtlNext, LtlUntil, LtlYesterday, LtlSince>;
    Storage node;
};

namespace ltl {
Ltl truth(bool b);
Ltl letter(std::set<char> letters);
Ltl mon(std::string name);
Ltl negate(Ltl a);
Ltl conj(Ltl a, Ltl b);
Ltl disj(Ltl a, Ltl b);
Ltl next(Ltl a);
Ltl until(Ltl a, Ltl b);
Ltl yesterday(Ltl a);
Ltl since(Ltl a, Ltl b);
} // namespace ltl

// Monadic predicate families theta_n : {0..n-1} -> {0,1}.
struct MonPredRegistry {
    std::map<std::string, std::function<bool(int n, int pos)>> families;

    // even, odd, first, last, middle (2*pos == n-1).
    static MonPredRegistry standard();

    bool eval(const std::string& name, int n, int pos) const;
};

bool contains_past(const Ltl& f);   // Y or S anywhere
bool contains_future(const Ltl& f); // X or U anywhere

bool eval_ltl(const Ltl& f, const Word& w, int i, const MonPredRegistry& env);

enum class LtlMode { FltlAtFirst, PltlAtLast };

// FLTL formulas (no Y/S) are read at position 0, PLTL formulas (no X/U)
// at position n-1. Empty words are rejected at this layer.
bool ltl_recognize(const Ltl& f, const Word& w, LtlMode mode, const MonPredRegistry& env);

std::string ltl_to_string(const Ltl& f);

// First-order logic over word positions with < and monadic predicates.
struct FoNode;
using Fo = std::shared_ptr<const FoNode>;

struct FoTrue {};
struct FoFalse {};
struct LetterAt { std::set<char> letters; std::string var; };
struct MonPredAt { std::string name; std::string var; };
struct Less { std::string lhs, rhs; };
struct FoNot { Fo arg; };
struct FoAnd { Fo lhs, rhs; };
struct FoOr { Fo lhs, rhs; };
struct Exists { std::string var; Fo body; };
struct ForAll { std::string var; Fo body; };

struct FoNode {
    using Storage = std::variant<FoTrue, FoFalse, LetterAt, MonPredAt, Less, FoNot, FoAnd, FoOr,
                                 Exists, ForAll>;
    Storage node;
};

namespace fo {
Fo truth(bool b);
Fo letter_at(std::set<char> letters, std::string var);
Fo mon_at(std::string name, std::string var);
Fo less(std::string a, std::string b);
Fo negate(Fo a);
Fo conj(Fo a, Fo b);
Fo disj(Fo a, Fo b);
Fo exists(std::string var, Fo body);
Fo forall(std::string var, Fo body);
} // namespace fo

// Free variables of a formula (empty for sentences).
std::set<std::string> fo_free_variables(const Fo& f);

// Brute-force sentence evaluation over positions {0..n-1}. Throws
// FreeVariable if the formula is not a sentence and EmptyWord on empty
// input (no positions to quantify over).
bool eval_fo(const Fo& f, const Word& w, const MonPredRegistry& env);

std::string fo_to_string(const Fo& f);

// Library formulas used as cross-check fixtures.
Ltl ltl_ab_star();              // a*b* over {a,b}
Fo fo_ab_star();
Ltl ltl_dyck1(int depth_bound); // Dyck-(1,D) over {(,)} for D in {1,2}
Fo fo_dyck1_depth1();

} // namespace uhatlab
