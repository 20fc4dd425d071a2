#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uhatlab/expr.hpp"

namespace uhatlab {

// Which attended positions j are admissible at position i. Future masking
// admits strictly earlier positions (i > j), past masking strictly later.
enum class Masking { NoMask, StrictFuture, StrictPast };

inline bool mask_admits(Masking m, int i, int j) {
    switch (m) {
        case Masking::NoMask: return true;
        case Masking::StrictFuture: return i > j;
        case Masking::StrictPast: return i < j;
    }
    return false;
}

enum class TieBreak { Rightmost, Leftmost };

// Score given by a plain expression over both columns and i, j, n.
struct ExprScore {
    Expr expr;
};

// Score factoring through a finite key: the key expression (I-side form,
// position-free) is evaluated on each column and looked up in the table.
struct TableScore {
    Expr key;
    std::vector<Value> rows;
    std::vector<Value> cols;
    std::vector<std::vector<Rat>> entries; // entries[row][col]
};

// Sum over terms of f(I column) * g(J column); f is an I-side expression,
// g a J-side expression. The term count is fixed by the program, never by
// the input length.
struct SeparableScore {
    struct Term {
        Expr f;
        Expr g;
    };
    std::vector<Term> terms;
    // Number of layers the term expressions may reference; guards the
    // algebra against mixing scores from different program depths.
    int context_layers = 0;
};

// x_i^T M x_j where x is the rational-vector (tuple) value of `layer`.
struct BilinearScore {
    int layer = 0;
    std::vector<std::vector<Rat>> matrix;
};

struct ScoreSpec;

// Evaluates to -infinity when `admit` is false; produced by the sentinel
// mode of mask elimination.
struct SentinelScore {
    Expr admit;
    std::shared_ptr<ScoreSpec> inner;
};

struct ScoreSpec {
    using Storage = std::variant<ExprScore, TableScore, SeparableScore, BilinearScore, SentinelScore>;
    Storage v;

    ScoreSpec() : v(ExprScore{nullptr}) {}
    ScoreSpec(ExprScore s) : v(std::move(s)) {}
    ScoreSpec(TableScore s) : v(std::move(s)) {}
    ScoreSpec(SeparableScore s) : v(std::move(s)) {}
    ScoreSpec(BilinearScore s) : v(std::move(s)) {}
    ScoreSpec(SentinelScore s) : v(std::move(s)) {}

    template <typename T> bool is() const { return std::holds_alternative<T>(v); }
    template <typename T> const T& as() const { return std::get<T>(v); }
    template <typename T> T& as() { return std::get<T>(v); }
};

struct PointwiseLine {
    Expr value;
};

struct AttentionLine {
    Masking mask = Masking::NoMask;
    TieBreak tie = TieBreak::Rightmost;
    ScoreSpec score;
    Expr value;
    Expr default_value;
};

using Line = std::variant<PointwiseLine, AttentionLine>;

enum class InitKind { CharOnly, CharPosLen, CustomExpr };

// Layer-0 family E_n. CharOnly emits the letter itself (finite type);
// CharPosLen the triple (letter, i, n); CustomExpr an arbitrary expression
// over the letter (layer 0 reference), i and n.
struct Initialization {
    InitKind kind = InitKind::CharOnly;
    std::vector<char> alphabet;
    Expr custom; // only for CustomExpr
};

enum class ReadPos { Last, First };

struct Recognizer {
    Initialization init;
    std::vector<Line> lines;
    Expr accept; // predicate over the column at the read position
    ReadPos read_pos = ReadPos::Last;
    bool empty_word_accepts = false;
};

// Static checks: layer monotonicity, J-references confined to attention
// score/value, mask/read-position compatibility. Throws StaticCheckError.
void validate_recognizer(const Recognizer& rec);

const char* masking_name(Masking m);
const char* tiebreak_name(TieBreak t);
const char* initkind_name(InitKind k);

} // namespace uhatlab
