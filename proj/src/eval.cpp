#include "uhatlab/eval.hpp"

#include <algorithm>
#include <sstream>

namespace uhatlab {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::UnresolvedReference: return "UnresolvedReference";
        case ErrorKind::NegativeExponent: return "NegativeExponent";
        case ErrorKind::UnknownLetter: return "UnknownLetter";
        case ErrorKind::AlphabetTooSmall: return "AlphabetTooSmall";
        case ErrorKind::InvalidDepth: return "InvalidDepth";
        case ErrorKind::UnknownOracle: return "UnknownOracle";
        case ErrorKind::NonTotalTable: return "NonTotalTable";
        case ErrorKind::CarrierMismatch: return "CarrierMismatch";
        case ErrorKind::NonSeparableScorePresent: return "NonSeparableScorePresent";
        case ErrorKind::InitializationLacksPosition: return "InitializationLacksPosition";
        case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
        case ErrorKind::ZeroGapDegenerate: return "ZeroGapDegenerate";
        case ErrorKind::NonBinaryScore: return "NonBinaryScore";
        case ErrorKind::MissingPositionInInit: return "MissingPositionInInit";
        case ErrorKind::NotColumnOnlyForm: return "NotColumnOnlyForm";
        case ErrorKind::NonBinaryValues: return "NonBinaryValues";
        case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
        case ErrorKind::UnknownMonPred: return "UnknownMonPred";
        case ErrorKind::EmptyWord: return "EmptyWord";
        case ErrorKind::ModeFormulaMismatch: return "ModeFormulaMismatch";
        case ErrorKind::FreeVariable: return "FreeVariable";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::CycleDetected: return "CycleDetected";
        case ErrorKind::ArityViolation: return "ArityViolation";
        case ErrorKind::NonInjectiveEncoding: return "NonInjectiveEncoding";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::StaticCheckError: return "StaticCheckError";
        case ErrorKind::CarrierUnavailable: return "CarrierUnavailable";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

const char* masking_name(Masking m) {
    switch (m) {
        case Masking::NoMask: return "none";
        case Masking::StrictFuture: return "future";
        case Masking::StrictPast: return "past";
    }
    return "?";
}

const char* tiebreak_name(TieBreak t) {
    return t == TieBreak::Rightmost ? "rightmost" : "leftmost";
}

const char* initkind_name(InitKind k) {
    switch (k) {
        case InitKind::CharOnly: return "charonly";
        case InitKind::CharPosLen: return "charposlen";
        case InitKind::CustomExpr: return "custom";
    }
    return "?";
}

namespace {

const Value& column_value(const EvalContext& ctx, Side side, int layer) {
    if (layer < 0 || layer >= ctx.layer_limit)
        fail(ErrorKind::UnresolvedReference,
             "layer " + std::to_string(layer) + " not readable here (limit " +
                 std::to_string(ctx.layer_limit) + ")");
    if (side == Side::I) {
        if (ctx.i_column) return (*ctx.i_column)[layer];
        return (*ctx.layers)[layer][ctx.i];
    }
    if (ctx.j_column) return (*ctx.j_column)[layer];
    if (!ctx.j) fail(ErrorKind::UnresolvedReference, "J-side reference in I-only context");
    return (*ctx.layers)[layer][*ctx.j];
}

bool both_numeric(const Value& a, const Value& b) { return a.is_numeric() && b.is_numeric(); }

Value numeric_add(const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) return Value(Int(a.as_int() + b.as_int()));
    return Value(Rat(a.to_rat() + b.to_rat()));
}
Value numeric_sub(const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) return Value(Int(a.as_int() - b.as_int()));
    return Value(Rat(a.to_rat() - b.to_rat()));
}
Value numeric_mul(const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) return Value(Int(a.as_int() * b.as_int()));
    return Value(Rat(a.to_rat() * b.to_rat()));
}

bool values_eq(const Value& a, const Value& b) {
    if (both_numeric(a, b)) return a.to_rat() == b.to_rat();
    return a == b;
}

} // namespace

Value eval_expr(const Expr& e, const EvalContext& ctx) {
    if (!e) fail(ErrorKind::Internal, "null expression");
    struct Evaluator {
        const EvalContext& ctx;

        Value operator()(const RatLit& x) const { return Value(x.value); }
        Value operator()(const IntLit& x) const { return Value(x.value); }
        Value operator()(const SymLit& x) const { return Value(x.value); }
        Value operator()(const BoolLit& x) const { return Value(x.value); }
        Value operator()(const VarRef& x) const { return column_value(ctx, x.side, x.layer); }
        Value operator()(const PosI&) const {
            if (ctx.i_column) fail(ErrorKind::UnresolvedReference, "position i unavailable");
            return Value(Int(ctx.i));
        }
        Value operator()(const PosJ&) const {
            if (ctx.j_column) fail(ErrorKind::UnresolvedReference, "position j unavailable");
            if (!ctx.j) fail(ErrorKind::UnresolvedReference, "position j in I-only context");
            return Value(Int(*ctx.j));
        }
        Value operator()(const Len&) const {
            if (ctx.i_column) fail(ErrorKind::UnresolvedReference, "length unavailable");
            return Value(Int(ctx.n));
        }
        Value operator()(const Add& x) const {
            Value a = eval_expr(x.lhs, ctx), b = eval_expr(x.rhs, ctx);
            if (!both_numeric(a, b))
                fail(ErrorKind::TypeMismatch, "add on " + a.to_string() + ", " + b.to_string());
            return numeric_add(a, b);
        }
        Value operator()(const Sub& x) const {
            Value a = eval_expr(x.lhs, ctx), b = eval_expr(x.rhs, ctx);
            if (!both_numeric(a, b))
                fail(ErrorKind::TypeMismatch, "sub on " + a.to_string() + ", " + b.to_string());
            return numeric_sub(a, b);
        }
        Value operator()(const Mul& x) const {
            Value a = eval_expr(x.lhs, ctx), b = eval_expr(x.rhs, ctx);
            if (!both_numeric(a, b))
                fail(ErrorKind::TypeMismatch, "mul on " + a.to_string() + ", " + b.to_string());
            return numeric_mul(a, b);
        }
        Value operator()(const Neg& x) const {
            Value a = eval_expr(x.arg, ctx);
            if (a.is_int()) return Value(Int(-a.as_int()));
            if (a.is_rat()) return Value(Rat(-a.as_rat()));
            fail(ErrorKind::TypeMismatch, "neg on " + a.to_string());
        }
        Value operator()(const Pow& x) const {
            Value base = eval_expr(x.base, ctx);
            Value expv = eval_expr(x.exponent, ctx);
            if (!base.is_numeric() || !expv.is_numeric())
                fail(ErrorKind::TypeMismatch, "pow on non-numeric operands");
            Int e;
            if (expv.is_int()) {
                e = expv.as_int();
            } else {
                if (!is_integer(expv.as_rat()))
                    fail(ErrorKind::TypeMismatch, "pow exponent is not an integer");
                e = rat_num(expv.as_rat());
            }
            if (e < 0) fail(ErrorKind::NegativeExponent, "pow exponent " + e.str());
            if (base.is_int()) return Value(int_pow(base.as_int(), e));
            return Value(rat_pow(base.as_rat(), e));
        }
        Value operator()(const Eq& x) const {
            Value a = eval_expr(x.lhs, ctx), b = eval_expr(x.rhs, ctx);
            return Value(values_eq(a, b));
        }
        Value operator()(const Lt& x) const {
            Value a = eval_expr(x.lhs, ctx), b = eval_expr(x.rhs, ctx);
            if (!both_numeric(a, b))
                fail(ErrorKind::TypeMismatch, "< on " + a.to_string() + ", " + b.to_string());
            return Value(a.to_rat() < b.to_rat());
        }
        Value operator()(const And& x) const {
            Value a = eval_expr(x.lhs, ctx);
            if (!a.is_bool()) fail(ErrorKind::TypeMismatch, "&& on " + a.to_string());
            if (!a.as_bool()) return Value(false);
            Value b = eval_expr(x.rhs, ctx);
            if (!b.is_bool()) fail(ErrorKind::TypeMismatch, "&& on " + b.to_string());
            return b;
        }
        Value operator()(const Or& x) const {
            Value a = eval_expr(x.lhs, ctx);
            if (!a.is_bool()) fail(ErrorKind::TypeMismatch, "|| on " + a.to_string());
            if (a.as_bool()) return Value(true);
            Value b = eval_expr(x.rhs, ctx);
            if (!b.is_bool()) fail(ErrorKind::TypeMismatch, "|| on " + b.to_string());
            return b;
        }
        Value operator()(const Not& x) const {
            Value a = eval_expr(x.arg, ctx);
            if (!a.is_bool()) fail(ErrorKind::TypeMismatch, "! on " + a.to_string());
            return Value(!a.as_bool());
        }
        Value operator()(const IfThenElse& x) const {
            Value c = eval_expr(x.cond, ctx);
            if (!c.is_bool()) fail(ErrorKind::TypeMismatch, "if condition " + c.to_string());
            return eval_expr(c.as_bool() ? x.then_branch : x.else_branch, ctx);
        }
        Value operator()(const TupleMake& x) const {
            Tuple t;
            t.reserve(x.items.size());
            for (const Expr& item : x.items) t.push_back(eval_expr(item, ctx));
            return Value(std::move(t));
        }
        Value operator()(const TupleGet& x) const {
            Value t = eval_expr(x.tuple, ctx);
            if (!t.is_tuple()) fail(ErrorKind::TypeMismatch, ".k on " + t.to_string());
            const Tuple& tup = t.as_tuple();
            if (x.index < 0 || size_t(x.index) >= tup.size())
                fail(ErrorKind::TypeMismatch, "tuple index " + std::to_string(x.index) +
                                                  " out of range for " + t.to_string());
            return tup[x.index];
        }
    };
    return std::visit(Evaluator{ctx}, e->node);
}

namespace {

Rat numeric_value_as_rat(const Value& v, const char* what) {
    if (!v.is_numeric())
        fail(ErrorKind::TypeMismatch, std::string(what) + " evaluated to " + v.to_string());
    return v.to_rat();
}

std::vector<Rat> rational_vector(const Value& v) {
    if (!v.is_tuple()) fail(ErrorKind::TypeMismatch, "bilinear score on non-vector " + v.to_string());
    std::vector<Rat> out;
    out.reserve(v.as_tuple().size());
    for (const Value& item : v.as_tuple()) out.push_back(numeric_value_as_rat(item, "vector entry"));
    return out;
}

size_t find_value(const std::vector<Value>& domain, const Value& v, const char* side) {
    for (size_t k = 0; k < domain.size(); ++k)
        if (domain[k] == v) return k;
    fail(ErrorKind::NonTotalTable, std::string("table ") + side + " domain misses " + v.to_string());
}

} // namespace

ExtScore eval_score(const ScoreSpec& score, const Layers& layers, int i, int j, int n,
                    int line_layer) {
    EvalContext ctx{&layers, i, j, n, line_layer, nullptr, nullptr};
    struct Scorer {
        const EvalContext& ctx;
        const Layers& layers;
        int line_layer;

        ExtScore operator()(const ExprScore& s) const {
            return ExtScore::of(numeric_value_as_rat(eval_expr(s.expr, ctx), "score"));
        }
        ExtScore operator()(const TableScore& s) const {
            EvalContext ctx_i = ctx;
            ctx_i.j.reset();
            Value key_i = eval_expr(s.key, ctx_i);
            EvalContext ctx_j = ctx;
            ctx_j.i = *ctx.j;
            ctx_j.j.reset();
            Value key_j = eval_expr(s.key, ctx_j);
            size_t r = find_value(s.rows, key_i, "row");
            size_t c = find_value(s.cols, key_j, "col");
            return ExtScore::of(s.entries[r][c]);
        }
        ExtScore operator()(const SeparableScore& s) const {
            Rat total = 0;
            for (const auto& term : s.terms) {
                Rat f = numeric_value_as_rat(eval_expr(term.f, ctx), "separable f");
                Rat g = numeric_value_as_rat(eval_expr(term.g, ctx), "separable g");
                total += f * g;
            }
            return ExtScore::of(total);
        }
        ExtScore operator()(const BilinearScore& s) const {
            if (s.layer < 0 || s.layer >= line_layer)
                fail(ErrorKind::UnresolvedReference, "bilinear layer out of range");
            std::vector<Rat> vi = rational_vector(layers[s.layer][ctx.i]);
            std::vector<Rat> vj = rational_vector(layers[s.layer][*ctx.j]);
            if (s.matrix.size() != vi.size())
                fail(ErrorKind::TypeMismatch, "bilinear matrix row count mismatch");
            Rat total = 0;
            for (size_t a = 0; a < vi.size(); ++a) {
                if (vi[a] == 0) continue;
                const auto& row = s.matrix[a];
                if (row.size() != vj.size())
                    fail(ErrorKind::TypeMismatch, "bilinear matrix column count mismatch");
                for (size_t b = 0; b < vj.size(); ++b) {
                    if (row[b] == 0) continue;
                    total += vi[a] * row[b] * vj[b];
                }
            }
            return ExtScore::of(total);
        }
        ExtScore operator()(const SentinelScore& s) const {
            Value admit = eval_expr(s.admit, ctx);
            if (!admit.is_bool()) fail(ErrorKind::TypeMismatch, "sentinel guard not boolean");
            if (!admit.as_bool()) return ExtScore::neg_infinity();
            return std::visit(*this, s.inner->v);
        }
    };
    return std::visit(Scorer{ctx, layers, line_layer}, score.v);
}

Layer attention_step(const AttentionLine& line, const Layers& layers, int n, int line_layer,
                     std::vector<int>* selected) {
    Layer out;
    out.reserve(n);
    if (selected) selected->assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int best_j = -1;
        ExtScore best_score;
        for (int j = 0; j < n; ++j) {
            if (!mask_admits(line.mask, i, j)) continue;
            ExtScore s = eval_score(line.score, layers, i, j, n, line_layer);
            bool take;
            if (best_j < 0) {
                take = true;
            } else if (line.tie == TieBreak::Rightmost) {
                take = !(s < best_score); // later j wins ties
            } else {
                take = best_score < s; // earlier j wins ties
            }
            if (take) {
                best_j = j;
                best_score = s;
            }
        }
        EvalContext ctx{&layers, i, std::nullopt, n, line_layer, nullptr, nullptr};
        if (best_j < 0) {
            out.push_back(eval_expr(line.default_value, ctx));
        } else {
            ctx.j = best_j;
            out.push_back(eval_expr(line.value, ctx));
            if (selected) (*selected)[i] = best_j;
        }
    }
    return out;
}

namespace {

Layer initial_layer(const Recognizer& rec, const Word& word) {
    int n = int(word.size());
    Layer layer0;
    layer0.reserve(n);
    for (int i = 0; i < n; ++i) {
        char c = word[i];
        if (std::find(rec.init.alphabet.begin(), rec.init.alphabet.end(), c) ==
            rec.init.alphabet.end())
            fail(ErrorKind::UnknownLetter, std::string("letter '") + c + "' not in alphabet");
        switch (rec.init.kind) {
            case InitKind::CharOnly:
                layer0.push_back(Value::symbol(c));
                break;
            case InitKind::CharPosLen:
                layer0.push_back(Value(Tuple{Value::symbol(c), Value(Int(i)), Value(Int(n))}));
                break;
            case InitKind::CustomExpr: {
                // In a custom initialization expression, layer 0 denotes the
                // raw letter, i the real position and n the length.
                Layers pseudo{Layer(n, Value::symbol(c))};
                EvalContext ctx{&pseudo, i, std::nullopt, n, 1, nullptr, nullptr};
                layer0.push_back(eval_expr(rec.init.custom, ctx));
                break;
            }
        }
    }
    return layer0;
}

} // namespace

Layers run_program(const Recognizer& rec, const Word& word) {
    if (word.empty()) fail(ErrorKind::EmptyWord, "run_program on the empty word");
    int n = int(word.size());
    Layers layers;
    layers.push_back(initial_layer(rec, word));
    for (size_t k = 0; k < rec.lines.size(); ++k) {
        int line_layer = int(k) + 1;
        if (const auto* pw = std::get_if<PointwiseLine>(&rec.lines[k])) {
            Layer out;
            out.reserve(n);
            for (int i = 0; i < n; ++i) {
                EvalContext ctx{&layers, i, std::nullopt, n, line_layer, nullptr, nullptr};
                out.push_back(eval_expr(pw->value, ctx));
            }
            layers.push_back(std::move(out));
        } else {
            const auto& at = std::get<AttentionLine>(rec.lines[k]);
            layers.push_back(attention_step(at, layers, n, line_layer));
        }
    }
    return layers;
}

RunTrace run_traced(const Recognizer& rec, const Word& word) {
    if (word.empty()) fail(ErrorKind::EmptyWord, "run_traced on the empty word");
    int n = int(word.size());
    RunTrace trace;
    trace.layers.push_back(initial_layer(rec, word));
    for (size_t k = 0; k < rec.lines.size(); ++k) {
        int line_layer = int(k) + 1;
        if (const auto* pw = std::get_if<PointwiseLine>(&rec.lines[k])) {
            Layer out;
            for (int i = 0; i < n; ++i) {
                EvalContext ctx{&trace.layers, i, std::nullopt, n, line_layer, nullptr, nullptr};
                out.push_back(eval_expr(pw->value, ctx));
            }
            trace.layers.push_back(std::move(out));
            trace.selected.emplace_back(n, -2);
        } else {
            const auto& at = std::get<AttentionLine>(rec.lines[k]);
            std::vector<int> sel;
            trace.layers.push_back(attention_step(at, trace.layers, n, line_layer, &sel));
            trace.selected.push_back(std::move(sel));
        }
    }
    int read_idx = rec.read_pos == ReadPos::Last ? n - 1 : 0;
    EvalContext ctx{&trace.layers, read_idx, std::nullopt, n, int(trace.layers.size()), nullptr,
                    nullptr};
    Value verdict = eval_expr(rec.accept, ctx);
    if (!verdict.is_bool()) fail(ErrorKind::TypeMismatch, "accept predicate not boolean");
    trace.accepted = verdict.as_bool();
    return trace;
}

bool recognize(const Recognizer& rec, const Word& word) {
    if (word.empty()) return rec.empty_word_accepts;
    return run_traced(rec, word).accepted;
}

void validate_recognizer(const Recognizer& rec) {
    if (rec.init.alphabet.empty())
        fail(ErrorKind::StaticCheckError, "empty alphabet");
    {
        auto sorted = rec.init.alphabet;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(ErrorKind::StaticCheckError, "duplicate alphabet letter");
    }
    if (rec.init.kind == InitKind::CustomExpr) {
        if (!rec.init.custom) fail(ErrorKind::StaticCheckError, "custom init without expression");
        if (references_j(rec.init.custom))
            fail(ErrorKind::StaticCheckError, "J-side reference in initialization");
        if (max_layer_ref(rec.init.custom) > 0)
            fail(ErrorKind::StaticCheckError, "initialization may only read the letter (layer 0)");
    }

    auto check_layers = [](const Expr& e, int line_layer, const char* what) {
        int m = max_layer_ref(e);
        if (m >= line_layer)
            fail(ErrorKind::StaticCheckError,
                 std::string(what) + " reads layer " + std::to_string(m) +
                     " but only layers below " + std::to_string(line_layer) + " exist");
    };
    auto check_no_j = [](const Expr& e, const char* what) {
        if (references_j(e))
            fail(ErrorKind::StaticCheckError, std::string(what) + " must not reference the J side");
    };

    bool has_future = false;
    for (size_t k = 0; k < rec.lines.size(); ++k) {
        int line_layer = int(k) + 1;
        if (const auto* pw = std::get_if<PointwiseLine>(&rec.lines[k])) {
            if (!pw->value) fail(ErrorKind::StaticCheckError, "point-wise line without value");
            check_layers(pw->value, line_layer, "point-wise value");
            check_no_j(pw->value, "point-wise value");
        } else {
            const auto& at = std::get<AttentionLine>(rec.lines[k]);
            if (at.mask == Masking::StrictFuture) has_future = true;
            if (!at.value || !at.default_value)
                fail(ErrorKind::StaticCheckError, "attention line missing value or default");
            check_layers(at.value, line_layer, "attention value");
            check_layers(at.default_value, line_layer, "attention default");
            check_no_j(at.default_value, "attention default");
            struct ScoreCheck {
                int line_layer;
                decltype(check_layers)& layers_ok;
                void operator()(const ExprScore& s) const {
                    if (!s.expr) fail(ErrorKind::StaticCheckError, "score without expression");
                    layers_ok(s.expr, line_layer, "score");
                }
                void operator()(const TableScore& s) const {
                    if (!s.key) fail(ErrorKind::StaticCheckError, "table score without key");
                    layers_ok(s.key, line_layer, "table key");
                    if (references_j(s.key))
                        fail(ErrorKind::StaticCheckError, "table key must be an I-side expression");
                    if (s.entries.size() != s.rows.size())
                        fail(ErrorKind::NonTotalTable, "row count mismatch");
                    for (const auto& row : s.entries)
                        if (row.size() != s.cols.size())
                            fail(ErrorKind::NonTotalTable, "column count mismatch");
                }
                void operator()(const SeparableScore& s) const {
                    for (const auto& term : s.terms) {
                        layers_ok(term.f, line_layer, "separable f");
                        layers_ok(term.g, line_layer, "separable g");
                        if (references_j(term.f))
                            fail(ErrorKind::StaticCheckError, "separable f must be I-side only");
                        if (references_j(swap_sides(term.g)))
                            fail(ErrorKind::StaticCheckError, "separable g must be J-side only");
                    }
                }
                void operator()(const BilinearScore& s) const {
                    if (s.layer < 0 || s.layer >= line_layer)
                        fail(ErrorKind::StaticCheckError, "bilinear layer out of range");
                }
                void operator()(const SentinelScore& s) const {
                    if (!s.admit || !s.inner)
                        fail(ErrorKind::StaticCheckError, "sentinel score incomplete");
                    layers_ok(s.admit, line_layer, "sentinel guard");
                    std::visit(*this, s.inner->v);
                }
            };
            std::visit(ScoreCheck{line_layer, check_layers}, at.score.v);
        }
    }
    if (!rec.accept) fail(ErrorKind::StaticCheckError, "missing accept predicate");
    check_layers(rec.accept, int(rec.lines.size()) + 1, "accept predicate");
    check_no_j(rec.accept, "accept predicate");
    if (rec.read_pos == ReadPos::First && has_future)
        fail(ErrorKind::StaticCheckError,
             "read position 'first' is incompatible with strict future masking");
}

Classification classify_program(const Recognizer& rec, int ties_bound) {
    Classification c;
    c.finite_type = rec.init.kind == InitKind::CharOnly;
    c.ties_checked_up_to = ties_bound;

    bool all_separable = true, all_bilinear = true, all_binary_tables = true;
    bool any_attention = false;
    for (const Line& line : rec.lines) {
        const auto* at = std::get_if<AttentionLine>(&line);
        if (!at) continue;
        any_attention = true;
        c.maskings_used.insert(at->mask);
        if (!at->score.is<SeparableScore>()) all_separable = false;
        if (!at->score.is<BilinearScore>()) all_bilinear = false;
        if (const auto* table = std::get_if<TableScore>(&at->score.v)) {
            for (const auto& row : table->entries)
                for (const Rat& entry : row)
                    if (entry != 0 && entry != 1) all_binary_tables = false;
        } else {
            all_binary_tables = false;
        }
    }
    c.separable_scores = all_separable;
    c.bilinear_scores = all_bilinear;
    c.binary_scores = all_binary_tables;

    // Enumeration over short words: detect tied attention rows and confirm
    // the binary verdict on actually produced scores.
    bool binary_confirmed = true;
    for_each_word(rec.init.alphabet, 1, ties_bound, [&](const Word& w) {
        Layers layers;
        layers.push_back(initial_layer(rec, w));
        int n = int(w.size());
        for (size_t k = 0; k < rec.lines.size(); ++k) {
            int line_layer = int(k) + 1;
            if (const auto* pw = std::get_if<PointwiseLine>(&rec.lines[k])) {
                Layer out;
                for (int i = 0; i < n; ++i) {
                    EvalContext ctx{&layers, i, std::nullopt, n, line_layer, nullptr, nullptr};
                    out.push_back(eval_expr(pw->value, ctx));
                }
                layers.push_back(std::move(out));
                continue;
            }
            const auto& at = std::get<AttentionLine>(rec.lines[k]);
            for (int i = 0; i < n; ++i) {
                std::optional<ExtScore> best;
                int best_count = 0;
                for (int j = 0; j < n; ++j) {
                    if (!mask_admits(at.mask, i, j)) continue;
                    ExtScore s = eval_score(at.score, layers, i, j, n, line_layer);
                    if (s.finite && s.value != 0 && s.value != 1) binary_confirmed = false;
                    if (!best || *best < s) {
                        best = s;
                        best_count = 1;
                    } else if (*best == s) {
                        ++best_count;
                    }
                }
                if (best_count >= 2) c.ties_possible = true;
            }
            layers.push_back(attention_step(at, layers, n, line_layer));
        }
        return true;
    });
    if (any_attention && c.binary_scores && !binary_confirmed) c.binary_scores = false;
    return c;
}

std::string classification_to_string(const Classification& c) {
    std::ostringstream out;
    out << "finite_type=" << (c.finite_type ? "true" : "false")
        << " separable_scores=" << (c.separable_scores ? "true" : "false")
        << " bilinear_scores=" << (c.bilinear_scores ? "true" : "false")
        << " binary_scores=" << (c.binary_scores ? "true" : "false") << " maskings={";
    bool first = true;
    for (Masking m : c.maskings_used) {
        if (!first) out << ",";
        out << masking_name(m);
        first = false;
    }
    out << "} ties_possible_up_to(" << c.ties_checked_up_to
        << ")=" << (c.ties_possible ? "true" : "false");
    return out.str();
}

void for_each_word(const std::vector<char>& alphabet, int min_len, int max_len,
                   const std::function<bool(const Word&)>& fn) {
    for (int n = min_len; n <= max_len; ++n) {
        if (n == 0) {
            if (!fn(Word{})) return;
            continue;
        }
        std::vector<size_t> idx(n, 0);
        while (true) {
            Word w(n, alphabet[0]);
            for (int k = 0; k < n; ++k) w[k] = alphabet[idx[k]];
            if (!fn(w)) return;
            int pos = n - 1;
            while (pos >= 0) {
                if (++idx[pos] < alphabet.size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
}

namespace {

void product_columns(const std::vector<std::vector<Value>>& carriers, int upto,
                     const std::function<void(const std::vector<Value>&)>& fn) {
    std::vector<size_t> idx(upto, 0);
    std::vector<Value> column(upto);
    while (true) {
        for (int l = 0; l < upto; ++l) column[l] = carriers[l][idx[l]];
        fn(column);
        int pos = upto - 1;
        while (pos >= 0) {
            if (++idx[pos] < carriers[pos].size()) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

void insert_sorted_unique(std::vector<Value>& values, const Value& v) {
    auto it = std::lower_bound(values.begin(), values.end(), v, value_less);
    if (it != values.end() && *it == v) return;
    values.insert(it, v);
}

size_t column_count(const std::vector<std::vector<Value>>& carriers, int upto) {
    size_t total = 1;
    for (int l = 0; l < upto; ++l) {
        total *= carriers[l].size();
        if (total > (size_t(1) << 24)) return total;
    }
    return total;
}

} // namespace

std::vector<std::vector<Value>> layer_carriers(const Recognizer& rec, size_t max_carrier) {
    if (rec.init.kind != InitKind::CharOnly)
        fail(ErrorKind::CarrierUnavailable,
             "carriers require a CharOnly (finite type) initialization");
    std::vector<std::vector<Value>> carriers;
    std::vector<Value> letters;
    for (char c : rec.init.alphabet) insert_sorted_unique(letters, Value::symbol(c));
    carriers.push_back(std::move(letters));

    for (size_t k = 0; k < rec.lines.size(); ++k) {
        int upto = int(k) + 1;
        if (column_count(carriers, upto) > max_carrier)
            fail(ErrorKind::CarrierUnavailable, "carrier product too large");
        std::vector<Value> next;
        auto eval_on = [&](const Expr& e, const std::vector<Value>& icol,
                           const std::vector<Value>* jcol) {
            if (references_positions(e))
                fail(ErrorKind::CarrierUnavailable,
                     "expression reads positions; program is not position-free");
            EvalContext ctx;
            ctx.layer_limit = upto;
            ctx.i_column = &icol;
            ctx.j_column = jcol;
            return eval_expr(e, ctx);
        };
        if (const auto* pw = std::get_if<PointwiseLine>(&rec.lines[k])) {
            product_columns(carriers, upto, [&](const std::vector<Value>& col) {
                insert_sorted_unique(next, eval_on(pw->value, col, nullptr));
            });
        } else {
            const auto& at = std::get<AttentionLine>(rec.lines[k]);
            product_columns(carriers, upto, [&](const std::vector<Value>& icol) {
                insert_sorted_unique(next, eval_on(at.default_value, icol, nullptr));
                product_columns(carriers, upto, [&](const std::vector<Value>& jcol) {
                    insert_sorted_unique(next, eval_on(at.value, icol, &jcol));
                });
            });
        }
        carriers.push_back(std::move(next));
    }
    return carriers;
}

TableScore tabulate_score(const Recognizer& rec, int line_index,
                          const std::vector<std::vector<Value>>& carriers) {
    const auto* at = std::get_if<AttentionLine>(&rec.lines.at(line_index));
    if (!at) fail(ErrorKind::Internal, "tabulate_score on a point-wise line");
    int upto = line_index + 1;

    // Already tabular: reuse as-is.
    if (at->score.is<TableScore>()) return at->score.as<TableScore>();

    Expr key;
    if (upto == 1) {
        key = ex::var(Side::I, 0);
    } else {
        std::vector<Expr> items;
        for (int l = 0; l < upto; ++l) items.push_back(ex::var(Side::I, l));
        key = ex::tuple(std::move(items));
    }

    std::vector<Value> domain;
    std::vector<std::vector<Value>> columns;
    product_columns(carriers, upto, [&](const std::vector<Value>& col) {
        Value keyval = upto == 1 ? col[0] : Value(Tuple(col.begin(), col.end()));
        auto it = std::lower_bound(domain.begin(), domain.end(), keyval, value_less);
        if (it != domain.end() && *it == keyval) return;
        columns.insert(columns.begin() + (it - domain.begin()), col);
        domain.insert(it, keyval);
    });

    auto score_at = [&](const std::vector<Value>& icol, const std::vector<Value>& jcol) -> Rat {
        EvalContext ctx;
        ctx.layer_limit = upto;
        ctx.i_column = &icol;
        ctx.j_column = &jcol;
        if (const auto* es = std::get_if<ExprScore>(&at->score.v)) {
            if (references_positions(es->expr))
                fail(ErrorKind::CarrierUnavailable, "score reads positions; cannot tabulate");
            return numeric_value_as_rat(eval_expr(es->expr, ctx), "score");
        }
        if (const auto* ss = std::get_if<SeparableScore>(&at->score.v)) {
            Rat total = 0;
            for (const auto& term : ss->terms) {
                if (references_positions(term.f) || references_positions(term.g))
                    fail(ErrorKind::CarrierUnavailable, "score reads positions; cannot tabulate");
                total += numeric_value_as_rat(eval_expr(term.f, ctx), "separable f") *
                         numeric_value_as_rat(eval_expr(term.g, ctx), "separable g");
            }
            return total;
        }
        fail(ErrorKind::CarrierUnavailable, "score kind cannot be tabulated");
    };

    TableScore table;
    table.key = key;
    table.rows = domain;
    table.cols = domain;
    table.entries.resize(domain.size());
    for (size_t r = 0; r < domain.size(); ++r) {
        table.entries[r].reserve(domain.size());
        for (size_t c = 0; c < domain.size(); ++c)
            table.entries[r].push_back(score_at(columns[r], columns[c]));
    }
    return table;
}

} // namespace uhatlab
