#include "uhatlab/transforms.hpp"

#include <algorithm>
#include <sstream>

#include "uhatlab/analysis.hpp"

namespace uhatlab {

using namespace ex;

namespace {

// Refuses per-length enumerations whose word count exceeds the budget.
void check_enumeration_budget(size_t alphabet, int n_max) {
    size_t total = 0;
    size_t pow = 1;
    for (int n = 1; n <= n_max; ++n) {
        if (pow > enumeration_budget() / (alphabet ? alphabet : 1)) {
            total = enumeration_budget() + 1;
            break;
        }
        pow *= alphabet;
        total += pow;
        if (total > enumeration_budget()) break;
    }
    if (total > enumeration_budget())
        fail(ErrorKind::EnumerationBudgetExceeded,
             "length bound " + std::to_string(n_max) + " exceeds UHATLAB_MAX_ENUM");
}

} // namespace

SeparableScore table_to_separable(const TableScore& table) {
    if (table.entries.size() != table.rows.size())
        fail(ErrorKind::NonTotalTable, "row count mismatch");
    for (const auto& row : table.entries)
        if (row.size() != table.cols.size()) fail(ErrorKind::NonTotalTable, "column count mismatch");
    if (!table.key) fail(ErrorKind::NonTotalTable, "table without key expression");

    Expr key_j = swap_sides(table.key);
    SeparableScore out;
    out.context_layers = max_layer_ref(table.key) + 1;
    for (size_t a = 0; a < table.rows.size(); ++a) {
        for (size_t b = 0; b < table.cols.size(); ++b) {
            SeparableScore::Term term;
            term.f = ite(eq(table.key, lit(table.rows[a])), rat(table.entries[a][b]), rat(0));
            term.g = ite(eq(key_j, lit(table.cols[b])), rat(1), rat(0));
            out.terms.push_back(std::move(term));
        }
    }
    return out;
}

SeparableScore sep_add(const SeparableScore& a, const SeparableScore& b) {
    if (a.context_layers != b.context_layers)
        fail(ErrorKind::CarrierMismatch, "separable scores live over different layer contexts");
    SeparableScore out;
    out.context_layers = a.context_layers;
    out.terms = a.terms;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

SeparableScore sep_mul(const SeparableScore& a, const SeparableScore& b) {
    if (a.context_layers != b.context_layers)
        fail(ErrorKind::CarrierMismatch, "separable scores live over different layer contexts");
    SeparableScore out;
    out.context_layers = a.context_layers;
    out.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            out.terms.push_back({mul(ta.f, tb.f), mul(ta.g, tb.g)});
    return out;
}

SeparableScore sep_scale(const SeparableScore& a, const Expr& factor) {
    SeparableScore out;
    out.context_layers = a.context_layers;
    out.terms.reserve(a.terms.size());
    for (const auto& term : a.terms) out.terms.push_back({mul(factor, term.f), term.g});
    return out;
}

Expr separable_to_expr(const SeparableScore& s) {
    Expr sum;
    for (const auto& term : s.terms) {
        Expr prod = mul(term.f, term.g);
        sum = sum ? add(sum, prod) : prod;
    }
    return sum ? sum : rat(0);
}

namespace {

// Plain expression equivalent of a score specification.
Expr score_to_expr(const ScoreSpec& score) {
    if (const auto* es = std::get_if<ExprScore>(&score.v)) return es->expr;
    if (const auto* ss = std::get_if<SeparableScore>(&score.v)) return separable_to_expr(*ss);
    if (const auto* ts = std::get_if<TableScore>(&score.v)) {
        Expr key_j = swap_sides(ts->key);
        Expr result = rat(0);
        for (size_t a = ts->rows.size(); a-- > 0;) {
            Expr row = rat(0);
            for (size_t b = ts->cols.size(); b-- > 0;)
                row = ite(eq(key_j, lit(ts->cols[b])), rat(ts->entries[a][b]), row);
            result = ite(eq(ts->key, lit(ts->rows[a])), row, result);
        }
        return result;
    }
    if (const auto* bs = std::get_if<BilinearScore>(&score.v)) {
        Expr result;
        for (size_t a = 0; a < bs->matrix.size(); ++a) {
            for (size_t b = 0; b < bs->matrix[a].size(); ++b) {
                if (bs->matrix[a][b] == 0) continue;
                Expr prod = mul(rat(bs->matrix[a][b]),
                                mul(get(var(Side::I, bs->layer), int(a)),
                                    get(var(Side::J, bs->layer), int(b))));
                result = result ? add(result, prod) : prod;
            }
        }
        return result ? result : rat(0);
    }
    fail(ErrorKind::NonSeparableScorePresent, "sentinel scores have no expression form");
}

// Applies project_layer0 to every expression of a score.
ScoreSpec project_score_layer0(const ScoreSpec& score) {
    struct Projector {
        ScoreSpec operator()(const ExprScore& s) const { return ExprScore{project_layer0(s.expr, 0)}; }
        ScoreSpec operator()(const TableScore& s) const {
            TableScore out = s;
            out.key = project_layer0(s.key, 0);
            return out;
        }
        ScoreSpec operator()(const SeparableScore& s) const {
            SeparableScore out;
            out.context_layers = s.context_layers;
            for (const auto& term : s.terms)
                out.terms.push_back({project_layer0(term.f, 0), project_layer0(term.g, 0)});
            return out;
        }
        ScoreSpec operator()(const BilinearScore& s) const { return s; }
        ScoreSpec operator()(const SentinelScore& s) const {
            SentinelScore out;
            out.admit = project_layer0(s.admit, 0);
            out.inner = std::make_shared<ScoreSpec>(std::visit(*this, s.inner->v));
            return out;
        }
    };
    return std::visit(Projector{}, score.v);
}

// Widens a CharOnly initialization to CharPosLen, rewriting every layer-0
// reference to read the letter component of the new triple.
Recognizer widen_init_to_poslen(const Recognizer& rec) {
    if (rec.init.kind != InitKind::CharOnly) return rec;
    Recognizer out = rec;
    out.init.kind = InitKind::CharPosLen;
    for (Line& line : out.lines) {
        if (auto* pw = std::get_if<PointwiseLine>(&line)) {
            pw->value = project_layer0(pw->value, 0);
        } else {
            auto& at = std::get<AttentionLine>(line);
            at.value = project_layer0(at.value, 0);
            at.default_value = project_layer0(at.default_value, 0);
            at.score = project_score_layer0(at.score);
        }
    }
    out.accept = project_layer0(out.accept, 0);
    return out;
}

// Nested-if lookup of a per-length rational constant; lengths beyond the
// table fall back to `fallback`.
Expr length_table(const std::map<int, Rat>& values, const Rat& fallback) {
    Expr result = rat(fallback);
    for (auto it = values.rbegin(); it != values.rend(); ++it)
        result = ite(eq(len(), rat(it->first)), rat(it->second), result);
    return result;
}

} // namespace

Recognizer separable_to_bilinear(const Recognizer& rec) {
    for (const Line& line : rec.lines)
        if (const auto* at = std::get_if<AttentionLine>(&line))
            if (!at->score.is<SeparableScore>())
                fail(ErrorKind::NonSeparableScorePresent,
                     "separable_to_bilinear requires separable scores everywhere");

    Recognizer out;
    out.init = rec.init;
    out.read_pos = rec.read_pos;
    out.empty_word_accepts = rec.empty_word_accepts;

    std::vector<int> map{0}; // old layer -> new layer
    for (const Line& line : rec.lines) {
        if (const auto* pw = std::get_if<PointwiseLine>(&line)) {
            out.lines.push_back(PointwiseLine{remap_layers(pw->value, map)});
            map.push_back(int(out.lines.size()));
            continue;
        }
        const auto& at = std::get<AttentionLine>(line);
        const auto& sep = at.score.as<SeparableScore>();
        size_t k = sep.terms.size();

        // Point-wise layer: (f_1..f_k, g_1..g_k) evaluated on the own column.
        std::vector<Expr> components;
        components.reserve(2 * k);
        for (const auto& term : sep.terms) components.push_back(remap_layers(term.f, map));
        for (const auto& term : sep.terms)
            components.push_back(remap_layers(swap_sides(term.g), map));
        out.lines.push_back(PointwiseLine{tuple(std::move(components))});
        int vector_layer = int(out.lines.size());

        BilinearScore pairing;
        pairing.layer = vector_layer;
        pairing.matrix.assign(2 * k, std::vector<Rat>(2 * k, Rat(0)));
        for (size_t t = 0; t < k; ++t) pairing.matrix[t][k + t] = 1;

        AttentionLine rewritten;
        rewritten.mask = at.mask;
        rewritten.tie = at.tie;
        rewritten.score = std::move(pairing);
        rewritten.value = remap_layers(at.value, map);
        rewritten.default_value = remap_layers(at.default_value, map);
        out.lines.push_back(std::move(rewritten));
        map.push_back(int(out.lines.size()));
    }
    out.accept = remap_layers(rec.accept, map);
    validate_recognizer(out);
    return out;
}

Recognizer eliminate_mask_guhat(const Recognizer& rec, MaskElimMode mode, int n_max,
                                std::vector<ScoreLowerBound>* bounds_out) {
    if (rec.init.kind == InitKind::CharOnly)
        fail(ErrorKind::InitializationLacksPosition,
             "mask elimination needs i and n in the initialization; widen it first");

    std::vector<ScoreLowerBound> bounds(rec.lines.size());
    if (mode == MaskElimMode::EnumeratedBound) {
        check_enumeration_budget(rec.init.alphabet.size(), n_max);
        // K_n per line: minimum score over every position pair of every
        // length-n input.
        for (int n = 1; n <= n_max; ++n) {
            for_each_word(rec.init.alphabet, n, n, [&](const Word& w) {
                Layers layers = run_program(rec, w);
                for (size_t k = 0; k < rec.lines.size(); ++k) {
                    const auto* at = std::get_if<AttentionLine>(&rec.lines[k]);
                    if (!at || at->mask == Masking::NoMask) continue;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            ExtScore s = eval_score(at->score, layers, i, j, n, int(k) + 1);
                            if (!s.finite) continue;
                            auto [it, inserted] = bounds[k].bound.try_emplace(n, s.value);
                            if (!inserted && s.value < it->second) it->second = s.value;
                        }
                }
                return true;
            });
        }
    }

    Recognizer out = rec;
    for (size_t k = 0; k < out.lines.size(); ++k) {
        auto* at = std::get_if<AttentionLine>(&out.lines[k]);
        if (!at || at->mask == Masking::NoMask) continue;

        Expr guard = at->mask == Masking::StrictFuture ? lt(pos_j(), pos_i())
                                                       : lt(pos_i(), pos_j());
        Expr was_empty = at->mask == Masking::StrictFuture
                             ? eq(pos_i(), rat(0))
                             : eq(pos_i(), sub(len(), rat(1)));

        if (mode == MaskElimMode::Sentinel) {
            SentinelScore s;
            s.admit = guard;
            s.inner = std::make_shared<ScoreSpec>(at->score);
            at->score = std::move(s);
        } else {
            std::map<int, Rat> masked_value;
            Rat lowest = 0;
            bool have = false;
            for (const auto& [n, K] : bounds[k].bound) {
                masked_value[n] = K - 1;
                if (!have || K - 1 < lowest) {
                    lowest = K - 1;
                    have = true;
                }
            }
            Expr substitute = length_table(masked_value, have ? lowest : Rat(-1));
            at->score = ExprScore{ite(guard, score_to_expr(at->score), substitute)};
        }
        at->value = ite(was_empty, at->default_value, at->value);
        at->mask = Masking::NoMask;
    }
    if (bounds_out) *bounds_out = std::move(bounds);
    validate_recognizer(out);
    return out;
}

Recognizer eliminate_ties(const Recognizer& rec, int n_max, std::vector<TieGap>* gaps_out) {
    for (const Line& line : rec.lines)
        if (const auto* at = std::get_if<AttentionLine>(&line))
            if (at->score.is<SentinelScore>())
                fail(ErrorKind::NonSeparableScorePresent,
                     "tie elimination on sentinel scores is not supported");

    // Gap enumeration runs on the original program; widening the
    // initialization afterwards does not change any score value.
    check_enumeration_budget(rec.init.alphabet.size(), n_max);
    std::vector<TieGap> gaps(rec.lines.size());
    for (int n = 1; n <= n_max; ++n) {
        std::vector<std::vector<Rat>> values(rec.lines.size());
        for_each_word(rec.init.alphabet, n, n, [&](const Word& w) {
            Layers layers = run_program(rec, w);
            for (size_t k = 0; k < rec.lines.size(); ++k) {
                const auto* at = std::get_if<AttentionLine>(&rec.lines[k]);
                if (!at) continue;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        if (!mask_admits(at->mask, i, j)) continue;
                        ExtScore s = eval_score(at->score, layers, i, j, n, int(k) + 1);
                        if (s.finite) values[k].push_back(s.value);
                    }
            }
            return true;
        });
        for (size_t k = 0; k < rec.lines.size(); ++k) {
            if (!std::holds_alternative<AttentionLine>(rec.lines[k])) continue;
            auto& vals = values[k];
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
            std::optional<Rat> gap;
            for (size_t t = 1; t < vals.size(); ++t) {
                Rat d = vals[t] - vals[t - 1];
                if (!gap || d < *gap) gap = d;
            }
            gaps[k].degenerate[n] = !gap.has_value();
            gaps[k].eps[n] = gap.value_or(Rat(1));
        }
    }

    Recognizer out = widen_init_to_poslen(rec);
    for (size_t k = 0; k < out.lines.size(); ++k) {
        auto* at = std::get_if<AttentionLine>(&out.lines[k]);
        if (!at) continue;
        // delta_n = eps_n / (2 (n-1)): across one row the perturbations
        // differ by at most (n-1) delta_n < eps_n, so distinct scores keep
        // their order while ties split monotonically in j.
        std::map<int, Rat> delta;
        for (const auto& [n, eps] : gaps[k].eps) delta[n] = eps / Rat(2 * std::max(n - 1, 1));
        Rat fallback = delta.empty() ? Rat(1, 2) : delta.rbegin()->second;
        Expr perturbation = mul(pos_j(), length_table(delta, fallback));
        Expr base = score_to_expr(at->score);
        if (at->tie == TieBreak::Rightmost) {
            at->score = ExprScore{add(base, perturbation)};
        } else {
            at->score = ExprScore{sub(base, perturbation)};
            at->tie = TieBreak::Rightmost;
        }
    }
    if (gaps_out) *gaps_out = std::move(gaps);
    validate_recognizer(out);
    return out;
}

Recognizer simulate_mask_separable(const Recognizer& rec) {
    if (rec.init.kind == InitKind::CustomExpr)
        fail(ErrorKind::MissingPositionInInit,
             "cannot widen a custom initialization with (i, n)");
    for (const Line& line : rec.lines) {
        if (const auto* at = std::get_if<AttentionLine>(&line)) {
            if (at->mask != Masking::StrictFuture || at->tie != TieBreak::Rightmost)
                fail(ErrorKind::NotColumnOnlyForm,
                     "pass expects strictly future-masked rightmost attention everywhere");
        }
    }

    // Separable binary form of every score, via the finite carrier when the
    // score is not already tabular or separable.
    std::vector<std::vector<Value>> carriers;
    bool have_carriers = false;
    if (rec.init.kind == InitKind::CharOnly) {
        carriers = layer_carriers(rec);
        have_carriers = true;
    }

    auto check_binary_table = [](const TableScore& t) {
        for (const auto& row : t.entries)
            for (const Rat& entry : row)
                if (entry != 0 && entry != 1)
                    fail(ErrorKind::NonBinaryScore,
                         "score takes value " + rat_to_string(entry) + " outside {0,1}");
    };

    std::vector<SeparableScore> separable(rec.lines.size());
    for (size_t k = 0; k < rec.lines.size(); ++k) {
        const auto* at = std::get_if<AttentionLine>(&rec.lines[k]);
        if (!at) continue;
        if (const auto* ts = std::get_if<TableScore>(&at->score.v)) {
            check_binary_table(*ts);
            separable[k] = table_to_separable(*ts);
        } else if (const auto* ss = std::get_if<SeparableScore>(&at->score.v)) {
            separable[k] = *ss;
            // Binary check over the carrier when available.
            if (have_carriers) {
                TableScore t = tabulate_score(rec, int(k), carriers);
                check_binary_table(t);
            }
        } else if (at->score.is<ExprScore>()) {
            if (!have_carriers)
                fail(ErrorKind::NonBinaryScore,
                     "expression score needs a finite-type program to tabulate");
            TableScore t = tabulate_score(rec, int(k), carriers);
            check_binary_table(t);
            separable[k] = table_to_separable(t);
        } else {
            fail(ErrorKind::NonBinaryScore, "unsupported score kind for mask simulation");
        }
        separable[k].context_layers = int(k) + 1;
    }

    Recognizer out = widen_init_to_poslen(rec);
    for (size_t k = 0; k < out.lines.size(); ++k) {
        auto* at = std::get_if<AttentionLine>(&out.lines[k]);
        if (!at) continue;

        SeparableScore s_sep = separable[k];
        if (rec.init.kind == InitKind::CharOnly) {
            SeparableScore projected;
            projected.context_layers = s_sep.context_layers;
            for (const auto& term : s_sep.terms)
                projected.terms.push_back(
                    {project_layer0(term.f, 0), project_layer0(term.g, 0)});
            s_sep = std::move(projected);
        }

        // (i - j - 1/2) * 8^j as two separable terms.
        SeparableScore first_factor;
        first_factor.context_layers = s_sep.context_layers;
        first_factor.terms.push_back({pos_i(), pow(rat(8), pos_j())});
        first_factor.terms.push_back(
            {rat(1), mul(neg(add(pos_j(), rat(1, 2))), pow(rat(8), pos_j()))});

        // 4n*8^n * s + 1: the bump 1/(4n*8^n) scaled through by 4n*8^n,
        // which keeps the score division-free.
        Expr cn = mul(rat(4), mul(len(), pow(rat(8), len())));
        SeparableScore scaled = sep_scale(s_sep, cn);
        SeparableScore one;
        one.context_layers = s_sep.context_layers;
        one.terms.push_back({rat(1), rat(1)});

        at->score = sep_mul(first_factor, sep_add(scaled, one));
        at->value = ite(eq(pos_i(), rat(0)), at->default_value, at->value);
        at->mask = Masking::NoMask;
    }
    validate_recognizer(out);
    return out;
}

Recognizer unmasked_brasp_to_masked(const Recognizer& rec) {
    // Normal-form checks. Column-only: score and value read only the
    // attended column; the gadget additionally needs value = 0 wherever the
    // score is 0 (checked extensionally below).
    for (const Line& line : rec.lines) {
        const auto* at = std::get_if<AttentionLine>(&line);
        if (!at) continue;
        if (at->mask != Masking::NoMask || at->tie != TieBreak::Leftmost)
            fail(ErrorKind::NotColumnOnlyForm,
                 "expected unmasked leftmost attention lines");
        const auto* es = std::get_if<ExprScore>(&at->score.v);
        if (!es) fail(ErrorKind::NotColumnOnlyForm, "expected expression scores");
        for (const Expr& e : {es->expr, at->value}) {
            Expr as_i = swap_sides(e);
            if (references_j(as_i) || references_positions(e))
                fail(ErrorKind::NotColumnOnlyForm,
                     "score/value must depend only on the attended column");
        }
    }

    // Extensional normal-form audit on short inputs.
    for_each_word(rec.init.alphabet, 1, 5, [&](const Word& w) {
        Layers layers = run_program(rec, w);
        int n = int(w.size());
        for (size_t k = 0; k < rec.lines.size(); ++k) {
            const auto* at = std::get_if<AttentionLine>(&rec.lines[k]);
            if (!at) continue;
            for (int j = 0; j < n; ++j) {
                ExtScore s = eval_score(at->score, layers, 0, j, n, int(k) + 1);
                if (!s.finite || (s.value != 0 && s.value != 1))
                    fail(ErrorKind::NonBinaryValues, "score outside {0,1} on input " + w);
                EvalContext ctx{&layers, 0, j, n, int(k) + 1, nullptr, nullptr};
                Value v = eval_expr(at->value, ctx);
                if (!v.is_numeric() || (v.to_rat() != 0 && v.to_rat() != 1))
                    fail(ErrorKind::NonBinaryValues, "value outside {0,1} on input " + w);
                if (s.value == 0 && v.to_rat() != 0)
                    fail(ErrorKind::NonBinaryValues,
                         "normal form requires value 0 where the score is 0 (input " + w + ")");
            }
        }
        return true;
    });

    Recognizer out;
    out.init = rec.init;
    out.read_pos = rec.read_pos;
    out.empty_word_accepts = rec.empty_word_accepts;

    std::vector<int> map{0};
    for (const Line& line : rec.lines) {
        if (const auto* pw = std::get_if<PointwiseLine>(&line)) {
            out.lines.push_back(PointwiseLine{remap_layers(pw->value, map)});
            map.push_back(int(out.lines.size()));
            continue;
        }
        const auto& at = std::get<AttentionLine>(line);
        Expr score_j = remap_layers(std::get<ExprScore>(at.score.v).expr, map);
        Expr value_j = remap_layers(at.value, map);
        Expr score_i = swap_sides(score_j);
        Expr value_i = swap_sides(value_j);

        // BOS: 1 exactly at the first position.
        AttentionLine bos;
        bos.mask = Masking::StrictFuture;
        bos.tie = TieBreak::Rightmost;
        bos.score = ExprScore{rat(0)};
        bos.value = rat(0);
        bos.default_value = rat(1);
        out.lines.push_back(bos);
        int bos_layer = int(out.lines.size());

        // L1: leftmost strictly-later position with score 1 (its value), 0
        // when none or when only zero scores follow.
        AttentionLine l1;
        l1.mask = Masking::StrictPast;
        l1.tie = TieBreak::Leftmost;
        l1.score = ExprScore{score_j};
        l1.value = value_j;
        l1.default_value = rat(0);
        out.lines.push_back(l1);
        int l1_layer = int(out.lines.size());

        // L2: repair position 0 against its own column.
        PointwiseLine l2;
        l2.value = ite(eq(score_i, rat(1)), value_i, var(Side::I, l1_layer));
        out.lines.push_back(l2);
        int l2_layer = int(out.lines.size());

        // L3: broadcast L2(0) to every position via the BOS marker.
        AttentionLine l3;
        l3.mask = Masking::StrictFuture;
        l3.tie = TieBreak::Rightmost;
        l3.score = ExprScore{var(Side::J, bos_layer)};
        l3.value = var(Side::J, l2_layer);
        l3.default_value = var(Side::I, l2_layer);
        out.lines.push_back(l3);
        map.push_back(int(out.lines.size()));
    }
    out.accept = remap_layers(rec.accept, map);
    validate_recognizer(out);
    return out;
}

PassReport verify_pass(const Recognizer& before, const Recognizer& after, int max_len,
                       const std::string& pass_name) {
    PassReport report;
    report.pass_name = pass_name;
    report.input_class = classify_program(before);
    report.output_class = classify_program(after);
    report.equivalence_checked_up_to = max_len;
    report.layer_delta = int(after.lines.size()) - int(before.lines.size());
    report.counterexample = check_equivalence([&](const Word& w) { return recognize(before, w); },
                                              [&](const Word& w) { return recognize(after, w); },
                                              before.init.alphabet, max_len);
    return report;
}

std::string PassReport::to_string() const {
    std::ostringstream out;
    out << "pass " << pass_name << "\n";
    out << "  input:  " << classification_to_string(input_class) << "\n";
    out << "  output: " << classification_to_string(output_class) << "\n";
    out << "  layer delta: " << (layer_delta >= 0 ? "+" : "") << layer_delta << "\n";
    if (!notes.empty()) out << "  notes: " << notes << "\n";
    if (counterexample)
        out << "  NOT equivalent up to " << equivalence_checked_up_to
            << ": first counterexample \"" << *counterexample << "\"\n";
    else
        out << "  equivalent on all words up to length " << equivalence_checked_up_to << "\n";
    return out.str();
}

std::vector<std::string> pass_names() {
    return {"separable-to-bilinear", "eliminate-mask-sentinel", "eliminate-mask-enumerated",
            "eliminate-ties", "simulate-mask-separable", "unmasked-brasp-to-masked"};
}

Recognizer apply_pass(const Recognizer& rec, const std::string& name, int bound) {
    if (name == "separable-to-bilinear") return separable_to_bilinear(rec);
    if (name == "eliminate-mask-sentinel") return eliminate_mask_guhat(rec, MaskElimMode::Sentinel);
    if (name == "eliminate-mask-enumerated")
        return eliminate_mask_guhat(rec, MaskElimMode::EnumeratedBound, bound);
    if (name == "eliminate-ties") return eliminate_ties(rec, bound);
    if (name == "simulate-mask-separable") return simulate_mask_separable(rec);
    if (name == "unmasked-brasp-to-masked") return unmasked_brasp_to_masked(rec);
    fail(ErrorKind::UnknownOracle, "no pass named '" + name + "'");
}

} // namespace uhatlab
