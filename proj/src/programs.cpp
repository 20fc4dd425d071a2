#include "uhatlab/programs.hpp"

#include <algorithm>

namespace uhatlab {

using namespace ex;

namespace {

Expr letter_i() { return get(var(Side::I, 0), 0); }
Expr letter_j() { return get(var(Side::J, 0), 0); }

// -(n-1-i-j)^2, maximal exactly when j = n-1-i.
Expr pairing_score() {
    return neg(pow(sub(sub(sub(len(), rat(1)), pos_i()), pos_j()), rat(2)));
}

WordPredicate palindrome_oracle() {
    return [](const Word& w) {
        Word r(w.rbegin(), w.rend());
        return w == r;
    };
}

WordPredicate dyck_oracle(int depth_bound) {
    return [depth_bound](const Word& w) {
        int depth = 0;
        for (char c : w) {
            if (c == '(') {
                if (++depth > depth_bound) return false;
            } else if (c == ')') {
                if (--depth < 0) return false;
            } else {
                return false;
            }
        }
        return depth == 0;
    };
}

} // namespace

NamedRecognizer build_palindrome_guhat(const std::vector<char>& alphabet) {
    if (alphabet.size() < 2)
        fail(ErrorKind::AlphabetTooSmall, "palindrome recognizer needs at least two letters");
    Recognizer rec;
    rec.init = {InitKind::CharPosLen, alphabet, nullptr};
    rec.empty_word_accepts = true;

    AttentionLine pair;
    pair.mask = Masking::NoMask;
    pair.tie = TieBreak::Rightmost;
    pair.score = ExprScore{pairing_score()};
    pair.value = ite(eq(letter_i(), letter_j()), rat(1), rat(0));
    pair.default_value = rat(0); // unreachable: no masking
    rec.lines.push_back(pair);

    AttentionLine scan;
    scan.mask = Masking::NoMask;
    scan.tie = TieBreak::Rightmost;
    scan.score = ExprScore{neg(var(Side::J, 1))};
    scan.value = var(Side::J, 1);
    scan.default_value = rat(0);
    rec.lines.push_back(scan);

    rec.accept = eq(var(Side::I, 2), rat(1));
    validate_recognizer(rec);
    return {"palindrome-guhat", rec, palindrome_oracle()};
}

NamedRecognizer build_palindrome_masked(const std::vector<char>& alphabet) {
    if (alphabet.size() < 2)
        fail(ErrorKind::AlphabetTooSmall, "palindrome recognizer needs at least two letters");
    Recognizer rec;
    rec.init = {InitKind::CharPosLen, alphabet, nullptr};
    rec.empty_word_accepts = true;

    // Positions with 2i <= n-1 carry no information (value 1 regardless);
    // the pair (i, n-1-i) is checked at its right endpoint only.
    AttentionLine pair;
    pair.mask = Masking::StrictFuture;
    pair.tie = TieBreak::Rightmost;
    pair.score = ExprScore{pairing_score()};
    pair.value = ite(logic_or(eq(letter_i(), letter_j()),
                              logic_not(lt(sub(len(), rat(1)), mul(rat(2), pos_i())))),
                     rat(1), rat(0));
    pair.default_value = rat(1);
    rec.lines.push_back(pair);

    // Masked mismatch scan; the own column is folded in because position
    // n-1 cannot attend itself.
    AttentionLine scan;
    scan.mask = Masking::StrictFuture;
    scan.tie = TieBreak::Rightmost;
    scan.score = ExprScore{neg(var(Side::J, 1))};
    scan.value = mul(var(Side::I, 1), var(Side::J, 1));
    scan.default_value = var(Side::I, 1);
    rec.lines.push_back(scan);

    rec.accept = eq(var(Side::I, 2), rat(1));
    validate_recognizer(rec);
    return {"palindrome-masked", rec, palindrome_oracle()};
}

NamedRecognizer build_palindrome_separable(const std::vector<char>& alphabet) {
    NamedRecognizer named = build_palindrome_guhat(alphabet);
    named.name = "palindrome-separable";

    // -(n-1-i-j)^2 = -(n-1-i)^2 * 1 + 2(n-1-i) * j + 1 * (-j^2)
    Expr nm1i = sub(sub(len(), rat(1)), pos_i());
    SeparableScore pairing;
    pairing.context_layers = 1;
    pairing.terms.push_back({neg(pow(nm1i, rat(2))), rat(1)});
    pairing.terms.push_back({mul(rat(2), nm1i), pos_j()});
    pairing.terms.push_back({rat(1), neg(pow(pos_j(), rat(2)))});
    std::get<AttentionLine>(named.rec.lines[0]).score = std::move(pairing);

    SeparableScore scan;
    scan.context_layers = 2;
    scan.terms.push_back({rat(1), neg(var(Side::J, 1))});
    std::get<AttentionLine>(named.rec.lines[1]).score = std::move(scan);

    validate_recognizer(named.rec);
    return named;
}

NamedRecognizer build_dyck1(int depth_bound) {
    if (depth_bound < 1) fail(ErrorKind::InvalidDepth, "depth bound must be >= 1");
    const int D = depth_bound;
    Recognizer rec;
    rec.init = {InitKind::CharOnly, {'(', ')'}, nullptr};
    rec.empty_word_accepts = true;

    Value open = Value::symbol('(');
    Value close = Value::symbol(')');

    // Binary table score: 1 iff the attended column satisfies `flag`.
    auto mark_score = [&](int level) {
        TableScore t;
        if (level == 0) {
            // Level 0 marks every position: constant score over letters.
            t.key = var(Side::I, 0);
            t.rows = t.cols = {open, close};
            t.entries = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
        } else {
            t.key = get(var(Side::I, level), 0);
            t.rows = t.cols = {Value(false), Value(true)};
            t.entries = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
        }
        return t;
    };

    // Layer r value: (mark_r, lastok_{r-1}, firstok_{r-1}).
    //   mark_r      : position ends a repeated-letter pair of level-(r-1) marks
    //   lastok_{r-1}: rightmost level-(r-1) mark so far is ')' (or none)
    //   firstok_{r-1}: not the first level-(r-1) mark with letter ')'
    for (int r = 1; r <= D; ++r) {
        AttentionLine line;
        line.mask = Masking::StrictFuture;
        line.tie = TieBreak::Rightmost;
        line.score = mark_score(r - 1);
        Expr is_close_i = eq(var(Side::I, 0), sym(')'));
        Expr is_close_j = eq(var(Side::J, 0), sym(')'));
        if (r == 1) {
            line.value = tuple({eq(var(Side::I, 0), var(Side::J, 0)), is_close_i, boolean(true)});
            line.default_value =
                tuple({boolean(false), eq(var(Side::I, 0), sym(')')), eq(var(Side::I, 0), sym('('))});
        } else {
            Expr mark_i = get(var(Side::I, r - 1), 0);
            Expr mark_j = get(var(Side::J, r - 1), 0);
            line.value =
                tuple({logic_and(mark_i, logic_and(mark_j, eq(var(Side::I, 0), var(Side::J, 0)))),
                       ite(mark_i, is_close_i, ite(mark_j, is_close_j, boolean(true))),
                       logic_not(logic_and(mark_i, logic_and(is_close_i, logic_not(mark_j))))});
            line.default_value = tuple({boolean(false), ite(mark_i, is_close_i, boolean(true)),
                                        logic_not(logic_and(mark_i, is_close_i))});
        }
        rec.lines.push_back(line);
    }

    // A position is violating if some mark level starts with ')' or a
    // level-D mark exists at all; one lookup aggregates violations.
    auto viol = [&](Side side) {
        Expr v = get(var(side, D), 0); // level-D mark present
        for (int r = 1; r <= D; ++r) v = logic_or(v, logic_not(get(var(side, r), 2)));
        return v;
    };
    {
        AttentionLine agg;
        agg.mask = Masking::StrictFuture;
        agg.tie = TieBreak::Rightmost;
        TableScore t;
        t.key = viol(Side::I);
        t.rows = t.cols = {Value(false), Value(true)};
        t.entries = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
        agg.score = std::move(t);
        agg.value = logic_or(viol(Side::I), viol(Side::J));
        agg.default_value = viol(Side::I);
        rec.lines.push_back(agg);
    }

    Expr ok = logic_not(var(Side::I, D + 1));
    for (int r = 1; r <= D; ++r) ok = logic_and(ok, get(var(Side::I, r), 1));
    rec.accept = ok;

    validate_recognizer(rec);
    return {"dyck1-" + std::to_string(D), rec, dyck_oracle(D)};
}

NamedRecognizer build_first_match() {
    Recognizer rec;
    rec.init = {InitKind::CharOnly, {'a', 'b', 'c'}, nullptr};
    rec.empty_word_accepts = false;

    Expr hit_j = logic_or(eq(var(Side::J, 0), sym('b')), eq(var(Side::J, 0), sym('c')));
    AttentionLine search;
    search.mask = Masking::NoMask;
    search.tie = TieBreak::Leftmost;
    search.score = ExprScore{ite(hit_j, rat(1), rat(0))};
    search.value = ite(hit_j, ite(eq(var(Side::J, 0), sym('c')), rat(1), rat(0)), rat(0));
    search.default_value = rat(0);
    rec.lines.push_back(search);

    rec.accept = eq(var(Side::I, 1), rat(1));
    validate_recognizer(rec);

    WordPredicate oracle = [](const Word& w) {
        for (char c : w) {
            if (c == 'b') return false;
            if (c == 'c') return true;
        }
        return false;
    };
    return {"first-match", rec, oracle};
}

std::vector<NamedRecognizer> builtin_recognizers() {
    std::vector<NamedRecognizer> all;
    all.push_back(build_palindrome_guhat());
    all.push_back(build_palindrome_masked());
    all.push_back(build_palindrome_separable());
    for (int d = 1; d <= 3; ++d) all.push_back(build_dyck1(d));
    all.push_back(build_first_match());
    return all;
}

NamedRecognizer builtin_recognizer(const std::string& name) {
    for (NamedRecognizer& named : builtin_recognizers())
        if (named.name == name) return std::move(named);
    fail(ErrorKind::UnknownOracle, "no builtin recognizer named '" + name + "'");
}

int hamming_weight(const Word& w) {
    return int(std::count(w.begin(), w.end(), '1'));
}

std::map<std::string, WordPredicate> builtin_language_oracles() {
    std::map<std::string, WordPredicate> oracles;
    oracles["palindromes"] = palindrome_oracle();
    for (int d = 1; d <= 4; ++d) oracles["dyck1-" + std::to_string(d)] = dyck_oracle(d);
    oracles["majority"] = [](const Word& w) {
        return 2 * hamming_weight(w) >= int(w.size());
    };
    oracles["all-strings"] = [](const Word&) { return true; };
    oracles["empty-language"] = [](const Word&) { return false; };
    oracles["first-match"] = build_first_match().oracle;
    return oracles;
}

WordPredicate builtin_oracle(const std::string& name) {
    auto oracles = builtin_language_oracles();
    auto it = oracles.find(name);
    if (it == oracles.end()) fail(ErrorKind::UnknownOracle, "no oracle named '" + name + "'");
    return it->second;
}

} // namespace uhatlab
