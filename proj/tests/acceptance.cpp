// Acceptance suite: one check per release criterion, one verdict line each.
// Usage: uhatlab_acceptance <fixtures-dir>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "uhatlab/analysis.hpp"
#include "uhatlab/circuit.hpp"
#include "uhatlab/parser.hpp"
#include "uhatlab/programs.hpp"
#include "uhatlab/serialize.hpp"
#include "uhatlab/transforms.hpp"

using namespace uhatlab;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: recognizer correctness ---------------------------------

void criterion_recognizers() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (auto builder : {build_palindrome_guhat, build_palindrome_masked,
                         build_palindrome_separable}) {
        auto named = builder({'a', 'b'});
        auto cx = check_equivalence([&](const Word& w) { return recognize(named.rec, w); },
                                    named.oracle, {'a', 'b'}, 10);
        if (cx) {
            ok = false;
            detail = named.name + " disagrees on \"" + *cx + "\"";
        }
    }
    for (int d = 1; d <= 3 && ok; ++d) {
        auto named = build_dyck1(d);
        auto cx = check_equivalence([&](const Word& w) { return recognize(named.rec, w); },
                                    named.oracle, {'(', ')'}, 12);
        if (cx) {
            ok = false;
            detail = named.name + " disagrees on \"" + *cx + "\"";
        }
    }
    std::ostringstream timing;
    timing.precision(1);
    timing << std::fixed << seconds_since(start) << "s";
    report(1, "palindrome variants to length 10 and dyck D=1..3 to length 12 match their oracles",
           ok, detail.empty() ? timing.str() : detail);
}

// ---- criterion 2: pass preservation ---------------------------------------

void criterion_passes() {
    bool ok = true;
    std::string detail;
    auto check = [&](const std::string& name, const Recognizer& before, const Recognizer& after) {
        if (!ok) return;
        PassReport r = verify_pass(before, after, 8, name);
        if (r.counterexample) {
            ok = false;
            detail = name + " breaks on \"" + *r.counterexample + "\"";
        }
    };
    auto sep = build_palindrome_separable();
    check("separable-to-bilinear", sep.rec, separable_to_bilinear(sep.rec));
    auto masked = build_palindrome_masked();
    check("eliminate-mask-sentinel", masked.rec,
          eliminate_mask_guhat(masked.rec, MaskElimMode::Sentinel));
    check("eliminate-mask-enumerated", masked.rec,
          eliminate_mask_guhat(masked.rec, MaskElimMode::EnumeratedBound, 8));
    auto guh = build_palindrome_guhat();
    check("eliminate-ties(palindrome)", guh.rec, eliminate_ties(guh.rec, 8));
    auto dyck1 = build_dyck1(1);
    check("eliminate-ties(dyck1-1)", dyck1.rec, eliminate_ties(dyck1.rec, 8));
    check("simulate-mask-separable(dyck1-1)", dyck1.rec, simulate_mask_separable(dyck1.rec));
    auto dyck2 = build_dyck1(2);
    check("simulate-mask-separable(dyck1-2)", dyck2.rec, simulate_mask_separable(dyck2.rec));
    auto fm = build_first_match();
    check("unmasked-brasp-to-masked", fm.rec, unmasked_brasp_to_masked(fm.rec));
    report(2, "every pass preserves its fixture language exhaustively to length 8", ok, detail);
}

// ---- criterion 3: sbar property audit -------------------------------------

void criterion_sbar() {
    auto start = std::chrono::steady_clock::now();
    SbarReport r = audit_sbar(16);
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail.precision(1);
    detail << r.checked << " evaluations, " << std::fixed << elapsed << "s";
    bool ok = r.ok() && elapsed < 10.0;
    report(3, "mask-simulation score properties 2-5 hold for all n <= 16", ok,
           r.ok() ? detail.str() : r.violations.front());
}

// ---- criterion 4: separable algebra ----------------------------------------

void criterion_separable_algebra() {
    using namespace ex;
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7), size(1, 4);
    bool ok = true;
    std::string detail;
    auto eval_on = [](const ScoreSpec& score, const Value& vi, const Value& vj) {
        Layers layers{{vi, vj}};
        return eval_score(score, layers, 0, 1, 2, 1).value;
    };
    for (int rep = 0; rep < 100 && ok; ++rep) {
        int l = size(rng);
        TableScore t;
        t.key = var(Side::I, 0);
        for (int k = 0; k < l; ++k) t.rows.push_back(Value::rational(k));
        t.cols = t.rows;
        t.entries.assign(l, {});
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b) t.entries[a].push_back(Rat(num(rng), den(rng)));
        SeparableScore s = table_to_separable(t);
        if (s.terms.size() != size_t(l * l)) {
            ok = false;
            detail = "term count is not l^2";
            break;
        }
        for (int a = 0; a < l && ok; ++a)
            for (int b = 0; b < l; ++b)
                if (eval_on(s, t.rows[a], t.cols[b]) != t.entries[a][b]) {
                    ok = false;
                    detail = "reconstruction mismatch";
                    break;
                }
    }
    // algebra: pointwise sums/products with exact term counts
    for (int rep = 0; rep < 25 && ok; ++rep) {
        auto gen = [&](int terms) {
            SeparableScore s;
            s.context_layers = 1;
            for (int t = 0; t < terms; ++t)
                s.terms.push_back({add(mul(rat(num(rng)), var(Side::I, 0)), rat(num(rng))),
                                   add(mul(rat(num(rng)), var(Side::J, 0)), rat(num(rng)))});
            return s;
        };
        int ka = size(rng), kb = size(rng);
        SeparableScore a = gen(ka), b = gen(kb);
        SeparableScore sum = sep_add(a, b), prod = sep_mul(a, b);
        if (sum.terms.size() != size_t(ka + kb) || prod.terms.size() != size_t(ka * kb)) {
            ok = false;
            detail = "algebra term counts off";
            break;
        }
        for (int x = -3; x <= 3 && ok; ++x)
            for (int y = -3; y <= 3; ++y) {
                Value vx = Value::rational(x), vy = Value::rational(y);
                Rat va = eval_on(a, vx, vy), vb = eval_on(b, vx, vy);
                if (eval_on(sum, vx, vy) != va + vb || eval_on(prod, vx, vy) != va * vb) {
                    ok = false;
                    detail = "pointwise algebra mismatch";
                    break;
                }
            }
    }
    report(4, "table-to-separable reconstructs 100 random tables; sums and products match", ok,
           detail);
}

// ---- criterion 5: tie elimination ------------------------------------------

void criterion_tie_elimination() {
    bool ok = true;
    std::string detail;
    struct Case {
        NamedRecognizer named;
        std::vector<char> alphabet;
    };
    std::vector<Case> cases;
    cases.push_back({build_palindrome_guhat(), {'a', 'b'}});
    cases.push_back({build_dyck1(1), {'(', ')'}});
    for (auto& c : cases) {
        if (!ok) break;
        Recognizer out = eliminate_ties(c.named.rec, 8);
        for_each_word(c.alphabet, 1, 8, [&](const Word& w) {
            RunTrace before = run_traced(c.named.rec, w);
            RunTrace after = run_traced(out, w);
            int n = int(w.size());
            for (size_t k = 0; k < out.lines.size() && ok; ++k) {
                const auto* at = std::get_if<AttentionLine>(&out.lines[k]);
                if (!at) continue;
                for (int i = 0; i < n && ok; ++i) {
                    if (before.selected[k][i] != after.selected[k][i]) {
                        ok = false;
                        detail = c.named.name + ": selection changed on \"" + w + "\"";
                    }
                    int max_count = 0;
                    bool have = false;
                    ExtScore best;
                    for (int j = 0; j < n; ++j) {
                        if (!mask_admits(at->mask, i, j)) continue;
                        ExtScore s = eval_score(at->score, after.layers, i, j, n, int(k) + 1);
                        if (!have || best < s) {
                            best = s;
                            max_count = 1;
                            have = true;
                        } else if (best == s) {
                            ++max_count;
                        }
                    }
                    if (have && max_count != 1) {
                        ok = false;
                        detail = c.named.name + ": tied row remains on \"" + w + "\"";
                    }
                }
            }
            return ok;
        });
    }
    report(5, "tie elimination yields unique row maxima and identical selections to length 8", ok,
           detail);
}

// ---- criterion 6: fixability ------------------------------------------------

void criterion_fixability() {
    bool ok = true;
    std::string detail;
    auto witness = search_unfixable(builtin_oracle("majority"), Rat(1, 5), 8, 10, {'0', '1'});
    if (!witness || witness->verdict != FixVerdict::Unfixable) {
        ok = false;
        detail = "no unfixable witness for majority";
    } else {
        // independent re-verification of the witness: every in-budget
        // extension of ?^n leaves both an accepted and a rejected evaluation
        auto oracle = builtin_oracle("majority");
        int n = witness->n;
        int budget = witness->budget;
        std::function<bool(Restriction)> mixed = [&](Restriction rho) {
            bool seen_in = false, seen_out = false;
            for_each_word({'0', '1'}, n, n, [&](const Word& w) {
                bool match = true;
                for (int k = 0; k < n; ++k)
                    if (rho.pattern[k] != '?' && rho.pattern[k] != w[k]) match = false;
                if (match) (oracle(w) ? seen_in : seen_out) = true;
                return !(seen_in && seen_out);
            });
            return seen_in && seen_out;
        };
        std::function<bool(Restriction, int, int)> all_mixed = [&](Restriction rho, int from,
                                                                   int left) {
            if (!mixed(rho)) return false;
            if (left == 0) return true;
            for (int pos = from; pos < n; ++pos) {
                if (rho.pattern[pos] != '?') continue;
                for (char letter : {'0', '1'}) {
                    Restriction ext = rho;
                    ext.pattern[pos] = letter;
                    if (!all_mixed(ext, pos + 1, left - 1)) return false;
                }
            }
            return true;
        };
        if (!all_mixed(Restriction{std::string(n, '?'), {'0', '1'}}, 0, budget)) {
            ok = false;
            detail = "witness re-verification failed";
        }
    }
    if (ok) {
        for (Rat eps : {Rat(1, 3), Rat(1, 2)}) {
            if (search_unfixable(builtin_oracle("palindromes"), eps, 6, 10, {'a', 'b'})) {
                ok = false;
                detail = "palindromes reported unfixable";
            }
            if (search_unfixable(builtin_oracle("dyck1-2"), eps, 6, 10, {'(', ')'})) {
                ok = false;
                detail = "dyck reported unfixable";
            }
        }
    }
    report(6, "majority is unfixable at eps=1/5 (n=8..10); guhat fixtures stay fixable", ok,
           detail);
}

// ---- criterion 7: logic oracles ---------------------------------------------

void criterion_logic() {
    bool ok = true;
    std::string detail;
    MonPredRegistry reg = MonPredRegistry::standard();
    std::mt19937 rng(999);
    std::uniform_int_distribution<int> pick(0, 8);
    std::function<Ltl(int)> gen = [&](int depth) -> Ltl {
        int c = depth <= 0 ? pick(rng) % 4 : pick(rng);
        switch (c) {
            case 0: return ltl::letter({'a'});
            case 1: return ltl::letter({'b'});
            case 2: return ltl::truth(true);
            case 3: return ltl::truth(false);
            case 4: return ltl::negate(gen(depth - 1));
            case 5: return ltl::conj(gen(depth - 1), gen(depth - 1));
            case 6: return ltl::disj(gen(depth - 1), gen(depth - 1));
            case 7: return ltl::next(gen(depth - 1));
            default: return ltl::until(gen(depth - 1), gen(depth - 1));
        }
    };
    for (int rep = 0; rep < 20 && ok; ++rep) {
        Ltl phi = gen(3);
        Ltl lhs = ltl::until(ltl::truth(false), phi);
        Ltl rhs = ltl::next(phi);
        for_each_word({'a', 'b'}, 1, 8, [&](const Word& w) {
            for (int i = 0; i < int(w.size()); ++i)
                if (eval_ltl(lhs, w, i, reg) != eval_ltl(rhs, w, i, reg)) {
                    ok = false;
                    detail = "false-U-phi != X-phi on \"" + w + "\"";
                    return false;
                }
            return true;
        });
    }
    if (ok) {
        auto sorted = [](const Word& w) { return std::is_sorted(w.begin(), w.end()); };
        for_each_word({'a', 'b'}, 1, 8, [&](const Word& w) {
            bool via_fo = eval_fo(fo_ab_star(), w, reg);
            bool via_ltl = ltl_recognize(ltl_ab_star(), w, LtlMode::FltlAtFirst, reg);
            if (via_fo != via_ltl || via_fo != sorted(w)) {
                ok = false;
                detail = "a*b* fixtures disagree on \"" + w + "\"";
                return false;
            }
            return true;
        });
        auto dyck_oracle = builtin_oracle("dyck1-1");
        for_each_word({'(', ')'}, 1, 8, [&](const Word& w) {
            bool via_fo = eval_fo(fo_dyck1_depth1(), w, reg);
            bool via_ltl = ltl_recognize(ltl_dyck1(1), w, LtlMode::FltlAtFirst, reg);
            if (via_fo != via_ltl || via_fo != dyck_oracle(w)) {
                ok = false;
                detail = "dyck fixtures disagree on \"" + w + "\"";
                return false;
            }
            return true;
        });
    }
    report(7, "false-U-phi equals X-phi for 20 random formulas; FO/LTL pairs match oracles", ok,
           detail);
}

// ---- criterion 8: round-trip stability of shipped fixtures -------------------

void criterion_fixture_roundtrip(const fs::path& fixtures) {
    bool ok = true;
    std::string detail;
    int count = 0;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
        const fs::path& p = entry.path();
        std::string text = read_file(p);
        try {
            if (p.extension() == ".urasp") {
                Recognizer rec = parse_program(text);
                std::string printed = program_to_dsl(rec);
                if (program_to_dsl(parse_program(printed)) != printed) {
                    ok = false;
                    detail = p.filename().string() + " is not a DSL fixpoint";
                }
                std::string json = program_to_json(rec);
                if (program_to_json(program_from_json(json)) != json) {
                    ok = false;
                    detail = p.filename().string() + " is not a JSON fixpoint";
                }
                ++count;
            } else if (p.extension() == ".ltl") {
                Ltl f = parse_ltl(text);
                if (ltl_to_string(parse_ltl(ltl_to_string(f))) != ltl_to_string(f)) {
                    ok = false;
                    detail = p.filename().string() + " is not a fixpoint";
                }
                ++count;
            } else if (p.extension() == ".fo") {
                Fo f = parse_fo(text);
                if (fo_to_string(parse_fo(fo_to_string(f))) != fo_to_string(f)) {
                    ok = false;
                    detail = p.filename().string() + " is not a fixpoint";
                }
                ++count;
            } else if (p.extension() == ".ckt") {
                Circuit c = parse_circuit(text);
                if (print_circuit(parse_circuit(print_circuit(c))) != print_circuit(c)) {
                    ok = false;
                    detail = p.filename().string() + " is not a fixpoint";
                }
                ++count;
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = p.filename().string() + ": " + e.what();
        }
    }
    if (count == 0) {
        ok = false;
        detail = "no fixtures found";
    }
    // the shipped palindrome fixture must match the library builder
    if (ok) {
        Recognizer parsed = parse_program(read_file(fixtures / "palindrome.urasp"));
        auto built = build_palindrome_guhat();
        auto cx = check_equivalence([&](const Word& w) { return recognize(parsed, w); },
                                    [&](const Word& w) { return recognize(built.rec, w); },
                                    {'a', 'b'}, 8);
        if (cx) {
            ok = false;
            detail = "palindrome.urasp differs from the builder on \"" + *cx + "\"";
        }
    }
    report(8, "shipped fixtures parse/serialize to fixpoints (exit codes: see cli_contract)", ok,
           std::to_string(count) + " fixtures checked" + (detail.empty() ? "" : "; " + detail));
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: uhatlab_acceptance <fixtures-dir>\n";
        return 2;
    }
    fs::path fixtures = argv[1];
    criterion_recognizers();
    criterion_passes();
    criterion_sbar();
    criterion_separable_algebra();
    criterion_tie_elimination();
    criterion_fixability();
    criterion_logic();
    criterion_fixture_roundtrip(fixtures);
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
