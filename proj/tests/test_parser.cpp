#include "doctest.h"

#include <functional>
#include <random>

#include "uhatlab/analysis.hpp"
#include "uhatlab/parser.hpp"
#include "uhatlab/programs.hpp"
#include "uhatlab/serialize.hpp"
#include "uhatlab/transforms.hpp"

using namespace uhatlab;

namespace {

const char* kPalindromeDsl = R"(# palindrome over {a,b}
init charposlen alphabet=a,b
L1(i) = attend rightmost j [mask=none, score=-pow(n-1-i-j,2)] value=if(L0[i].0==L0[j].0,1,0) default=0
L2(i) = attend rightmost j [mask=none, score=-L1[j]] value=L1[j] default=0
accept at last when L2[i]==1
empty accept
)";

} // namespace

TEST_SUITE("program DSL") {
    TEST_CASE("palindrome fixture text parses to the library recognizer") {
        Recognizer parsed = parse_program(kPalindromeDsl);
        auto built = build_palindrome_guhat();
        auto cx = check_equivalence([&](const Word& w) { return recognize(parsed, w); },
                                    [&](const Word& w) { return recognize(built.rec, w); },
                                    {'a', 'b'}, 8);
        CHECK_FALSE(cx.has_value());
    }

    TEST_CASE("round trip is a structural fixpoint") {
        Recognizer parsed = parse_program(kPalindromeDsl);
        std::string printed = program_to_dsl(parsed);
        Recognizer reparsed = parse_program(printed);
        CHECK(program_to_dsl(reparsed) == printed);
        // structural identity of the interesting expressions
        const auto& a = std::get<AttentionLine>(parsed.lines[0]);
        const auto& b = std::get<AttentionLine>(reparsed.lines[0]);
        CHECK(expr_equal(a.value, b.value));
        CHECK(expr_equal(std::get<ExprScore>(a.score.v).expr,
                         std::get<ExprScore>(b.score.v).expr));
        CHECK(expr_equal(parsed.accept, reparsed.accept));
    }

    TEST_CASE("empty document is a syntax error") {
        CHECK_THROWS_AS(parse_program(""), UhatError);
        try {
            parse_program("");
        } catch (const UhatError& e) {
            CHECK(e.kind() == ErrorKind::SyntaxError);
        }
    }

    TEST_CASE("self-reference is a static check error") {
        const char* text =
            "init charonly alphabet=a\n"
            "L1(i) = L1[i]\n"
            "accept at last when true\n";
        try {
            parse_program(text);
            FAIL("expected StaticCheckError");
        } catch (const UhatError& e) {
            CHECK(e.kind() == ErrorKind::StaticCheckError);
        }
    }

    TEST_CASE("syntax errors carry line and column") {
        const char* text =
            "init charposlen alphabet=a,b\n"
            "L1(i) = attend rightmost j [mask=nowhere, score=0] value=0 default=0\n"
            "accept at last when true\n";
        try {
            parse_program(text);
            FAIL("expected SyntaxError");
        } catch (const UhatError& e) {
            CHECK(e.kind() == ErrorKind::SyntaxError);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }

    TEST_CASE("division is rejected with a pointed message") {
        const char* text =
            "init charposlen alphabet=a,b\n"
            "L1(i) = attend rightmost j [mask=none, score=1/n] value=0 default=0\n"
            "accept at last when true\n";
        CHECK_THROWS_AS(parse_program(text), UhatError);
    }

    TEST_CASE("quoted alphabets and letters parse") {
        const char* text =
            "init charonly alphabet='(',')'\n"
            "L1(i) = if(L0[i]=='(', 1, 0)\n"
            "accept at last when L1[i]==1\n";
        Recognizer rec = parse_program(text);
        CHECK(recognize(rec, "))("));
        CHECK_FALSE(recognize(rec, "()"));
        std::string printed = program_to_dsl(rec);
        CHECK(program_to_dsl(parse_program(printed)) == printed);
    }

    TEST_CASE("comparison sugar desugars to the core nodes") {
        const char* text =
            "init charposlen alphabet=a,b\n"
            "L1(i) = if(i != 0 && i <= n-1 && i >= 0 && n > 0, 1, 0)\n"
            "accept at last when L1[i]==1\n";
        Recognizer rec = parse_program(text);
        CHECK(recognize(rec, "ab"));       // i=1 at the last position
        CHECK_FALSE(recognize(rec, "a"));  // i=0 fails i != 0
        std::string printed = program_to_dsl(rec);
        CHECK(program_to_dsl(parse_program(printed)) == printed);
    }

    TEST_CASE("custom initializations round trip") {
        const char* text =
            "init custom alphabet=a,b expr=tuple(c, if(2*i < n, 0, 1))\n"
            "L1(i) = attend rightmost j [mask=none, score=L0[j].1] value=L0[j].0 default='a'\n"
            "accept at last when L1[i]=='a'\n";
        Recognizer rec = parse_program(text);
        CHECK(recognize(rec, "ba")); // rightmost second-half position holds 'a'
        CHECK_FALSE(recognize(rec, "ab"));
        std::string printed = program_to_dsl(rec);
        CHECK(program_to_dsl(parse_program(printed)) == printed);
    }
}

TEST_SUITE("program JSON") {
    TEST_CASE("json round trip preserves behavior and structure") {
        auto built = build_palindrome_guhat();
        std::string text = program_to_json(built.rec);
        Recognizer back = program_from_json(text);
        CHECK(program_to_json(back) == text);
        auto cx = check_equivalence([&](const Word& w) { return recognize(back, w); },
                                    [&](const Word& w) { return recognize(built.rec, w); },
                                    {'a', 'b'}, 7);
        CHECK_FALSE(cx.has_value());
    }

    TEST_CASE("table and separable scores survive the json form") {
        auto dyck = build_dyck1(2);
        Recognizer back = program_from_json(program_to_json(dyck.rec));
        auto cx = check_equivalence([&](const Word& w) { return recognize(back, w); },
                                    [&](const Word& w) { return recognize(dyck.rec, w); },
                                    {'(', ')'}, 8);
        CHECK_FALSE(cx.has_value());

        auto sep = build_palindrome_separable();
        Recognizer sep_back = program_from_json(program_to_json(sep.rec));
        CHECK(std::get<AttentionLine>(sep_back.lines[0]).score.is<SeparableScore>());
    }

    TEST_CASE("sentinel and bilinear scores survive the json form") {
        auto masked = build_palindrome_masked();
        Recognizer sentinel = eliminate_mask_guhat(masked.rec, MaskElimMode::Sentinel);
        Recognizer back = program_from_json(program_to_json(sentinel));
        CHECK(std::get<AttentionLine>(back.lines[0]).score.is<SentinelScore>());
        auto cx = check_equivalence([&](const Word& w) { return recognize(back, w); },
                                    [&](const Word& w) { return recognize(masked.rec, w); },
                                    {'a', 'b'}, 7);
        CHECK_FALSE(cx.has_value());

        Recognizer bilinear = separable_to_bilinear(build_palindrome_separable().rec);
        Recognizer bil_back = program_from_json(program_to_json(bilinear));
        CHECK(std::get<AttentionLine>(bil_back.lines[1]).score.is<BilinearScore>());
        CHECK(recognize(bil_back, "abba"));
    }

    TEST_CASE("malformed json is a syntax error") {
        CHECK_THROWS_AS(program_from_json("{"), UhatError);
        CHECK_THROWS_AS(program_from_json("{\"init\": {}}"), UhatError);
    }
}

TEST_SUITE("formula parsing") {
    TEST_CASE("ltl formulas parse and print stably") {
        Ltl f = parse_ltl("[a] & X ([b] U (!$last & [a]))");
        std::string printed = ltl_to_string(f);
        CHECK(ltl_to_string(parse_ltl(printed)) == printed);
        MonPredRegistry reg = MonPredRegistry::standard();
        CHECK(eval_ltl(f, "abab", 0, reg));
        CHECK_FALSE(eval_ltl(f, "abba", 0, reg)); // witness at 3 is blocked by $last
    }

    TEST_CASE("implication sugar") {
        Ltl f = parse_ltl("[a] -> X [b]");
        MonPredRegistry reg = MonPredRegistry::standard();
        CHECK(eval_ltl(f, "ab", 0, reg));
        CHECK(eval_ltl(f, "ba", 0, reg)); // antecedent false at 'b'
        CHECK_FALSE(eval_ltl(f, "aa", 0, reg));
    }

    TEST_CASE("fo formulas parse with quantifiers") {
        Fo f = parse_fo("forall x. forall y. (x < y) -> !([b](x) & [a](y))");
        MonPredRegistry reg = MonPredRegistry::standard();
        CHECK(eval_fo(f, "aabb", reg));
        CHECK_FALSE(eval_fo(f, "aba", reg));
        std::string printed = fo_to_string(f);
        CHECK(fo_to_string(parse_fo(printed)) == printed);
    }

    TEST_CASE("random formulas print and reparse to a fixpoint") {
        std::mt19937 rng(2024);
        std::uniform_int_distribution<int> pick_ltl(0, 9), pick_fo(0, 8);
        std::function<Ltl(int)> gen_ltl = [&](int depth) -> Ltl {
            int c = depth <= 0 ? pick_ltl(rng) % 4 : pick_ltl(rng);
            switch (c) {
                case 0: return ltl::letter({'a'});
                case 1: return ltl::letter({'a', 'b'});
                case 2: return ltl::truth(true);
                case 3: return ltl::mon("even");
                case 4: return ltl::negate(gen_ltl(depth - 1));
                case 5: return ltl::conj(gen_ltl(depth - 1), gen_ltl(depth - 1));
                case 6: return ltl::disj(gen_ltl(depth - 1), gen_ltl(depth - 1));
                case 7: return ltl::next(gen_ltl(depth - 1));
                case 8: return ltl::until(gen_ltl(depth - 1), gen_ltl(depth - 1));
                default: return ltl::since(gen_ltl(depth - 1), gen_ltl(depth - 1));
            }
        };
        std::function<Fo(int, int)> gen_fo = [&](int depth, int vars) -> Fo {
            auto var_name = [&](int k) { return std::string(1, char('x' + k % 3)); };
            int c = depth <= 0 ? pick_fo(rng) % 3 : pick_fo(rng);
            if (vars == 0 && c < 3) c = 7; // need a quantifier before any atom
            switch (c) {
                case 0: return fo::letter_at({'a'}, var_name(rng() % vars));
                case 1: return fo::mon_at("even", var_name(rng() % vars));
                case 2: return fo::less(var_name(rng() % vars), var_name(rng() % vars));
                case 3: return fo::negate(gen_fo(depth - 1, vars));
                case 4: return fo::conj(gen_fo(depth - 1, vars), gen_fo(depth - 1, vars));
                case 5: return fo::disj(gen_fo(depth - 1, vars), gen_fo(depth - 1, vars));
                case 6: return fo::truth(rng() % 2 == 0);
                case 7:
                    return fo::exists(var_name(vars), gen_fo(depth - 1, std::min(vars + 1, 3)));
                default:
                    return fo::forall(var_name(vars), gen_fo(depth - 1, std::min(vars + 1, 3)));
            }
        };
        MonPredRegistry reg = MonPredRegistry::standard();
        for (int rep = 0; rep < 200; ++rep) {
            Ltl f = gen_ltl(4);
            std::string printed = ltl_to_string(f);
            Ltl back = parse_ltl(printed);
            REQUIRE(ltl_to_string(back) == printed);
            // semantic agreement on a few words
            for (const Word& w : {Word("ab"), Word("bba"), Word("a")})
                REQUIRE(eval_ltl(f, w, 0, reg) == eval_ltl(back, w, 0, reg));
        }
        for (int rep = 0; rep < 200; ++rep) {
            Fo f = gen_fo(4, 0);
            std::string printed = fo_to_string(f);
            Fo back = parse_fo(printed);
            REQUIRE(fo_to_string(back) == printed);
            if (fo_free_variables(f).empty())
                for (const Word& w : {Word("ab"), Word("bba")})
                    REQUIRE(eval_fo(f, w, reg) == eval_fo(back, w, reg));
        }
    }

    TEST_CASE("formula syntax errors") {
        CHECK_THROWS_AS(parse_ltl(""), UhatError);
        CHECK_THROWS_AS(parse_ltl("[a] U"), UhatError);
        CHECK_THROWS_AS(parse_ltl("[]"), UhatError);
        CHECK_THROWS_AS(parse_fo("exists x"), UhatError);
    }
}
