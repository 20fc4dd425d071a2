// uhatlab: command-line front end for the sequence-program toolkit.
// Exit codes: 0 = accept/pass, 1 = reject/counterexample found, 2 = error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "uhatlab/analysis.hpp"
#include "uhatlab/circuit.hpp"
#include "uhatlab/parser.hpp"
#include "uhatlab/programs.hpp"
#include "uhatlab/serialize.hpp"
#include "uhatlab/transforms.hpp"

using namespace uhatlab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::SyntaxError, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Program references: builtin:<name> or a .urasp/.json path.
Recognizer load_program(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_recognizer(ref.substr(8)).rec;
    std::string text = read_file(ref);
    if (has_suffix(ref, ".json")) return program_from_json(text);
    return parse_program(text);
}

// Language references: oracle:<name>, builtin:<name>, or a program file.
WordPredicate load_language(const std::string& ref) {
    if (ref.rfind("oracle:", 0) == 0) return builtin_oracle(ref.substr(7));
    Recognizer rec = load_program(ref);
    return [rec](const Word& w) { return recognize(rec, w); };
}

// Formula references: a file path or inline formula text.
std::string load_formula_text(const std::string& ref) {
    if (file_exists(ref)) return read_file(ref);
    return ref;
}

std::vector<char> parse_alphabet_arg(const std::string& letters) {
    std::vector<char> out(letters.begin(), letters.end());
    if (out.empty()) fail(ErrorKind::SyntaxError, "empty alphabet");
    return out;
}

void write_program(const Recognizer& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::SyntaxError, "cannot write " + path);
    if (has_suffix(path, ".json"))
        out << program_to_json(rec);
    else
        out << program_to_dsl(rec);
}

void print_trace_text(const RunTrace& trace) {
    for (size_t l = 0; l < trace.layers.size(); ++l) {
        std::cout << "L" << l << ":";
        for (const Value& v : trace.layers[l]) std::cout << " " << v.to_string();
        std::cout << "\n";
        if (l == 0 || trace.selected[l - 1].empty()) continue;
        if (trace.selected[l - 1][0] == -2) continue; // point-wise line
        std::cout << "  attends:";
        for (int idx : trace.selected[l - 1]) {
            if (idx < 0)
                std::cout << " default";
            else
                std::cout << " " << idx;
        }
        std::cout << "\n";
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"interpreter, transformation passes and verification harness "
                 "for unique-hard-attention sequence programs"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a recognizer on a word");
    std::string run_program_ref, run_word;
    bool run_trace = false, run_json = false;
    run->add_option("--program", run_program_ref, "program file or builtin:<name>")->required();
    run->add_option("--word", run_word, "input word")->required();
    run->add_flag("--trace", run_trace, "print per-layer values and attended indices");
    run->add_flag("--json", run_json, "machine-readable trace report");

    // equiv
    auto* equiv = app.add_subcommand("equiv", "exhaustive language comparison");
    std::string equiv_a, equiv_b, equiv_alphabet;
    int equiv_len = 8;
    equiv->add_option("--a", equiv_a, "program file, builtin:<name> or oracle:<name>")->required();
    equiv->add_option("--b", equiv_b, "program file, builtin:<name> or oracle:<name>")->required();
    equiv->add_option("--alphabet", equiv_alphabet, "letters to enumerate")->required();
    equiv->add_option("--max-len", equiv_len, "enumeration bound (default 8)");

    // transform
    auto* transform = app.add_subcommand("transform", "apply a program-to-program pass");
    std::string pass_name, trans_in, trans_out;
    int trans_bound = 8, verify_len = 6;
    transform->add_option("--pass", pass_name, "one of: " + [] {
        std::string all;
        for (const auto& name : pass_names()) all += (all.empty() ? "" : ", ") + name;
        return all;
    }())->required();
    transform->add_option("--in", trans_in, "input program")->required();
    transform->add_option("--out", trans_out, "output file (.urasp or .json)");
    transform->add_option("--bound", trans_bound, "enumeration bound for length-indexed passes");
    transform->add_option("--verify-len", verify_len, "equivalence check bound (0 skips)");

    // fixability
    auto* fixability = app.add_subcommand("fixability", "strong epsilon-fixability search");
    std::string fix_language, fix_restriction, fix_epsilon = "1/2", fix_alphabet = "01",
                fix_range;
    fixability->add_option("--language", fix_language, "oracle:<name>, builtin:<name> or file")
        ->required();
    fixability->add_option("--epsilon", fix_epsilon, "budget fraction, e.g. 1/5");
    fixability->add_option("--restriction", fix_restriction, "pattern over the alphabet and ?");
    fixability->add_option("--n-range", fix_range, "scan all-? restrictions, e.g. 8..10");
    fixability->add_option("--alphabet", fix_alphabet, "letters (default 01)");

    // ltl
    auto* ltl_cmd = app.add_subcommand("ltl", "evaluate a temporal formula on a word");
    std::string ltl_formula, ltl_word, ltl_mode = "fltl";
    ltl_cmd->add_option("--formula", ltl_formula, "formula file or inline text")->required();
    ltl_cmd->add_option("--word", ltl_word, "input word")->required();
    ltl_cmd->add_option("--mode", ltl_mode, "fltl (read at 0) or pltl (read at n-1)");

    // fo
    auto* fo_cmd = app.add_subcommand("fo", "evaluate a first-order sentence on a word");
    std::string fo_formula, fo_word;
    fo_cmd->add_option("--formula", fo_formula, "formula file or inline text")->required();
    fo_cmd->add_option("--word", fo_word, "input word")->required();

    // circuit
    auto* circuit_cmd = app.add_subcommand("circuit", "evaluate a boolean circuit netlist");
    std::string circuit_file, circuit_input;
    bool circuit_metrics_flag = false;
    circuit_cmd->add_option("--circuit", circuit_file, "netlist file")->required();
    circuit_cmd->add_option("--input", circuit_input, "input bits, e.g. 1011");
    circuit_cmd->add_flag("--metrics", circuit_metrics_flag, "print depth and wire count");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "report program classification");
    std::string classify_ref;
    int ties_bound = 4;
    classify_cmd->add_option("--program", classify_ref, "program file or builtin:<name>")
        ->required();
    classify_cmd->add_option("--ties-bound", ties_bound, "tie enumeration bound (default 4)");

    // audit-sbar
    auto* audit_cmd = app.add_subcommand("audit-sbar", "verify the mask-simulation score");
    int audit_bound = 16;
    audit_cmd->add_option("--max-n", audit_bound, "length bound (default 16)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are errors, help is not
    }

    if (*run) {
        Recognizer rec = load_program(run_program_ref);
        if (run_word.empty()) {
            bool ok = rec.empty_word_accepts;
            std::cout << (ok ? "accept" : "reject") << "\n";
            return ok ? 0 : 1;
        }
        RunTrace trace = run_traced(rec, run_word);
        if (run_json) {
            std::cout << trace_to_json(rec, run_word, trace);
        } else {
            if (run_trace) print_trace_text(trace);
            std::cout << (trace.accepted ? "accept" : "reject") << "\n";
        }
        return trace.accepted ? 0 : 1;
    }

    if (*equiv) {
        auto a = load_language(equiv_a);
        auto b = load_language(equiv_b);
        auto cx = check_equivalence(a, b, parse_alphabet_arg(equiv_alphabet), equiv_len);
        if (cx) {
            std::cout << "counterexample \"" << *cx << "\"\n";
            return 1;
        }
        std::cout << "equivalent on all words up to length " << equiv_len << "\n";
        return 0;
    }

    if (*transform) {
        Recognizer before = load_program(trans_in);
        Recognizer after = apply_pass(before, pass_name, trans_bound);
        if (!trans_out.empty()) write_program(after, trans_out);
        if (verify_len > 0) {
            PassReport report = verify_pass(before, after, verify_len, pass_name);
            std::cout << report.to_string();
            return report.counterexample ? 1 : 0;
        }
        std::cout << "pass " << pass_name << " applied (verification skipped)\n";
        return 0;
    }

    if (*fixability) {
        WordPredicate language = load_language(fix_language);
        auto eps = rat_from_string(fix_epsilon);
        if (!eps || *eps <= 0) fail(ErrorKind::SyntaxError, "bad epsilon " + fix_epsilon);
        std::vector<char> alphabet = parse_alphabet_arg(fix_alphabet);
        if (!fix_restriction.empty()) {
            Restriction rho{fix_restriction, alphabet};
            FixabilityWitness witness = check_fixability(language, rho, *eps);
            std::cout << witness.to_string() << "\n";
            return witness.verdict == FixVerdict::Unfixable ? 1 : 0;
        }
        if (fix_range.empty())
            fail(ErrorKind::SyntaxError, "need --restriction or --n-range");
        auto dots = fix_range.find("..");
        if (dots == std::string::npos)
            fail(ErrorKind::SyntaxError, "range must look like 8..10");
        int lo = std::stoi(fix_range.substr(0, dots));
        int hi = std::stoi(fix_range.substr(dots + 2));
        auto witness = search_unfixable(language, *eps, lo, hi, alphabet);
        if (witness) {
            std::cout << witness->to_string() << "\n";
            return 1;
        }
        std::cout << "no unfixable restriction found for n in " << lo << ".." << hi << "\n";
        return 0;
    }

    if (*ltl_cmd) {
        Ltl f = parse_ltl(load_formula_text(ltl_formula));
        LtlMode mode;
        if (ltl_mode == "fltl") mode = LtlMode::FltlAtFirst;
        else if (ltl_mode == "pltl") mode = LtlMode::PltlAtLast;
        else fail(ErrorKind::SyntaxError, "mode must be fltl or pltl");
        bool ok = ltl_recognize(f, ltl_word, mode, MonPredRegistry::standard());
        std::cout << (ok ? "accept" : "reject") << "\n";
        return ok ? 0 : 1;
    }

    if (*fo_cmd) {
        Fo f = parse_fo(load_formula_text(fo_formula));
        bool ok = eval_fo(f, fo_word, MonPredRegistry::standard());
        std::cout << (ok ? "accept" : "reject") << "\n";
        return ok ? 0 : 1;
    }

    if (*circuit_cmd) {
        Circuit c = parse_circuit(read_file(circuit_file));
        if (circuit_metrics_flag) {
            CircuitMetrics m = circuit_metrics(c);
            std::cout << "depth " << m.depth << " wires " << m.wire_count << "\n";
            if (circuit_input.empty()) return 0;
        }
        if (circuit_input.empty() && !circuit_metrics_flag)
            fail(ErrorKind::SyntaxError, "need --input or --metrics");
        std::vector<bool> bits;
        for (char b : circuit_input) {
            if (b != '0' && b != '1') fail(ErrorKind::SyntaxError, "input bits must be 0/1");
            bits.push_back(b == '1');
        }
        auto out = eval_circuit(c, bits);
        std::cout << "outputs ";
        for (bool bit : out) std::cout << (bit ? '1' : '0');
        std::cout << "\n";
        return !out.empty() && out[0] ? 0 : 1;
    }

    if (*classify_cmd) {
        Recognizer rec = load_program(classify_ref);
        std::cout << classification_to_string(classify_program(rec, ties_bound)) << "\n";
        return 0;
    }

    if (*audit_cmd) {
        SbarReport report = audit_sbar(audit_bound);
        std::cout << report.to_string() << "\n";
        return report.ok() ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const UhatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
