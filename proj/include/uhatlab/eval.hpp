#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "uhatlab/program.hpp"

namespace uhatlab {

using Word = std::string;
using Layer = std::vector<Value>;
using Layers = std::vector<Layer>;

// Evaluation context for one expression: the computed layers, the current
// position i, the attended position j (absent in point-wise contexts) and
// the input length n. `layer_limit` caps which layers may be read.
struct EvalContext {
    const Layers* layers = nullptr;
    int i = 0;
    std::optional<int> j;
    int n = 0;
    int layer_limit = 0; // references must satisfy layer < layer_limit

    // Overrides for carrier-based evaluation, where no full run exists:
    // the column value tuples are supplied directly.
    const std::vector<Value>* i_column = nullptr; // values of layers 0..layer_limit-1
    const std::vector<Value>* j_column = nullptr;
};

Value eval_expr(const Expr& e, const EvalContext& ctx);

// Rational score extended with a sentinel below every finite value.
struct ExtScore {
    bool finite = true;
    Rat value;

    static ExtScore neg_infinity() { return ExtScore{false, Rat(0)}; }
    static ExtScore of(Rat r) { return ExtScore{true, std::move(r)}; }

    friend bool operator==(const ExtScore& a, const ExtScore& b) {
        if (a.finite != b.finite) return false;
        return !a.finite || a.value == b.value;
    }
    friend bool operator<(const ExtScore& a, const ExtScore& b) {
        if (!a.finite) return b.finite;
        if (!b.finite) return false;
        return a.value < b.value;
    }
};

// Evaluates a score specification at (i, j) given the layers below `line_layer`.
ExtScore eval_score(const ScoreSpec& score, const Layers& layers, int i, int j, int n,
                    int line_layer);

// Runs one attention line over all positions; returns the new layer and,
// via `selected`, the attended index per position (-1 when the admitted
// set was empty and the default was used).
Layer attention_step(const AttentionLine& line, const Layers& layers, int n,
                     int line_layer, std::vector<int>* selected = nullptr);

// Full run: layer 0 is the initialization applied position-wise, then one
// layer per line. Throws UnknownLetter on letters outside the alphabet and
// EmptyWord on empty input.
Layers run_program(const Recognizer& rec, const Word& word);

struct RunTrace {
    Layers layers;
    // selected[l][i]: attended j for attention line producing layer l+1,
    // or -1 for default; point-wise rows hold -2.
    std::vector<std::vector<int>> selected;
    bool accepted = false;
};

RunTrace run_traced(const Recognizer& rec, const Word& word);

bool recognize(const Recognizer& rec, const Word& word);

struct Classification {
    bool finite_type = false;
    bool separable_scores = false;
    bool bilinear_scores = false;
    bool binary_scores = false;
    std::set<Masking> maskings_used;
    int ties_checked_up_to = 0;
    bool ties_possible = false;
};

// `ties_bound`: exhaustively runs every word of length <= ties_bound to
// look for tied attention rows and to double-check binary scores.
Classification classify_program(const Recognizer& rec, int ties_bound = 4);

std::string classification_to_string(const Classification& c);

// Per-layer over-approximations of the reachable value sets of a
// finite-type program (CharOnly initialization, position-free expressions).
// carriers[l] lists the possible values of layer l in deterministic order.
// Throws CarrierUnavailable if the program is not finite-type in this sense.
std::vector<std::vector<Value>> layer_carriers(const Recognizer& rec, size_t max_carrier = 4096);

// Builds the table of an attention line's score over the carrier key
// values; key is the tuple of all layers below the line (or the single
// layer-0 value for one-layer contexts). Requires layer_carriers.
TableScore tabulate_score(const Recognizer& rec, int line_index,
                          const std::vector<std::vector<Value>>& carriers);

// Enumerates all words over `alphabet` of length min_len..max_len in
// shortlex order, calling fn on each; stops early if fn returns false.
void for_each_word(const std::vector<char>& alphabet, int min_len, int max_len,
                   const std::function<bool(const Word&)>& fn);

} // namespace uhatlab
