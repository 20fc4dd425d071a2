#pragma once

#include <map>
#include <optional>

#include "uhatlab/eval.hpp"

namespace uhatlab {

// Outcome of an equivalence-checked rewrite.
struct PassReport {
    std::string pass_name;
    Classification input_class;
    Classification output_class;
    int equivalence_checked_up_to = 0;
    std::optional<Word> counterexample;
    int layer_delta = 0;
    std::string notes;

    std::string to_string() const;
};

// Per-length minimal positive distance between attention scores of one
// line; 1 when no two distinct scores occur at that length.
struct TieGap {
    std::map<int, Rat> eps;
    std::map<int, bool> degenerate;
};

// Per-length lower bound on the scores one line produces.
struct ScoreLowerBound {
    std::map<int, Rat> bound;
};

// Finite-carrier score to an explicit separable decomposition with
// |rows| * |cols| terms; reconstructs the table entrywise.
SeparableScore table_to_separable(const TableScore& table);

// Separable algebra: concatenated terms (k + k') and term-wise products
// (k * k'); pointwise equal to the sum resp. product of the inputs.
SeparableScore sep_add(const SeparableScore& a, const SeparableScore& b);
SeparableScore sep_mul(const SeparableScore& a, const SeparableScore& b);

// Multiplies a separable score by an I-side factor (separability is kept
// by folding the factor into every f).
SeparableScore sep_scale(const SeparableScore& a, const Expr& factor);

// Evaluates a separable score as a plain expression (sum of f*g products).
Expr separable_to_expr(const SeparableScore& s);

// Rewrites every attention line with a separable score into a point-wise
// layer computing (f_1..f_k, g_1..g_k) per position followed by the same
// line with the bilinear pairing <v_f, w_g>. Layer count grows by one per
// attention line; the language is unchanged.
Recognizer separable_to_bilinear(const Recognizer& rec);

enum class MaskElimMode { Sentinel, EnumeratedBound };

// Removes masking from every line. Sentinel mode guards the score with the
// mask predicate and emits -infinity outside it; EnumeratedBound mode
// substitutes K_n - 1 where K_n is the enumerated per-length score minimum
// (lengths 1..n_max). Positions whose admitted set used to be empty have
// their activation rewritten to emit the original default.
Recognizer eliminate_mask_guhat(const Recognizer& rec, MaskElimMode mode, int n_max = 8,
                                std::vector<ScoreLowerBound>* bounds_out = nullptr);

// Perturbs every score by +/- j * eps_n / (2(n-1)) so that no ties remain
// on inputs of length <= n_max and the original tie-break selection is
// reproduced; leftmost lines are converted to rightmost ones. A CharOnly
// initialization is widened to (letter, i, n).
Recognizer eliminate_ties(const Recognizer& rec, int n_max,
                          std::vector<TieGap>* gaps_out = nullptr);

// Replaces strict future masking by an unmasked separable score
//   (i - j - 1/2) * 8^j * (4n*8^n * s(v,w) + 1)
// (the masked score s must be binary). This is the score
// (i - j - 1/2) * 8^j * (s + 1/(4n*8^n)) scaled by the positive constant
// 4n*8^n, which keeps every comparison and sign intact while staying
// division-free.
Recognizer simulate_mask_separable(const Recognizer& rec);

// Rewrites every unmasked column-only attention line (leftmost, score and
// value reading only the attended column, binary, value 0 where the score
// is 0) into the four-line BOS / L1 / L2 / L3 masked gadget.
Recognizer unmasked_brasp_to_masked(const Recognizer& rec);

// Exhaustive agreement check up to max_len; the report carries the first
// disagreeing word if any.
PassReport verify_pass(const Recognizer& before, const Recognizer& after, int max_len,
                       const std::string& pass_name = "verify");

// Named pass registry for the command line: bound feeds the passes that
// enumerate lengths.
std::vector<std::string> pass_names();
Recognizer apply_pass(const Recognizer& rec, const std::string& name, int bound);

} // namespace uhatlab
