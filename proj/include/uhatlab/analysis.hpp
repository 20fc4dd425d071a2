#pragma once

#include <optional>

#include "uhatlab/programs.hpp"

namespace uhatlab {

// Word-evaluation budget for the exhaustive searches; reads
// UHATLAB_MAX_ENUM once per process (default 20 million evaluations).
size_t enumeration_budget();

// First word (shortlex, the empty word included) on which the two
// predicates disagree, or nullopt. Throws BudgetExceeded when the
// enumeration would evaluate more words than the budget allows.
std::optional<Word> check_equivalence(const WordPredicate& a, const WordPredicate& b,
                                      const std::vector<char>& alphabet, int max_len);

// A word with wildcards. Extensions fix wildcards to alphabet letters.
struct Restriction {
    std::string pattern; // letters and '?' wildcards
    std::vector<char> alphabet;

    int length() const { return int(pattern.size()); }
    int fixed_count() const;
    std::vector<int> wildcard_positions() const;
    // True if other fixes a superset of this pattern's letters.
    bool extends(const Restriction& other) const;
};

enum class FixVerdict { FixedIn, FixedOut, Unfixable };

struct FixabilityWitness {
    Rat epsilon;
    int n = 0;
    Restriction rho;
    FixVerdict verdict = FixVerdict::Unfixable;
    std::optional<Restriction> extension; // FixedIn/FixedOut only
    int budget = 0;                       // extra fixes allowed, floor(eps * n)

    std::string to_string() const;
};

// Searches all extensions of rho that fix at most floor(eps*n) extra
// positions, in order of increasing fixed count, for one whose evaluations
// are all inside (FixedIn) or all outside (FixedOut) the language.
FixabilityWitness check_fixability(const WordPredicate& language, const Restriction& rho,
                                   const Rat& epsilon);

// Scans the all-wildcard restriction for each n in [n_min, n_max] and
// returns the first Unfixable witness, if any.
std::optional<FixabilityWitness> search_unfixable(const WordPredicate& language,
                                                  const Rat& epsilon, int n_min, int n_max,
                                                  const std::vector<char>& alphabet);

// The simulate-mask score formula (i - j - 1/2) * 8^j * (s + 1/(4n*8^n))
// with exact rational arithmetic.
Rat sbar(int i, int j, int n, int s);

struct SbarReport {
    int bound = 0;
    size_t checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Exhaustively verifies the ordering properties of sbar for all
// 0 <= j, j' < i < n <= bound and s in {0,1}:
//   2. negative when j >= i
//   3. in (0, 1/3) when j < i and s = 0
//   4. greater than 1/2 when j < i and s = 1
//   5. strictly increasing in j below i for fixed s
SbarReport audit_sbar(int bound);

} // namespace uhatlab
