#include "uhatlab/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace uhatlab {

size_t enumeration_budget() {
    static const size_t budget = [] {
        const char* env = std::getenv("UHATLAB_MAX_ENUM");
        if (!env) return size_t(20'000'000);
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || v == 0) return size_t(20'000'000);
        return size_t(v);
    }();
    return budget;
}

std::optional<Word> check_equivalence(const WordPredicate& a, const WordPredicate& b,
                                      const std::vector<char>& alphabet, int max_len) {
    size_t budget = enumeration_budget();
    size_t used = 0;
    std::optional<Word> counterexample;
    for_each_word(alphabet, 0, max_len, [&](const Word& w) {
        if (++used > budget)
            fail(ErrorKind::BudgetExceeded,
                 "equivalence enumeration exceeds UHATLAB_MAX_ENUM=" + std::to_string(budget));
        if (a(w) != b(w)) {
            counterexample = w;
            return false;
        }
        return true;
    });
    return counterexample;
}

int Restriction::fixed_count() const {
    return int(pattern.size() - std::count(pattern.begin(), pattern.end(), '?'));
}

std::vector<int> Restriction::wildcard_positions() const {
    std::vector<int> out;
    for (size_t k = 0; k < pattern.size(); ++k)
        if (pattern[k] == '?') out.push_back(int(k));
    return out;
}

bool Restriction::extends(const Restriction& other) const {
    if (pattern.size() != other.pattern.size()) return false;
    for (size_t k = 0; k < pattern.size(); ++k)
        if (other.pattern[k] != '?' && other.pattern[k] != pattern[k]) return false;
    return true;
}

namespace {

// Calls fn on every evaluation (full completion) of the pattern; stops
// early when fn returns false. Returns false on early stop.
bool for_each_evaluation(const Restriction& rho, const std::function<bool(const Word&)>& fn,
                         size_t& used, size_t budget) {
    std::vector<int> ws = rho.wildcard_positions();
    Word w = rho.pattern;
    std::vector<size_t> idx(ws.size(), 0);
    while (true) {
        for (size_t k = 0; k < ws.size(); ++k) w[ws[k]] = rho.alphabet[idx[k]];
        if (++used > budget)
            fail(ErrorKind::BudgetExceeded, "fixability enumeration exceeds the budget");
        if (!fn(w)) return false;
        size_t pos = ws.size();
        while (pos > 0) {
            if (++idx[pos - 1] < rho.alphabet.size()) break;
            idx[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return true;
}

enum class EvalSummary { AllIn, AllOut, Mixed };

EvalSummary summarize(const WordPredicate& language, const Restriction& rho, size_t& used,
                      size_t budget) {
    bool seen_in = false, seen_out = false;
    for_each_evaluation(
        rho,
        [&](const Word& w) {
            (language(w) ? seen_in : seen_out) = true;
            return !(seen_in && seen_out);
        },
        used, budget);
    if (seen_in && seen_out) return EvalSummary::Mixed;
    return seen_in ? EvalSummary::AllIn : EvalSummary::AllOut;
}

} // namespace

FixabilityWitness check_fixability(const WordPredicate& language, const Restriction& rho,
                                   const Rat& epsilon) {
    if (rho.alphabet.empty())
        fail(ErrorKind::SyntaxError, "restriction needs a non-empty alphabet");
    FixabilityWitness witness;
    witness.epsilon = epsilon;
    witness.n = rho.length();
    witness.rho = rho;
    witness.budget = int(rat_floor(epsilon * Rat(rho.length())));

    size_t budget = enumeration_budget();
    size_t used = 0;
    std::vector<int> ws = rho.wildcard_positions();
    int max_fix = std::min<int>(witness.budget, int(ws.size()));

    // Extensions in order of increasing fixed count; the first decisive one
    // wins. Subset choice then letter assignment, both exhaustive.
    for (int s = 0; s <= max_fix; ++s) {
        std::vector<int> comb(s);
        for (int t = 0; t < s; ++t) comb[t] = t;
        while (true) {
            std::vector<size_t> letters(s, 0);
            while (true) {
                Restriction ext = rho;
                for (int t = 0; t < s; ++t) ext.pattern[ws[comb[t]]] = rho.alphabet[letters[t]];
                EvalSummary summary = summarize(language, ext, used, budget);
                if (summary != EvalSummary::Mixed) {
                    witness.verdict =
                        summary == EvalSummary::AllIn ? FixVerdict::FixedIn : FixVerdict::FixedOut;
                    witness.extension = ext;
                    return witness;
                }
                size_t pos = letters.size();
                while (pos > 0) {
                    if (++letters[pos - 1] < rho.alphabet.size()) break;
                    letters[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
            // next combination
            int t = s - 1;
            while (t >= 0 && comb[t] == int(ws.size()) - s + t) --t;
            if (t < 0) break;
            ++comb[t];
            for (int u = t + 1; u < s; ++u) comb[u] = comb[u - 1] + 1;
        }
    }
    witness.verdict = FixVerdict::Unfixable;
    return witness;
}

std::optional<FixabilityWitness> search_unfixable(const WordPredicate& language,
                                                  const Rat& epsilon, int n_min, int n_max,
                                                  const std::vector<char>& alphabet) {
    for (int n = n_min; n <= n_max; ++n) {
        Restriction rho{std::string(n, '?'), alphabet};
        FixabilityWitness witness = check_fixability(language, rho, epsilon);
        if (witness.verdict == FixVerdict::Unfixable) return witness;
    }
    return std::nullopt;
}

std::string FixabilityWitness::to_string() const {
    std::ostringstream out;
    out << "n=" << n << " eps=" << rat_to_string(epsilon) << " budget=" << budget << " rho="
        << rho.pattern << " verdict=";
    switch (verdict) {
        case FixVerdict::FixedIn: out << "FixedIn"; break;
        case FixVerdict::FixedOut: out << "FixedOut"; break;
        case FixVerdict::Unfixable: out << "Unfixable"; break;
    }
    if (extension) out << " extension=" << extension->pattern;
    return out.str();
}

Rat sbar(int i, int j, int n, int s) {
    Rat first(Int(2 * i - 2 * j - 1), Int(2));
    Rat growth = rat_pow(Rat(8), Int(j));
    Rat bump(Int(1), Int(4) * Int(n) * int_pow(Int(8), Int(n)));
    return first * growth * (Rat(s) + bump);
}

SbarReport audit_sbar(int bound) {
    SbarReport report;
    report.bound = bound;
    const Rat third(1, 3), half(1, 2);
    for (int n = 1; n <= bound; ++n) {
        for (int s = 0; s <= 1; ++s) {
            for (int i = 0; i < n; ++i) {
                std::optional<Rat> prev; // for monotonicity below i
                for (int j = 0; j < n; ++j) {
                    Rat v = sbar(i, j, n, s);
                    ++report.checked;
                    std::ostringstream at;
                    at << "(i=" << i << ",j=" << j << ",n=" << n << ",s=" << s << ")";
                    if (j >= i) {
                        if (!(v < 0))
                            report.violations.push_back("property 2 fails at " + at.str());
                        continue;
                    }
                    if (s == 0 && !(v > 0 && v < third))
                        report.violations.push_back("property 3 fails at " + at.str());
                    if (s == 1 && !(v > half))
                        report.violations.push_back("property 4 fails at " + at.str());
                    if (prev && !(*prev < v))
                        report.violations.push_back("property 5 fails at " + at.str());
                    prev = v;
                }
            }
        }
    }
    return report;
}

std::string SbarReport::to_string() const {
    std::ostringstream out;
    out << "sbar audit up to n=" << bound << ": " << checked << " evaluations, "
        << violations.size() << " violations";
    for (const auto& v : violations) out << "\n  " << v;
    return out.str();
}

} // namespace uhatlab
