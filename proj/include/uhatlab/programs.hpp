#pragma once

#include <functional>
#include <map>
#include <string>

#include "uhatlab/eval.hpp"

namespace uhatlab {

using WordPredicate = std::function<bool(const Word&)>;

// A library recognizer together with an independent direct-string oracle
// for the same language. The oracle never touches the program machinery.
struct NamedRecognizer {
    std::string name;
    Recognizer rec;
    WordPredicate oracle;
};

// Two attention lines over (letter, i, n) triples: pair positions i and
// n-1-i with score -(n-1-i-j)^2, then scan for a mismatch.
NamedRecognizer build_palindrome_guhat(const std::vector<char>& alphabet = {'a', 'b'});

// Strictly future-masked variant; positions left of the middle report a
// match unconditionally, so each pair is checked at its right endpoint.
NamedRecognizer build_palindrome_masked(const std::vector<char>& alphabet = {'a', 'b'});

// Same language; the pairing score is given as an explicit separable
// decomposition with three (f, g) terms.
NamedRecognizer build_palindrome_separable(const std::vector<char>& alphabet = {'a', 'b'});

// Balanced bracket strings of nesting depth <= D over {(,)}. Finite type,
// strictly future-masked, D+1 attention lines. Line r marks positions
// ending a level-r repeated pair in the level-(r-1) mark subsequence; a
// word is in the language iff level-D marks are absent and each mark level
// starts with '(' and ends with ')'.
NamedRecognizer build_dyck1(int depth_bound);

// Column-only BRASP-style fixture over {a,b,c}: one unmasked leftmost
// attention line whose score and value read only the attended column.
// Accepts words whose first letter in {b,c} is a 'c'.
NamedRecognizer build_first_match();

// All library recognizers by name.
std::vector<NamedRecognizer> builtin_recognizers();
NamedRecognizer builtin_recognizer(const std::string& name);

// Direct word predicates: palindromes, dyck1-<D>, majority, all-strings,
// empty-language, first-match. Throws UnknownOracle on a miss.
std::map<std::string, WordPredicate> builtin_language_oracles();
WordPredicate builtin_oracle(const std::string& name);

// Hamming weight of a {0,1} word.
int hamming_weight(const Word& w);

} // namespace uhatlab
