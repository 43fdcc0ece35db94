#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qalab/words.hpp"

namespace qalab {

// Reference membership oracles. These are ground truth for the verification
// harness and deliberately independent of every machine they validate:
// definition-literal counting, pattern decomposition, and brute-force search.
enum class LanguageTag {
    Upal,        // a^n b^n
    UpalStar,    // (a^n b^n)*
    Ijk,         // a^i b^j c^k, i,j,k >= 1 pairwise distinct
    Say,         // w = u1 b u2 = v1 b v2 with |u1| = |v2|
    Eq,          // |w|_{a_i} = |w|_{b_i} for all i
    Neq,         // |w|_{a_i} != |w|_{b_i} for all i
    UpalT,       // a^{n1} b ... b a^{nt} b a^{nt} b ... b a^{n1}, n_i >= 0
    UpalTStrict, // same with n_i > 0
    Twin,        // w1 c ... c wt c wt c ... c w1
    Gt,          // |w|_a > |w|_b > 0
    GtT,
};

struct LanguageId {
    LanguageTag tag;
    int t = 0; // parameter, present iff the family requires one

    // Accepts "upal", "neq(2)", "twin(3)", ...
    static LanguageId parse(const std::string& text);
    std::string str() const;
    bool needs_param() const;
};

// The alphabet each language is defined over. Parameterized families use
// rendered symbols a1..at, b1..bt.
Alphabet language_alphabet(const LanguageId& id);

// Exact membership. Throws InputError on alphabet violations.
bool oracle(const LanguageId& id, const std::string& w);
bool oracle_tokens(const LanguageId& id, const std::vector<int>& word, const Alphabet& alphabet);

} // namespace qalab
