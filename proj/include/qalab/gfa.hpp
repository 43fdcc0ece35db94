#pragma once

#include <map>
#include <string>
#include <vector>

#include "qalab/rational.hpp"
#include "qalab/sparse.hpp"
#include "qalab/words.hpp"

namespace qalab {

// Generalized finite automaton over the rationals. The acceptance value of a
// word is f * A_{w_n} * ... * A_{w_1} * v0, computed exactly; the empty word
// yields f * v0. States are plain indices 0..n-1.
struct Gfa {
    std::string name;
    int stateCount = 0;
    Alphabet alphabet;
    std::vector<SparseMap<int, Rational>> transitions; // one per alphabet symbol
    SparseVec<int, Rational> initial;                  // column vector v0
    SparseVec<int, Rational> final;                    // row vector f

    void validate() const;
};

Rational gfa_value(const Gfa& g, const std::vector<int>& word);
Rational gfa_value(const Gfa& g, const std::string& w);

// Nondeterministic-mode decision: value > 0, in exact arithmetic.
bool nqal_decide(const Gfa& g, const std::vector<int>& word);

// Kronecker product; the result computes the product of the two values.
// Requires identical alphabets.
Gfa gfa_tensor(const Gfa& a, const Gfa& b);

// 2-state automaton computing |w|_plus - |w|_minus; other symbols act as
// identity.
Gfa build_diff_gfa(const std::string& plus, const std::string& minus, const Alphabet& alphabet);

// Value 1 exactly on strings of the form blocks[0]+ blocks[1]+ ... (each
// block nonempty), 0 otherwise. m blocks need m+1 states.
Gfa build_form_gfa(const std::vector<std::string>& blocks, const Alphabet& alphabet);

// Form factor times squared pairwise count differences over {a,b,c}:
// (|w|_a-|w|_b)^2 (|w|_a-|w|_c)^2 (|w|_b-|w|_c)^2 on a+b+c+, else 0.
Gfa build_lijk_gfa();

// prod_i (|w|_{a_i} - |w|_{b_i})^2 over the rendered alphabet a1..at,b1..bt.
Gfa build_neq_gfa(int t);

// Depth-first sweep over all words of length <= maxLen with shared prefix
// vectors; one evaluation step per tree node. Visit order is DFS, not
// length-lexicographic -- callers needing sorted output sort the rows.
void sweep_gfa_values(const Gfa& g, int maxLen,
                      const std::function<void(const std::vector<int>&, const Rational&)>& fn);

} // namespace qalab
