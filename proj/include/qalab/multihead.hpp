#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qalab/rational.hpp"
#include "qalab/words.hpp"

namespace qalab {

enum class Verdict { Accept, Reject };

struct PkfaBranch {
    Rational prob;
    int target = 0;
    std::vector<int> moves; // 0 = stay, 1 = right; one per head
};

// One-way probabilistic finite automaton with k input heads. Transitions are
// exact-probability distributions keyed by (state, symbols under the heads).
// Entering a verdict state halts that branch; missing transitions halt as
// rejection. Heads never move left.
struct Pkfa {
    std::string name;
    int heads = 1;
    std::vector<std::string> states;
    int initial = 0;
    std::map<int, Verdict> verdict;
    Alphabet alphabet;
    std::map<std::pair<int, std::vector<int>>, std::vector<PkfaBranch>> delta;

    int cent() const { return static_cast<int>(alphabet.size()); }
    int dollar() const { return static_cast<int>(alphabet.size()) + 1; }
    void validate() const;
};

struct PkfaResult {
    Rational accept;
    Rational reject;
    Rational residue; // mass still live when the step cap was reached
};

// Exact stochastic evolution over (state, head positions).
// stepCap 0 = default (|Q|+2)(|w|+2).
PkfaResult run_pkfa(const Pkfa& m, const std::vector<int>& word, long stepCap = 0);

struct PbcaBranch {
    Rational prob;
    int target = 0;
    int update = 0;
};

// Realtime probabilistic automaton with one blind counter. Accepts iff the
// run ends in an accepting state with counter zero. Silent states behave as
// in Dbca: passed through without consuming input.
struct Pbca {
    std::string name;
    std::vector<std::string> states;
    std::vector<int> accepting;
    int maxUpdate = 1;
    Alphabet alphabet;
    std::map<std::pair<int, int>, std::vector<PbcaBranch>> delta; // (state, tape symbol)
    std::map<int, std::pair<int, int>> silent;                    // state -> (target, update)

    void validate() const;
    bool is_accepting(int state) const;
};

Rational run_rtp1bca(const Pbca& m, const std::vector<int>& word);

// Unit-update normal form, silent chains as in the deterministic case.
Pbca normalize_p1bca_updates(const Pbca& m);

// Head-for-counter simulation: H_i replays the input head, H_1 moves right
// on increments and H_2 on decrements, and after an accepting end-of-input
// both race to the right end-marker; equal arrival means counter zero.
// Requires updates in {-1,0,1}. An increment that would push a head past the
// end-marker can only happen on runs whose counter cannot return to zero, so
// those branches divert to the rejecting state.
Pkfa simulate_bca_as_3fa(const Pbca& m);

// Deterministic k-head machine recognizing L_twin(C(k,2)).
Pkfa build_twin_dkfa(int k);

// Split-halves machine: two equiprobable branches each compare half the
// pairs of L_twin(2*C(k,2)); members pass both, so error is one-sided 1/2.
Pkfa build_twin_pkfa(int k);

// Two heads, t choices: pair i is compared with probability 1/t, giving
// one-sided error 1 - 1/t for L_twin(t).
Pkfa build_twin_p2fa(int t);

// Deterministic comparator over blocks B_1..B_{2T} separated by c: checks
// B_p == B_{2T+1-p} for each p in `pairs` plus the exact block count.
// |pairs| must equal C(k,2); pairs are scheduled so k one-way heads suffice.
Pkfa build_pair_comparator(int totalPairs, const std::vector<int>& pairs, int k);

} // namespace qalab
