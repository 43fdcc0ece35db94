#pragma once

#include <map>
#include <string>
#include <vector>

#include "qalab/gfa.hpp"
#include "qalab/words.hpp"

namespace qalab {

// Tape symbol indices: input symbols are 0..|alphabet|-1; the end-markers get
// the two indices after them. Machine descriptions must cover the markers --
// machines that need no end-marker action declare identity transitions.
struct TapeSyms {
    static int cent(const Alphabet& a) { return static_cast<int>(a.size()); }
    static int dollar(const Alphabet& a) { return static_cast<int>(a.size()) + 1; }
};

struct DbcaArc {
    int target = 0;
    std::vector<int> update; // one entry per counter
    bool operator==(const DbcaArc&) const = default;
};

// Realtime deterministic automaton with k blind counters. Exactly one target
// per (state, tape symbol); update magnitudes bounded by maxUpdate. A state
// listed in `silent` is an intermediate of an update chain: it is passed
// through without consuming input (normalize_updates introduces these, so the
// machine stays acceptance-equivalent without being step-synchronous).
struct Dbca {
    std::string name;
    std::vector<std::string> states; // index 0 is initial
    std::vector<int> accepting;      // sorted state indices
    int counters = 1;
    int maxUpdate = 1;
    Alphabet alphabet;
    std::map<std::pair<int, int>, DbcaArc> delta; // (state, tape symbol)
    std::map<int, DbcaArc> silent;

    void validate() const;
    bool is_accepting(int state) const;
};

struct DbcaResult {
    int state = 0;
    std::vector<long> counters;
    bool accepted = false;
};

DbcaResult run_dbca(const Dbca& m, const std::vector<int>& word);

// Update normal form: every update component in {-1,0,1}, realized by
// chaining silent intermediate states. Structural fixed point on machines
// already in normal form.
Dbca normalize_updates(const Dbca& m);

// Product with the used update vectors so that all transitions entering a
// given state carry the same update. Structural fixed point on machines that
// already have the property. Rejects machines with silent chains.
Dbca state_determine_updates(const Dbca& m);
bool is_state_determined(const Dbca& m);

// The prime-scaling linearization: the resulting GFA has value
// (prod_l p_l^{C[l]}) - 1 when the run ends accepting with counter vector C,
// and -1 when it ends non-accepting. Requires a state-determined machine with
// unit updates and no silent chains.
Gfa compile_to_gfa(const Dbca& m);

// gfa_tensor(G, G): value 0 exactly on members of L(m), positive otherwise.
Gfa complement_witness_gfa(const Dbca& m);

// Single-state machine over a1..at,b1..bt with counter i tracking
// |w|_{a_i} - |w|_{b_i}; accepts L_eq(t).
Dbca build_eq_dbca(int t);

// Nondeterministic realtime automaton with one blind counter.
struct NbcaChoice {
    int target = 0;
    int update = 0;
};

struct Nbca {
    std::string name;
    std::vector<std::string> states;
    std::vector<int> accepting;
    int maxUpdate = 1;
    Alphabet alphabet;
    std::map<std::pair<int, int>, std::vector<NbcaChoice>> delta; // may be empty: dead path

    void validate() const;
    bool is_accepting(int state) const;
};

// Configuration-set reachability over (state, counter); counter confined to
// the reachable band |c| <= maxUpdate * (|w| + 2). True iff some path ends
// accepting with counter zero.
bool run_nbca(const Nbca& m, const std::vector<int>& word);

// Picks two b's nondeterministically (possibly the same) and compares the
// length before the first with the length after the second; recognizes L_say.
Nbca build_lsay_nbca();

} // namespace qalab
