#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qalab/amplitude.hpp"
#include "qalab/sparse.hpp"
#include "qalab/words.hpp"

namespace qalab {

enum class QMode { OneWay, Realtime };
enum class Move { Stay, Right };
enum class RegClass { Neutral, Accept, Reject };

struct QTrans {
    AmpExpr amp;
    int target = 0;
    std::vector<int> update; // counter deltas (realtime); empty for one-way
    int reg = 0;             // register symbol written
};

// Declarative quantum machine: a finite register is written on every
// transition, measured (one-way) or discarded (realtime), and reset. The
// transition table must be total over states x tape symbols -- the
// complete() pass fills the gaps the constructions leave open.
struct QMachineSpec {
    QMode mode = QMode::Realtime;
    std::string name;
    int counters = 0;  // realtime
    int maxUpdate = 0; // realtime: m
    std::vector<std::string> states;
    int initial = 0;
    std::vector<Move> moves;    // one state each; one-way only
    std::vector<int> accepting; // realtime only
    Alphabet alphabet;
    std::vector<std::string> regSymbols;
    std::vector<RegClass> regClass;
    std::map<std::pair<int, int>, std::vector<QTrans>> delta; // (state, tape symbol)

    int cent() const { return static_cast<int>(alphabet.size()); }
    int dollar() const { return static_cast<int>(alphabet.size()) + 1; }
    int tape_symbol_count() const { return static_cast<int>(alphabet.size()) + 2; }

    int add_state(const std::string& name, Move move = Move::Stay);
    int add_reg(const std::string& name, RegClass cls = RegClass::Neutral);
    int state_index(const std::string& name) const;
    void add(int state, int tapeSym, QTrans t);
    bool is_accepting(int state) const;

    void validate() const;
};

// Total-table completion: every (state, tape symbol) pair a construction
// leaves open becomes a single amplitude-1 transition writing a fresh
// per-state register symbol. One-way machines park the amplitude on the
// source configuration with a rejecting symbol; realtime machines route it
// to a dedicated non-accepting absorbing state. Fresh symbols per source
// keep the completed columns orthonormal; a shared sink symbol would not.
QMachineSpec complete_spec(QMachineSpec spec);

using OwConfig = std::pair<int, int>;              // (state, head position)
using RtConfig = std::pair<int, std::vector<int>>; // (state, counter vector)

// One time-invariant family {E_w} with the tape contents baked into the head
// positions; index parallels regSymbols.
std::vector<SparseMap<OwConfig, Amplitude>> materialize_oneway(const QMachineSpec& spec,
                                                               const std::vector<int>& word);

// One family per distinct tape symbol of cent w dollar, over counter vectors
// in the reachable box plus one step of headroom.
std::map<int, std::vector<SparseMap<RtConfig, Amplitude>>>
materialize_realtime(const QMachineSpec& spec, const std::vector<int>& word);

// Source key sets the materialized families are orthonormal over.
std::set<OwConfig> oneway_config_space(const QMachineSpec& spec, const std::vector<int>& word);
std::set<RtConfig> realtime_config_space(const QMachineSpec& spec, const std::vector<int>& word);

struct WfReport {
    struct Defect {
        std::string where;
        double deviation;
    };
    std::vector<Defect> global; // materialized-family Gram defects
    std::vector<Defect> local;  // per-symbol state-level necessary check
    bool ok() const { return global.empty() && local.empty(); }
};

WfReport check_well_formed(const QMachineSpec& spec, const std::vector<int>& word, double tol);

enum class CounterAcceptance { RequireZero, Ignore };

struct RunResult {
    double accept = 0;
    double reject = 0;
    double pending = 0;
    long steps = 0;
    bool halted = true; // one-way: pending fell below the halt threshold
};

// Mixed states are kept as an ensemble of pure sparse components; observable
// probabilities match the channel rho -> sum_w E_w rho E_w^dagger exactly.
template <class K>
struct Ensemble {
    std::vector<SparseVec<K, Amplitude>> components;
    double norm_sq() const {
        double n = 0;
        for (const auto& c : components) n += c.norm_sq();
        return n;
    }
};

// Applies the channel once per tape symbol of cent w dollar; the final
// projective measurement reads the accepting states, restricted to
// zero-counter configurations under RequireZero.
RunResult run_realtime(const QMachineSpec& spec, const std::vector<int>& word,
                       CounterAcceptance ca = CounterAcceptance::RequireZero);

// Observer sees the ensemble after each channel application (step index is
// the count of tape symbols consumed).
RunResult run_realtime_observed(const QMachineSpec& spec, const std::vector<int>& word,
                                CounterAcceptance ca,
                                const std::function<void(long, const Ensemble<RtConfig>&)>& observer);

// Final configuration distribution (diagonal of the final state).
std::map<RtConfig, double> run_realtime_distribution(const QMachineSpec& spec,
                                                     const std::vector<int>& word);

// Repeats the halting-measurement channel until pending probability falls
// below 1e-12 or stepCap is reached (0 = default (|Q|+2)(|w|+2)).
RunResult run_oneway(const QMachineSpec& spec, const std::vector<int>& word, long stepCap = 0);

} // namespace qalab
