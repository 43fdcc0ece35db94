#include "qalab/qmachine.hpp"

#include <algorithm>
#include <cmath>

namespace qalab {

namespace {

constexpr double kHaltThreshold = 1e-12;
constexpr double kComponentPrune = 1e-26; // squared norm

std::vector<int> tape_of(const QMachineSpec& spec, const std::vector<int>& word) {
    std::vector<int> tape;
    tape.push_back(spec.cent());
    tape.insert(tape.end(), word.begin(), word.end());
    tape.push_back(spec.dollar());
    return tape;
}

void check_word(const QMachineSpec& spec, const std::vector<int>& word) {
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] < 0 || word[i] >= static_cast<int>(spec.alphabet.size()))
            throw InputError(spec.name + ": symbol at position " + std::to_string(i + 1) +
                             " is not in the alphabet");
}

} // namespace

int QMachineSpec::add_state(const std::string& n, Move move) {
    states.push_back(n);
    moves.push_back(move);
    return static_cast<int>(states.size()) - 1;
}

int QMachineSpec::add_reg(const std::string& n, RegClass cls) {
    regSymbols.push_back(n);
    regClass.push_back(cls);
    return static_cast<int>(regSymbols.size()) - 1;
}

int QMachineSpec::state_index(const std::string& n) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == n) return static_cast<int>(i);
    throw ConstructionError(name + ": unknown state '" + n + "'");
}

void QMachineSpec::add(int state, int tapeSym, QTrans t) {
    delta[{state, tapeSym}].push_back(std::move(t));
}

bool QMachineSpec::is_accepting(int state) const {
    return std::find(accepting.begin(), accepting.end(), state) != accepting.end();
}

void QMachineSpec::validate() const {
    if (states.empty()) throw ConstructionError("qmachine: no states");
    if (moves.size() != states.size()) throw ConstructionError("qmachine: move tag arity");
    if (regSymbols.empty()) throw ConstructionError("qmachine: empty register alphabet");
    if (regClass.size() != regSymbols.size()) throw ConstructionError("qmachine: register class arity");
    if (initial < 0 || initial >= static_cast<int>(states.size()))
        throw ConstructionError("qmachine: bad initial state");
    if (mode == QMode::Realtime && counters < 1)
        throw ConstructionError("qmachine: realtime machine needs counters");
    for (const auto& [key, list] : delta) {
        if (key.first < 0 || key.first >= static_cast<int>(states.size()))
            throw ConstructionError("qmachine: transition from unknown state");
        if (key.second < 0 || key.second >= tape_symbol_count())
            throw ConstructionError("qmachine: transition on unknown tape symbol");
        for (const auto& t : list) {
            if (t.target < 0 || t.target >= static_cast<int>(states.size()))
                throw ConstructionError("qmachine: transition to unknown state");
            if (t.reg < 0 || t.reg >= static_cast<int>(regSymbols.size()))
                throw ConstructionError("qmachine: unknown register symbol");
            if (mode == QMode::Realtime) {
                if (static_cast<int>(t.update.size()) != counters)
                    throw ConstructionError("qmachine: counter update arity");
                for (int u : t.update)
                    if (u < -maxUpdate || u > maxUpdate)
                        throw ConstructionError("qmachine: counter update exceeds declared bound");
            } else if (!t.update.empty()) {
                throw ConstructionError("qmachine: one-way transitions carry no counter update");
            }
        }
    }
    for (int q = 0; q < static_cast<int>(states.size()); ++q)
        for (int s = 0; s < tape_symbol_count(); ++s) {
            auto it = delta.find({q, s});
            if (it == delta.end() || it->second.empty())
                throw ConstructionError(name + ": transition table not total at ('" +
                                        states[static_cast<size_t>(q)] +
                                        "', tape symbol " + std::to_string(s) +
                                        "); run complete_spec");
        }
}

QMachineSpec complete_spec(QMachineSpec spec) {
    bool anyGap = false;
    for (int q = 0; q < static_cast<int>(spec.states.size()) && !anyGap; ++q)
        for (int s = 0; s < spec.tape_symbol_count() && !anyGap; ++s) {
            auto it = spec.delta.find({q, s});
            anyGap = it == spec.delta.end() || it->second.empty();
        }
    if (!anyGap) {
        spec.validate();
        return spec;
    }
    // Dedicated absorbing state: non-accepting (realtime) resp. stay-tagged
    // (one-way, so the parked amplitude never walks off the tape).
    int sink = spec.add_state("sink@", Move::Stay);
    for (int q = 0; q < static_cast<int>(spec.states.size()); ++q) {
        int fresh = -1;
        for (int s = 0; s < spec.tape_symbol_count(); ++s) {
            auto it = spec.delta.find({q, s});
            if (it != spec.delta.end() && !it->second.empty()) continue;
            if (fresh < 0)
                fresh = spec.add_reg("w@" + spec.states[static_cast<size_t>(q)],
                                     spec.mode == QMode::OneWay ? RegClass::Reject
                                                                : RegClass::Neutral);
            QTrans t;
            t.amp = AmpExpr(Rational(1));
            t.reg = fresh;
            t.target = sink;
            if (spec.mode == QMode::Realtime)
                t.update.assign(static_cast<size_t>(spec.counters), 0);
            spec.add(q, s, std::move(t));
        }
    }
    spec.validate();
    return spec;
}

std::vector<SparseMap<OwConfig, Amplitude>> materialize_oneway(const QMachineSpec& spec,
                                                               const std::vector<int>& word) {
    if (spec.mode != QMode::OneWay) throw ConstructionError("materialize_oneway: wrong mode");
    check_word(spec, word);
    std::vector<int> tape = tape_of(spec, word);
    const int len = static_cast<int>(tape.size());
    std::vector<SparseMap<OwConfig, Amplitude>> family(spec.regSymbols.size());
    for (int x = 1; x <= len; ++x) {
        int sym = tape[static_cast<size_t>(x - 1)];
        for (int q = 0; q < static_cast<int>(spec.states.size()); ++q) {
            for (const QTrans& t : spec.delta.at({q, sym})) {
                int x2 = x;
                if (spec.moves[static_cast<size_t>(t.target)] == Move::Right) {
                    if (x == len)
                        throw ConstructionError(spec.name +
                                                ": transition moves the head past the right "
                                                "end-marker");
                    x2 = x + 1;
                }
                family[static_cast<size_t>(t.reg)].add({t.target, x2}, {q, x}, t.amp.value());
            }
        }
    }
    return family;
}

std::set<OwConfig> oneway_config_space(const QMachineSpec& spec, const std::vector<int>& word) {
    std::set<OwConfig> configs;
    int len = static_cast<int>(word.size()) + 2;
    for (int q = 0; q < static_cast<int>(spec.states.size()); ++q)
        for (int x = 1; x <= len; ++x) configs.insert({q, x});
    return configs;
}

namespace {

// Counter boxes: runs stay within m*(|w|+2); materialization adds one more
// update of headroom so boundary columns are not clipped.
long rt_bound(const QMachineSpec& spec, const std::vector<int>& word) {
    return static_cast<long>(spec.maxUpdate) * (static_cast<long>(word.size()) + 2);
}

void enumerate_box(int dims, int bound, std::vector<int>& cur,
                   const std::function<void(const std::vector<int>&)>& fn) {
    if (dims == 0) {
        fn(cur);
        return;
    }
    for (int v = -bound; v <= bound; ++v) {
        cur.push_back(v);
        enumerate_box(dims - 1, bound, cur, fn);
        cur.pop_back();
    }
}

} // namespace

std::map<int, std::vector<SparseMap<RtConfig, Amplitude>>>
materialize_realtime(const QMachineSpec& spec, const std::vector<int>& word) {
    if (spec.mode != QMode::Realtime) throw ConstructionError("materialize_realtime: wrong mode");
    check_word(spec, word);
    const int bound = static_cast<int>(rt_bound(spec, word));
    std::set<int> symbols(word.begin(), word.end());
    symbols.insert(spec.cent());
    symbols.insert(spec.dollar());
    std::map<int, std::vector<SparseMap<RtConfig, Amplitude>>> families;
    for (int sym : symbols) {
        auto& family = families[sym];
        family.resize(spec.regSymbols.size());
        std::vector<int> cur;
        enumerate_box(spec.counters, bound, cur, [&](const std::vector<int>& v) {
            for (int q = 0; q < static_cast<int>(spec.states.size()); ++q) {
                for (const QTrans& t : spec.delta.at({q, sym})) {
                    std::vector<int> v2 = v;
                    for (int i = 0; i < spec.counters; ++i)
                        v2[static_cast<size_t>(i)] += t.update[static_cast<size_t>(i)];
                    family[static_cast<size_t>(t.reg)].add({t.target, v2}, {q, v}, t.amp.value());
                }
            }
        });
    }
    return families;
}

std::set<RtConfig> realtime_config_space(const QMachineSpec& spec, const std::vector<int>& word) {
    std::set<RtConfig> configs;
    const int bound = static_cast<int>(rt_bound(spec, word));
    std::vector<int> cur;
    enumerate_box(spec.counters, bound, cur, [&](const std::vector<int>& v) {
        for (int q = 0; q < static_cast<int>(spec.states.size()); ++q) configs.insert({q, v});
    });
    return configs;
}

namespace {

std::string ow_config_str(const QMachineSpec& spec, const OwConfig& c) {
    return "(" + spec.states[static_cast<size_t>(c.first)] + ",pos " + std::to_string(c.second) + ")";
}

std::string rt_config_str(const QMachineSpec& spec, const RtConfig& c) {
    std::string s = "(" + spec.states[static_cast<size_t>(c.first)] + ",ctr ";
    for (size_t i = 0; i < c.second.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c.second[i]);
    }
    return s + ")";
}

// Cheap per-symbol necessary condition: columns indexed by source state with
// targets keyed by (state, relative action, register symbol).
template <class ActionKey>
void local_check(const QMachineSpec& spec, int sym,
                 const std::function<ActionKey(const QTrans&)>& action, double tol,
                 std::vector<WfReport::Defect>& out, const std::string& symName) {
    using Key = std::tuple<int, ActionKey, int>;
    std::map<std::pair<int, int>, Amplitude> gram;
    std::map<Key, std::map<int, Amplitude>> rows; // amplitudes merged per source
    for (int q = 0; q < static_cast<int>(spec.states.size()); ++q) {
        gram[{q, q}] = 0.0;
        for (const QTrans& t : spec.delta.at({q, sym}))
            rows[{t.target, action(t), t.reg}][q] += t.amp.value();
    }
    for (const auto& [key, hits] : rows)
        for (auto i = hits.begin(); i != hits.end(); ++i)
            for (auto j = i; j != hits.end(); ++j) {
                if (i == j)
                    gram[{i->first, i->first}] += std::norm(i->second);
                else
                    gram[{i->first, j->first}] += std::conj(i->second) * j->second;
            }
    for (const auto& [pair, g] : gram) {
        double expect = pair.first == pair.second ? 1.0 : 0.0;
        double dev = std::abs(g - expect);
        if (dev > tol)
            out.push_back({"symbol " + symName + ": " + spec.states[static_cast<size_t>(pair.first)] +
                               " vs " + spec.states[static_cast<size_t>(pair.second)],
                           dev});
    }
}

std::string tape_sym_name(const QMachineSpec& spec, int sym) {
    if (sym == spec.cent()) return "^";
    if (sym == spec.dollar()) return "$";
    return spec.alphabet.symbol(sym);
}

} // namespace

WfReport check_well_formed(const QMachineSpec& spec, const std::vector<int>& word, double tol) {
    spec.validate();
    WfReport report;
    if (spec.mode == QMode::OneWay) {
        auto family = materialize_oneway(spec, word);
        auto configs = oneway_config_space(spec, word);
        for (const auto& d : check_columns_orthonormal(family, configs, tol))
            report.global.push_back(
                {ow_config_str(spec, d.a) + " vs " + ow_config_str(spec, d.b), d.deviation});
        std::set<int> symbols(word.begin(), word.end());
        symbols.insert(spec.cent());
        symbols.insert(spec.dollar());
        for (int sym : symbols)
            local_check<int>(
                spec, sym,
                [&](const QTrans& t) {
                    return spec.moves[static_cast<size_t>(t.target)] == Move::Right ? 1 : 0;
                },
                tol, report.local, tape_sym_name(spec, sym));
    } else {
        auto families = materialize_realtime(spec, word);
        auto configs = realtime_config_space(spec, word);
        for (const auto& [sym, family] : families)
            for (const auto& d : check_columns_orthonormal(family, configs, tol))
                report.global.push_back({"symbol " + tape_sym_name(spec, sym) + ": " +
                                             rt_config_str(spec, d.a) + " vs " +
                                             rt_config_str(spec, d.b),
                                         d.deviation});
        for (const auto& [sym, family] : families)
            local_check<std::vector<int>>(
                spec, sym, [](const QTrans& t) { return t.update; }, tol, report.local,
                tape_sym_name(spec, sym));
    }
    return report;
}

namespace {

// Merge components that are scalar multiples of one another; the mixture
// they contribute to rho is a single pure component with combined weight.
template <class K>
void merge_parallel(std::vector<SparseVec<K, Amplitude>>& comps) {
    std::vector<SparseVec<K, Amplitude>> out;
    std::vector<bool> used(comps.size(), false);
    for (size_t i = 0; i < comps.size(); ++i) {
        if (used[i]) continue;
        double scaleSq = 1.0;
        for (size_t j = i + 1; j < comps.size(); ++j) {
            if (used[j]) continue;
            const auto& a = comps[i].entries();
            const auto& b = comps[j].entries();
            if (a.size() != b.size()) continue;
            Amplitude ratio = 0.0;
            bool parallel = true;
            auto ia = a.begin();
            auto ib = b.begin();
            for (; ia != a.end(); ++ia, ++ib) {
                if (ia->first != ib->first) { parallel = false; break; }
                if (ratio == Amplitude(0.0)) {
                    ratio = ib->second / ia->second;
                } else if (std::abs(ib->second - ratio * ia->second) >
                           1e-12 * (1.0 + std::abs(ratio * ia->second))) {
                    parallel = false;
                    break;
                }
            }
            if (parallel) {
                scaleSq += std::norm(ratio);
                used[j] = true;
            }
        }
        if (scaleSq != 1.0) {
            SparseVec<K, Amplitude> scaled;
            double f = std::sqrt(scaleSq);
            for (const auto& [k, v] : comps[i].entries()) scaled.set(k, v * f);
            out.push_back(std::move(scaled));
        } else {
            out.push_back(std::move(comps[i]));
        }
    }
    comps.swap(out);
}

} // namespace

RunResult run_realtime_observed(const QMachineSpec& spec, const std::vector<int>& word,
                                CounterAcceptance ca,
                                const std::function<void(long, const Ensemble<RtConfig>&)>& observer) {
    if (spec.mode != QMode::Realtime) throw ConstructionError("run_realtime: wrong mode");
    spec.validate();
    check_word(spec, word);
    const long bound = rt_bound(spec, word);
    Ensemble<RtConfig> state;
    {
        SparseVec<RtConfig, Amplitude> init;
        init.set({spec.initial, std::vector<int>(static_cast<size_t>(spec.counters), 0)}, 1.0);
        state.components.push_back(std::move(init));
    }
    if (observer) observer(0, state);
    std::vector<int> tape = tape_of(spec, word);
    long step = 0;
    for (int sym : tape) {
        std::vector<SparseVec<RtConfig, Amplitude>> next;
        for (const auto& comp : state.components) {
            std::map<int, SparseVec<RtConfig, Amplitude>> byReg;
            for (const auto& [cfg, amp] : comp.entries()) {
                for (const QTrans& t : spec.delta.at({cfg.first, sym})) {
                    std::vector<int> v2 = cfg.second;
                    for (int i = 0; i < spec.counters; ++i) {
                        v2[static_cast<size_t>(i)] += t.update[static_cast<size_t>(i)];
                        if (std::abs(v2[static_cast<size_t>(i)]) > bound)
                            throw ConstructionError(spec.name + ": counter left the reachable bound");
                    }
                    byReg[t.reg].add({t.target, v2}, amp * t.amp.value());
                }
            }
            for (auto& [reg, vec] : byReg)
                if (vec.norm_sq() > kComponentPrune) next.push_back(std::move(vec));
        }
        merge_parallel(next);
        state.components.swap(next);
        ++step;
        if (observer) observer(step, state);
    }
    RunResult r;
    r.steps = step;
    for (const auto& comp : state.components)
        for (const auto& [cfg, amp] : comp.entries()) {
            bool zero = std::all_of(cfg.second.begin(), cfg.second.end(),
                                    [](int c) { return c == 0; });
            if (spec.is_accepting(cfg.first) && (ca == CounterAcceptance::Ignore || zero))
                r.accept += std::norm(amp);
        }
    r.reject = 1.0 - r.accept;
    r.pending = 0.0;
    return r;
}

RunResult run_realtime(const QMachineSpec& spec, const std::vector<int>& word, CounterAcceptance ca) {
    return run_realtime_observed(spec, word, ca, nullptr);
}

std::map<RtConfig, double> run_realtime_distribution(const QMachineSpec& spec,
                                                     const std::vector<int>& word) {
    std::map<RtConfig, double> dist;
    Ensemble<RtConfig> last;
    run_realtime_observed(spec, word, CounterAcceptance::RequireZero,
                          [&](long step, const Ensemble<RtConfig>& e) {
                              if (step == static_cast<long>(word.size()) + 2) last = e;
                          });
    for (const auto& comp : last.components)
        for (const auto& [cfg, amp] : comp.entries()) dist[cfg] += std::norm(amp);
    return dist;
}

RunResult run_oneway(const QMachineSpec& spec, const std::vector<int>& word, long stepCap) {
    if (spec.mode != QMode::OneWay) throw ConstructionError("run_oneway: wrong mode");
    spec.validate();
    check_word(spec, word);
    if (stepCap <= 0)
        stepCap = (static_cast<long>(spec.states.size()) + 2) * (static_cast<long>(word.size()) + 2);
    std::vector<int> tape = tape_of(spec, word);
    const int last = static_cast<int>(tape.size());
    Ensemble<OwConfig> state;
    {
        SparseVec<OwConfig, Amplitude> init;
        init.set({spec.initial, 1}, 1.0);
        state.components.push_back(std::move(init));
    }
    RunResult r;
    r.pending = 1.0;
    while (r.steps < stepCap && r.pending >= kHaltThreshold) {
        std::vector<SparseVec<OwConfig, Amplitude>> next;
        for (const auto& comp : state.components) {
            std::map<int, SparseVec<OwConfig, Amplitude>> byReg;
            for (const auto& [cfg, amp] : comp.entries()) {
                for (const QTrans& t : spec.delta.at({cfg.first, tape[static_cast<size_t>(cfg.second - 1)]})) {
                    int x2 = cfg.second;
                    if (spec.moves[static_cast<size_t>(t.target)] == Move::Right) {
                        if (x2 == last)
                            throw ConstructionError(
                                spec.name + ": transition moves the head past the right end-marker");
                        ++x2;
                    }
                    byReg[t.reg].add({t.target, x2}, amp * t.amp.value());
                }
            }
            for (auto& [reg, out] : byReg) {
                switch (spec.regClass[static_cast<size_t>(reg)]) {
                    case RegClass::Accept: r.accept += out.norm_sq(); break;
                    case RegClass::Reject: r.reject += out.norm_sq(); break;
                    case RegClass::Neutral:
                        if (out.norm_sq() > kComponentPrune) next.push_back(std::move(out));
                        break;
                }
            }
        }
        merge_parallel(next);
        state.components.swap(next);
        r.pending = state.norm_sq();
        ++r.steps;
    }
    r.halted = r.pending < kHaltThreshold;
    return r;
}

} // namespace qalab
