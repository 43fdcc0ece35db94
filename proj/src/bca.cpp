#include "qalab/bca.hpp"

#include <algorithm>
#include <set>

namespace qalab {

namespace {

int check_state(int s, size_t n, const char* what) {
    if (s < 0 || s >= static_cast<int>(n))
        throw ConstructionError(std::string(what) + ": state index out of range");
    return s;
}

std::string update_str(const std::vector<int>& u) {
    std::string s;
    for (size_t i = 0; i < u.size(); ++i) {
        if (i) s += ",";
        if (u[i] > 0) s += "+";
        s += std::to_string(u[i]);
    }
    return s;
}

} // namespace

void Dbca::validate() const {
    if (states.empty()) throw ConstructionError("dbca: no states");
    if (counters < 1) throw ConstructionError("dbca: needs at least one counter");
    int tapeSyms = static_cast<int>(alphabet.size()) + 2;
    for (size_t q = 0; q < states.size(); ++q) {
        if (silent.count(static_cast<int>(q))) continue;
        for (int s = 0; s < tapeSyms; ++s)
            if (!delta.count({static_cast<int>(q), s}))
                throw ConstructionError("dbca: missing transition from '" + states[q] +
                                        "' (transition function must be total)");
    }
    auto checkArc = [&](const DbcaArc& arc) {
        check_state(arc.target, states.size(), "dbca");
        if (static_cast<int>(arc.update.size()) != counters)
            throw ConstructionError("dbca: update vector arity mismatch");
        for (int u : arc.update)
            if (u < -maxUpdate || u > maxUpdate)
                throw ConstructionError("dbca: update magnitude exceeds declared bound");
    };
    for (const auto& [key, arc] : delta) checkArc(arc);
    for (const auto& [q, arc] : silent) checkArc(arc);
    for (int a : accepting) check_state(a, states.size(), "dbca");
}

bool Dbca::is_accepting(int state) const {
    return std::find(accepting.begin(), accepting.end(), state) != accepting.end();
}

namespace {

// Follow silent intermediates to a consuming state, applying their updates.
int resolve_silent(const Dbca& m, int state, std::vector<long>& counters) {
    size_t guard = 0;
    while (true) {
        auto it = m.silent.find(state);
        if (it == m.silent.end()) return state;
        if (++guard > m.states.size()) throw ConstructionError("dbca: silent chain cycle");
        for (int i = 0; i < m.counters; ++i) counters[static_cast<size_t>(i)] += it->second.update[static_cast<size_t>(i)];
        state = it->second.target;
    }
}

} // namespace

DbcaResult run_dbca(const Dbca& m, const std::vector<int>& word) {
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] < 0 || word[i] >= static_cast<int>(m.alphabet.size()))
            throw InputError("dbca: symbol at position " + std::to_string(i + 1) +
                             " is not in the alphabet");
    DbcaResult r;
    r.counters.assign(static_cast<size_t>(m.counters), 0);
    r.state = resolve_silent(m, 0, r.counters);
    std::vector<int> tape;
    tape.push_back(TapeSyms::cent(m.alphabet));
    tape.insert(tape.end(), word.begin(), word.end());
    tape.push_back(TapeSyms::dollar(m.alphabet));
    for (int sym : tape) {
        auto it = m.delta.find({r.state, sym});
        if (it == m.delta.end()) throw ConstructionError("dbca: missing transition");
        for (int i = 0; i < m.counters; ++i)
            r.counters[static_cast<size_t>(i)] += it->second.update[static_cast<size_t>(i)];
        r.state = resolve_silent(m, it->second.target, r.counters);
    }
    r.accepted = m.is_accepting(r.state) &&
                 std::all_of(r.counters.begin(), r.counters.end(), [](long c) { return c == 0; });
    return r;
}

namespace {

bool unit_updates(const Dbca& m) {
    auto ok = [](const DbcaArc& a) {
        return std::all_of(a.update.begin(), a.update.end(), [](int u) { return u >= -1 && u <= 1; });
    };
    for (const auto& [k, a] : m.delta)
        if (!ok(a)) return false;
    for (const auto& [k, a] : m.silent)
        if (!ok(a)) return false;
    return true;
}

// Componentwise decomposition of an update into unit vectors.
std::vector<std::vector<int>> unit_steps(const std::vector<int>& update) {
    int span = 0;
    for (int u : update) span = std::max(span, std::abs(u));
    std::vector<std::vector<int>> steps;
    for (int s = 0; s < span; ++s) {
        std::vector<int> step;
        for (int u : update) step.push_back(std::abs(u) > s ? (u > 0 ? 1 : -1) : 0);
        steps.push_back(step);
    }
    if (steps.empty()) steps.push_back(std::vector<int>(update.size(), 0));
    return steps;
}

} // namespace

Dbca normalize_updates(const Dbca& m) {
    m.validate();
    if (unit_updates(m)) return m;
    Dbca out = m;
    out.name = m.name + "_unit";
    out.delta.clear();
    out.silent.clear();
    out.maxUpdate = 1;
    // The consuming transition applies the first unit step; fresh silent
    // states spread the rest.
    auto chain = [&](const DbcaArc& arc, const std::string& tag) -> DbcaArc {
        auto steps = unit_steps(arc.update);
        DbcaArc head{arc.target, steps[0]};
        if (steps.size() == 1) return head;
        int prev = arc.target;
        for (size_t s = steps.size(); s-- > 1;) {
            int fresh = static_cast<int>(out.states.size());
            out.states.push_back(tag + ".step" + std::to_string(s));
            out.silent[fresh] = DbcaArc{prev, steps[s]};
            prev = fresh;
        }
        head.target = prev;
        return head;
    };
    for (const auto& [key, arc] : m.delta) {
        std::string tag = m.states[static_cast<size_t>(key.first)] + "." + std::to_string(key.second);
        out.delta[key] = chain(arc, tag);
    }
    for (const auto& [q, arc] : m.silent)
        out.silent[q] = chain(arc, m.states[static_cast<size_t>(q)] + ".silent");
    out.validate();
    return out;
}

bool is_state_determined(const Dbca& m) {
    std::map<int, std::vector<int>> entering;
    auto note = [&](int target, const std::vector<int>& u) {
        auto [it, inserted] = entering.try_emplace(target, u);
        return inserted || it->second == u;
    };
    for (const auto& [key, arc] : m.delta)
        if (!note(arc.target, arc.update)) return false;
    for (const auto& [q, arc] : m.silent)
        if (!note(arc.target, arc.update)) return false;
    return true;
}

Dbca state_determine_updates(const Dbca& m) {
    m.validate();
    if (!m.silent.empty())
        throw ConstructionError("state-determine: apply to machines without silent chains");
    if (is_state_determined(m)) return m;
    Dbca out;
    out.name = m.name + "_sd";
    out.counters = m.counters;
    out.maxUpdate = m.maxUpdate;
    out.alphabet = m.alphabet;
    // Reachable product (state, entering update). The initial state counts as
    // entered with the zero update: its counters start at zero.
    using Node = std::pair<int, std::vector<int>>;
    std::map<Node, int> index;
    std::vector<Node> order;
    auto intern = [&](const Node& n) {
        auto [it, inserted] = index.try_emplace(n, static_cast<int>(order.size()));
        if (inserted) order.push_back(n);
        return it->second;
    };
    Node start{0, std::vector<int>(static_cast<size_t>(m.counters), 0)};
    intern(start);
    int tapeSyms = static_cast<int>(m.alphabet.size()) + 2;
    for (size_t i = 0; i < order.size(); ++i) {
        Node n = order[i];
        for (int s = 0; s < tapeSyms; ++s) {
            const DbcaArc& arc = m.delta.at({n.first, s});
            int t = intern({arc.target, arc.update});
            out.delta[{static_cast<int>(i), s}] = DbcaArc{t, arc.update};
        }
    }
    for (const auto& n : order) {
        out.states.push_back(m.states[static_cast<size_t>(n.first)] + "|" + update_str(n.second));
        if (m.is_accepting(n.first)) out.accepting.push_back(static_cast<int>(out.states.size()) - 1);
    }
    out.validate();
    return out;
}

Gfa compile_to_gfa(const Dbca& m) {
    m.validate();
    if (!m.silent.empty())
        throw ConstructionError("compile: machine has silent chains; use unit-update machines");
    if (!unit_updates(m))
        throw ConstructionError("compile: updates must lie in {-1,0,1}; normalize first");
    if (!is_state_determined(m))
        throw ConstructionError("compile: machine is not state-determined; "
                                "apply state_determine_updates first");
    const int n = static_cast<int>(m.states.size());
    std::vector<long> primes = first_primes(m.counters);
    // Row scale for each state: the prime product of its entering update.
    std::vector<Rational> scale(static_cast<size_t>(n), Rational(1));
    for (const auto& [key, arc] : m.delta) {
        Rational s(1);
        for (int l = 0; l < m.counters; ++l)
            s *= Rational(primes[static_cast<size_t>(l)]).pow_int(arc.update[static_cast<size_t>(l)]);
        scale[static_cast<size_t>(arc.target)] = s;
    }
    // Bordered (n+1)-dimensional matrices; the extra coordinate carries the
    // constant -1 through the run.
    auto bordered = [&](int tapeSym) {
        SparseMap<int, Rational> t;
        for (int q = 0; q < n; ++q) {
            const DbcaArc& arc = m.delta.at({q, tapeSym});
            t.add(arc.target, q, scale[static_cast<size_t>(arc.target)]);
        }
        t.add(n, n, Rational(1));
        return t;
    };
    Gfa g;
    g.name = m.name + "_gfa";
    g.stateCount = n + 1;
    g.alphabet = m.alphabet;
    for (size_t s = 0; s < m.alphabet.size(); ++s)
        g.transitions.push_back(bordered(static_cast<int>(s)));
    SparseVec<int, Rational> seed;
    seed.set(0, Rational(1));
    seed.set(n, Rational(-1));
    g.initial = mul(bordered(TapeSyms::cent(m.alphabet)), seed);
    SparseMap<int, Rational> tDollar = bordered(TapeSyms::dollar(m.alphabet));
    // f' = (f | 1) * T''_$, computed column by column.
    for (const auto& [source, col] : tDollar.columns()) {
        Rational v(0);
        for (const auto& [target, coeff] : col)
            if (target == n || m.is_accepting(target)) v += coeff;
        g.final.add(source, v);
    }
    g.validate();
    return g;
}

Gfa complement_witness_gfa(const Dbca& m) {
    Gfa g = compile_to_gfa(m);
    Gfa sq = gfa_tensor(g, g);
    sq.name = m.name + "_gfa_sq";
    return sq;
}

Dbca build_eq_dbca(int t) {
    if (t < 1) throw ConstructionError("eq dbca: t must be >= 1");
    std::vector<std::string> syms;
    for (int i = 1; i <= t; ++i) syms.push_back("a" + std::to_string(i));
    for (int i = 1; i <= t; ++i) syms.push_back("b" + std::to_string(i));
    Dbca m;
    m.name = "eq" + std::to_string(t) + "_dbca";
    m.states = {"q0"};
    m.accepting = {0};
    m.counters = t;
    m.maxUpdate = 1;
    m.alphabet = Alphabet(syms);
    auto arc = [&](int counter, int dir) {
        DbcaArc a{0, std::vector<int>(static_cast<size_t>(t), 0)};
        if (counter >= 0) a.update[static_cast<size_t>(counter)] = dir;
        return a;
    };
    for (int i = 0; i < t; ++i) {
        m.delta[{0, i}] = arc(i, 1);
        m.delta[{0, t + i}] = arc(i, -1);
    }
    m.delta[{0, TapeSyms::cent(m.alphabet)}] = arc(-1, 0);
    m.delta[{0, TapeSyms::dollar(m.alphabet)}] = arc(-1, 0);
    m.validate();
    return m;
}

void Nbca::validate() const {
    if (states.empty()) throw ConstructionError("nbca: no states");
    for (const auto& [key, choices] : delta)
        for (const auto& c : choices) {
            check_state(c.target, states.size(), "nbca");
            if (c.update < -maxUpdate || c.update > maxUpdate)
                throw ConstructionError("nbca: update magnitude exceeds declared bound");
        }
    for (int a : accepting) check_state(a, states.size(), "nbca");
}

bool Nbca::is_accepting(int state) const {
    return std::find(accepting.begin(), accepting.end(), state) != accepting.end();
}

bool run_nbca(const Nbca& m, const std::vector<int>& word) {
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] < 0 || word[i] >= static_cast<int>(m.alphabet.size()))
            throw InputError("nbca: symbol at position " + std::to_string(i + 1) +
                             " is not in the alphabet");
    const long bound = static_cast<long>(m.maxUpdate) * (static_cast<long>(word.size()) + 2);
    std::vector<int> tape;
    tape.push_back(TapeSyms::cent(m.alphabet));
    tape.insert(tape.end(), word.begin(), word.end());
    tape.push_back(TapeSyms::dollar(m.alphabet));
    std::set<std::pair<int, long>> frontier{{0, 0}};
    for (int sym : tape) {
        std::set<std::pair<int, long>> next;
        for (const auto& [q, c] : frontier) {
            auto it = m.delta.find({q, sym});
            if (it == m.delta.end()) continue; // dead path
            for (const auto& choice : it->second) {
                long c2 = c + choice.update;
                if (c2 < -bound || c2 > bound) continue;
                next.insert({choice.target, c2});
            }
        }
        frontier.swap(next);
    }
    for (const auto& [q, c] : frontier)
        if (c == 0 && m.is_accepting(q)) return true;
    return false;
}

Nbca build_lsay_nbca() {
    Nbca m;
    m.name = "lsay_nbca";
    // Phases: counting before the first chosen b, between the two chosen b's,
    // discounting after the second. The two b's may coincide (s0 -> s2).
    m.states = {"count_pre", "between", "count_post"};
    m.accepting = {2};
    m.maxUpdate = 1;
    m.alphabet = Alphabet({"a", "b"});
    int cent = TapeSyms::cent(m.alphabet), dollar = TapeSyms::dollar(m.alphabet);
    m.delta[{0, cent}] = {{0, 0}};
    m.delta[{0, 0}] = {{0, 1}};
    m.delta[{0, 1}] = {{0, 1}, {1, 0}, {2, 0}};
    m.delta[{1, 0}] = {{1, 0}};
    m.delta[{1, 1}] = {{1, 0}, {2, 0}};
    m.delta[{2, 0}] = {{2, -1}};
    m.delta[{2, 1}] = {{2, -1}};
    for (int q = 0; q < 3; ++q) m.delta[{q, dollar}] = {{q, 0}};
    m.validate();
    return m;
}

} // namespace qalab
