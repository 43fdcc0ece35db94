#include "qalab/multihead.hpp"

#include <algorithm>
#include <tuple>

namespace qalab {

void Pkfa::validate() const {
    if (states.empty()) throw ConstructionError("pkfa: no states");
    if (heads < 1) throw ConstructionError("pkfa: needs at least one head");
    if (initial < 0 || initial >= static_cast<int>(states.size()))
        throw ConstructionError("pkfa: bad initial state");
    for (const auto& [key, branches] : delta) {
        if (static_cast<int>(key.second.size()) != heads)
            throw ConstructionError("pkfa: symbol vector arity mismatch");
        Rational total(0);
        for (const auto& b : branches) {
            if (b.target < 0 || b.target >= static_cast<int>(states.size()))
                throw ConstructionError("pkfa: transition to unknown state");
            if (static_cast<int>(b.moves.size()) != heads)
                throw ConstructionError("pkfa: move vector arity mismatch");
            for (int mv : b.moves)
                if (mv != 0 && mv != 1) throw ConstructionError("pkfa: heads move right or stay");
            if (b.prob.sign() <= 0) throw ConstructionError("pkfa: probabilities must be positive");
            total += b.prob;
        }
        if (!total.is_one()) throw ConstructionError("pkfa: branch probabilities must sum to 1");
    }
}

PkfaResult run_pkfa(const Pkfa& m, const std::vector<int>& word, long stepCap) {
    m.validate();
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] < 0 || word[i] >= static_cast<int>(m.alphabet.size()))
            throw InputError("pkfa: symbol at position " + std::to_string(i + 1) +
                             " is not in the alphabet");
    if (stepCap <= 0)
        stepCap = (static_cast<long>(m.states.size()) + 2) * (static_cast<long>(word.size()) + 2);
    std::vector<int> tape;
    tape.push_back(m.cent());
    tape.insert(tape.end(), word.begin(), word.end());
    tape.push_back(m.dollar());
    const int last = static_cast<int>(tape.size());
    using Conf = std::pair<int, std::vector<int>>;
    std::map<Conf, Rational> live;
    live[{m.initial, std::vector<int>(static_cast<size_t>(m.heads), 1)}] = Rational(1);
    PkfaResult r{Rational(0), Rational(0), Rational(0)};
    auto settle = [&](std::map<Conf, Rational>& dist) {
        for (auto it = dist.begin(); it != dist.end();) {
            auto v = m.verdict.find(it->first.first);
            if (v != m.verdict.end()) {
                (v->second == Verdict::Accept ? r.accept : r.reject) += it->second;
                it = dist.erase(it);
            } else {
                ++it;
            }
        }
    };
    settle(live);
    for (long step = 0; step < stepCap && !live.empty(); ++step) {
        std::map<Conf, Rational> next;
        for (const auto& [conf, mass] : live) {
            std::vector<int> sv;
            for (int pos : conf.second) sv.push_back(tape[static_cast<size_t>(pos - 1)]);
            auto it = m.delta.find({conf.first, sv});
            if (it == m.delta.end()) {
                r.reject += mass; // undeclared situation halts as rejection
                continue;
            }
            for (const auto& b : it->second) {
                std::vector<int> pos = conf.second;
                for (int h = 0; h < m.heads; ++h) {
                    pos[static_cast<size_t>(h)] += b.moves[static_cast<size_t>(h)];
                    if (pos[static_cast<size_t>(h)] > last)
                        throw ConstructionError("pkfa: head moved past the right end-marker");
                }
                next[{b.target, pos}] += mass * b.prob;
            }
        }
        settle(next);
        live.swap(next);
    }
    for (const auto& [conf, mass] : live) r.residue += mass;
    return r;
}

void Pbca::validate() const {
    if (states.empty()) throw ConstructionError("pbca: no states");
    int tapeSyms = static_cast<int>(alphabet.size()) + 2;
    for (size_t q = 0; q < states.size(); ++q) {
        if (silent.count(static_cast<int>(q))) continue;
        for (int s = 0; s < tapeSyms; ++s) {
            auto it = delta.find({static_cast<int>(q), s});
            if (it == delta.end() || it->second.empty())
                throw ConstructionError("pbca: missing transition from '" + states[q] + "'");
            Rational total(0);
            for (const auto& b : it->second) {
                if (b.target < 0 || b.target >= static_cast<int>(states.size()))
                    throw ConstructionError("pbca: transition to unknown state");
                if (b.update < -maxUpdate || b.update > maxUpdate)
                    throw ConstructionError("pbca: update magnitude exceeds declared bound");
                if (b.prob.sign() <= 0) throw ConstructionError("pbca: probabilities must be positive");
                total += b.prob;
            }
            if (!total.is_one()) throw ConstructionError("pbca: branch probabilities must sum to 1");
        }
    }
}

bool Pbca::is_accepting(int state) const {
    return std::find(accepting.begin(), accepting.end(), state) != accepting.end();
}

namespace {

std::pair<int, long> resolve_silent_p(const Pbca& m, int state, long counter) {
    size_t guard = 0;
    while (true) {
        auto it = m.silent.find(state);
        if (it == m.silent.end()) return {state, counter};
        if (++guard > m.states.size()) throw ConstructionError("pbca: silent chain cycle");
        counter += it->second.second;
        state = it->second.first;
    }
}

} // namespace

Rational run_rtp1bca(const Pbca& m, const std::vector<int>& word) {
    m.validate();
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] < 0 || word[i] >= static_cast<int>(m.alphabet.size()))
            throw InputError("pbca: symbol at position " + std::to_string(i + 1) +
                             " is not in the alphabet");
    std::vector<int> tape;
    tape.push_back(static_cast<int>(m.alphabet.size()));     // cent
    tape.insert(tape.end(), word.begin(), word.end());
    tape.push_back(static_cast<int>(m.alphabet.size()) + 1); // dollar
    std::map<std::pair<int, long>, Rational> dist;
    dist[resolve_silent_p(m, 0, 0)] = Rational(1);
    for (int sym : tape) {
        std::map<std::pair<int, long>, Rational> next;
        for (const auto& [conf, mass] : dist)
            for (const auto& b : m.delta.at({conf.first, sym}))
                next[resolve_silent_p(m, b.target, conf.second + b.update)] += mass * b.prob;
        dist.swap(next);
    }
    Rational accept(0);
    for (const auto& [conf, mass] : dist)
        if (conf.second == 0 && m.is_accepting(conf.first)) accept += mass;
    return accept;
}

Pbca normalize_p1bca_updates(const Pbca& m) {
    m.validate();
    bool unit = m.maxUpdate <= 1;
    if (!unit) {
        unit = true;
        for (const auto& [k, bs] : m.delta)
            for (const auto& b : bs)
                if (std::abs(b.update) > 1) unit = false;
        for (const auto& [q, arc] : m.silent)
            if (std::abs(arc.second) > 1) unit = false;
    }
    if (unit) return m;
    Pbca out = m;
    out.name = m.name + "_unit";
    out.delta.clear();
    out.silent.clear();
    out.maxUpdate = 1;
    auto chain = [&](int target, int update, const std::string& tag) -> std::pair<int, int> {
        int span = std::abs(update);
        if (span <= 1) return {target, update};
        int dir = update > 0 ? 1 : -1;
        int prev = target;
        for (int s = span; s >= 2; --s) {
            int fresh = static_cast<int>(out.states.size());
            out.states.push_back(tag + ".step" + std::to_string(s));
            out.silent[fresh] = {prev, dir};
            prev = fresh;
        }
        return {prev, dir};
    };
    for (const auto& [key, branches] : m.delta) {
        auto& outBranches = out.delta[key];
        int n = 0;
        for (const auto& b : branches) {
            std::string tag = m.states[static_cast<size_t>(key.first)] + "." +
                              std::to_string(key.second) + "." + std::to_string(n++);
            auto [target, update] = chain(b.target, b.update, tag);
            outBranches.push_back({b.prob, target, update});
        }
    }
    for (const auto& [q, arc] : m.silent) {
        auto [target, update] =
            chain(arc.first, arc.second, m.states[static_cast<size_t>(q)] + ".silent");
        out.silent[q] = {target, update};
    }
    out.validate();
    return out;
}

Pkfa simulate_bca_as_3fa(const Pbca& m) {
    m.validate();
    for (const auto& [k, bs] : m.delta)
        for (const auto& b : bs)
            if (std::abs(b.update) > 1)
                throw ConstructionError("simulate: updates must lie in {-1,0,1}; normalize first");
    for (const auto& [q, arc] : m.silent)
        if (std::abs(arc.second) > 1)
            throw ConstructionError("simulate: updates must lie in {-1,0,1}; normalize first");
    Pkfa out;
    out.name = m.name + "_3fa";
    out.heads = 3; // H1 increments, H2 decrements, H_i replays the input head
    out.alphabet = m.alphabet;
    const int n = static_cast<int>(m.states.size());
    // Layout: reading phase (s.q), end phase (e.q, $ consumed), race, verdicts.
    for (const auto& s : m.states) out.states.push_back("s." + s);
    for (const auto& s : m.states) out.states.push_back("e." + s);
    int race = static_cast<int>(out.states.size());
    out.states.push_back("race");
    int acc = static_cast<int>(out.states.size());
    out.states.push_back("acc");
    int rej = static_cast<int>(out.states.size());
    out.states.push_back("rej");
    out.initial = 0;
    out.verdict[acc] = Verdict::Accept;
    out.verdict[rej] = Verdict::Reject;
    const int kDollar = out.dollar();
    std::vector<int> tapeSyms;
    for (int s = 0; s < kDollar + 1; ++s) tapeSyms.push_back(s);
    auto counterMoves = [&](int update, int s0, int s1) -> std::optional<std::pair<int, int>> {
        int m1 = update == 1 ? 1 : 0, m2 = update == -1 ? 1 : 0;
        // A head pushed past $ means more unit operations in one direction
        // than tape squares; such a run cannot end with counter zero.
        if ((m1 && s0 == kDollar) || (m2 && s1 == kDollar)) return std::nullopt;
        return std::make_pair(m1, m2);
    };
    auto endTarget = [&](int q) { return m.silent.count(q) ? n + q : (m.is_accepting(q) ? race : rej); };
    for (int s0 : tapeSyms)
        for (int s1 : tapeSyms)
            for (int s2 : tapeSyms) {
                std::vector<int> sv{s0, s1, s2};
                for (int q = 0; q < n; ++q) {
                    auto silentIt = m.silent.find(q);
                    if (silentIt != m.silent.end()) {
                        // Chain step: the input head idles in both phases.
                        auto [target, update] = silentIt->second;
                        auto cm = counterMoves(update, s0, s1);
                        if (cm) {
                            out.delta[{q, sv}] = {{Rational(1), target, {cm->first, cm->second, 0}}};
                            out.delta[{n + q, sv}] = {
                                {Rational(1), endTarget(target), {cm->first, cm->second, 0}}};
                        } else {
                            out.delta[{q, sv}] = {{Rational(1), rej, {0, 0, 0}}};
                            out.delta[{n + q, sv}] = {{Rational(1), rej, {0, 0, 0}}};
                        }
                        continue;
                    }
                    auto it = m.delta.find({q, s2});
                    if (it == m.delta.end()) continue;
                    std::vector<PkfaBranch> bs;
                    for (const auto& b : it->second) {
                        auto cm = counterMoves(b.update, s0, s1);
                        if (!cm) {
                            bs.push_back({b.prob, rej, {0, 0, 0}});
                            continue;
                        }
                        int hi = s2 == kDollar ? 0 : 1;
                        int target = s2 == kDollar ? endTarget(b.target) : b.target;
                        bs.push_back({b.prob, target, {cm->first, cm->second, hi}});
                    }
                    out.delta[{q, sv}] = std::move(bs);
                }
                // Race: both counter heads advance until they read $ together.
                std::vector<PkfaBranch> rb;
                if (s0 == kDollar && s1 == kDollar) rb.push_back({Rational(1), acc, {0, 0, 0}});
                else if (s0 == kDollar || s1 == kDollar) rb.push_back({Rational(1), rej, {0, 0, 0}});
                else rb.push_back({Rational(1), race, {1, 1, 0}});
                out.delta[{race, sv}] = std::move(rb);
            }
    out.validate();
    return out;
}

namespace {

// Execution order for comparing `pairs` (ascending block-pair indices) with
// k one-way heads: the k-1 outermost pairs are left-read by the first head
// after the remaining C(k-1,2) pairs are settled recursively by the others.
void schedule_rec(const std::vector<int>& pairs, const std::vector<int>& heads,
                  std::vector<std::tuple<int, int, int>>& out) {
    if (pairs.size() == 1) {
        out.emplace_back(pairs[0], heads[0], heads[1]);
        return;
    }
    size_t k = heads.size();
    std::vector<int> inner(pairs.begin() + static_cast<long>(k) - 1, pairs.end());
    std::vector<int> innerHeads(heads.begin() + 1, heads.end());
    schedule_rec(inner, innerHeads, out);
    for (size_t i = 0; i + 1 < k; ++i) out.emplace_back(pairs[i], heads[0], heads[1 + i]);
}

struct CompCtl {
    int kind = 0; // 0 seekL, 1 seekR, 2 cmp, 3 count
    int comp = 0;
    int rem = 0;
    auto key() const { return std::tuple(kind, comp, rem); }
    bool operator<(const CompCtl& o) const { return key() < o.key(); }
};

} // namespace

Pkfa build_pair_comparator(int totalPairs, const std::vector<int>& pairs, int k) {
    if (k < 2) throw ConstructionError("comparator: needs at least two heads");
    long want = static_cast<long>(k) * (k - 1) / 2;
    if (static_cast<long>(pairs.size()) != want)
        throw ConstructionError("comparator: pair count must equal C(k,2)");
    for (int p : pairs)
        if (p < 1 || p > totalPairs) throw ConstructionError("comparator: pair index out of range");
    std::vector<int> sorted = pairs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> headIds(static_cast<size_t>(k));
    for (int h = 0; h < k; ++h) headIds[static_cast<size_t>(h)] = h;
    std::vector<std::tuple<int, int, int>> sched;
    schedule_rec(sorted, headIds, sched);

    const int totalBlocks = 2 * totalPairs;
    const int requiredCs = totalBlocks - 1;
    // c-counts per head at each schedule point are fixed by the schedule.
    std::vector<std::vector<int>> cntsAt(sched.size() + 1, std::vector<int>(static_cast<size_t>(k), 0));
    for (size_t s = 0; s < sched.size(); ++s) {
        auto [p, hl, hr] = sched[s];
        cntsAt[s + 1] = cntsAt[s];
        cntsAt[s + 1][static_cast<size_t>(hl)] = p - 1;
        cntsAt[s + 1][static_cast<size_t>(hr)] = totalBlocks - p;
    }
    auto seekLrem = [&](size_t s) {
        auto [p, hl, hr] = sched[s];
        int rem = (p - 1) - cntsAt[s][static_cast<size_t>(hl)];
        if (rem < 0) throw ConstructionError("comparator: infeasible schedule (left)");
        return rem;
    };
    auto seekRrem = [&](size_t s) {
        auto [p, hl, hr] = sched[s];
        int rem = (totalBlocks - p) - cntsAt[s][static_cast<size_t>(hr)];
        if (rem < 0) throw ConstructionError("comparator: infeasible schedule (right)");
        return rem;
    };

    Pkfa out;
    out.name = "cmp";
    out.heads = k;
    out.alphabet = Alphabet({"a", "b", "c"});
    const int kSep = 2, kCent = out.cent(), kDollar = out.dollar();
    std::map<CompCtl, int> index;
    std::vector<CompCtl> order;
    auto intern = [&](const CompCtl& c) {
        auto [it, inserted] = index.try_emplace(c, static_cast<int>(out.states.size()));
        if (inserted) {
            order.push_back(c);
            const char* kindName[] = {"seekL", "seekR", "cmp", "count"};
            std::string name = kindName[c.kind];
            if (c.kind != 3) name += "#" + std::to_string(c.comp);
            if (c.kind == 0 || c.kind == 1 || c.kind == 3) name += ".r" + std::to_string(c.rem);
            out.states.push_back(name);
        }
        return it->second;
    };
    CompCtl start{0, 0, seekLrem(0)};
    out.initial = intern(start);
    int acc = -1, rej = -1;
    auto terminal = [&](Verdict v) {
        int& slot = v == Verdict::Accept ? acc : rej;
        if (slot < 0) {
            slot = static_cast<int>(out.states.size());
            out.states.push_back(v == Verdict::Accept ? "acc" : "rej");
            out.verdict[slot] = v;
        }
        return slot;
    };
    auto afterCmp = [&](size_t s) -> CompCtl {
        // Control state following a finished comparison.
        if (s + 1 < sched.size()) return CompCtl{0, static_cast<int>(s) + 1, seekLrem(s + 1)};
        int rem = requiredCs - cntsAt[sched.size()][0];
        if (rem < 0) throw ConstructionError("comparator: infeasible schedule (count)");
        return CompCtl{3, 0, rem};
    };

    std::vector<int> tapeSyms{0, 1, kSep, kCent, kDollar};
    for (size_t done = 0; done < order.size(); ++done) {
        CompCtl c = order[done];
        int self = index.at(c);
        auto addAll = [&](const std::function<std::pair<int, std::vector<int>>(const std::vector<int>&)>& f) {
            std::vector<int> sv(static_cast<size_t>(k));
            std::function<void(int)> rec = [&](int h) {
                if (h == k) {
                    auto [target, moves] = f(sv);
                    out.delta[{self, sv}] = {{Rational(1), target, moves}};
                    return;
                }
                for (int s : tapeSyms) {
                    sv[static_cast<size_t>(h)] = s;
                    rec(h + 1);
                }
            };
            rec(0);
        };
        std::vector<int> stay(static_cast<size_t>(k), 0);
        if (c.kind == 0 || c.kind == 1) {
            size_t s = static_cast<size_t>(c.comp);
            auto [p, hl, hr] = sched[s];
            int head = c.kind == 0 ? hl : hr;
            addAll([&](const std::vector<int>& sv) -> std::pair<int, std::vector<int>> {
                int sym = sv[static_cast<size_t>(head)];
                std::vector<int> mv = stay;
                auto exitCtl = [&]() {
                    return c.kind == 0 ? CompCtl{1, c.comp, seekRrem(s)}
                                       : CompCtl{2, c.comp, 0};
                };
                if (sym == kCent) {
                    mv[static_cast<size_t>(head)] = 1;
                    return {self, mv};
                }
                if (sym == kDollar)
                    return {c.rem == 0 ? intern(exitCtl()) : terminal(Verdict::Reject), stay};
                if (sym == kSep) {
                    if (c.rem == 0) return {intern(exitCtl()), stay}; // empty block boundary
                    mv[static_cast<size_t>(head)] = 1;
                    if (c.rem == 1) return {intern(exitCtl()), mv}; // consumed the last separator
                    CompCtl nextCtl = c;
                    --nextCtl.rem;
                    return {intern(nextCtl), mv};
                }
                // letter
                if (c.rem == 0) return {intern(exitCtl()), stay};
                mv[static_cast<size_t>(head)] = 1;
                return {self, mv};
            });
        } else if (c.kind == 2) {
            size_t s = static_cast<size_t>(c.comp);
            auto [p, hl, hr] = sched[s];
            addAll([&](const std::vector<int>& sv) -> std::pair<int, std::vector<int>> {
                int x = sv[static_cast<size_t>(hl)], y = sv[static_cast<size_t>(hr)];
                bool xb = x == kSep || x == kDollar, yb = y == kSep || y == kDollar;
                if (xb && yb) return {intern(afterCmp(s)), stay};
                if (xb || yb || x == kCent || y == kCent || x != y)
                    return {terminal(Verdict::Reject), stay};
                std::vector<int> mv = stay;
                mv[static_cast<size_t>(hl)] = 1;
                mv[static_cast<size_t>(hr)] = 1;
                return {self, mv};
            });
        } else {
            addAll([&](const std::vector<int>& sv) -> std::pair<int, std::vector<int>> {
                int sym = sv[0];
                std::vector<int> mv = stay;
                if (sym == kDollar)
                    return {c.rem == 0 ? terminal(Verdict::Accept) : terminal(Verdict::Reject), stay};
                if (sym == kSep) {
                    if (c.rem == 0) return {terminal(Verdict::Reject), stay};
                    mv[0] = 1;
                    CompCtl nextCtl = c;
                    --nextCtl.rem;
                    return {intern(nextCtl), mv};
                }
                mv[0] = 1;
                return {self, mv};
            });
        }
    }
    out.validate();
    return out;
}

namespace {

// Copy src into dst with renamed states; returns the index of src's initial.
int embed_pkfa(Pkfa& dst, const Pkfa& src, const std::string& prefix) {
    int base = static_cast<int>(dst.states.size());
    for (const auto& s : src.states) dst.states.push_back(prefix + s);
    for (const auto& [q, v] : src.verdict) dst.verdict[base + q] = v;
    for (const auto& [key, branches] : src.delta) {
        auto& bs = dst.delta[{base + key.first, key.second}];
        for (const auto& b : branches) bs.push_back({b.prob, base + b.target, b.moves});
    }
    return base + src.initial;
}

} // namespace

Pkfa build_twin_dkfa(int k) {
    if (k < 2) throw ConstructionError("twin_dkfa: k must be >= 2");
    int t = k * (k - 1) / 2;
    std::vector<int> pairs;
    for (int p = 1; p <= t; ++p) pairs.push_back(p);
    Pkfa m = build_pair_comparator(t, pairs, k);
    m.name = "twin_dkfa_k" + std::to_string(k);
    return m;
}

Pkfa build_twin_pkfa(int k) {
    if (k < 2) throw ConstructionError("twin_pkfa: k must be >= 2");
    int t = k * (k - 1) / 2;
    int T = 2 * t;
    std::vector<int> firstHalf, secondHalf;
    for (int p = 1; p <= t; ++p) firstHalf.push_back(p);
    for (int p = t + 1; p <= T; ++p) secondHalf.push_back(p);
    Pkfa out;
    out.name = "twin_pkfa_k" + std::to_string(k);
    out.heads = k;
    out.alphabet = Alphabet({"a", "b", "c"});
    out.states.push_back("start");
    out.initial = 0;
    int b1 = embed_pkfa(out, build_pair_comparator(T, firstHalf, k), "b1.");
    int b2 = embed_pkfa(out, build_pair_comparator(T, secondHalf, k), "b2.");
    std::vector<int> allCent(static_cast<size_t>(k), out.cent());
    std::vector<int> stay(static_cast<size_t>(k), 0);
    out.delta[{0, allCent}] = {{Rational(1, 2), b1, stay}, {Rational(1, 2), b2, stay}};
    out.validate();
    return out;
}

Pkfa build_twin_p2fa(int t) {
    if (t < 1) throw ConstructionError("twin_p2fa: t must be >= 1");
    Pkfa out;
    out.name = "twin_p2fa_t" + std::to_string(t);
    out.heads = 2;
    out.alphabet = Alphabet({"a", "b", "c"});
    out.states.push_back("start");
    out.initial = 0;
    std::vector<PkfaBranch> split;
    for (int i = 1; i <= t; ++i) {
        int init = embed_pkfa(out, build_pair_comparator(t, {i}, 2), "c" + std::to_string(i) + ".");
        split.push_back({Rational(1, t), init, {0, 0}});
    }
    std::vector<int> allCent{out.cent(), out.cent()};
    out.delta[{0, allCent}] = std::move(split);
    out.validate();
    return out;
}

} // namespace qalab
