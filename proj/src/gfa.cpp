#include "qalab/gfa.hpp"

namespace qalab {

void Gfa::validate() const {
    if (stateCount <= 0) throw ConstructionError("gfa: no states");
    if (alphabet.size() == 0) throw ConstructionError("gfa: empty alphabet");
    if (transitions.size() != alphabet.size())
        throw ConstructionError("gfa: one transition matrix per symbol required");
    auto checkIndex = [&](int i) {
        if (i < 0 || i >= stateCount) throw ConstructionError("gfa: state index out of range");
    };
    for (const auto& m : transitions)
        for (const auto& [source, col] : m.columns()) {
            checkIndex(source);
            for (const auto& [target, v] : col) checkIndex(target);
        }
    for (const auto& [k, v] : initial.entries()) checkIndex(k);
    for (const auto& [k, v] : final.entries()) checkIndex(k);
}

Rational gfa_value(const Gfa& g, const std::vector<int>& word) {
    SparseVec<int, Rational> v = g.initial;
    for (size_t i = 0; i < word.size(); ++i) {
        int sym = word[i];
        if (sym < 0 || sym >= static_cast<int>(g.alphabet.size()))
            throw InputError("gfa: symbol at position " + std::to_string(i + 1) +
                             " is not in the alphabet");
        v = mul(g.transitions[static_cast<size_t>(sym)], v);
    }
    Rational out(0);
    for (const auto& [state, coeff] : v.entries()) out += g.final.get(state) * coeff;
    return out;
}

Rational gfa_value(const Gfa& g, const std::string& w) {
    return gfa_value(g, g.alphabet.tokenize(w));
}

bool nqal_decide(const Gfa& g, const std::vector<int>& word) {
    return gfa_value(g, word).sign() > 0;
}

Gfa gfa_tensor(const Gfa& a, const Gfa& b) {
    if (a.alphabet.symbols() != b.alphabet.symbols())
        throw ConstructionError("gfa tensor: alphabets differ");
    Gfa out;
    out.name = a.name + "*" + b.name;
    out.stateCount = a.stateCount * b.stateCount;
    out.alphabet = a.alphabet;
    auto compose = [&](int ia, int ib) { return ia * b.stateCount + ib; };
    out.transitions.resize(a.alphabet.size());
    for (size_t s = 0; s < a.alphabet.size(); ++s)
        for (const auto& [sa, colA] : a.transitions[s].columns())
            for (const auto& [sb, colB] : b.transitions[s].columns())
                for (const auto& [ta, va] : colA)
                    for (const auto& [tb, vb] : colB)
                        out.transitions[s].add(compose(ta, tb), compose(sa, sb), va * vb);
    for (const auto& [ka, va] : a.initial.entries())
        for (const auto& [kb, vb] : b.initial.entries())
            out.initial.add(compose(ka, kb), va * vb);
    for (const auto& [ka, va] : a.final.entries())
        for (const auto& [kb, vb] : b.final.entries())
            out.final.add(compose(ka, kb), va * vb);
    return out;
}

Gfa build_diff_gfa(const std::string& plus, const std::string& minus, const Alphabet& alphabet) {
    if (plus == minus) throw ConstructionError("diff gfa: plus and minus symbols coincide");
    int ip = alphabet.index_of(plus), im = alphabet.index_of(minus);
    if (ip < 0 || im < 0) throw ConstructionError("diff gfa: symbol not in alphabet");
    Gfa g;
    g.name = "diff_" + plus + "_" + minus;
    g.stateCount = 2;
    g.alphabet = alphabet;
    g.transitions.resize(alphabet.size());
    for (size_t s = 0; s < alphabet.size(); ++s) {
        auto& m = g.transitions[s];
        m.add(0, 0, Rational(1));
        m.add(1, 1, Rational(1));
        if (static_cast<int>(s) == ip) m.add(0, 1, Rational(1));
        if (static_cast<int>(s) == im) m.add(0, 1, Rational(-1));
    }
    g.initial.set(1, Rational(1)); // v0 = (0 1)^T
    g.final.set(0, Rational(1));   // f  = (1 0)
    return g;
}

Gfa build_form_gfa(const std::vector<std::string>& blocks, const Alphabet& alphabet) {
    if (blocks.empty()) throw ConstructionError("form gfa: no blocks");
    std::vector<int> idx;
    for (const auto& b : blocks) {
        int i = alphabet.index_of(b);
        if (i < 0) throw ConstructionError("form gfa: block symbol '" + b + "' not in alphabet");
        idx.push_back(i);
    }
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (idx[i] == idx[j]) throw ConstructionError("form gfa: repeated block symbol");
    const int m = static_cast<int>(blocks.size());
    Gfa g;
    g.name = "form";
    g.stateCount = m + 1;
    g.alphabet = alphabet;
    g.transitions.resize(alphabet.size());
    // State i means "inside block i" (state 0: nothing read). Block symbol i
    // advances state i-1 and keeps state i; everything else kills the value.
    for (int b = 0; b < m; ++b) {
        auto& t = g.transitions[static_cast<size_t>(idx[static_cast<size_t>(b)])];
        t.add(b + 1, b, Rational(1));
        t.add(b + 1, b + 1, Rational(1));
    }
    g.initial.set(0, Rational(1));
    g.final.set(m, Rational(1));
    return g;
}

Gfa build_lijk_gfa() {
    Alphabet abc({"a", "b", "c"});
    Gfa form = build_form_gfa({"a", "b", "c"}, abc);
    Gfa ab = build_diff_gfa("a", "b", abc);
    Gfa ac = build_diff_gfa("a", "c", abc);
    Gfa bc = build_diff_gfa("b", "c", abc);
    Gfa g = gfa_tensor(form, gfa_tensor(ab, ab));
    g = gfa_tensor(g, gfa_tensor(ac, ac));
    g = gfa_tensor(g, gfa_tensor(bc, bc));
    g.name = "lijk";
    return g;
}

Gfa build_neq_gfa(int t) {
    if (t < 1) throw ConstructionError("neq gfa: t must be >= 1");
    std::vector<std::string> syms;
    for (int i = 1; i <= t; ++i) {
        syms.push_back("a" + std::to_string(i));
        syms.push_back("b" + std::to_string(i));
    }
    // Declared order matches the language alphabet rendering a1..at, b1..bt.
    std::vector<std::string> ordered;
    for (int i = 1; i <= t; ++i) ordered.push_back("a" + std::to_string(i));
    for (int i = 1; i <= t; ++i) ordered.push_back("b" + std::to_string(i));
    Alphabet alphabet(ordered);
    Gfa g;
    bool haveG = false;
    for (int i = 1; i <= t; ++i) {
        Gfa d = build_diff_gfa("a" + std::to_string(i), "b" + std::to_string(i), alphabet);
        Gfa sq = gfa_tensor(d, d);
        g = haveG ? gfa_tensor(g, sq) : sq;
        haveG = true;
    }
    g.name = "neq" + std::to_string(t);
    return g;
}

namespace {

void sweep_rec(const Gfa& g, int maxLen, std::vector<int>& word, const SparseVec<int, Rational>& v,
               const std::function<void(const std::vector<int>&, const Rational&)>& fn) {
    Rational out(0);
    for (const auto& [state, coeff] : v.entries()) out += g.final.get(state) * coeff;
    fn(word, out);
    if (static_cast<int>(word.size()) == maxLen) return;
    for (size_t s = 0; s < g.alphabet.size(); ++s) {
        word.push_back(static_cast<int>(s));
        sweep_rec(g, maxLen, word, mul(g.transitions[s], v), fn);
        word.pop_back();
    }
}

} // namespace

void sweep_gfa_values(const Gfa& g, int maxLen,
                      const std::function<void(const std::vector<int>&, const Rational&)>& fn) {
    std::vector<int> word;
    sweep_rec(g, maxLen, word, g.initial, fn);
}

} // namespace qalab
