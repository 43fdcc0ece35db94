#include "qalab/machine_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qalab {

using json = nlohmann::ordered_json;

namespace {

json amp_to_json(const AmpExpr& a) {
    json j;
    j["coef"] = a.coef.str();
    if (!a.is_default_root()) j["root"] = a.root;
    if (!a.is_default_phase()) j["phase"] = a.phase.str();
    return j;
}

AmpExpr amp_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("machine file: amplitude must be an object");
    Rational coef = j.contains("coef") ? Rational::parse(j.at("coef").get<std::string>()) : Rational(1);
    long root = j.contains("root") ? j.at("root").get<long>() : 1;
    Rational phase = j.contains("phase") ? Rational::parse(j.at("phase").get<std::string>()) : Rational(0);
    return AmpExpr(coef, root, phase);
}

// Tape symbols render as the symbol string; end-markers as "^" and "$".
std::string tape_sym_name(const Alphabet& a, int sym) {
    if (sym == static_cast<int>(a.size())) return "^";
    if (sym == static_cast<int>(a.size()) + 1) return "$";
    return a.symbol(sym);
}

int tape_sym_index(const Alphabet& a, const std::string& name) {
    if (name == "^") return static_cast<int>(a.size());
    if (name == "$") return static_cast<int>(a.size()) + 1;
    int i = a.index_of(name);
    if (i < 0) throw ParseError("machine file: unknown symbol '" + name + "'");
    return i;
}

Alphabet alphabet_from_json(const json& j) {
    std::vector<std::string> syms;
    for (const auto& s : j.at("alphabet")) syms.push_back(s.get<std::string>());
    return Alphabet(syms);
}

json alphabet_to_json(const Alphabet& a) {
    json arr = json::array();
    for (const auto& s : a.symbols()) arr.push_back(s);
    return arr;
}

std::map<std::string, int> name_index(const std::vector<std::string>& names, const char* what) {
    std::map<std::string, int> idx;
    for (size_t i = 0; i < names.size(); ++i)
        if (!idx.emplace(names[i], static_cast<int>(i)).second)
            throw ParseError(std::string("machine file: duplicate ") + what + " '" + names[i] + "'");
    return idx;
}

json sparse_vec_to_json(const SparseVec<int, Rational>& v) {
    json arr = json::array();
    for (const auto& [state, value] : v.entries())
        arr.push_back(json{{"state", state}, {"value", value.str()}});
    return arr;
}

SparseVec<int, Rational> sparse_vec_from_json(const json& j) {
    SparseVec<int, Rational> v;
    for (const auto& e : j)
        v.add(e.at("state").get<int>(), Rational::parse(e.at("value").get<std::string>()));
    return v;
}

// --- GFA ----------------------------------------------------------------

json gfa_to_json(const Gfa& g) {
    json j;
    j["kind"] = "gfa";
    j["name"] = g.name;
    j["alphabet"] = alphabet_to_json(g.alphabet);
    j["states"] = g.stateCount;
    j["initial"] = sparse_vec_to_json(g.initial);
    j["final"] = sparse_vec_to_json(g.final);
    json trans = json::array();
    for (size_t s = 0; s < g.alphabet.size(); ++s)
        for (const auto& [source, col] : g.transitions[s].columns())
            for (const auto& [target, value] : col)
                trans.push_back(json{{"symbol", g.alphabet.symbol(static_cast<int>(s))},
                                     {"from", source},
                                     {"to", target},
                                     {"value", value.str()}});
    j["transitions"] = std::move(trans);
    return j;
}

Gfa gfa_from_json(const json& j) {
    Gfa g;
    g.name = j.value("name", "");
    g.alphabet = alphabet_from_json(j);
    g.stateCount = j.at("states").get<int>();
    g.initial = sparse_vec_from_json(j.at("initial"));
    g.final = sparse_vec_from_json(j.at("final"));
    g.transitions.resize(g.alphabet.size());
    for (const auto& e : j.at("transitions")) {
        int sym = g.alphabet.index_of(e.at("symbol").get<std::string>());
        if (sym < 0) throw ParseError("machine file: gfa transition on unknown symbol");
        g.transitions[static_cast<size_t>(sym)].add(e.at("to").get<int>(), e.at("from").get<int>(),
                                                    Rational::parse(e.at("value").get<std::string>()));
    }
    g.validate();
    return g;
}

// --- DBCA / NBCA ----------------------------------------------------------

json update_to_json(const std::vector<int>& u) {
    json arr = json::array();
    for (int x : u) arr.push_back(x);
    return arr;
}

std::vector<int> update_from_json(const json& j) {
    std::vector<int> u;
    for (const auto& x : j) u.push_back(x.get<int>());
    return u;
}

json dbca_to_json(const Dbca& m) {
    json j;
    j["kind"] = "dbca";
    j["name"] = m.name;
    j["alphabet"] = alphabet_to_json(m.alphabet);
    j["counters"] = m.counters;
    j["max_update"] = m.maxUpdate;
    json states = json::array();
    for (size_t q = 0; q < m.states.size(); ++q) {
        json s{{"name", m.states[q]}};
        if (m.is_accepting(static_cast<int>(q))) s["accepting"] = true;
        states.push_back(std::move(s));
    }
    j["states"] = std::move(states);
    j["initial"] = m.states.at(0);
    json trans = json::array();
    for (const auto& [key, arc] : m.delta)
        trans.push_back(json{{"from", m.states[static_cast<size_t>(key.first)]},
                             {"symbol", tape_sym_name(m.alphabet, key.second)},
                             {"to", m.states[static_cast<size_t>(arc.target)]},
                             {"update", update_to_json(arc.update)}});
    j["transitions"] = std::move(trans);
    if (!m.silent.empty()) {
        json silent = json::array();
        for (const auto& [q, arc] : m.silent)
            silent.push_back(json{{"from", m.states[static_cast<size_t>(q)]},
                                  {"to", m.states[static_cast<size_t>(arc.target)]},
                                  {"update", update_to_json(arc.update)}});
        j["silent"] = std::move(silent);
    }
    return j;
}

Dbca dbca_from_json(const json& j) {
    Dbca m;
    m.name = j.value("name", "");
    m.alphabet = alphabet_from_json(j);
    m.counters = j.at("counters").get<int>();
    m.maxUpdate = j.at("max_update").get<int>();
    for (const auto& s : j.at("states")) m.states.push_back(s.at("name").get<std::string>());
    auto idx = name_index(m.states, "state");
    if (idx.at(j.at("initial").get<std::string>()) != 0)
        throw ParseError("machine file: initial state must be listed first");
    for (size_t q = 0; q < m.states.size(); ++q)
        if (j.at("states")[q].value("accepting", false)) m.accepting.push_back(static_cast<int>(q));
    for (const auto& e : j.at("transitions"))
        m.delta[{idx.at(e.at("from").get<std::string>()),
                 tape_sym_index(m.alphabet, e.at("symbol").get<std::string>())}] =
            DbcaArc{idx.at(e.at("to").get<std::string>()), update_from_json(e.at("update"))};
    if (j.contains("silent"))
        for (const auto& e : j.at("silent"))
            m.silent[idx.at(e.at("from").get<std::string>())] =
                DbcaArc{idx.at(e.at("to").get<std::string>()), update_from_json(e.at("update"))};
    m.validate();
    return m;
}

json nbca_to_json(const Nbca& m) {
    json j;
    j["kind"] = "nbca";
    j["name"] = m.name;
    j["alphabet"] = alphabet_to_json(m.alphabet);
    j["max_update"] = m.maxUpdate;
    json states = json::array();
    for (size_t q = 0; q < m.states.size(); ++q) {
        json s{{"name", m.states[q]}};
        if (m.is_accepting(static_cast<int>(q))) s["accepting"] = true;
        states.push_back(std::move(s));
    }
    j["states"] = std::move(states);
    j["initial"] = m.states.at(0);
    json trans = json::array();
    for (const auto& [key, choices] : m.delta) {
        json cs = json::array();
        for (const auto& c : choices)
            cs.push_back(json{{"to", m.states[static_cast<size_t>(c.target)]}, {"update", c.update}});
        trans.push_back(json{{"from", m.states[static_cast<size_t>(key.first)]},
                             {"symbol", tape_sym_name(m.alphabet, key.second)},
                             {"choices", std::move(cs)}});
    }
    j["transitions"] = std::move(trans);
    return j;
}

Nbca nbca_from_json(const json& j) {
    Nbca m;
    m.name = j.value("name", "");
    m.alphabet = alphabet_from_json(j);
    m.maxUpdate = j.at("max_update").get<int>();
    for (const auto& s : j.at("states")) m.states.push_back(s.at("name").get<std::string>());
    auto idx = name_index(m.states, "state");
    if (idx.at(j.at("initial").get<std::string>()) != 0)
        throw ParseError("machine file: initial state must be listed first");
    for (size_t q = 0; q < m.states.size(); ++q)
        if (j.at("states")[q].value("accepting", false)) m.accepting.push_back(static_cast<int>(q));
    for (const auto& e : j.at("transitions")) {
        auto& choices = m.delta[{idx.at(e.at("from").get<std::string>()),
                                 tape_sym_index(m.alphabet, e.at("symbol").get<std::string>())}];
        for (const auto& c : e.at("choices"))
            choices.push_back(NbcaChoice{idx.at(c.at("to").get<std::string>()), c.at("update").get<int>()});
    }
    m.validate();
    return m;
}

// --- PBCA -----------------------------------------------------------------

json pbca_to_json(const Pbca& m) {
    json j;
    j["kind"] = "pbca";
    j["name"] = m.name;
    j["alphabet"] = alphabet_to_json(m.alphabet);
    j["max_update"] = m.maxUpdate;
    json states = json::array();
    for (size_t q = 0; q < m.states.size(); ++q) {
        json s{{"name", m.states[q]}};
        if (m.is_accepting(static_cast<int>(q))) s["accepting"] = true;
        states.push_back(std::move(s));
    }
    j["states"] = std::move(states);
    j["initial"] = m.states.at(0);
    json trans = json::array();
    for (const auto& [key, branches] : m.delta) {
        json bs = json::array();
        for (const auto& b : branches)
            bs.push_back(json{{"prob", b.prob.str()},
                              {"to", m.states[static_cast<size_t>(b.target)]},
                              {"update", b.update}});
        trans.push_back(json{{"from", m.states[static_cast<size_t>(key.first)]},
                             {"symbol", tape_sym_name(m.alphabet, key.second)},
                             {"branches", std::move(bs)}});
    }
    j["transitions"] = std::move(trans);
    if (!m.silent.empty()) {
        json silent = json::array();
        for (const auto& [q, arc] : m.silent)
            silent.push_back(json{{"from", m.states[static_cast<size_t>(q)]},
                                  {"to", m.states[static_cast<size_t>(arc.first)]},
                                  {"update", arc.second}});
        j["silent"] = std::move(silent);
    }
    return j;
}

Pbca pbca_from_json(const json& j) {
    Pbca m;
    m.name = j.value("name", "");
    m.alphabet = alphabet_from_json(j);
    m.maxUpdate = j.at("max_update").get<int>();
    for (const auto& s : j.at("states")) m.states.push_back(s.at("name").get<std::string>());
    auto idx = name_index(m.states, "state");
    if (idx.at(j.at("initial").get<std::string>()) != 0)
        throw ParseError("machine file: initial state must be listed first");
    for (size_t q = 0; q < m.states.size(); ++q)
        if (j.at("states")[q].value("accepting", false)) m.accepting.push_back(static_cast<int>(q));
    for (const auto& e : j.at("transitions")) {
        auto& branches = m.delta[{idx.at(e.at("from").get<std::string>()),
                                  tape_sym_index(m.alphabet, e.at("symbol").get<std::string>())}];
        for (const auto& b : e.at("branches"))
            branches.push_back(PbcaBranch{Rational::parse(b.at("prob").get<std::string>()),
                                          idx.at(b.at("to").get<std::string>()),
                                          b.at("update").get<int>()});
    }
    if (j.contains("silent"))
        for (const auto& e : j.at("silent"))
            m.silent[idx.at(e.at("from").get<std::string>())] = {
                idx.at(e.at("to").get<std::string>()), e.at("update").get<int>()};
    m.validate();
    return m;
}

// --- PKFA -----------------------------------------------------------------

json pkfa_to_json(const Pkfa& m) {
    json j;
    j["kind"] = "pkfa";
    j["name"] = m.name;
    j["alphabet"] = alphabet_to_json(m.alphabet);
    j["heads"] = m.heads;
    json states = json::array();
    for (size_t q = 0; q < m.states.size(); ++q) {
        json s{{"name", m.states[q]}};
        auto v = m.verdict.find(static_cast<int>(q));
        if (v != m.verdict.end()) s["verdict"] = v->second == Verdict::Accept ? "accept" : "reject";
        states.push_back(std::move(s));
    }
    j["states"] = std::move(states);
    j["initial"] = m.states.at(static_cast<size_t>(m.initial));
    json trans = json::array();
    for (const auto& [key, branches] : m.delta) {
        json syms = json::array();
        for (int s : key.second) syms.push_back(tape_sym_name(m.alphabet, s));
        json bs = json::array();
        for (const auto& b : branches) {
            json moves = json::array();
            for (int mv : b.moves) moves.push_back(mv);
            bs.push_back(json{{"prob", b.prob.str()},
                              {"to", m.states[static_cast<size_t>(b.target)]},
                              {"moves", std::move(moves)}});
        }
        trans.push_back(json{{"from", m.states[static_cast<size_t>(key.first)]},
                             {"symbols", std::move(syms)},
                             {"branches", std::move(bs)}});
    }
    j["transitions"] = std::move(trans);
    return j;
}

Pkfa pkfa_from_json(const json& j) {
    Pkfa m;
    m.name = j.value("name", "");
    m.alphabet = alphabet_from_json(j);
    m.heads = j.at("heads").get<int>();
    for (const auto& s : j.at("states")) m.states.push_back(s.at("name").get<std::string>());
    auto idx = name_index(m.states, "state");
    m.initial = idx.at(j.at("initial").get<std::string>());
    for (size_t q = 0; q < m.states.size(); ++q) {
        const auto& s = j.at("states")[q];
        if (s.contains("verdict"))
            m.verdict[static_cast<int>(q)] =
                s.at("verdict").get<std::string>() == "accept" ? Verdict::Accept : Verdict::Reject;
    }
    for (const auto& e : j.at("transitions")) {
        std::vector<int> sv;
        for (const auto& s : e.at("symbols")) sv.push_back(tape_sym_index(m.alphabet, s.get<std::string>()));
        auto& branches = m.delta[{idx.at(e.at("from").get<std::string>()), sv}];
        for (const auto& b : e.at("branches")) {
            std::vector<int> moves;
            for (const auto& mv : b.at("moves")) moves.push_back(mv.get<int>());
            branches.push_back(PkfaBranch{Rational::parse(b.at("prob").get<std::string>()),
                                          idx.at(b.at("to").get<std::string>()), std::move(moves)});
        }
    }
    m.validate();
    return m;
}

// --- Quantum machines -------------------------------------------------------

json qspec_to_json(const QMachineSpec& m) {
    json j;
    j["kind"] = m.mode == QMode::OneWay ? "qfa_oneway" : "qbca_realtime";
    j["name"] = m.name;
    j["alphabet"] = alphabet_to_json(m.alphabet);
    if (m.mode == QMode::Realtime) {
        j["counters"] = m.counters;
        j["max_update"] = m.maxUpdate;
    }
    json states = json::array();
    for (size_t q = 0; q < m.states.size(); ++q) {
        json s{{"name", m.states[q]}};
        if (m.mode == QMode::OneWay)
            s["move"] = m.moves[q] == Move::Right ? "right" : "stay";
        else if (m.is_accepting(static_cast<int>(q)))
            s["accepting"] = true;
        states.push_back(std::move(s));
    }
    j["states"] = std::move(states);
    j["initial"] = m.states.at(static_cast<size_t>(m.initial));
    json reg;
    json regSyms = json::array();
    for (const auto& s : m.regSymbols) regSyms.push_back(s);
    reg["symbols"] = std::move(regSyms);
    if (m.mode == QMode::OneWay) {
        json acc = json::array(), rej = json::array();
        for (size_t i = 0; i < m.regSymbols.size(); ++i) {
            if (m.regClass[i] == RegClass::Accept) acc.push_back(m.regSymbols[i]);
            if (m.regClass[i] == RegClass::Reject) rej.push_back(m.regSymbols[i]);
        }
        reg["accept"] = std::move(acc);
        reg["reject"] = std::move(rej);
    }
    j["register"] = std::move(reg);
    json trans = json::array();
    for (const auto& [key, list] : m.delta) {
        json bs = json::array();
        for (const auto& t : list) {
            json b;
            b["amp"] = amp_to_json(t.amp);
            b["to"] = m.states[static_cast<size_t>(t.target)];
            if (m.mode == QMode::Realtime) b["update"] = update_to_json(t.update);
            b["reg"] = m.regSymbols[static_cast<size_t>(t.reg)];
            bs.push_back(std::move(b));
        }
        trans.push_back(json{{"from", m.states[static_cast<size_t>(key.first)]},
                             {"symbol", tape_sym_name(m.alphabet, key.second)},
                             {"branches", std::move(bs)}});
    }
    j["transitions"] = std::move(trans);
    return j;
}

QMachineSpec qspec_from_json(const json& j, QMode mode) {
    QMachineSpec m;
    m.mode = mode;
    m.name = j.value("name", "");
    m.alphabet = alphabet_from_json(j);
    if (mode == QMode::Realtime) {
        m.counters = j.at("counters").get<int>();
        m.maxUpdate = j.at("max_update").get<int>();
    }
    for (const auto& s : j.at("states")) {
        Move mv = Move::Stay;
        if (mode == QMode::OneWay && s.value("move", "stay") == "right") mv = Move::Right;
        m.add_state(s.at("name").get<std::string>(), mv);
    }
    auto idx = name_index(m.states, "state");
    m.initial = idx.at(j.at("initial").get<std::string>());
    if (mode == QMode::Realtime)
        for (size_t q = 0; q < m.states.size(); ++q)
            if (j.at("states")[q].value("accepting", false)) m.accepting.push_back(static_cast<int>(q));
    const json& reg = j.at("register");
    for (const auto& s : reg.at("symbols")) m.add_reg(s.get<std::string>());
    auto regIdx = name_index(m.regSymbols, "register symbol");
    if (mode == QMode::OneWay) {
        for (const auto& s : reg.value("accept", json::array()))
            m.regClass[static_cast<size_t>(regIdx.at(s.get<std::string>()))] = RegClass::Accept;
        for (const auto& s : reg.value("reject", json::array()))
            m.regClass[static_cast<size_t>(regIdx.at(s.get<std::string>()))] = RegClass::Reject;
    }
    for (const auto& e : j.at("transitions")) {
        int from = idx.at(e.at("from").get<std::string>());
        int sym = tape_sym_index(m.alphabet, e.at("symbol").get<std::string>());
        for (const auto& b : e.at("branches")) {
            QTrans t;
            t.amp = amp_from_json(b.at("amp"));
            t.target = idx.at(b.at("to").get<std::string>());
            if (mode == QMode::Realtime) t.update = update_from_json(b.at("update"));
            t.reg = regIdx.at(b.at("reg").get<std::string>());
            m.add(from, sym, std::move(t));
        }
    }
    m.validate();
    return m;
}

} // namespace

std::string machine_kind(const Machine& m) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Gfa>) return "gfa";
            else if constexpr (std::is_same_v<T, Dbca>) return "dbca";
            else if constexpr (std::is_same_v<T, Nbca>) return "nbca";
            else if constexpr (std::is_same_v<T, Pbca>) return "pbca";
            else if constexpr (std::is_same_v<T, Pkfa>) return "pkfa";
            else return v.mode == QMode::OneWay ? "qfa_oneway" : "qbca_realtime";
        },
        m);
}

const Alphabet& machine_alphabet(const Machine& m) {
    return std::visit([](const auto& v) -> const Alphabet& { return v.alphabet; }, m);
}

std::string machine_name(const Machine& m) {
    return std::visit([](const auto& v) { return v.name; }, m);
}

std::string serialize_machine(const Machine& m) {
    json j = std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Gfa>) return gfa_to_json(v);
            else if constexpr (std::is_same_v<T, Dbca>) return dbca_to_json(v);
            else if constexpr (std::is_same_v<T, Nbca>) return nbca_to_json(v);
            else if constexpr (std::is_same_v<T, Pbca>) return pbca_to_json(v);
            else if constexpr (std::is_same_v<T, Pkfa>) return pkfa_to_json(v);
            else return qspec_to_json(v);
        },
        m);
    return j.dump(2) + "\n";
}

Machine parse_machine(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("machine file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("machine file: missing 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "gfa") return gfa_from_json(j);
        if (kind == "dbca") return dbca_from_json(j);
        if (kind == "nbca") return nbca_from_json(j);
        if (kind == "pbca") return pbca_from_json(j);
        if (kind == "pkfa") return pkfa_from_json(j);
        if (kind == "qfa_oneway") return qspec_from_json(j, QMode::OneWay);
        if (kind == "qbca_realtime") return qspec_from_json(j, QMode::Realtime);
    } catch (const json::exception& e) {
        throw ParseError(std::string("machine file: ") + e.what());
    }
    throw ParseError("machine file: unknown kind '" + kind + "'");
}

Machine load_machine(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("machine file: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_machine(buf.str());
}

void save_machine(const Machine& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("machine file: cannot write '" + path + "'");
    out << serialize_machine(m);
}

std::string machine_summary(const Machine& m) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            size_t transitions = 0;
            if constexpr (std::is_same_v<T, Gfa>) {
                for (const auto& t : v.transitions)
                    for (const auto& [s, col] : t.columns()) transitions += col.size();
                return std::to_string(v.stateCount) + " states, " + std::to_string(transitions) +
                       " matrix entries";
            } else if constexpr (std::is_same_v<T, Dbca>) {
                return std::to_string(v.states.size()) + " states, " +
                       std::to_string(v.delta.size() + v.silent.size()) + " transitions";
            } else if constexpr (std::is_same_v<T, Nbca>) {
                for (const auto& [k, cs] : v.delta) transitions += cs.size();
                return std::to_string(v.states.size()) + " states, " + std::to_string(transitions) +
                       " transitions";
            } else if constexpr (std::is_same_v<T, Pbca>) {
                for (const auto& [k, bs] : v.delta) transitions += bs.size();
                return std::to_string(v.states.size()) + " states, " + std::to_string(transitions) +
                       " transitions";
            } else if constexpr (std::is_same_v<T, Pkfa>) {
                for (const auto& [k, bs] : v.delta) transitions += bs.size();
                return std::to_string(v.states.size()) + " states, " + std::to_string(transitions) +
                       " transitions, " + std::to_string(v.heads) + " heads";
            } else {
                for (const auto& [k, bs] : v.delta) transitions += bs.size();
                return std::to_string(v.states.size()) + " states, " + std::to_string(transitions) +
                       " transitions, " + std::to_string(v.regSymbols.size()) + " register symbols";
            }
        },
        m);
}

} // namespace qalab
