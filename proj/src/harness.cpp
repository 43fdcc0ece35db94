#include "qalab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qalab/bca.hpp"
#include "qalab/constructions.hpp"
#include "qalab/multihead.hpp"

namespace qalab {

using json = nlohmann::ordered_json;

namespace {

long need_param(const std::map<std::string, long>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw InputError("builder: missing parameter '" + key + "'");
    return it->second;
}

} // namespace

Machine build_named_machine(const std::string& name, const std::map<std::string, long>& params) {
    if (name == "upal") return build_upal_qbca(need_param(params, "N"));
    if (name == "upal_star") return build_upal_star_qbca(need_param(params, "N"));
    if (name == "upal1") return build_upal1_qfa(need_param(params, "N"));
    if (name == "upal_t")
        return build_upal_t_qfa(static_cast<int>(need_param(params, "t")), need_param(params, "N"));
    if (name == "lsay_nbca") return build_lsay_nbca();
    if (name == "lijk_gfa") return build_lijk_gfa();
    if (name == "neq_gfa") return build_neq_gfa(static_cast<int>(need_param(params, "t")));
    if (name == "eq_dbca") return build_eq_dbca(static_cast<int>(need_param(params, "t")));
    if (name == "twin_dkfa") return build_twin_dkfa(static_cast<int>(need_param(params, "k")));
    if (name == "twin_pkfa") return build_twin_pkfa(static_cast<int>(need_param(params, "k")));
    if (name == "twin_p2fa") return build_twin_p2fa(static_cast<int>(need_param(params, "t")));
    throw InputError("builder: unknown machine builder '" + name + "'");
}

std::vector<std::string> builder_names() {
    return {"upal",    "upal_star", "upal1",     "upal_t",    "lsay_nbca", "lijk_gfa",
            "neq_gfa", "eq_dbca",   "twin_dkfa", "twin_pkfa", "twin_p2fa"};
}

Claim Claim::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("claim file: invalid JSON: ") + e.what());
    }
    Claim c;
    try {
        const json& machine = j.at("machine");
        if (machine.contains("builder")) {
            c.builderName = machine.at("builder").get<std::string>();
            if (machine.contains("params"))
                for (const auto& [key, value] : machine.at("params").items())
                    c.params[key] = value.get<long>();
        } else if (machine.contains("path")) {
            c.machinePath = machine.at("path").get<std::string>();
        } else {
            throw ParseError("claim file: machine needs 'builder' or 'path'");
        }
        c.language = LanguageId::parse(j.at("language").get<std::string>());
        std::string bt = j.at("bound_type").get<std::string>();
        if (bt == "one_sided_negative") c.boundType = BoundType::OneSidedNegative;
        else if (bt == "two_sided") c.boundType = BoundType::TwoSided;
        else if (bt == "nondet_mode") c.boundType = BoundType::NondetMode;
        else if (bt == "exact_zero_complement") c.boundType = BoundType::ExactZeroComplement;
        else throw ParseError("claim file: unknown bound_type '" + bt + "'");
        if (c.boundType == BoundType::OneSidedNegative || c.boundType == BoundType::TwoSided) {
            c.bound = Rational::parse(j.at("bound").get<std::string>());
            if (c.bound.sign() <= 0 || c.bound >= Rational(1))
                throw ParseError("claim file: bound must lie in (0,1)");
        }
        if (j.contains("alphabet"))
            for (const auto& s : j.at("alphabet")) c.alphabet.push_back(s.get<std::string>());
        c.maxLen = j.at("max_len").get<int>();
        if (c.maxLen < 0) throw ParseError("claim file: max_len must be >= 0");
        c.tol = j.value("tol", 1e-9);
        if (j.contains("counter_acceptance")) {
            for (const auto& s : j.at("counter_acceptance")) {
                std::string v = s.get<std::string>();
                if (v == "require_zero") c.conventions.push_back(CounterAcceptance::RequireZero);
                else if (v == "ignore") c.conventions.push_back(CounterAcceptance::Ignore);
                else throw ParseError("claim file: unknown counter_acceptance '" + v + "'");
            }
        }
        c.stepCap = j.value("step_cap", 0L);
    } catch (const json::exception& e) {
        throw ParseError(std::string("claim file: ") + e.what());
    }
    return c;
}

Claim Claim::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("claim file: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return Claim::parse(buf.str());
}

std::string format_probability(double p) {
    // Snap float dust well below the 1e-9 numeric contract; purely cosmetic,
    // verification always compares the raw doubles.
    if (std::abs(p) < 1e-12) p = 0.0;
    if (std::abs(p - 1.0) < 1e-12) p = 1.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", p);
    return buf;
}

namespace {

Machine claim_machine(const Claim& c) {
    if (!c.builderName.empty()) return build_named_machine(c.builderName, c.params);
    return load_machine(c.machinePath);
}

struct SweepEntry {
    std::vector<int> word;
    std::string accept, reject, pending; // formatted
    double acceptP = 0;                  // numeric accept for claim checks
    Rational acceptExact{0};
    bool exact = false;
};

// Evaluate one machine kind over all words up to maxLen. Rows arrive in
// length-lexicographic order except for the GFA sweep, which shares prefix
// vectors depth-first; collect-and-sort keeps the output order canonical.
void sweep_machine(const Machine& m, int maxLen, const SweepOptions& opts,
                   const std::function<void(SweepEntry&)>& sink) {
    const Alphabet& alphabet = machine_alphabet(m);
    if (std::holds_alternative<Gfa>(m)) {
        const Gfa& g = std::get<Gfa>(m);
        std::vector<SweepEntry> rows;
        sweep_gfa_values(g, maxLen, [&](const std::vector<int>& word, const Rational& value) {
            SweepEntry e;
            e.word = word;
            e.exact = true;
            e.acceptExact = value;
            e.accept = value.str();
            e.reject = "0";
            e.pending = "0";
            rows.push_back(std::move(e));
        });
        std::stable_sort(rows.begin(), rows.end(), [](const SweepEntry& a, const SweepEntry& b) {
            if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
            return a.word < b.word;
        });
        for (auto& e : rows) sink(e);
        return;
    }
    for_each_word(alphabet.size(), maxLen, [&](const std::vector<int>& word) {
        SweepEntry e;
        e.word = word;
        if (std::holds_alternative<Dbca>(m)) {
            bool acc = run_dbca(std::get<Dbca>(m), word).accepted;
            e.exact = true;
            e.acceptExact = Rational(acc ? 1 : 0);
            e.accept = acc ? "1" : "0";
            e.reject = acc ? "0" : "1";
            e.pending = "0";
        } else if (std::holds_alternative<Nbca>(m)) {
            bool acc = run_nbca(std::get<Nbca>(m), word);
            e.exact = true;
            e.acceptExact = Rational(acc ? 1 : 0);
            e.accept = acc ? "1" : "0";
            e.reject = acc ? "0" : "1";
            e.pending = "0";
        } else if (std::holds_alternative<Pbca>(m)) {
            Rational p = run_rtp1bca(std::get<Pbca>(m), word);
            e.exact = true;
            e.acceptExact = p;
            e.accept = p.str();
            e.reject = (Rational(1) - p).str();
            e.pending = "0";
        } else if (std::holds_alternative<Pkfa>(m)) {
            PkfaResult r = run_pkfa(std::get<Pkfa>(m), word, opts.stepCap);
            e.exact = true;
            e.acceptExact = r.accept;
            e.accept = r.accept.str();
            e.reject = r.reject.str();
            e.pending = r.residue.str();
        } else {
            const QMachineSpec& spec = std::get<QMachineSpec>(m);
            RunResult r = spec.mode == QMode::Realtime
                              ? run_realtime(spec, word, opts.counterAcceptance)
                              : run_oneway(spec, word, opts.stepCap);
            e.acceptP = r.accept;
            e.accept = format_probability(r.accept);
            e.reject = format_probability(r.reject);
            e.pending = format_probability(r.pending);
        }
        sink(e);
        return true;
    });
}

} // namespace

void write_sweep_csv(const Machine& m, int maxLen, std::ostream& out, const SweepOptions& opts) {
    const Alphabet& alphabet = machine_alphabet(m);
    out << "input,accept,reject,pending,member\n";
    sweep_machine(m, maxLen, opts, [&](SweepEntry& e) {
        std::string member;
        if (opts.language) {
            Alphabet langAlpha = language_alphabet(*opts.language);
            if (langAlpha.symbols() != alphabet.symbols())
                throw InputError("sweep: language alphabet differs from machine alphabet");
            member = oracle_tokens(*opts.language, e.word, alphabet) ? "1" : "0";
        }
        out << alphabet.render(e.word) << ',' << e.accept << ',' << e.reject << ',' << e.pending
            << ',' << member << '\n';
    });
}

namespace {

void note_violation(VerifyOutcome& out, const Alphabet& alphabet, const std::vector<int>& word,
                    const std::string& what) {
    out.pass = false;
    if (out.violations.size() < 32)
        out.violations.push_back("'" + alphabet.render(word) + "': " + what);
}

std::string convention_name(CounterAcceptance ca) {
    return ca == CounterAcceptance::RequireZero ? "require-zero" : "ignore";
}

} // namespace

VerifyOutcome verify_claim(const Claim& claim, std::ostream& log) {
    Machine m = claim_machine(claim);
    const Alphabet& alphabet = machine_alphabet(m);
    Alphabet langAlpha = language_alphabet(claim.language);
    if (!claim.alphabet.empty() && claim.alphabet != alphabet.symbols())
        throw InputError("claim: declared alphabet differs from the machine's");
    if (langAlpha.symbols() != alphabet.symbols())
        throw InputError("claim: language alphabet differs from the machine's");

    VerifyOutcome out;
    const double tol = claim.tol;
    const double boundP = claim.bound.to_double();

    // exact_zero_complement: value 0 exactly on members. A dbca machine is
    // compiled through the prime-scaling pipeline first; a gfa machine (for
    // instance a compile-bca output file) is swept as-is.
    if (claim.boundType == BoundType::ExactZeroComplement) {
        Gfa sq;
        if (std::holds_alternative<Dbca>(m))
            sq = complement_witness_gfa(state_determine_updates(std::get<Dbca>(m)));
        else if (std::holds_alternative<Gfa>(m))
            sq = std::get<Gfa>(m);
        else
            throw InputError("claim: exact_zero_complement needs a dbca or gfa machine");
        sweep_gfa_values(sq, claim.maxLen, [&](const std::vector<int>& word, const Rational& v) {
            ++out.checked;
            bool member = oracle_tokens(claim.language, word, alphabet);
            if (member && !v.is_zero())
                note_violation(out, alphabet, word, "member with value " + v.str());
            if (!member && v.sign() <= 0)
                note_violation(out, alphabet, word, "non-member with value " + v.str());
        });
        log << (out.pass ? "PASS" : "FAIL") << " exact_zero_complement over " << out.checked
            << " strings\n";
        for (const auto& v : out.violations) log << "  violation " << v << "\n";
        return out;
    }

    if (claim.boundType == BoundType::NondetMode) {
        if (std::holds_alternative<Gfa>(m)) {
            sweep_gfa_values(std::get<Gfa>(m), claim.maxLen,
                             [&](const std::vector<int>& word, const Rational& v) {
                                 ++out.checked;
                                 bool member = oracle_tokens(claim.language, word, alphabet);
                                 if (member != (v.sign() > 0))
                                     note_violation(out, alphabet, word,
                                                    (member ? "member" : "non-member") +
                                                        std::string(" with value ") + v.str());
                             });
        } else if (std::holds_alternative<Nbca>(m)) {
            for_each_word(alphabet.size(), claim.maxLen, [&](const std::vector<int>& word) {
                ++out.checked;
                bool member = oracle_tokens(claim.language, word, alphabet);
                if (run_nbca(std::get<Nbca>(m), word) != member)
                    note_violation(out, alphabet, word, member ? "member rejected" : "non-member accepted");
                return true;
            });
        } else {
            const QMachineSpec& spec = std::get<QMachineSpec>(m);
            for_each_word(alphabet.size(), claim.maxLen, [&](const std::vector<int>& word) {
                ++out.checked;
                bool member = oracle_tokens(claim.language, word, alphabet);
                RunResult r = spec.mode == QMode::Realtime
                                  ? run_realtime(spec, word, CounterAcceptance::RequireZero)
                                  : run_oneway(spec, word, claim.stepCap);
                if (member != (r.accept > tol))
                    note_violation(out, alphabet, word,
                                   "accept probability " + format_probability(r.accept));
                return true;
            });
        }
        log << (out.pass ? "PASS" : "FAIL") << " nondet_mode over " << out.checked << " strings\n";
        for (const auto& v : out.violations) log << "  violation " << v << "\n";
        return out;
    }

    // Probabilistic bounds. Classical machines are compared exactly against
    // the rational bound; quantum machines within tol.
    auto checkProb = [&](const std::vector<int>& word, bool member, double accept) {
        if (claim.boundType == BoundType::OneSidedNegative) {
            if (member && accept < 1.0 - tol)
                note_violation(out, alphabet, word, "member accepted with " + format_probability(accept));
            if (!member && accept > boundP + tol)
                note_violation(out, alphabet, word,
                               "non-member accepted with " + format_probability(accept));
        } else {
            if (member && accept < 1.0 - boundP - tol)
                note_violation(out, alphabet, word, "member accepted with " + format_probability(accept));
            if (!member && accept > boundP + tol)
                note_violation(out, alphabet, word,
                               "non-member accepted with " + format_probability(accept));
        }
    };
    auto checkExact = [&](const std::vector<int>& word, bool member, const Rational& accept) {
        if (claim.boundType == BoundType::OneSidedNegative) {
            if (member && !accept.is_one())
                note_violation(out, alphabet, word, "member accepted with " + accept.str());
            if (!member && accept > claim.bound)
                note_violation(out, alphabet, word, "non-member accepted with " + accept.str());
        } else {
            if (member && accept < Rational(1) - claim.bound)
                note_violation(out, alphabet, word, "member accepted with " + accept.str());
            if (!member && accept > claim.bound)
                note_violation(out, alphabet, word, "non-member accepted with " + accept.str());
        }
    };

    if (std::holds_alternative<QMachineSpec>(m) &&
        std::get<QMachineSpec>(m).mode == QMode::Realtime) {
        std::vector<CounterAcceptance> conventions = claim.conventions;
        if (conventions.empty())
            conventions = {CounterAcceptance::RequireZero, CounterAcceptance::Ignore};
        const QMachineSpec& spec = std::get<QMachineSpec>(m);
        for (CounterAcceptance ca : conventions) {
            size_t before = out.violations.size();
            bool passBefore = out.pass;
            for_each_word(alphabet.size(), claim.maxLen, [&](const std::vector<int>& word) {
                ++out.checked;
                bool member = oracle_tokens(claim.language, word, alphabet);
                checkProb(word, member, run_realtime(spec, word, ca).accept);
                return true;
            });
            bool clean = out.violations.size() == before && out.pass == passBefore;
            log << "  convention " << convention_name(ca) << ": " << (clean ? "ok" : "violations")
                << "\n";
        }
    } else {
        SweepOptions opts;
        opts.stepCap = claim.stepCap;
        sweep_machine(m, claim.maxLen, opts, [&](SweepEntry& e) {
            ++out.checked;
            bool member = oracle_tokens(claim.language, e.word, alphabet);
            if (e.exact) checkExact(e.word, member, e.acceptExact);
            else checkProb(e.word, member, e.acceptP);
        });
    }
    log << (out.pass ? "PASS" : "FAIL") << " "
        << (claim.boundType == BoundType::OneSidedNegative ? "one_sided_negative" : "two_sided")
        << " bound " << claim.bound.str() << " over " << out.checked << " strings\n";
    for (const auto& v : out.violations) log << "  violation " << v << "\n";
    return out;
}

} // namespace qalab
