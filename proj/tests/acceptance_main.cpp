// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line. Run with --criterion N for one criterion, --list for the
// roster; exit status is nonzero if any executed criterion failed.

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "qalab/bca.hpp"
#include "qalab/constructions.hpp"
#include "qalab/harness.hpp"
#include "qalab/languages.hpp"
#include "qalab/multihead.hpp"

using namespace qalab;

namespace {

constexpr double kTol = 1e-9;

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::ostream&)> check;
};

std::string gClaimsDir = "claims";

bool sweep_quantum_bound(std::ostream& log, const QMachineSpec& spec, const LanguageId& lang,
                         int maxLen, double bound,
                         const std::vector<CounterAcceptance>& conventions) {
    bool ok = true;
    for_each_word(spec.alphabet.size(), maxLen, [&](const std::vector<int>& word) {
        bool member = oracle_tokens(lang, word, spec.alphabet);
        if (spec.mode == QMode::Realtime) {
            for (auto ca : conventions) {
                double p = run_realtime(spec, word, ca).accept;
                if (member ? p < 1.0 - kTol : p > bound + kTol) {
                    log << "    '" << spec.alphabet.render(word) << "' accept " << p
                        << (member ? " (member)" : " (non-member)") << "\n";
                    ok = false;
                }
            }
        } else {
            double p = run_oneway(spec, word).accept;
            if (member ? p < 1.0 - kTol : p > bound + kTol) {
                log << "    '" << spec.alphabet.render(word) << "' accept " << p
                    << (member ? " (member)" : " (non-member)") << "\n";
                ok = false;
            }
        }
        return ok;
    });
    return ok;
}

// 1. Well-formedness of every quantum builder on all inputs up to length 6.
bool c01(std::ostream& log) {
    bool ok = true;
    for (long N : {2L, 3L, 4L}) {
        std::vector<QMachineSpec> machines{build_upal_qbca(N), build_upal_star_qbca(N),
                                           build_upal1_qfa(N), build_upal_t_qfa(2, N)};
        for (const auto& spec : machines) {
            for_each_word(spec.alphabet.size(), 6, [&](const std::vector<int>& word) {
                auto report = check_well_formed(spec, word, kTol);
                if (!report.ok()) {
                    log << "    " << spec.name << " on '" << spec.alphabet.render(word)
                        << "': " << report.global.size() << " global, " << report.local.size()
                        << " local defects\n";
                    ok = false;
                }
                return ok;
            });
        }
    }
    return ok;
}

// 2. upal machine bound over {a,b}^{<=12} under both counter conventions.
bool c02(std::ostream& log) {
    bool ok = true;
    for (long N : {2L, 3L, 4L}) {
        auto spec = build_upal_qbca(N);
        ok = sweep_quantum_bound(log, spec, LanguageId{LanguageTag::Upal, 0}, 12,
                                 1.0 / static_cast<double>(N),
                                 {CounterAcceptance::RequireZero, CounterAcceptance::Ignore}) &&
             ok;
    }
    return ok;
}

// 3. upal_star machine bound over {a,b}^{<=11}.
bool c03(std::ostream& log) {
    bool ok = true;
    for (long N : {2L, 3L}) {
        auto spec = build_upal_star_qbca(N);
        ok = sweep_quantum_bound(log, spec, LanguageId{LanguageTag::UpalStar, 0}, 11,
                                 1.0 / static_cast<double>(N),
                                 {CounterAcceptance::RequireZero, CounterAcceptance::Ignore}) &&
             ok;
    }
    return ok;
}

// 4. upal1 machine bound over {a,b}^{<=12} plus the sharp 1/N value on a^m b a^n.
bool c04(std::ostream& log) {
    bool ok = true;
    for (long N : {2L, 3L, 4L}) {
        auto spec = build_upal1_qfa(N);
        ok = sweep_quantum_bound(log, spec, LanguageId{LanguageTag::UpalT, 1}, 12,
                                 1.0 / static_cast<double>(N), {}) &&
             ok;
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; m + n <= 10; ++n) {
                if (m == n) continue;
                std::vector<int> word(static_cast<size_t>(m), 0);
                word.push_back(1);
                word.insert(word.end(), static_cast<size_t>(n), 0);
                double p = run_oneway(spec, word).accept;
                if (std::abs(p - 1.0 / static_cast<double>(N)) > kTol) {
                    log << "    a^" << m << " b a^" << n << " accept " << p << " != 1/" << N << "\n";
                    ok = false;
                }
            }
    }
    return ok;
}

// 5. Staged machine at t=2 over {a,b}^{<=12}; t=1 matches the upal1 machine.
bool c05(std::ostream& log) {
    bool ok = true;
    for (long N : {2L, 3L}) {
        auto spec = build_upal_t_qfa(2, N);
        ok = sweep_quantum_bound(log, spec, LanguageId{LanguageTag::UpalT, 2}, 12,
                                 1.0 / static_cast<double>(N), {}) &&
             ok;
        auto staged = build_upal_t_qfa(1, N);
        auto reference = build_upal1_qfa(N);
        for_each_word(2, 8, [&](const std::vector<int>& word) {
            double a = run_oneway(staged, word).accept;
            double b = run_oneway(reference, word).accept;
            if (std::abs(a - b) > kTol) {
                log << "    t=1 mismatch on '" << staged.alphabet.render(word) << "': " << a
                    << " vs " << b << "\n";
                ok = false;
            }
            return ok;
        });
    }
    return ok;
}

// 6. The L_ijk GFA: sign dichotomy on {a,b,c}^{<=8} and exact values on
// sorted blocks up to 5.
bool c06(std::ostream& log) {
    bool ok = true;
    Gfa g = build_lijk_gfa();
    LanguageId ijk{LanguageTag::Ijk, 0};
    long checked = 0;
    sweep_gfa_values(g, 8, [&](const std::vector<int>& word, const Rational& v) {
        ++checked;
        bool member = oracle_tokens(ijk, word, g.alphabet);
        if (member != (v.sign() > 0)) {
            log << "    '" << g.alphabet.render(word) << "' value " << v.str()
                << (member ? " but member" : " but non-member") << "\n";
            ok = false;
        }
    });
    log << "    sign dichotomy over " << checked << " strings\n";
    for (long i = 1; i <= 5; ++i)
        for (long j = 1; j <= 5; ++j)
            for (long k = 1; k <= 5; ++k) {
                std::vector<int> word(static_cast<size_t>(i), 0);
                word.insert(word.end(), static_cast<size_t>(j), 1);
                word.insert(word.end(), static_cast<size_t>(k), 2);
                Rational expect = Rational((i - j) * (i - j)) * Rational((i - k) * (i - k)) *
                                  Rational((j - k) * (j - k));
                if (gfa_value(g, word) != expect) {
                    log << "    a^" << i << "b^" << j << "c^" << k << " value mismatch\n";
                    ok = false;
                }
            }
    return ok;
}

// 7. Prime-scaling compilation for one- and two-counter machines, exact.
bool c07(std::ostream& log) {
    bool ok = true;
    // M_bal over {a,b}.
    Dbca mbal;
    mbal.name = "mbal";
    mbal.states = {"q0"};
    mbal.accepting = {0};
    mbal.counters = 1;
    mbal.maxUpdate = 1;
    mbal.alphabet = Alphabet({"a", "b"});
    mbal.delta[{0, 0}] = {0, {1}};
    mbal.delta[{0, 1}] = {0, {-1}};
    mbal.delta[{0, TapeSyms::cent(mbal.alphabet)}] = {0, {0}};
    mbal.delta[{0, TapeSyms::dollar(mbal.alphabet)}] = {0, {0}};
    // Two counters over {a,b,c,d}: |w|_a = |w|_b and |w|_c = |w|_d.
    Dbca mbal2;
    mbal2.name = "mbal2";
    mbal2.states = {"q0"};
    mbal2.accepting = {0};
    mbal2.counters = 2;
    mbal2.maxUpdate = 1;
    mbal2.alphabet = Alphabet({"a", "b", "c", "d"});
    mbal2.delta[{0, 0}] = {0, {1, 0}};
    mbal2.delta[{0, 1}] = {0, {-1, 0}};
    mbal2.delta[{0, 2}] = {0, {0, 1}};
    mbal2.delta[{0, 3}] = {0, {0, -1}};
    mbal2.delta[{0, TapeSyms::cent(mbal2.alphabet)}] = {0, {0, 0}};
    mbal2.delta[{0, TapeSyms::dollar(mbal2.alphabet)}] = {0, {0, 0}};
    for (const Dbca& m : {mbal, mbal2}) {
        Gfa sq = complement_witness_gfa(state_determine_updates(m));
        long checked = 0;
        sweep_gfa_values(sq, 8, [&](const std::vector<int>& word, const Rational& v) {
            ++checked;
            std::vector<long> counts(m.alphabet.size(), 0);
            for (int t : word) ++counts[static_cast<size_t>(t)];
            bool member = m.counters == 1 ? counts[0] == counts[1]
                                          : counts[0] == counts[1] && counts[2] == counts[3];
            if (member != v.is_zero() || v.sign() < 0) {
                log << "    " << m.name << " '" << m.alphabet.render(word) << "' value " << v.str()
                    << "\n";
                ok = false;
            }
        });
        log << "    " << m.name << ": " << checked << " strings\n";
    }
    return ok;
}

// 8. The L_say nondeterministic machine agrees with the oracle, length 12.
bool c08(std::ostream& log) {
    bool ok = true;
    Nbca m = build_lsay_nbca();
    LanguageId say{LanguageTag::Say, 0};
    for_each_word(2, 12, [&](const std::vector<int>& word) {
        if (run_nbca(m, word) != oracle_tokens(say, word, m.alphabet)) {
            log << "    mismatch on '" << m.alphabet.render(word) << "'\n";
            ok = false;
        }
        return ok;
    });
    return ok;
}

// 9. Head-for-counter simulation, exact rational equality.
bool c09(std::ostream& log) {
    bool ok = true;
    Pbca pbal;
    pbal.name = "pbal";
    pbal.states = {"q0"};
    pbal.accepting = {0};
    pbal.maxUpdate = 1;
    pbal.alphabet = Alphabet({"a", "b"});
    pbal.delta[{0, 0}] = {{Rational(1), 0, 1}};
    pbal.delta[{0, 1}] = {{Rational(1), 0, -1}};
    pbal.delta[{0, 2}] = {{Rational(1), 0, 0}};
    pbal.delta[{0, 3}] = {{Rational(1), 0, 0}};
    Pbca coin;
    coin.name = "coinflip";
    coin.states = {"q0"};
    coin.accepting = {0};
    coin.maxUpdate = 1;
    coin.alphabet = Alphabet({"a"});
    coin.delta[{0, 0}] = {{Rational(1, 2), 0, 1}, {Rational(1, 2), 0, 0}};
    coin.delta[{0, 1}] = {{Rational(1), 0, 0}};
    coin.delta[{0, 2}] = {{Rational(1), 0, 0}};
    for (const Pbca& m : {pbal, coin}) {
        Pkfa sim = simulate_bca_as_3fa(m);
        for_each_word(m.alphabet.size(), 8, [&](const std::vector<int>& word) {
            PkfaResult r = run_pkfa(sim, word);
            Rational want = run_rtp1bca(m, word);
            if (r.accept != want || !r.residue.is_zero()) {
                log << "    " << m.name << " '" << m.alphabet.render(word) << "': "
                    << r.accept.str() << " vs " << want.str() << "\n";
                ok = false;
            }
            return ok;
        });
    }
    return ok;
}

bool twin_bound(std::ostream& log, const Pkfa& m, int t, const Rational& bound, int maxLen) {
    bool ok = true;
    LanguageId twin{LanguageTag::Twin, t};
    for_each_word(m.alphabet.size(), maxLen, [&](const std::vector<int>& word) {
        Rational p = run_pkfa(m, word).accept;
        bool member = oracle_tokens(twin, word, m.alphabet);
        if (member ? !p.is_one() : p > bound) {
            log << "    '" << m.alphabet.render(word) << "' accept " << p.str()
                << (member ? " (member)" : " (non-member)") << "\n";
            ok = false;
        }
        return ok;
    });
    return ok;
}

// 10. Branch-splitting twin machine: members exactly 1, non-members at most 1/2.
bool c10(std::ostream& log) { return twin_bound(log, build_twin_pkfa(2), 2, Rational(1, 2), 9); }

// 11. Pair-choice twin machine with t = 2: bound 1 - 1/t = 1/2, exact.
bool c11(std::ostream& log) { return twin_bound(log, build_twin_p2fa(2), 2, Rational(1, 2), 9); }

// 12. QFT interference probes: simultaneous convergence puts everything on
// the distinguished target; staggered arrivals leave 1/N^2 per target.
bool c12(std::ostream& log) {
    bool ok = true;
    for (long N = 2; N <= 6; ++N) {
        for (bool staggered : {false, true}) {
            QMachineSpec spec;
            spec.mode = QMode::Realtime;
            spec.name = staggered ? "probe_staggered" : "probe_simultaneous";
            spec.counters = 1;
            spec.maxUpdate = static_cast<int>(N);
            spec.alphabet = Alphabet({"a"});
            int w1 = spec.add_reg("w1");
            int s0 = spec.add_state("s0");
            std::vector<int> d, t;
            for (long j = 1; j <= N; ++j) d.push_back(spec.add_state("d" + std::to_string(j)));
            for (long l = 1; l <= N; ++l) t.push_back(spec.add_state("t" + std::to_string(l)));
            spec.initial = s0;
            spec.accepting = {t.back()};
            QTrans idle;
            idle.amp = AmpExpr(Rational(1));
            idle.target = s0;
            idle.update = {0};
            idle.reg = w1;
            spec.add(s0, spec.cent(), idle);
            for (long j = 1; j <= N; ++j) {
                QTrans split;
                split.amp = AmpExpr::inv_sqrt(N);
                split.target = d[static_cast<size_t>(j - 1)];
                split.update = {staggered ? static_cast<int>(j) : 0};
                split.reg = w1;
                spec.add(s0, 0, split);
                for (long l = 1; l <= N; ++l) {
                    QTrans q;
                    q.amp = AmpExpr::qft_entry(N, j, l);
                    q.target = t[static_cast<size_t>(l - 1)];
                    q.update = {0};
                    q.reg = w1;
                    spec.add(d[static_cast<size_t>(j - 1)], spec.dollar(), q);
                }
            }
            spec = complete_spec(std::move(spec));
            auto dist = run_realtime_distribution(spec, {0});
            if (!staggered) {
                double pN = 0;
                for (const auto& [cfg, p] : dist)
                    if (cfg.first == spec.state_index("t" + std::to_string(N))) pN += p;
                if (std::abs(pN - 1.0) > kTol) {
                    log << "    N=" << N << " simultaneous: distinguished target " << pN << "\n";
                    ok = false;
                }
            } else {
                double expected = 1.0 / static_cast<double>(N * N);
                for (long l = 1; l <= N; ++l)
                    for (long j = 1; j <= N; ++j) {
                        RtConfig cfg{spec.state_index("t" + std::to_string(l)),
                                     {static_cast<int>(j)}};
                        double p = dist.count(cfg) ? dist.at(cfg) : 0.0;
                        if (std::abs(p - expected) > kTol) {
                            log << "    N=" << N << " staggered target (" << l << "," << j
                                << "): " << p << "\n";
                            ok = false;
                        }
                    }
            }
        }
    }
    return ok;
}

// 13. Infrastructure: byte-identical round trips, deterministic sweeps, and
// every bundled claim file verifying clean.
bool c13(std::ostream& log) {
    bool ok = true;
    std::vector<std::pair<std::string, std::map<std::string, long>>> builders = {
        {"upal", {{"N", 2}}},        {"upal", {{"N", 4}}},
        {"upal_star", {{"N", 3}}},   {"upal1", {{"N", 3}}},
        {"upal_t", {{"t", 2}, {"N", 3}}}, {"lsay_nbca", {}},
        {"lijk_gfa", {}},            {"neq_gfa", {{"t", 2}}},
        {"eq_dbca", {{"t", 2}}},     {"twin_dkfa", {{"k", 3}}},
        {"twin_pkfa", {{"k", 2}}},   {"twin_p2fa", {{"t", 3}}},
    };
    for (const auto& [name, params] : builders) {
        Machine m = build_named_machine(name, params);
        std::string once = serialize_machine(m);
        std::string twice = serialize_machine(parse_machine(once));
        if (once != twice) {
            log << "    round trip not byte-identical for " << name << "\n";
            ok = false;
        }
    }
    for (const char* name : {"upal", "upal1"}) {
        Machine m = build_named_machine(name, {{"N", 2}});
        SweepOptions opts;
        opts.language = LanguageId::parse(name == std::string("upal") ? "upal" : "upal_t(1)");
        std::ostringstream a, b;
        write_sweep_csv(m, 5, a, opts);
        write_sweep_csv(m, 5, b, opts);
        if (a.str() != b.str()) {
            log << "    sweep bytes differ for " << name << "\n";
            ok = false;
        }
    }
    std::vector<std::string> claims = {
        "upal_n2", "upal_n3",   "upal_n4",   "upal_star_n2",
        "upal_star_n3", "upal1_n2", "upal1_n3", "upal1_n4",
        "upal_t2_n2", "upal_t2_n3", "lijk_nondet",        "lsay_nondet",
        "eq1_zero_complement",        "eq2_zero_complement",        "neq1_nondet",      "neq2_nondet",
        "twin_pkfa2", "twin_p2fa2", "twin_p2fa3",
    };
    for (const auto& name : claims) {
        std::ostringstream sink;
        try {
            Claim claim = Claim::load(gClaimsDir + "/" + name + ".json");
            if (!verify_claim(claim, sink).pass) {
                log << "    claim " << name << " failed:\n" << sink.str();
                ok = false;
            }
        } catch (const Error& e) {
            log << "    claim " << name << ": " << e.what() << "\n";
            ok = false;
        }
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "well-formedness of all quantum builders (len <= 6, tol 1e-9)", c01},
        {2, "upal bound 1/N on {a,b}^{<=12}, both counter conventions", c02},
        {3, "upal_star bound 1/N on {a,b}^{<=11}", c03},
        {4, "upal1 bound 1/N on {a,b}^{<=12} plus sharp 1/N values", c04},
        {5, "upal_t (t=2) bound 1/N on {a,b}^{<=12}; t=1 equivalence", c05},
        {6, "L_ijk GFA dichotomy on {a,b,c}^{<=8} and exact block values", c06},
        {7, "compiled counter machines: squared GFA zero exactly on members", c07},
        {8, "L_say nondeterministic machine vs oracle on {a,b}^{<=12}", c08},
        {9, "head-for-counter simulation: exact probability equality", c09},
        {10, "twin_pkfa(2): one-sided error exactly 1/2 on {a,b,c}^{<=9}", c10},
        {11, "twin_p2fa(2): one-sided error exactly 1/2 on {a,b,c}^{<=9}", c11},
        {12, "QFT interference: distinguished target survives; staggered 1/N^2", c12},
        {13, "round-trip bytes, sweep determinism, bundled claims verify", c13},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--claims-dir") && i + 1 < argc) gClaimsDir = argv[++i];
        else if (!std::strcmp(argv[i], "--list")) {
            for (const auto& c : criteria) std::cout << c.number << ": " << c.title << "\n";
            return 0;
        } else {
            std::cerr << "usage: qalab_acceptance [--criterion N] [--claims-dir DIR] [--list]\n";
            return 2;
        }
    }
    bool allPass = true;
    for (const auto& c : criteria) {
        if (only && c.number != only) continue;
        std::ostringstream detail;
        bool pass = false;
        try {
            pass = c.check(detail);
        } catch (const std::exception& e) {
            detail << "    exception: " << e.what() << "\n";
        }
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title
                  << "\n";
        if (!detail.str().empty()) std::cout << detail.str();
        allPass = allPass && pass;
    }
    return allPass ? 0 : 1;
}
