// qalab - build, run, sweep, and verify the automata in this laboratory.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qalab/bca.hpp"
#include "qalab/harness.hpp"
#include "qalab/multihead.hpp"

using namespace qalab;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

CounterAcceptance parse_convention(const std::string& s) {
    if (s == "require-zero") return CounterAcceptance::RequireZero;
    if (s == "ignore") return CounterAcceptance::Ignore;
    throw InputError("unknown counter-acceptance convention '" + s + "'");
}

int cmd_build(const std::string& name, const std::map<std::string, long>& params,
              const std::string& outPath) {
    Machine m = build_named_machine(name, params);
    save_machine(m, outPath);
    std::cout << machine_name(m) << ": " << machine_summary(m) << "\n";
    std::cout << "wrote " << outPath << "\n";
    return 0;
}

void print_run_result(const RunResult& r, const std::string& label) {
    std::cout << (label.empty() ? "" : label + ": ") << "accept " << format_probability(r.accept)
              << ", reject " << format_probability(r.reject) << ", pending "
              << format_probability(r.pending) << " (" << r.steps << " steps)\n";
    if (!r.halted) std::cout << "warning: step cap reached with pending probability\n";
}

int cmd_run(const std::string& machinePath, const std::string& input, const std::string& convention,
            long stepCap) {
    Machine m = load_machine(machinePath);
    std::vector<int> word = machine_alphabet(m).tokenize(input);
    if (std::holds_alternative<Gfa>(m)) {
        std::cout << gfa_value(std::get<Gfa>(m), word).str() << "\n";
    } else if (std::holds_alternative<Dbca>(m)) {
        DbcaResult r = run_dbca(std::get<Dbca>(m), word);
        std::cout << "state " << std::get<Dbca>(m).states[static_cast<size_t>(r.state)]
                  << ", counters";
        for (long c : r.counters) std::cout << " " << c;
        std::cout << ", " << (r.accepted ? "accepted" : "rejected") << "\n";
    } else if (std::holds_alternative<Nbca>(m)) {
        std::cout << (run_nbca(std::get<Nbca>(m), word) ? "accepted" : "rejected") << "\n";
    } else if (std::holds_alternative<Pbca>(m)) {
        std::cout << "accept " << run_rtp1bca(std::get<Pbca>(m), word).str() << "\n";
    } else if (std::holds_alternative<Pkfa>(m)) {
        PkfaResult r = run_pkfa(std::get<Pkfa>(m), word, stepCap);
        std::cout << "accept " << r.accept.str() << ", reject " << r.reject.str();
        if (!r.residue.is_zero()) std::cout << ", residue " << r.residue.str();
        std::cout << "\n";
    } else {
        const QMachineSpec& spec = std::get<QMachineSpec>(m);
        if (spec.mode != QMode::Realtime) {
            print_run_result(run_oneway(spec, word, stepCap), "");
        } else if (convention == "both") {
            print_run_result(run_realtime(spec, word, CounterAcceptance::RequireZero),
                             "require-zero");
            print_run_result(run_realtime(spec, word, CounterAcceptance::Ignore), "ignore");
        } else {
            print_run_result(run_realtime(spec, word, parse_convention(convention)), "");
        }
    }
    return 0;
}

int cmd_sweep(const std::string& machinePath, int maxLen, const std::string& outPath,
              const std::string& languageId, const std::string& convention, long stepCap,
              bool force) {
    if (maxLen > 16 && !force)
        throw InputError("sweep: max-len > 16 needs --force");
    Machine m = load_machine(machinePath);
    SweepOptions opts;
    if (!languageId.empty()) opts.language = LanguageId::parse(languageId);
    opts.counterAcceptance = parse_convention(convention);
    opts.stepCap = stepCap;
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw Error("sweep: cannot write '" + outPath + "'");
    write_sweep_csv(m, maxLen, out, opts);
    std::cout << "wrote " << outPath << "\n";
    return 0;
}

int cmd_verify(const std::string& claimPath) {
    Claim claim = Claim::load(claimPath);
    VerifyOutcome outcome = verify_claim(claim, std::cout);
    return outcome.pass ? 0 : kExitViolation;
}

int cmd_check_wf(const std::string& machinePath, int maxLen, double tol) {
    Machine m = load_machine(machinePath);
    if (!std::holds_alternative<QMachineSpec>(m))
        throw InputError("check-wf: '" + machinePath + "' is not a quantum machine");
    const QMachineSpec& spec = std::get<QMachineSpec>(m);
    long defects = 0, words = 0;
    for_each_word(spec.alphabet.size(), maxLen, [&](const std::vector<int>& word) {
        ++words;
        WfReport report = check_well_formed(spec, word, tol);
        for (const auto& d : report.global) {
            std::cout << "global defect on '" << spec.alphabet.render(word) << "': " << d.where
                      << " deviation " << d.deviation << "\n";
            ++defects;
        }
        for (const auto& d : report.local) {
            std::cout << "local defect on '" << spec.alphabet.render(word) << "': " << d.where
                      << " deviation " << d.deviation << "\n";
            ++defects;
        }
        return defects < 64; // enough evidence
    });
    if (defects) {
        std::cout << "FAIL: " << defects << " well-formedness defects\n";
        return kExitViolation;
    }
    std::cout << "PASS: orthonormal columns on all " << words << " inputs (tol " << tol << ")\n";
    return 0;
}

int cmd_compile_bca(const std::string& machinePath, const std::string& outPath) {
    Machine m = load_machine(machinePath);
    if (!std::holds_alternative<Dbca>(m))
        throw InputError("compile-bca: '" + machinePath + "' is not a deterministic "
                         "blind-counter machine");
    Dbca determined = state_determine_updates(std::get<Dbca>(m));
    Gfa sq = complement_witness_gfa(determined);
    save_machine(sq, outPath);
    std::vector<long> primes = first_primes(determined.counters);
    for (int l = 0; l < determined.counters; ++l)
        std::cout << "counter " << (l + 1) << " -> prime " << primes[static_cast<size_t>(l)] << "\n";
    std::cout << machine_name(Machine{sq}) << ": " << machine_summary(Machine{sq}) << "\n";
    std::cout << "wrote " << outPath << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum/probabilistic automata laboratory"};
    app.require_subcommand(1);

    auto* build = app.add_subcommand("build", "emit a named machine to a file");
    std::string buildName, buildOut;
    long pN = 0, pT = 0, pK = 0;
    build->add_option("--name", buildName, "builder name")->required();
    build->add_option("--N", pN, "split width N");
    build->add_option("--t", pT, "parameter t");
    build->add_option("--k", pK, "head count k");
    build->add_option("--out", buildOut, "output machine file")->required();

    auto* run = app.add_subcommand("run", "run a machine on one input");
    std::string runMachine, runInput, runConvention = "require-zero";
    long runStepCap = 0;
    run->add_option("--machine", runMachine, "machine file")->required();
    run->add_option("--input", runInput, "input string (may be empty)");
    run->add_option("--counter-acceptance", runConvention, "require-zero | ignore | both");
    run->add_option("--step-cap", runStepCap, "one-way step cap (0 = default)");

    auto* sweep = app.add_subcommand("sweep", "evaluate all strings up to a length, write CSV");
    std::string sweepMachine, sweepOut, sweepLanguage, sweepConvention = "require-zero";
    int sweepMaxLen = 0;
    long sweepStepCap = 0;
    bool sweepForce = false;
    sweep->add_option("--machine", sweepMachine, "machine file")->required();
    sweep->add_option("--max-len", sweepMaxLen, "maximum input length")->required();
    sweep->add_option("--out", sweepOut, "output CSV file")->required();
    sweep->add_option("--language", sweepLanguage, "language id for the member column");
    sweep->add_option("--counter-acceptance", sweepConvention, "require-zero | ignore");
    sweep->add_option("--step-cap", sweepStepCap, "one-way step cap (0 = default)");
    sweep->add_flag("--force", sweepForce, "allow max-len > 16");

    auto* verify = app.add_subcommand("verify", "check a claim file by exhaustive sweep");
    std::string claimPath;
    verify->add_option("--claim", claimPath, "claim file")->required();

    auto* checkWf = app.add_subcommand("check-wf", "well-formedness of a quantum machine");
    std::string wfMachine;
    int wfMaxLen = 6;
    double wfTol = 1e-9;
    checkWf->add_option("--machine", wfMachine, "machine file")->required();
    checkWf->add_option("--max-len", wfMaxLen, "check inputs up to this length");
    checkWf->add_option("--tol", wfTol, "orthonormality tolerance");

    auto* compile = app.add_subcommand("compile-bca", "compile a dbca to its squared GFA witness");
    std::string compileMachine, compileOut;
    compile->add_option("--machine", compileMachine, "dbca machine file")->required();
    compile->add_option("--out", compileOut, "output GFA file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            std::map<std::string, long> params;
            if (build->count("--N")) params["N"] = pN;
            if (build->count("--t")) params["t"] = pT;
            if (build->count("--k")) params["k"] = pK;
            return cmd_build(buildName, params, buildOut);
        }
        if (run->parsed()) return cmd_run(runMachine, runInput, runConvention, runStepCap);
        if (sweep->parsed())
            return cmd_sweep(sweepMachine, sweepMaxLen, sweepOut, sweepLanguage, sweepConvention,
                             sweepStepCap, sweepForce);
        if (verify->parsed()) return cmd_verify(claimPath);
        if (checkWf->parsed()) return cmd_check_wf(wfMachine, wfMaxLen, wfTol);
        if (compile->parsed()) return cmd_compile_bca(compileMachine, compileOut);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
