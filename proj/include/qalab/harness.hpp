#pragma once

#include <iosfwd>
#include <optional>

#include "qalab/languages.hpp"
#include "qalab/machine_io.hpp"

namespace qalab {

// Named machine builders shared by the CLI and claim files.
// Parameters: N (split width), t (stages / family index), k (heads).
Machine build_named_machine(const std::string& name, const std::map<std::string, long>& params);
std::vector<std::string> builder_names();

enum class BoundType { OneSidedNegative, TwoSided, NondetMode, ExactZeroComplement };

// A machine-versus-language assertion checked by exhaustive sweep.
struct Claim {
    std::string builderName;            // either builder + params ...
    std::map<std::string, long> params;
    std::string machinePath;            // ... or a machine file path
    LanguageId language{LanguageTag::Upal, 0};
    BoundType boundType = BoundType::OneSidedNegative;
    Rational bound{0};
    std::vector<std::string> alphabet;
    int maxLen = 0;
    double tol = 1e-9;
    std::vector<CounterAcceptance> conventions; // realtime quantum machines
    long stepCap = 0;

    static Claim parse(const std::string& text);
    static Claim load(const std::string& path);
};

struct VerifyOutcome {
    bool pass = true;
    long checked = 0;
    std::vector<std::string> violations;
};

VerifyOutcome verify_claim(const Claim& claim, std::ostream& log);

// CSV sweep: one row per word in length-lexicographic order, deterministic
// bytes. Columns: input, accept, reject, pending, member. Quantum
// probabilities print with 12 significant digits, classical values as exact
// fractions; the member column is blank without a language.
struct SweepOptions {
    std::optional<LanguageId> language;
    CounterAcceptance counterAcceptance = CounterAcceptance::RequireZero;
    long stepCap = 0;
};

void write_sweep_csv(const Machine& m, int maxLen, std::ostream& out, const SweepOptions& opts);

// Per-word rows for machine kinds with probabilistic output, exposed for the
// harness and tests.
struct ProbRow {
    double accept = 0;
    double reject = 0;
    double pending = 0;
};

std::string format_probability(double p);

} // namespace qalab
