#include <doctest.h>

#include <sstream>

#include "qalab/harness.hpp"

using namespace qalab;

namespace {

Claim claim_from(const std::string& text) { return Claim::parse(text); }

} // namespace

TEST_CASE("claim parsing") {
    Claim c = claim_from(R"x({
        "machine": {"builder": "upal", "params": {"N": 3}},
        "language": "upal",
        "bound_type": "one_sided_negative",
        "bound": "1/3",
        "alphabet": ["a", "b"],
        "max_len": 6,
        "tol": 1e-9,
        "counter_acceptance": ["require_zero", "ignore"]
    })x");
    CHECK(c.builderName == "upal");
    CHECK(c.params.at("N") == 3);
    CHECK(c.bound == Rational(1, 3));
    CHECK(c.maxLen == 6);
    CHECK(c.conventions.size() == 2);
    CHECK_THROWS_AS(claim_from("{}"), ParseError);
    CHECK_THROWS_AS(claim_from(R"x({"machine":{"builder":"upal"},"language":"upal",
        "bound_type":"one_sided_negative","bound":"2","max_len":3})x"), ParseError);
    CHECK_THROWS_AS(claim_from(R"x({"machine":{"builder":"upal"},"language":"upal",
        "bound_type":"sideways","max_len":3})x"), ParseError);
}

TEST_CASE("verify: upal claim passes under both conventions") {
    Claim c = claim_from(R"x({
        "machine": {"builder": "upal", "params": {"N": 2}},
        "language": "upal",
        "bound_type": "one_sided_negative",
        "bound": "1/2",
        "max_len": 6,
        "tol": 1e-9
    })x");
    std::ostringstream log;
    VerifyOutcome out = verify_claim(c, log);
    CHECK(out.pass);
    CHECK(out.checked == 2 * 127); // both conventions over 2^0..2^6 strings
}

TEST_CASE("verify: a too-tight bound fails and reports strings") {
    Claim c = claim_from(R"x({
        "machine": {"builder": "upal", "params": {"N": 2}},
        "language": "upal",
        "bound_type": "one_sided_negative",
        "bound": "1/3",
        "max_len": 5,
        "tol": 1e-9
    })x");
    std::ostringstream log;
    VerifyOutcome out = verify_claim(c, log);
    CHECK(!out.pass);
    CHECK(!out.violations.empty());
    CHECK(log.str().find("FAIL") != std::string::npos);
}

TEST_CASE("verify: two-sided bound on the upal machine") {
    Claim c = claim_from(R"x({
        "machine": {"builder": "upal", "params": {"N": 3}},
        "language": "upal",
        "bound_type": "two_sided",
        "bound": "1/3",
        "max_len": 5,
        "tol": 1e-9
    })x");
    std::ostringstream log;
    CHECK(verify_claim(c, log).pass);
}

TEST_CASE("verify: nondeterministic mode for the GFA and the nbca") {
    std::ostringstream log;
    CHECK(verify_claim(claim_from(R"x({
        "machine": {"builder": "lijk_gfa"},
        "language": "ijk",
        "bound_type": "nondet_mode",
        "max_len": 6
    })x"), log).pass);
    CHECK(verify_claim(claim_from(R"x({
        "machine": {"builder": "lsay_nbca"},
        "language": "say",
        "bound_type": "nondet_mode",
        "max_len": 8
    })x"), log).pass);
    // Wrong language: must fail.
    CHECK(!verify_claim(claim_from(R"x({
        "machine": {"builder": "lsay_nbca"},
        "language": "upal",
        "bound_type": "nondet_mode",
        "max_len": 6
    })x"), log).pass);
}

TEST_CASE("verify: exact zero complement over the compiled machine") {
    std::ostringstream log;
    CHECK(verify_claim(claim_from(R"x({
        "machine": {"builder": "eq_dbca", "params": {"t": 1}},
        "language": "eq(1)",
        "bound_type": "exact_zero_complement",
        "max_len": 7
    })x"), log).pass);
    CHECK(verify_claim(claim_from(R"x({
        "machine": {"builder": "eq_dbca", "params": {"t": 2}},
        "language": "eq(2)",
        "bound_type": "exact_zero_complement",
        "max_len": 5
    })x"), log).pass);
}

TEST_CASE("verify: exact classical bounds for the twin machines") {
    std::ostringstream log;
    CHECK(verify_claim(claim_from(R"x({
        "machine": {"builder": "twin_pkfa", "params": {"k": 2}},
        "language": "twin(2)",
        "bound_type": "one_sided_negative",
        "bound": "1/2",
        "max_len": 7,
        "tol": 0
    })x"), log).pass);
    CHECK(verify_claim(claim_from(R"x({
        "machine": {"builder": "twin_p2fa", "params": {"t": 2}},
        "language": "twin(2)",
        "bound_type": "one_sided_negative",
        "bound": "1/2",
        "max_len": 7,
        "tol": 0
    })x"), log).pass);
}

TEST_CASE("sweep CSV is deterministic and carries the oracle column") {
    Machine m = build_named_machine("upal", {{"N", 2}});
    SweepOptions opts;
    opts.language = LanguageId::parse("upal");
    std::ostringstream a, b;
    write_sweep_csv(m, 4, a, opts);
    write_sweep_csv(m, 4, b, opts);
    CHECK(a.str() == b.str());
    // Header plus 2^0 + ... + 2^4 = 31 rows.
    long lines = 0;
    for (char ch : a.str()) lines += ch == '\n';
    CHECK(lines == 32);
    CHECK(a.str().substr(0, 34) == "input,accept,reject,pending,member");
    CHECK(a.str().find("\nab,1,") != std::string::npos);
    CHECK(a.str().find(",0,1\nba,") != std::string::npos); // member column for ab
    CHECK(a.str().find("ba,0,1,0,0") != std::string::npos);
}

TEST_CASE("sweep CSV for the GFA prints exact values in sorted order") {
    Machine m = build_named_machine("lijk_gfa", {});
    SweepOptions opts;
    opts.language = LanguageId::parse("ijk");
    std::ostringstream csv;
    write_sweep_csv(m, 3, csv, opts);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line); // header
    std::getline(in, line);
    CHECK(line == ",0,0,0,0"); // empty word first
    bool sawAbc = false;
    while (std::getline(in, line)) {
        if (line.rfind("abc,", 0) == 0) {
            sawAbc = true;
            CHECK(line == "abc,0,0,0,0"); // counts 1,1,1 all equal
        }
    }
    CHECK(sawAbc);
}

TEST_CASE("builder registry rejects unknown names and missing parameters") {
    CHECK_THROWS_AS(build_named_machine("nope", {}), InputError);
    CHECK_THROWS_AS(build_named_machine("upal", {}), InputError);
    CHECK(builder_names().size() == 11);
}
