#include <doctest.h>

#include "qalab/constructions.hpp"
#include "qalab/languages.hpp"

using namespace qalab;

namespace {

double accept_rt(const QMachineSpec& spec, const std::string& w, CounterAcceptance ca) {
    return run_realtime(spec, spec.alphabet.tokenize(w), ca).accept;
}

double accept_ow(const QMachineSpec& spec, const std::string& w) {
    return run_oneway(spec, spec.alphabet.tokenize(w)).accept;
}

} // namespace

TEST_CASE("upal machine: shape and error bound") {
    for (long N : {2L, 3L}) {
        auto spec = build_upal_qbca(N);
        // The machine proper has 3 + 4N states; completion adds one sink.
        CHECK(static_cast<long>(spec.states.size()) == 3 + 4 * N + 1);
        CHECK(accept_rt(spec, "aabb", CounterAcceptance::RequireZero) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(accept_rt(spec, "abab", CounterAcceptance::RequireZero) <=
              1.0 / static_cast<double>(N) + 1e-9);
        LanguageId upal{LanguageTag::Upal, 0};
        for_each_word(2, 7, [&](const std::vector<int>& word) {
            bool member = oracle_tokens(upal, word, spec.alphabet);
            for (auto ca : {CounterAcceptance::RequireZero, CounterAcceptance::Ignore}) {
                double p = run_realtime(spec, word, ca).accept;
                if (member) CHECK(p >= 1.0 - 1e-9);
                else CHECK(p <= 1.0 / static_cast<double>(N) + 1e-9);
            }
            return true;
        });
    }
}

TEST_CASE("upal_star machine: blockwise checking") {
    for (long N : {2L, 3L}) {
        auto spec = build_upal_star_qbca(N);
        CHECK(accept_rt(spec, "abab", CounterAcceptance::RequireZero) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(accept_rt(spec, "ab", CounterAcceptance::RequireZero) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(accept_rt(spec, "aabab", CounterAcceptance::RequireZero) <=
              1.0 / static_cast<double>(N) + 1e-9);
        LanguageId star{LanguageTag::UpalStar, 0};
        for_each_word(2, 7, [&](const std::vector<int>& word) {
            bool member = oracle_tokens(star, word, spec.alphabet);
            for (auto ca : {CounterAcceptance::RequireZero, CounterAcceptance::Ignore}) {
                double p = run_realtime(spec, word, ca).accept;
                if (member) CHECK(p >= 1.0 - 1e-9);
                else CHECK(p <= 1.0 / static_cast<double>(N) + 1e-9);
            }
            return true;
        });
    }
}

TEST_CASE("upal1 machine: waits make members synchronize") {
    for (long N : {2L, 3L}) {
        auto spec = build_upal1_qfa(N);
        CHECK(accept_ow(spec, "b") == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(accept_ow(spec, "aabaa") == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(accept_ow(spec, "ab") ==
              doctest::Approx(1.0 / static_cast<double>(N)).epsilon(1e-9));
        CHECK(accept_ow(spec, "abab") == doctest::Approx(0.0).epsilon(1e-9));
        LanguageId lang{LanguageTag::UpalT, 1};
        for_each_word(2, 7, [&](const std::vector<int>& word) {
            double p = run_oneway(spec, word).accept;
            if (oracle_tokens(lang, word, spec.alphabet)) CHECK(p >= 1.0 - 1e-9);
            else CHECK(p <= 1.0 / static_cast<double>(N) + 1e-9);
            return true;
        });
    }
}

TEST_CASE("upal1 sharp value on unbalanced a^m b a^n") {
    for (long N : {2L, 3L, 4L}) {
        auto spec = build_upal1_qfa(N);
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                if (m == n) continue;
                std::string w(static_cast<size_t>(m), 'a');
                w += 'b';
                w += std::string(static_cast<size_t>(n), 'a');
                CHECK(accept_ow(spec, w) ==
                      doctest::Approx(1.0 / static_cast<double>(N)).epsilon(1e-9));
            }
    }
}

TEST_CASE("staged upal_t machine at t=2") {
    for (long N : {2L, 3L}) {
        auto spec = build_upal_t_qfa(2, N);
        CHECK(accept_ow(spec, "abbba") == doctest::Approx(1.0).epsilon(1e-9));
        LanguageId lang{LanguageTag::UpalT, 2};
        for_each_word(2, 8, [&](const std::vector<int>& word) {
            double p = run_oneway(spec, word).accept;
            if (oracle_tokens(lang, word, spec.alphabet)) CHECK(p >= 1.0 - 1e-9);
            else CHECK(p <= 1.0 / static_cast<double>(N) + 1e-9);
            return true;
        });
    }
}

TEST_CASE("upal_t reduces to the upal1 machine at t=1") {
    for (long N : {2L, 3L}) {
        auto staged = build_upal_t_qfa(1, N);
        auto reference = build_upal1_qfa(N);
        for_each_word(2, 7, [&](const std::vector<int>& word) {
            CHECK(run_oneway(staged, word).accept ==
                  doctest::Approx(run_oneway(reference, word).accept).epsilon(1e-9));
            return true;
        });
    }
}

TEST_CASE("builders yield well-formed machines") {
    for (long N : {2L, 3L}) {
        for (const char* w : {"", "ab", "ba", "aabb", "abab"}) {
            auto upal = build_upal_qbca(N);
            CHECK(check_well_formed(upal, upal.alphabet.tokenize(w), 1e-9).ok());
            auto star = build_upal_star_qbca(N);
            CHECK(check_well_formed(star, star.alphabet.tokenize(w), 1e-9).ok());
            auto one = build_upal1_qfa(N);
            CHECK(check_well_formed(one, one.alphabet.tokenize(w), 1e-9).ok());
            auto staged = build_upal_t_qfa(2, N);
            CHECK(check_well_formed(staged, staged.alphabet.tokenize(w), 1e-9).ok());
        }
    }
}

TEST_CASE("qft_block matches the dollar rows of the upal machine") {
    const long N = 2;
    auto block = qft_block({10, 11}, {20, 21}, N);
    REQUIRE(block.size() == 4);
    for (const auto& e : block) {
        long j = e.source - 9, l = e.target - 19;
        CHECK(e.amp == AmpExpr::qft_entry(N, j, l));
    }
    // Column norms are 1.
    for (long j = 1; j <= N; ++j) {
        double norm = 0;
        for (const auto& e : block)
            if (e.source == 9 + j) norm += std::norm(e.amp.value());
        CHECK(norm == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(qft_block({1}, {2, 3}, 2), ConstructionError);
}

TEST_CASE("builder parameter validation") {
    CHECK_THROWS_AS(build_upal_qbca(1), ConstructionError);
    CHECK_THROWS_AS(build_upal_star_qbca(0), ConstructionError);
    CHECK_THROWS_AS(build_upal1_qfa(1), ConstructionError);
    CHECK_THROWS_AS(build_upal_t_qfa(0, 2), ConstructionError);
    CHECK_THROWS_AS(build_upal_t_qfa(1, 1), ConstructionError);
}

TEST_CASE("staged upal_t builder generalizes to t=3") {
    auto spec = build_upal_t_qfa(3, 2);
    CHECK(check_well_formed(spec, spec.alphabet.tokenize("ab"), 1e-9).ok());
    CHECK(accept_ow(spec, "bbbbb") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(accept_ow(spec, "abbbbba") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(accept_ow(spec, "ababbbaba") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(accept_ow(spec, "abbbbb") <= 0.5 + 1e-9);
    CHECK(accept_ow(spec, "babbbba") <= 0.5 + 1e-9);
    LanguageId lang{LanguageTag::UpalT, 3};
    for_each_word(2, 9, [&](const std::vector<int>& word) {
        double p = run_oneway(spec, word).accept;
        if (oracle_tokens(lang, word, spec.alphabet)) CHECK(p >= 1.0 - 1e-9);
        else CHECK(p <= 0.5 + 1e-9);
        return true;
    });
}
