#include <doctest.h>

#include <random>

#include "qalab/rational.hpp"

using namespace qalab;

TEST_CASE("rational basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 5).is_zero());
    CHECK(Rational(7, 7).is_one());
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
    CHECK(Rational(1) / Rational(1, 4) == Rational(4));
    CHECK(Rational(-5).sign() == -1);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), ConstructionError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ConstructionError);
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("6/8") == Rational(3, 4));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse(" 1/2 ") == Rational(1, 2));
    CHECK(Rational(3, 4).str() == "3/4");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(0).str() == "0");
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
}

TEST_CASE("rational powers stay exact") {
    CHECK(Rational(2).pow_int(10) == Rational(1024));
    CHECK(Rational(2).pow_int(-3) == Rational(1, 8));
    CHECK(Rational(2, 3).pow_int(2) == Rational(4, 9));
    CHECK(Rational(5).pow_int(0) == Rational(1));
    CHECK(Rational(0).pow_int(3).is_zero());
    CHECK_THROWS_AS(Rational(0).pow_int(-1), ConstructionError);
    // Past the 64-bit range.
    Rational big = Rational(3).pow_int(64);
    CHECK(big == Rational::parse("3433683820292512484657849089281"));
    CHECK(big * Rational(3).pow_int(-64) == Rational(1));
}

TEST_CASE("rational arithmetic round-trips on random inputs") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    for (int i = 0; i < 500; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK((a + b) - b == a);
        CHECK((a - b) + b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK(Rational::parse(a.str()) == a);
    }
}

TEST_CASE("prime generator") {
    CHECK(first_primes(6) == std::vector<long>{2, 3, 5, 7, 11, 13});
    CHECK(first_primes(0).empty());
}
