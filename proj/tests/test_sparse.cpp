#include <doctest.h>

#include <random>

#include "qalab/sparse.hpp"

using namespace qalab;
using Cx = std::complex<double>;

namespace {

SparseMap<int, Rational> random_map(std::mt19937& rng, int keys, int entries) {
    std::uniform_int_distribution<int> key(0, keys - 1);
    std::uniform_int_distribution<long> val(-5, 5);
    SparseMap<int, Rational> m;
    for (int i = 0; i < entries; ++i) m.add(key(rng), key(rng), Rational(val(rng), 1 + (i % 3)));
    return m;
}

SparseVec<int, Rational> random_vec(std::mt19937& rng, int keys, int entries) {
    std::uniform_int_distribution<int> key(0, keys - 1);
    std::uniform_int_distribution<long> val(-5, 5);
    SparseVec<int, Rational> v;
    for (int i = 0; i < entries; ++i) v.add(key(rng), Rational(val(rng), 1 + (i % 4)));
    return v;
}

} // namespace

TEST_CASE("apply: identity, zero, and the counter-difference step") {
    SparseVec<int, Rational> v;
    v.set(0, Rational(2));
    v.set(1, Rational(-3));
    SparseMap<int, Rational> identity;
    identity.add(0, 0, Rational(1));
    identity.add(1, 1, Rational(1));
    CHECK(mul(identity, v) == v);
    SparseMap<int, Rational> zero;
    CHECK(mul(zero, v).empty());
    // The a-step of the difference automaton sends (0,1)^T to (1,1)^T.
    SparseMap<int, Rational> aStep;
    aStep.add(0, 0, Rational(1));
    aStep.add(0, 1, Rational(1));
    aStep.add(1, 1, Rational(1));
    SparseVec<int, Rational> e1;
    e1.set(1, Rational(1));
    SparseVec<int, Rational> got = mul(aStep, e1);
    CHECK(got.get(0) == Rational(1));
    CHECK(got.get(1) == Rational(1));
}

TEST_CASE("no stored zeros after cancellation") {
    SparseVec<int, Rational> v;
    v.add(7, Rational(1, 2));
    v.add(7, Rational(-1, 2));
    CHECK(v.empty());
    SparseMap<int, Rational> m;
    m.add(1, 2, Rational(5));
    m.add(1, 2, Rational(-5));
    CHECK(m.empty());
}

TEST_CASE("tensor products") {
    SparseVec<int, Rational> e1, e2;
    e1.set(1, Rational(1));
    e2.set(2, Rational(1));
    auto t = tensor(e1, e2);
    CHECK(t.size() == 1);
    CHECK(t.get({1, 2}) == Rational(1));

    // I (x) M is block-diagonal copies of M.
    SparseMap<int, Rational> identity, m;
    identity.add(0, 0, Rational(1));
    identity.add(1, 1, Rational(1));
    m.add(0, 0, Rational(2));
    m.add(1, 0, Rational(3));
    auto block = tensor(identity, m);
    CHECK(block.get({0, 0}, {0, 0}) == Rational(2));
    CHECK(block.get({0, 1}, {0, 0}) == Rational(3));
    CHECK(block.get({1, 0}, {1, 0}) == Rational(2));
    CHECK(block.get({1, 1}, {1, 0}) == Rational(3));
    CHECK(block.get({1, 0}, {0, 0}) == Rational(0));
}

TEST_CASE("tensor multiplicativity on random sparse instances") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto m1 = random_map(rng, 4, 6);
        auto m2 = random_map(rng, 3, 5);
        auto v1 = random_vec(rng, 4, 3);
        auto v2 = random_vec(rng, 3, 3);
        auto lhs = mul(tensor(m1, m2), tensor(v1, v2));
        auto rhs = tensor(mul(m1, v1), mul(m2, v2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("orthonormality check accepts unitary families and names defects") {
    // Two maps splitting the identity: E_0 keeps key 0, E_1 keeps key 1.
    std::set<int> sources{0, 1};
    std::vector<SparseMap<int, Cx>> family(2);
    family[0].add(0, 0, Cx(1, 0));
    family[1].add(1, 1, Cx(0, 1)); // phase is irrelevant
    CHECK(check_columns_orthonormal(family, sources, 1e-9).empty());

    // A column of norm 1/2 is reported against its own source.
    std::vector<SparseMap<int, Cx>> defective(1);
    defective[0].add(0, 0, Cx(0.5, 0));
    defective[0].add(1, 1, Cx(1, 0));
    auto defects = check_columns_orthonormal(defective, sources, 1e-9);
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].a == 0);
    CHECK(defects[0].b == 0);
    CHECK(defects[0].deviation == doctest::Approx(0.75));

    // Non-orthogonal columns are reported as a pair.
    std::vector<SparseMap<int, Cx>> skew(1);
    double s = 1.0 / std::sqrt(2.0);
    skew[0].add(0, 0, Cx(s, 0));
    skew[0].add(1, 0, Cx(s, 0));
    skew[0].add(0, 1, Cx(s, 0));
    skew[0].add(1, 1, Cx(s, 0));
    auto skewDefects = check_columns_orthonormal(skew, sources, 1e-9);
    REQUIRE(skewDefects.size() == 1);
    CHECK(skewDefects[0].a == 0);
    CHECK(skewDefects[0].b == 1);
    CHECK(skewDefects[0].deviation == doctest::Approx(1.0));
}

TEST_CASE("orthonormality check agrees with dense Gram computation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    const int n = 6;
    std::set<int> sources;
    for (int i = 0; i < n; ++i) sources.insert(i);
    for (int trial = 0; trial < 20; ++trial) {
        // A random permutation with random phases split across two maps: a
        // genuinely orthonormal family.
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<SparseMap<int, Cx>> family(2);
        std::vector<std::vector<Cx>> dense(2, std::vector<Cx>(n * n, Cx(0, 0)));
        for (int i = 0; i < n; ++i) {
            double th = angle(rng);
            int which = i % 2;
            family[static_cast<size_t>(which)].add(perm[static_cast<size_t>(i)], i,
                                                   Cx(std::cos(th), std::sin(th)));
            dense[static_cast<size_t>(which)]
                 [static_cast<size_t>(perm[static_cast<size_t>(i)] * n + i)] =
                     Cx(std::cos(th), std::sin(th));
        }
        CHECK(check_columns_orthonormal(family, sources, 1e-9).empty());
        // Dense cross-check of sum_w E^dagger E = I.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Cx g(0, 0);
                for (const auto& mat : dense)
                    for (int r = 0; r < n; ++r)
                        g += std::conj(mat[static_cast<size_t>(r * n + i)]) *
                             mat[static_cast<size_t>(r * n + j)];
                CHECK(std::abs(g - (i == j ? Cx(1, 0) : Cx(0, 0))) < 1e-9);
            }
    }
}
