#include <catch2/catch_amalgamated.hpp>

#include <qelong/qseries.hpp>

#include <random>

using namespace qelong;

namespace {

// Literal finite-product oracle for prod_{n>=1} (1 - q^{mn}), no pentagonal
// shortcut: multiply the factors one at a time on a plain vector.
std::vector<long long> eta_product_oracle(long long m, long long N) {
    std::vector<long long> c(static_cast<std::size_t>(N));
    c[0] = 1;
    for (long long d = m; d < N; d += m)
        for (long long n = N - 1; n >= d; --n)
            c[static_cast<std::size_t>(n)] -= c[static_cast<std::size_t>(n - d)];
    return c;
}

} // namespace

TEST_CASE("pentagonal f_1 matches the literal product") {
    ExactRing Z;
    auto f1 = eta1_series(120, Z);
    auto oracle = eta_product_oracle(1, 120);
    for (long long n = 0; n < 120; ++n)
        REQUIRE(f1.coeff(n) == oracle[static_cast<std::size_t>(n)]);
}

TEST_CASE("scaled eta series matches the literal product") {
    ExactRing Z;
    for (long long m : {2, 5, 10, 25, 50}) {
        auto fm = eta_series(m, 101, Z);
        CHECK(fm.precision() >= 101);
        auto oracle = eta_product_oracle(m, 101);
        for (long long n = 0; n < 101; ++n)
            REQUIRE(fm.coeff(n) == oracle[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("partition series inverts f_1") {
    ExactRing Z;
    auto p = partition_series(60, Z);
    long long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(p.coeff(n) == expected[n]);
    CHECK(p.coeff(49) == 173525);

    auto prod = p * eta1_series(60, Z);
    CHECK(prod.coeff(0) == 1);
    for (long long n = 1; n < 60; ++n) REQUIRE(prod.coeff(n) == 0);

    auto inv = invert(eta1_series(60, Z));
    for (long long n = 0; n < 58; ++n) REQUIRE(inv.coeff(n) == p.coeff(n));
}

TEST_CASE("continued-fraction expansion and the f_1 dissection") {
    ExactRing Z;
    auto R = rogers_ramanujan(40, Z);
    long long expected[] = {1, -1, 1, 0, -1, 1, -1, 1, 0, -1, 2, -3, 2};
    for (int n = 0; n <= 12; ++n) CHECK(R.coeff(n) == expected[n]);

    // f_1 = f_25 (1/R(q^5) - q - q^2 R(q^5)) ties R to the eta products
    long long N = 120;
    auto R5 = substitute_power(rogers_ramanujan((N + 4) / 5 + 3, Z), 5);
    auto q = Series<ExactRing>::monomial(Z, 1, 1, N);
    auto bracket = invert(R5) - q - q * q * R5;
    auto lhs = eta_series(25, N, Z) * bracket;
    auto f1 = eta1_series(N, Z);
    long long M = std::min(lhs.precision(), f1.precision());
    REQUIRE(M >= 100);
    CHECK(eq_to_precision(lhs, f1, M));
}

TEST_CASE("parameters K and L differ by the constant 4") {
    ExactRing Z;
    auto K = param_K(80, Z);
    auto L = param_L(80, Z);
    CHECK(K.valuation() == -1);
    CHECK(K.coeff(-1) == 1);
    auto diff = K - L;
    long long N = std::min(diff.precision(), 70LL);
    for (long long n = -1; n < N; ++n) REQUIRE(diff.coeff(n) == (n == 0 ? 4 : 0));
}

TEST_CASE("eta quotient handles shifts and rejects bad specs") {
    ExactRing Z;
    auto s = eta_quotient({-2, {{1, 1}, {2, -1}}}, 30, Z);
    CHECK(s.valuation() == -2);
    // q^-2 f_1/f_2 = q^-2 (1 - q - q^2 + ...)
    CHECK(s.coeff(-2) == 1);
    CHECK(s.coeff(-1) == -1);
    CHECK_THROWS_AS(eta_quotient({0, {{2, 1}, {2, 1}}}, 10, Z),
                    std::invalid_argument);
    CHECK_THROWS_AS(eta_quotient({0, {{0, 1}}}, 10, Z), std::invalid_argument);
}

TEST_CASE("extraction examples") {
    ExactRing Z;
    // the 5-dissection of f_1 has -f_5 in residue class 1
    auto f1 = eta1_series(201, Z);
    auto slice = extract(f1, 5, 1);
    auto f5 = eta_series(5, slice.precision(), Z);
    CHECK(eq_to_precision(slice, -f5.truncated(slice.precision()),
                          slice.precision()));

    // residue normalization: r = -4 is the same slice as r = 1
    auto slice2 = extract(f1, 5, -4);
    CHECK(eq_to_precision(slice, slice2, slice.precision()));
}

TEST_CASE("dissection completeness and linearity") {
    ModRing ring(125);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> dist(0, 124);
    std::vector<std::uint64_t> c(90);
    for (auto& x : c) x = dist(rng);
    Series<ModRing> F(ring, -7, c, 83);

    for (long long m : {2, 5}) {
        // reassembling every slice recovers F
        Series<ModRing> acc = Series<ModRing>::zero(ring, F.precision());
        for (long long r = 0; r < m; ++r) {
            auto part = substitute_power(extract(F, m, r), m);
            auto shifted = part * Series<ModRing>::monomial(
                                      ring, 1, r, part.precision() + r);
            acc = acc + shifted;
        }
        long long N = std::min(acc.precision(), F.precision());
        REQUIRE(N >= 65);
        CHECK(eq_to_precision(acc, F, N));
    }

    std::vector<std::uint64_t> c2(90);
    for (auto& x : c2) x = dist(rng);
    Series<ModRing> G(ring, -7, c2, 83);
    for (long long r = 0; r < 5; ++r) {
        auto lhs = extract(F + G, 5, r);
        auto rhs = extract(F, 5, r) + extract(G, 5, r);
        CHECK(eq_to_precision(lhs, rhs, std::min(lhs.precision(), rhs.precision())));
    }
}

TEST_CASE("extraction inverts power substitution") {
    ExactRing Z;
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> dist(-9, 9);
    std::vector<bigint> c(40);
    for (auto& x : c) x = dist(rng);
    Series<ExactRing> a(Z, -3, c, 37);
    for (long long m : {2, 3, 5}) {
        auto blown = substitute_power(a, m);
        auto back = extract(blown, m, 0);
        long long N = std::min(back.precision(), a.precision());
        CHECK(eq_to_precision(back, a, N));
        for (long long r = 1; r < m; ++r) CHECK(extract(blown, m, r).is_zero());
    }
}
