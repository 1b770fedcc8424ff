#include <catch2/catch_amalgamated.hpp>

#include <qelong/series.hpp>

#include <random>

using namespace qelong;

namespace {

Series<ModRing> random_series(std::mt19937_64& rng, const ModRing& ring,
                              long long val, long long prec, bool unit_lead) {
    std::uniform_int_distribution<std::uint64_t> dist(0, ring.modulus - 1);
    std::vector<std::uint64_t> c(static_cast<std::size_t>(prec - val));
    for (auto& x : c) x = dist(rng);
    if (unit_lead) {
        while (!ring.is_unit(c[0])) c[0] = dist(rng);
    }
    return Series<ModRing>(ring, val, std::move(c), prec);
}

} // namespace

TEST_CASE("modular ring arithmetic") {
    ModRing r(15625);
    CHECK(r.from_int(-1) == 15624);
    CHECK(r.mul(15624, 15624) == 1);
    CHECK(r.add(15000, 1000) == 375);
    CHECK(r.is_unit(2));
    CHECK_FALSE(r.is_unit(5));
    CHECK(r.mul(r.inv(7), 7) == 1);
    CHECK(r.mul(r.inv(15624), 15624) == 1);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> dist(0, 15624);
    for (int i = 0; i < 500; ++i) {
        auto a = dist(rng), b = dist(rng), c = dist(rng);
        CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
        CHECK(r.mul(a, b) == r.mul(b, a));
        CHECK(r.add(a, r.neg(a)) == 0);
        CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
    }
}

TEST_CASE("series normalization and zero conventions") {
    ModRing r(25);
    // leading zeros migrate into the valuation
    Series<ModRing> s(r, 2, {0, 0, 3, 1}, 6);
    CHECK(s.valuation() == 4);
    CHECK(s.coeff(4) == 3);
    CHECK(s.coeff(2) == 0);

    // an all-zero window is the zero series with valuation == precision
    Series<ModRing> z(r, -1, {0, 0, 0}, 2);
    CHECK(z.is_zero());
    CHECK(z.valuation() == z.precision());
    CHECK(z.coeff(0) == 0);
    CHECK_THROWS_AS(z.coeff(2), insufficient_precision);
}

TEST_CASE("coefficient access past the provable window throws") {
    ExactRing Z;
    auto s = Series<ExactRing>::monomial(Z, 3, -2, 5);
    CHECK(s.coeff(-2) == 3);
    CHECK(s.coeff(4) == 0);
    CHECK_THROWS_AS(s.coeff(5), insufficient_precision);
    CHECK(s.coeff(-7) == 0); // below the valuation is provably zero
}

TEST_CASE("arithmetic examples") {
    ExactRing Z;
    auto q = Series<ExactRing>::monomial(Z, 1, 1, 8);
    auto one = Series<ExactRing>::one(Z, 8);
    auto sum = one + q;
    auto prod = sum * sum;
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(1) == 2);
    CHECK(prod.coeff(2) == 1);
    CHECK(prod.coeff(3) == 0);
    auto diff = prod - sum - q;
    CHECK(diff.coeff(2) == 1);
    CHECK(diff.coeff(1) == 0);
    CHECK((-diff).coeff(2) == -1);
}

TEST_CASE("multiplication precision is pessimistic") {
    ModRing r(5);
    Series<ModRing> a(r, 2, {1, 2, 3}, 5);   // window [2,5)
    Series<ModRing> b(r, -1, {4, 1}, 1);     // window [-1,1)
    auto p = a * b;
    // min(Pa + vb, Pb + va) = min(5-1, 1+2) = 3
    CHECK(p.precision() == 3);
    CHECK(p.valuation() == 1);
}

TEST_CASE("inverse of a unit series round-trips") {
    ModRing r(15625);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long long> vdist(-3, 3);
    for (int i = 0; i < 200; ++i) {
        long long v = vdist(rng);
        auto a = random_series(rng, r, v, v + 30, true);
        auto inv = invert(a);
        CHECK(inv.valuation() == -v);
        auto prod = a * inv;
        bool ok = true;
        for (long long n = prod.valuation(); n < prod.precision(); ++n)
            ok = ok && (prod.coeff(n) == (n == 0 ? 1u : 0u));
        CHECK(ok);
    }
    auto nonunit = Series<ModRing>(r, 0, {5, 1}, 2);
    CHECK_THROWS_AS(invert(nonunit), non_unit);
}

TEST_CASE("power additivity and negative exponents") {
    ModRing r(3125);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        auto a = random_series(rng, r, 0, 25, true);
        auto lhs = pow(a, 2) * pow(a, 3);
        auto rhs = pow(a, 5);
        long long N = std::min(lhs.precision(), rhs.precision());
        CHECK(eq_to_precision(lhs, rhs, N));
        auto back = pow(a, -2) * pow(a, 3);
        long long M = std::min(back.precision(), a.precision());
        CHECK(eq_to_precision(back, a, M));
    }
    ExactRing Z;
    auto one = Series<ExactRing>::one(Z, 6);
    CHECK(pow(one, 0).coeff(0) == 1);
}

TEST_CASE("substitute_power spreads exponents") {
    ExactRing Z;
    Series<ExactRing> a(Z, -1, {1, 2, 3}, 2); // q^-1 + 2 + 3q
    auto b = substitute_power(a, 3);
    CHECK(b.valuation() == -3);
    CHECK(b.coeff(-3) == 1);
    CHECK(b.coeff(0) == 2);
    CHECK(b.coeff(3) == 3);
    CHECK(b.coeff(1) == 0);
    CHECK(b.precision() == 3 * (2 - 1) + 1);
}

TEST_CASE("reduce_mod is a ring morphism") {
    ExactRing Z;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> dist(-50, 50);
    for (int i = 0; i < 50; ++i) {
        std::vector<bigint> ca(12), cb(12);
        for (auto& x : ca) x = dist(rng);
        for (auto& x : cb) x = dist(rng);
        Series<ExactRing> a(Z, 0, ca, 12), b(Z, 0, cb, 12);
        auto lhs = reduce_mod(a * b, 125);
        auto rhs = reduce_mod(a, 125) * reduce_mod(b, 125);
        CHECK(eq_to_precision(lhs, rhs, 12));
        auto sum = reduce_mod(a + b, 125);
        auto sum2 = reduce_mod(a, 125) + reduce_mod(b, 125);
        CHECK(eq_to_precision(sum, sum2, 12));
    }
    // Mod-to-mod reduction requires divisibility
    ModRing r(125);
    auto s = Series<ModRing>::one(r, 4);
    CHECK(reduce_mod(s, 25).coeff(0) == 1);
    CHECK_THROWS_AS(reduce_mod(s, 7), std::invalid_argument);
}

TEST_CASE("first_difference demands enough precision") {
    ModRing r(5);
    Series<ModRing> a(r, 0, {1, 2, 3}, 3);
    Series<ModRing> b(r, 0, {1, 2, 4}, 3);
    auto d = first_difference(a, b, 3);
    REQUIRE(d.has_value());
    CHECK(*d == 2);
    CHECK_FALSE(first_difference(a, a, 3).has_value());
    CHECK_THROWS_AS(first_difference(a, b, 4), insufficient_precision);
}
