#include <catch2/catch_amalgamated.hpp>

#include <qelong/expr.hpp>

using namespace qelong;

TEST_CASE("parser accepts the catalog grammar") {
    CHECK_NOTHROW(parse_expr("f1"));
    CHECK_NOTHROW(parse_expr("q^2 * R5^-3"));
    CHECK_NOTHROW(parse_expr("f2^(25c+5) * f1^-(75c+16)"));
    CHECK_NOTHROW(parse_expr("f10^c * f5^(-3c+4)"));
    CHECK_NOTHROW(parse_expr("extract(f1, 5, 1)"));
    CHECK_NOTHROW(parse_expr("-32*K^-1 - 9 - 2*K"));
    CHECK_NOTHROW(parse_expr("(1 + K)^7 * K^-4"));
    CHECK_NOTHROW(parse_expr("3*f2^7 / (q*f1^3*f5*f10^3)"));

    CHECK_THROWS_AS(parse_expr(""), parse_error);
    CHECK_THROWS_AS(parse_expr("f"), parse_error);
    CHECK_THROWS_AS(parse_expr("f1 +"), parse_error);
    CHECK_THROWS_AS(parse_expr("f1 ) q"), parse_error);
    CHECK_THROWS_AS(parse_expr("extract(f1, 5)"), parse_error);
    CHECK_THROWS_AS(parse_expr("G"), parse_error);
}

TEST_CASE("evaluation matches direct construction") {
    ExactRing Z;
    auto e = parse_expr("f1");
    auto s = eval_expr(*e, 80, Z, {});
    CHECK(eq_to_precision(s, eta1_series(80, Z), 80));

    auto quot = eval_expr(*parse_expr("f2^3 / f1^2"), 60, Z, {});
    auto direct = eta_quotient({0, {{2, 3}, {1, -2}}}, 60, Z);
    CHECK(eq_to_precision(quot, direct, 60));

    auto kexpr = eval_expr(*parse_expr("K"), 50, Z, {});
    CHECK(eq_to_precision(kexpr, param_K(50, Z), 50));

    auto sliced = eval_expr(*parse_expr("extract(f1, 5, 1)"), 40, Z, {});
    auto f5 = eta_series(5, 40, Z);
    CHECK(eq_to_precision(sliced, -f5, 40));
}

TEST_CASE("parameterized exponents need a bound c") {
    ExactRing Z;
    auto e = parse_expr("f2^(3c+1)");
    CHECK_THROWS_AS(eval_expr(*e, 20, Z, {}), std::invalid_argument);
    EvalContext ctx{nullptr, 2};
    auto s = eval_expr(*e, 20, Z, ctx);
    CHECK(eq_to_precision(s, pow(eta_series(2, 22, Z), 7).truncated(20), 20));
}

TEST_CASE("combination atoms resolve through the table") {
    ComboTable table;
    table.polys.emplace('B', LaurentPoly::term(bigint(-32), -1) +
                                 LaurentPoly::term(bigint(-9), 0) +
                                 LaurentPoly::term(bigint(-2), 1));
    EvalContext ctx{&table, std::nullopt};
    ExactRing Z;
    auto via_atom = eval_expr(*parse_expr("B"), 40, Z, ctx);
    auto via_kform = eval_expr(*parse_expr("-32*K^-1 - 9 - 2*K"), 40, Z, {});
    long long N = std::min(via_atom.precision(), via_kform.precision());
    REQUIRE(N >= 35);
    CHECK(eq_to_precision(via_atom, via_kform, N));

    CHECK_THROWS(eval_expr(*parse_expr("A"), 20, Z, ctx)); // not in the table
}

TEST_CASE("identity checking verdicts") {
    EvalContext ctx{};
    auto pass = check_identity(*parse_expr("f1*f2"), *parse_expr("f2*f1"), 0, 60, ctx);
    CHECK(pass.pass);
    CHECK(pass.checked_to == 60);

    auto fail = check_identity(*parse_expr("f1"), *parse_expr("f1 + q^30"), 0, 60, ctx);
    CHECK_FALSE(fail.pass);
    REQUIRE(fail.first_mismatch.has_value());
    CHECK(*fail.first_mismatch == 30);

    // frobenius congruence f_1^5 == f_5 mod 5
    auto frob = check_identity(*parse_expr("f1^5"), *parse_expr("f5"), 5, 100, ctx);
    CHECK(frob.pass);
    auto not_exact = check_identity(*parse_expr("f1^5"), *parse_expr("f5"), 0, 100, ctx);
    CHECK_FALSE(not_exact.pass);
}

TEST_CASE("binomial reduction used throughout the derivations") {
    // f_2^8 / f_1^25 == f_2^8 / f_5^5 mod 25 because f_1^25 == f_5^5 mod 25
    EvalContext ctx{};
    auto v = check_identity(*parse_expr("f2^8 / f1^25"),
                            *parse_expr("f2^8 / f5^5"), 25, 150, ctx);
    CHECK(v.pass);
    auto v2 = check_identity(*parse_expr("f1^25"), *parse_expr("f5^5"), 25, 150, ctx);
    CHECK(v2.pass);
}

TEST_CASE("negation and precedence") {
    ExactRing Z;
    auto a = eval_expr(*parse_expr("-q + q"), 10, Z, {});
    CHECK(a.is_zero());
    auto b = eval_expr(*parse_expr("2 + 3*4"), 5, Z, {});
    CHECK(b.coeff(0) == 14);
    auto c = eval_expr(*parse_expr("(2 + 3)*4"), 5, Z, {});
    CHECK(c.coeff(0) == 20);
}
