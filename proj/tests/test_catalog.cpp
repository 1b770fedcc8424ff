#include <catch2/catch_amalgamated.hpp>

#include <qelong/catalog.hpp>

#include <cstdio>
#include <fstream>

using namespace qelong;

namespace {
const Catalog& cat() {
    static Catalog c = load_catalog(QELONG_DATA_DIR);
    return c;
}
} // namespace

TEST_CASE("catalog inventory") {
    CHECK(cat().identities.size() == 46);
    CHECK(cat().combos.polys.size() == 6);
    CHECK(cat().pipelines.size() == 9);
    CHECK(cat().families.size() == 67);
    for (char name : {'A', 'B', 'C', 'D', 'E', 'F'})
        CHECK(cat().combos.polys.count(name) == 1);
}

TEST_CASE("identity entries carry their attributes") {
    const auto& e21 = cat().identities.at("eq2.1");
    CHECK(e21.modulus == 0);
    CHECK(e21.precision == 1000);
    CHECK_FALSE(e21.uses_c);

    const auto& e36 = cat().identities.at("eq3.6");
    CHECK(e36.modulus == 25);
    CHECK(e36.uses_c);

    const auto& e64 = cat().identities.at("eq6.4m");
    CHECK(e64.modulus == 5);
}

TEST_CASE("combination expansions hit the stated corner coefficients") {
    const auto& A = cat().combos.get('A');
    CHECK(A.coeff(-4) == 2816);
    CHECK(A.coeff(3) == -44);
    CHECK(A.min_exp() == -4);
    CHECK(A.max_exp() == 3);

    const auto& B = cat().combos.get('B');
    CHECK(B.coeff(-1) == -32);
    CHECK(B.coeff(0) == -9);
    CHECK(B.coeff(1) == -2);

    const auto& C = cat().combos.get('C');
    CHECK(C.coeff(-1) == 8);
    CHECK(C.coeff(0) == -9);
    CHECK(C.coeff(1) == 8);

    const auto& D = cat().combos.get('D');
    CHECK(D.coeff(-6) == -16384);
    CHECK(D.coeff(3) == 36);

    const auto& E = cat().combos.get('E');
    CHECK(E.coeff(-5) == -12288);
    CHECK(E.coeff(5) == -65);

    const auto& F = cat().combos.get('F');
    CHECK(F.coeff(4) == 63);
    CHECK(F.coeff(-8) == 4128768);
}

TEST_CASE("pipeline scripts are well formed") {
    bool saw_c = false;
    for (const auto& script : cat().pipelines) {
        REQUIRE_FALSE(script.steps.empty());
        CHECK(script.steps.front().action == PipelineStep::Action::start);
        auto last = script.steps.back().action;
        CHECK((last == PipelineStep::Action::assert_zero ||
               last == PipelineStep::Action::extract_zero));
        saw_c = saw_c || script.uses_c;
    }
    CHECK(saw_c);
}

TEST_CASE("family patterns parse into their parts") {
    const CongruenceFamily* f16 = nullptr;
    const CongruenceFamily* thm16 = nullptr;
    const CongruenceFamily* part = nullptr;
    for (const auto& f : cat().families) {
        if (f.label == "fam25.k16") f16 = &f;
        if (f.label == "fam125c.k0") thm16 = &f;
        if (f.label == "partition.5n4") part = &f;
    }
    REQUIRE(f16);
    CHECK(f16->k_modulus == 25);
    CHECK(f16->k_residue == 16);
    CHECK(f16->arg_modulus == 25);
    CHECK(f16->arg_residues == std::vector<long long>{8});
    CHECK(f16->modulus == 5);
    CHECK(f16->k_for(2) == 66);

    REQUIRE(thm16);
    CHECK(thm16->arg_residues == std::vector<long long>{74, 99, 124});
    CHECK(thm16->modulus == 125);

    REQUIRE(part);
    CHECK(part->k_modulus == 0);
    CHECK(part->k_for(9) == 0);
}

TEST_CASE("a catalog identity and a pipeline run end to end") {
    EvalContext ctx{&cat().combos, std::nullopt};
    const auto& e = cat().identities.at("eq2.1");
    auto v = check_identity(*e.lhs, *e.rhs, e.modulus, 150, ctx);
    CHECK(v.pass);

    for (const auto& script : cat().pipelines) {
        if (script.id != "sec3.eq32") continue;
        auto rep = replay_pipeline(script, 300, ctx);
        CHECK(rep.pass);
        CHECK(rep.steps.size() == script.steps.size());
    }
}

TEST_CASE("malformed catalogs are rejected") {
    auto write_tmp = [](const std::string& text) {
        std::string path = "malformed_test.cat";
        std::ofstream out(path);
        out << text;
        return path;
    };
    Catalog scratch;
    auto p1 = write_tmp("identity broken\n  lhs: f1\nend\n");
    CHECK_THROWS_AS(load_identities(p1, scratch), catalog_error);
    auto p2 = write_tmp("family nolabel k=bogus\n");
    CHECK_THROWS(load_families(p2, scratch));
    auto p3 = write_tmp("pipeline x mod 5\n  warp: f1\nend\n");
    CHECK_THROWS_AS(load_pipelines(p3, scratch), catalog_error);
    auto p4 = write_tmp("identity dangling mod 5\n  lhs: f1\n  rhs: f1\n");
    CHECK_THROWS_AS(load_identities(p4, scratch), catalog_error);
    std::remove("malformed_test.cat");
    CHECK_THROWS_AS(load_catalog("/nonexistent/dir"), catalog_error);
}
