#ifndef QELONG_CLI_HPP
#define QELONG_CLI_HPP

// Command-line front end: coefficients, identity checks, theorem-range
// verification, pipeline replay, the progression scanner, and combination
// display.  Exit codes: 0 every requested check verified in range, 1 a
// counterexample or failed identity, 2 configuration or precision error.
// json/csv output is deterministic (no timestamps) and field-complete.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "catalog.hpp"

namespace qelong {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    long long precision = 600;
    std::optional<std::uint64_t> modulus;
    long long c_max = 1;
    long long bound = 3000;
    std::string format = "plain";
    std::string catalog_dir;
};

namespace cli_detail {

inline std::string k_pattern(const CongruenceFamily& f) {
    if (f.k_modulus == 0) return std::to_string(f.k_residue);
    return std::to_string(f.k_modulus) + "c+" + std::to_string(f.k_residue);
}

inline std::string progression(const CongruenceFamily& f) {
    std::string s = std::to_string(f.arg_modulus) + "n+";
    for (std::size_t i = 0; i < f.arg_residues.size(); ++i)
        s += (i ? "," : "") + std::to_string(f.arg_residues[i]);
    return s;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline ordered_json report_json(const VerificationReport& r,
                                const CongruenceFamily* fam) {
    ordered_json j;
    j["label"] = r.label;
    if (fam) {
        j["k_pattern"] = k_pattern(*fam);
        j["progression"] = progression(*fam);
        j["modulus"] = fam->modulus;
    }
    j["verdict"] = verdict_name(r.verdict);
    j["c_max"] = r.c_max;
    j["coeff_bound"] = r.coeff_bound;
    j["precision_used"] = r.precision_used;
    if (r.witness) {
        j["counterexample"] = {{"c", r.witness->c},
                               {"n", r.witness->n},
                               {"coefficient", r.witness->coefficient}};
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline std::string witness_str(const VerificationReport& r) {
    if (!r.witness) return "";
    return "c=" + std::to_string(r.witness->c) + ";n=" +
           std::to_string(r.witness->n) + ";coeff=" +
           std::to_string(r.witness->coefficient);
}

struct ReportSink {
    std::string format;
    std::vector<ordered_json> json_rows;
    bool csv_header_done = false;

    void family_report(const VerificationReport& r, const CongruenceFamily* fam) {
        if (format == "json") {
            json_rows.push_back(report_json(r, fam));
        } else if (format == "csv") {
            if (!csv_header_done) {
                std::cout << "family-label,k-pattern,progression,modulus,"
                             "c-range,bound,verdict,counterexample\n";
                csv_header_done = true;
            }
            std::cout << csv_escape(r.label) << ','
                      << (fam ? k_pattern(*fam) : "") << ','
                      << (fam ? csv_escape(progression(*fam)) : "") << ','
                      << (fam ? std::to_string(fam->modulus) : "") << ','
                      << "0.." << r.c_max << ',' << r.coeff_bound << ','
                      << verdict_name(r.verdict) << ',' << witness_str(r) << '\n';
        } else {
            std::cout << r.label << ": " << verdict_name(r.verdict)
                      << " for c <= " << r.c_max << ", argument <= "
                      << r.coeff_bound;
            if (r.witness)
                std::cout << " (counterexample at c=" << r.witness->c
                          << ", n=" << r.witness->n << ", coefficient "
                          << r.witness->coefficient << ")";
            if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
            std::cout << '\n';
        }
    }

    void flush() {
        if (format == "json") std::cout << ordered_json(json_rows).dump(2) << '\n';
    }
};

} // namespace cli_detail

inline int cmd_coeff(const RunConfig& cfg, long long k,
                     const std::vector<long long>& ns) {
    long long maxn = 0;
    for (long long n : ns) {
        if (n < 0) {
            std::cerr << "error: n must be >= 0\n";
            return 2;
        }
        maxn = std::max(maxn, n);
    }
    std::vector<ordered_json> rows;
    bool csv = cfg.format == "csv";
    if (csv) std::cout << "k,n,modulus,value\n";
    if (cfg.modulus) {
        ModRing ring(*cfg.modulus);
        auto s = dk_series(k, maxn + 1, ring);
        for (long long n : ns) {
            if (cfg.format == "json")
                rows.push_back({{"k", k}, {"n", n}, {"modulus", *cfg.modulus},
                                {"value", s.coeff(n)}});
            else if (csv)
                std::cout << k << ',' << n << ',' << *cfg.modulus << ','
                          << s.coeff(n) << '\n';
            else
                std::cout << "d_" << k << "(" << n << ") mod " << *cfg.modulus
                          << " = " << s.coeff(n) << '\n';
        }
    } else {
        ExactRing Z;
        auto s = dk_series(k, maxn + 1, Z);
        for (long long n : ns) {
            if (cfg.format == "json")
                rows.push_back({{"k", k}, {"n", n}, {"modulus", nullptr},
                                {"value", s.coeff(n).str()}});
            else if (csv)
                std::cout << k << ',' << n << ",," << s.coeff(n) << '\n';
            else
                std::cout << "d_" << k << "(" << n << ") = " << s.coeff(n) << '\n';
        }
    }
    if (cfg.format == "json") std::cout << ordered_json(rows).dump(2) << '\n';
    return 0;
}

inline int cmd_identity(const RunConfig& cfg, const Catalog& cat,
                        const std::string& id, std::optional<long long> c_value,
                        bool precision_overridden) {
    auto it = cat.identities.find(id);
    if (it == cat.identities.end()) {
        std::cerr << "error: unknown identity id '" << id << "'\n";
        return 2;
    }
    const IdentityEntry& e = it->second;
    long long N = precision_overridden ? cfg.precision : e.precision;
    std::uint64_t mod = cfg.modulus.value_or(e.modulus);
    std::vector<long long> cs;
    if (e.uses_c) {
        if (c_value) cs = {*c_value};
        else for (long long c = 0; c <= cfg.c_max; ++c) cs.push_back(c);
    } else {
        cs = {0};
    }
    bool all_pass = true;
    std::vector<ordered_json> rows;
    if (cfg.format == "csv")
        std::cout << "id,modulus,precision,c,verdict,first-mismatch\n";
    for (long long c : cs) {
        EvalContext ctx{&cat.combos,
                        e.uses_c ? std::optional<long long>(c) : std::nullopt};
        IdentityVerdict v = check_identity(*e.lhs, *e.rhs, mod, N, ctx);
        all_pass = all_pass && v.pass;
        if (cfg.format == "json") {
            ordered_json j{{"id", id}, {"modulus", mod},
                           {"precision", v.checked_to},
                           {"verdict", v.pass ? "pass" : "fail"}};
            if (e.uses_c) j["c"] = c;
            if (v.first_mismatch) j["first_mismatch"] = *v.first_mismatch;
            rows.push_back(std::move(j));
        } else if (cfg.format == "csv") {
            std::cout << id << ',' << mod << ',' << v.checked_to << ',' << c
                      << ',' << (v.pass ? "pass" : "fail") << ','
                      << (v.first_mismatch ? std::to_string(*v.first_mismatch)
                                           : "")
                      << '\n';
        } else {
            std::cout << "identity " << id;
            if (e.uses_c) std::cout << " (c=" << c << ")";
            if (mod) std::cout << " mod " << mod;
            std::cout << ": " << (v.pass ? "pass" : "fail")
                      << " (coefficients through q^" << v.checked_to - 1 << ")";
            if (v.first_mismatch)
                std::cout << ", first mismatch at q^" << *v.first_mismatch;
            std::cout << '\n';
        }
    }
    if (cfg.format == "json") std::cout << ordered_json(rows).dump(2) << '\n';
    return all_pass ? 0 : 1;
}

inline int cmd_verify(const RunConfig& cfg, const Catalog& cat,
                      const std::string& target) {
    using namespace cli_detail;
    static const std::map<std::string, std::string> prefix_of = {
        {"thm1.2", "fam25."},    {"remark1.3", "fam25b."},
        {"thm1.4", "fam125."},   {"thm1.5", "fam125b."},
        {"thm1.6", "fam125c."},  {"eq1.2", "partition."},
        {"conjectures", "conj."},
    };
    bool all = target == "all";
    ReportSink sink{cfg.format, {}, false};
    int exit_code = 0;
    auto absorb = [&](const VerificationReport& r, const CongruenceFamily* fam) {
        sink.family_report(r, fam);
        if (r.verdict == Verdict::counterexample)
            exit_code = std::max(exit_code, 1);
        else if (r.verdict == Verdict::insufficient_precision)
            exit_code = 2;
    };

    bool matched = false;
    for (const auto& [t, prefix] : prefix_of) {
        if (!all && target != t) continue;
        for (const auto& fam : cat.families) {
            if (fam.label.rfind(prefix, 0) != 0) continue;
            matched = true;
            absorb(check_family(fam, cfg.c_max, cfg.bound), &fam);
        }
    }
    if (all || target == "eq1.1") {
        matched = true;
        // towers of congruences along inverses of 4 mod 5^a and 8 mod 3^a
        absorb(check_inverse_tower(5, 4, 5, 1, 5, cfg.bound, "tower.d5.a1"), nullptr);
        absorb(check_inverse_tower(5, 4, 5, 2, 25, cfg.bound, "tower.d5.a2"), nullptr);
        absorb(check_inverse_tower(5, 4, 5, 3, 25, cfg.bound, "tower.d5.a3"), nullptr);
        absorb(check_inverse_tower(2, 8, 3, 1, 3, cfg.bound, "tower.d2.a1"), nullptr);
        absorb(check_inverse_tower(2, 8, 3, 2, 27, cfg.bound, "tower.d2.a2"), nullptr);
    }
    if (all || target == "remark1.7") {
        matched = true;
        // d_{125c+2} at the two displayed arguments for alpha = 1; the
        // display's quantifier over n never appears in the argument, so only
        // these fixed points are testable.
        VerificationReport rep;
        rep.label = "remark1.7.alpha1";
        rep.c_max = cfg.c_max;
        rep.coeff_bound = 247;
        rep.precision_used = 248;
        ModRing ring(5);
        for (long long c = 0; c <= cfg.c_max && !rep.witness; ++c) {
            auto s = dk_series(125 * c + 2, 248, ring);
            for (long long j : {1LL, 2LL}) {
                long long arg = 125 + 25 * j + 72;
                if (s.coeff(arg) != 0) {
                    rep.verdict = Verdict::counterexample;
                    rep.witness = Counterexample{c, arg, s.coeff(arg)};
                    break;
                }
            }
        }
        rep.detail = "fixed arguments 222,247 only";
        absorb(rep, nullptr);
    }
    if (all || target == "lifting") {
        matched = true;
        long long n_max = std::min(cfg.bound, 1000LL);
        absorb(check_lifting(5, 1, 2, 1, 8, 2, n_max), nullptr);
        absorb(check_lifting(5, 2, 1, 8, 16, 2, n_max), nullptr);
    }
    if (all || target == "pipelines") {
        matched = true;
        for (const auto& script : cat.pipelines) {
            std::vector<long long> cs{0};
            if (script.uses_c)
                for (long long c = 1; c <= cfg.c_max; ++c) cs.push_back(c);
            for (long long c : cs) {
                EvalContext ctx{&cat.combos,
                                script.uses_c ? std::optional<long long>(c)
                                              : std::nullopt};
                VerificationReport rep;
                rep.label = "pipeline." + script.id +
                            (script.uses_c ? ".c" + std::to_string(c) : "");
                try {
                    PipelineReport pr = replay_pipeline(script, cfg.precision, ctx);
                    rep.verdict = pr.pass ? Verdict::verified_in_range
                                          : Verdict::counterexample;
                    rep.c_max = script.uses_c ? c : 0;
                    rep.precision_used = pr.precision_used;
                    rep.coeff_bound = pr.precision_used - 1;
                    rep.wall_seconds = pr.wall_seconds;
                    if (!pr.pass) {
                        const auto& bad = pr.steps.back();
                        rep.detail = "step " + bad.note + " mismatch at q^" +
                                     std::to_string(bad.first_mismatch.value_or(-1));
                    }
                } catch (const insufficient_precision& ex) {
                    rep.verdict = Verdict::insufficient_precision;
                    rep.detail = ex.what();
                }
                absorb(rep, nullptr);
            }
        }
    }
    if (!matched) {
        std::cerr << "error: unknown verify target '" << target << "'\n";
        return 2;
    }
    sink.flush();
    return exit_code;
}

inline int cmd_scan(const RunConfig& cfg, const std::vector<long long>& ks,
                    const std::vector<long long>& arg_moduli, int max_power) {
    auto hits = scan(ks, arg_moduli, max_power, cfg.bound);
    if (cfg.format == "json") {
        std::vector<ordered_json> rows;
        for (const auto& h : hits)
            rows.push_back({{"k", h.k}, {"arg_modulus", h.arg_modulus},
                            {"residue", h.residue}, {"power", h.power},
                            {"tested", h.tested}, {"status", "empirical"}});
        std::cout << ordered_json(rows).dump(2) << '\n';
    } else if (cfg.format == "csv") {
        std::cout << "k,arg-modulus,residue,power,tested,status\n";
        for (const auto& h : hits)
            std::cout << h.k << ',' << h.arg_modulus << ',' << h.residue << ','
                      << h.power << ',' << h.tested << ",empirical\n";
    } else {
        for (const auto& h : hits)
            std::cout << "d_" << h.k << "(" << h.arg_modulus << "n+" << h.residue
                      << ") == 0 mod 5^" << h.power << " (empirical, "
                      << h.tested << " coefficients tested)\n";
        if (hits.empty()) std::cout << "no progressions found\n";
    }
    return 0;
}

inline int cmd_combo(const RunConfig& cfg, const Catalog& cat,
                     const std::string& name) {
    if (name.size() != 1 || !cat.combos.polys.count(name[0])) {
        std::cerr << "error: unknown combination '" << name << "'\n";
        return 2;
    }
    LaurentPoly p = cat.combos.get(name[0]);
    if (cfg.modulus) p = p.reduce_coeffs(bigint(*cfg.modulus));
    if (cfg.format == "json") {
        ordered_json terms = ordered_json::object();
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
            terms[std::to_string(it->first)] = it->second.str();
        std::cout << ordered_json{{"name", name}, {"symbol", "K"},
                                  {"terms", terms}}.dump(2)
                  << '\n';
    } else if (cfg.format == "csv") {
        std::cout << "name,exponent,coefficient\n";
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
            std::cout << name << ',' << it->first << ',' << it->second << '\n';
    } else {
        std::cout << name << " = " << p.str() << '\n';
    }
    return 0;
}

inline int run_cli(int argc, char** argv, const std::string& default_catalog) {
    CLI::App app{"q-series engine for k-elongated plane partition congruences"};
    app.require_subcommand(1);

    RunConfig cfg;
    const char* env = std::getenv("QELONG_CATALOG_DIR");
    cfg.catalog_dir = env ? env : default_catalog;
    app.add_option("--catalog", cfg.catalog_dir, "catalog directory");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}))
        ->capture_default_str();

    long long k = 1;
    std::vector<long long> ns;
    std::uint64_t modulus_opt = 0;
    auto* coeff = app.add_subcommand("coeff", "print d_k(n) coefficients");
    coeff->add_option("-k,--k", k, "elongation (0 = partition function)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    coeff->add_option("-n,--n", ns, "argument(s)")->required();
    auto* coeff_mod = coeff->add_option("--modulus", modulus_opt, "reduce mod this");

    std::string identity_id;
    std::optional<long long> c_value;
    long long c_tmp = 0;
    auto* ident = app.add_subcommand("identity", "check a catalog identity");
    ident->add_option("id", identity_id, "identity id, e.g. eq2.1")->required();
    auto* ident_prec = ident->add_option("--precision", cfg.precision,
                                         "coefficients to compare");
    auto* ident_mod = ident->add_option("--modulus", modulus_opt,
                                        "override the entry's modulus");
    auto* ident_c = ident->add_option("--c", c_tmp, "fix the parameter c");
    ident->add_option("--c-max", cfg.c_max, "check c = 0..c-max for parameterized entries")
        ->capture_default_str();

    std::string target;
    auto* verify = app.add_subcommand("verify", "verify congruence families in range");
    verify->add_option("target", target,
                       "thm1.2|thm1.4|thm1.5|thm1.6|remark1.3|remark1.7|eq1.1|"
                       "eq1.2|conjectures|lifting|pipelines|all")
        ->required();
    verify->add_option("--precision", cfg.precision, "pipeline precision")
        ->capture_default_str();
    verify->add_option("--c-max", cfg.c_max, "largest c checked")
        ->capture_default_str();
    verify->add_option("--bound", cfg.bound, "largest argument checked")
        ->capture_default_str();

    std::vector<long long> scan_ks, scan_moduli{25, 125};
    int max_power = 5;
    auto* scn = app.add_subcommand("scan", "search progressions for 5-power divisibility");
    scn->add_option("-k,--k", scan_ks, "elongation value(s)")->required();
    scn->add_option("--arg-modulus", scan_moduli, "progression moduli")
        ->capture_default_str();
    scn->add_option("--max-power", max_power, "cap on the 5-adic valuation")
        ->capture_default_str();
    scn->add_option("--bound", cfg.bound, "largest argument tested")
        ->capture_default_str();

    std::string combo_name;
    auto* combo = app.add_subcommand("combo", "print a named combination as a polynomial in K");
    combo->add_option("name", combo_name, "A..F")->required();
    auto* combo_mod = combo->add_option("--modulus", modulus_opt,
                                        "reduce coefficients mod this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (coeff_mod->count() || ident_mod->count() || combo_mod->count())
            cfg.modulus = modulus_opt;
        if (ident_c->count()) c_value = c_tmp;
        if (cfg.precision < 1 || cfg.bound < 0 || cfg.c_max < 0) {
            std::cerr << "error: invalid precision/bound/c-max\n";
            return 2;
        }
        if (coeff->parsed()) return cmd_coeff(cfg, k, ns);
        Catalog cat = load_catalog(cfg.catalog_dir);
        if (ident->parsed())
            return cmd_identity(cfg, cat, identity_id, c_value,
                                ident_prec->count() > 0);
        if (verify->parsed()) return cmd_verify(cfg, cat, target);
        if (scn->parsed()) return cmd_scan(cfg, scan_ks, scan_moduli, max_power);
        if (combo->parsed()) return cmd_combo(cfg, cat, combo_name);
    } catch (const insufficient_precision& e) {
        std::cerr << "precision error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace qelong

#endif
