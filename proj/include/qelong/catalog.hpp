#ifndef QELONG_CATALOG_HPP
#define QELONG_CATALOG_HPP

// Loaders for the structured-text catalogs under data/: the identity catalog
// (one entry per displayed equation), the P-combination catalog, the proof
// pipeline scripts, and the congruence-family catalog.  Keeping the verbatim
// formulas in data files makes coverage auditable by eye; a transcription
// error shows up as a failed check, not a silent divergence.
//
// Shared line conventions: '#' starts a comment, blank lines are ignored,
// blocks end with 'end'.

#include <fstream>

#include "pipeline.hpp"

namespace qelong {

struct catalog_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdentityEntry {
    std::string id;
    ExprPtr lhs;
    ExprPtr rhs;
    std::uint64_t modulus = 0; // 0 = exact
    long long precision = 600;
    bool uses_c = false;
};

struct Catalog {
    std::map<std::string, IdentityEntry> identities;
    std::vector<std::string> identity_order;
    ComboTable combos;
    std::vector<PipelineScript> pipelines;
    std::vector<CongruenceFamily> families;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> read_logical_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw catalog_error("cannot open catalog file " + path);
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        // trailing backslash continues onto the next line
        while (!line.empty() && line.back() == '\\') {
            line.pop_back();
            std::string next;
            if (!std::getline(in, next))
                throw catalog_error("dangling line continuation in " + path);
            auto h2 = next.find('#');
            if (h2 != std::string::npos) next.erase(h2);
            line += " " + trim(next);
        }
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::vector<long long> split_ints(const std::string& s) {
    std::vector<long long> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!trim(cur).empty()) out.push_back(std::stoll(trim(cur)));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

// "-18*P(3,1) - 27*P(3,2) + ... - 803": integer combination of P-values
// plus an optional constant.
inline LaurentPoly parse_p_combination(const std::string& text) {
    LaurentPoly acc(Symbol::K);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    while (true) {
        skip();
        if (pos >= text.size()) break;
        long long sign = 1;
        if (text[pos] == '+') { ++pos; }
        else if (text[pos] == '-') { sign = -1; ++pos; }
        skip();
        long long coeff = 1;
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            coeff = std::stoll(text.substr(start, pos - start));
            have_coeff = true;
        }
        skip();
        if (pos < text.size() && text[pos] == '*') { ++pos; skip(); }
        if (pos < text.size() && text[pos] == 'P') {
            ++pos;
            skip();
            if (pos >= text.size() || text[pos] != '(')
                throw catalog_error("expected P(m,n) in combination");
            std::size_t close = text.find(')', pos);
            if (close == std::string::npos)
                throw catalog_error("unclosed P(m,n) in combination");
            auto mn = split_ints(text.substr(pos + 1, close - pos - 1));
            if (mn.size() != 2)
                throw catalog_error("P(m,n) needs two indices");
            pos = close + 1;
            acc = acc + bigint(sign * coeff) * p_poly(mn[0], mn[1]);
        } else if (have_coeff) {
            acc = acc + LaurentPoly::constant(sign * coeff);
        } else {
            throw catalog_error("malformed combination term near position " +
                                std::to_string(pos));
        }
    }
    return acc;
}

// "63*K^4 + 4736*K^3 + ... + 4128768*K^-8": explicit Laurent polynomial in K.
inline LaurentPoly parse_k_poly(const std::string& text) {
    LaurentPoly acc(Symbol::K);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    while (true) {
        skip();
        if (pos >= text.size()) break;
        long long sign = 1;
        if (text[pos] == '+') { ++pos; }
        else if (text[pos] == '-') { sign = -1; ++pos; }
        skip();
        bigint coeff = 1;
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            coeff = bigint(text.substr(start, pos - start));
            have_coeff = true;
        }
        skip();
        if (pos < text.size() && text[pos] == '*') { ++pos; skip(); }
        long long exp = 0;
        if (pos < text.size() && text[pos] == 'K') {
            ++pos;
            exp = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                long long esign = 1;
                if (pos < text.size() && text[pos] == '-') { esign = -1; ++pos; }
                std::size_t start = pos;
                while (pos < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (start == pos)
                    throw catalog_error("malformed K exponent");
                exp = esign * std::stoll(text.substr(start, pos - start));
            }
        } else if (!have_coeff) {
            throw catalog_error("malformed K-polynomial term");
        }
        acc.set(exp, acc.coeff(exp) + sign * coeff);
    }
    return acc;
}

inline std::pair<std::string, std::string> key_value(const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos)
        return {line, ""};
    return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

// "25c+16" -> (25, 16); "16" -> (0, 16) fixed-k
inline std::pair<long long, long long> parse_k_pattern(const std::string& s) {
    auto cpos = s.find('c');
    if (cpos == std::string::npos)
        return {0, std::stoll(s)};
    long long mk = std::stoll(s.substr(0, cpos));
    long long k0 = 0;
    std::string rest = trim(s.substr(cpos + 1));
    if (!rest.empty()) {
        if (rest[0] != '+')
            throw catalog_error("malformed k pattern: " + s);
        k0 = std::stoll(rest.substr(1));
    }
    return {mk, k0};
}

// "125n+74,99,124" -> (125, {74,99,124})
inline std::pair<long long, std::vector<long long>>
parse_arg_pattern(const std::string& s) {
    auto npos = s.find('n');
    if (npos == std::string::npos)
        throw catalog_error("malformed argument pattern: " + s);
    long long A = std::stoll(s.substr(0, npos));
    std::string rest = trim(s.substr(npos + 1));
    if (rest.empty() || rest[0] != '+')
        throw catalog_error("malformed argument pattern: " + s);
    return {A, split_ints(rest.substr(1))};
}

} // namespace detail

inline void load_identities(const std::string& path, Catalog& cat) {
    auto lines = detail::read_logical_lines(path);
    std::size_t i = 0;
    while (i < lines.size()) {
        auto head = detail::split_ws(lines[i]);
        if (head.empty() || head[0] != "identity")
            throw catalog_error("expected 'identity' block in " + path +
                                ", got: " + lines[i]);
        if (head.size() < 2)
            throw catalog_error("identity block without an id");
        IdentityEntry entry;
        entry.id = head[1];
        for (std::size_t t = 2; t < head.size(); ++t) {
            if (head[t] == "mod")
                entry.modulus = std::stoull(head.at(++t));
            else if (head[t] == "precision")
                entry.precision = std::stoll(head.at(++t));
            else if (head[t] == "uses-c")
                entry.uses_c = true;
            else
                throw catalog_error("unknown identity attribute " + head[t]);
        }
        ++i;
        while (i < lines.size() && lines[i] != "end") {
            auto [key, value] = detail::key_value(lines[i]);
            if (key == "lhs")
                entry.lhs = parse_expr(value);
            else if (key == "rhs")
                entry.rhs = parse_expr(value);
            else
                throw catalog_error("unknown identity field " + key);
            ++i;
        }
        if (i >= lines.size())
            throw catalog_error("identity " + entry.id + " missing 'end'");
        ++i;
        if (!entry.lhs || !entry.rhs)
            throw catalog_error("identity " + entry.id + " needs lhs and rhs");
        cat.identity_order.push_back(entry.id);
        cat.identities.emplace(entry.id, std::move(entry));
    }
}

inline void load_combos(const std::string& path, Catalog& cat) {
    for (const auto& line : detail::read_logical_lines(path)) {
        auto toks = detail::split_ws(line);
        if (toks.size() < 3 || toks[0] != "combo" || toks[1].size() != 1)
            throw catalog_error("malformed combo line: " + line);
        char name = toks[1][0];
        auto assign = line.find(":=");
        if (assign == std::string::npos)
            throw catalog_error("combo line missing ':=': " + line);
        std::string body = detail::trim(line.substr(assign + 2));
        bool poly_form = line.find(" poly ") != std::string::npos &&
                         line.find(" poly ") < assign;
        cat.combos.polys.emplace(name, poly_form ? detail::parse_k_poly(body)
                                                 : detail::parse_p_combination(body));
    }
}

inline void load_pipelines(const std::string& path, Catalog& cat) {
    auto lines = detail::read_logical_lines(path);
    std::size_t i = 0;
    while (i < lines.size()) {
        auto head = detail::split_ws(lines[i]);
        if (head.empty() || head[0] != "pipeline")
            throw catalog_error("expected 'pipeline' block, got: " + lines[i]);
        if (head.size() < 2)
            throw catalog_error("pipeline block without an id");
        PipelineScript script;
        script.id = head[1];
        for (std::size_t t = 2; t < head.size(); ++t) {
            if (head[t] == "mod")
                script.modulus = std::stoull(head.at(++t));
            else if (head[t] == "uses-c")
                script.uses_c = true;
            else
                throw catalog_error("unknown pipeline attribute " + head[t]);
        }
        ++i;
        while (i < lines.size() && lines[i] != "end") {
            auto [key, value] = detail::key_value(lines[i]);
            auto keytoks = detail::split_ws(key);
            PipelineStep step;
            step.note = keytoks.size() > 1 ? keytoks[1] : keytoks[0];
            const std::string& verb = keytoks[0];
            if (verb == "start") {
                step.action = PipelineStep::Action::start;
                step.expr = parse_expr(value);
            } else if (verb == "eq") {
                step.action = PipelineStep::Action::assert_eq;
                step.expr = parse_expr(value);
            } else if (verb == "extract") {
                step.action = PipelineStep::Action::extract;
                auto mr = detail::split_ws(value);
                if (mr.size() != 2)
                    throw catalog_error("extract step needs 'm r'");
                step.m = std::stoll(mr[0]);
                step.r = std::stoll(mr[1]);
            } else if (verb == "zero-at") {
                step.action = PipelineStep::Action::extract_zero;
                auto mr = detail::split_ws(value);
                if (mr.size() != 2)
                    throw catalog_error("zero-at step needs 'm r1,r2,...'");
                step.m = std::stoll(mr[0]);
                step.residues = detail::split_ints(mr[1]);
            } else if (verb == "support") {
                step.action = PipelineStep::Action::support_mod;
                step.m = std::stoll(value);
            } else if (verb == "zero") {
                step.action = PipelineStep::Action::assert_zero;
            } else {
                throw catalog_error("unknown pipeline verb " + verb);
            }
            script.steps.push_back(std::move(step));
            ++i;
        }
        if (i >= lines.size())
            throw catalog_error("pipeline " + script.id + " missing 'end'");
        ++i;
        cat.pipelines.push_back(std::move(script));
    }
}

inline void load_families(const std::string& path, Catalog& cat) {
    for (const auto& line : detail::read_logical_lines(path)) {
        auto toks = detail::split_ws(line);
        if (toks.size() < 2 || toks[0] != "family")
            throw catalog_error("malformed family line: " + line);
        CongruenceFamily fam;
        fam.label = toks[1];
        for (std::size_t t = 2; t < toks.size(); ++t) {
            auto eq = toks[t].find('=');
            if (eq == std::string::npos)
                throw catalog_error("malformed family attribute " + toks[t]);
            std::string key = toks[t].substr(0, eq);
            std::string value = toks[t].substr(eq + 1);
            if (key == "k") {
                std::tie(fam.k_modulus, fam.k_residue) = detail::parse_k_pattern(value);
            } else if (key == "arg") {
                std::tie(fam.arg_modulus, fam.arg_residues) =
                    detail::parse_arg_pattern(value);
            } else if (key == "mod") {
                fam.modulus = std::stoull(value);
            } else {
                throw catalog_error("unknown family attribute " + key);
            }
        }
        if (fam.arg_residues.empty())
            throw catalog_error("family " + fam.label + " lists no residues");
        cat.families.push_back(std::move(fam));
    }
}

// Loads all four catalogs from a directory.
inline Catalog load_catalog(const std::string& dir) {
    Catalog cat;
    load_combos(dir + "/combos.cat", cat);
    load_identities(dir + "/identities.cat", cat);
    load_pipelines(dir + "/pipelines.cat", cat);
    load_families(dir + "/families.cat", cat);
    return cat;
}

} // namespace qelong

#endif
