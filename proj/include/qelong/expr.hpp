#ifndef QELONG_EXPR_HPP
#define QELONG_EXPR_HPP

// Expression trees over eta products, R(q^m), q-monomials, the parameters
// K and L, the named P-combinations A..F, and dissection extraction.  Each
// displayed identity of the congruence derivations is one lhs/rhs pair of
// these trees; exponents may depend linearly on the family parameter c.
//
// Text grammar (used by the identity catalog and pipeline scripts):
//   expr     := ['-'] term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := primary ['^' exponent]
//   primary  := 'q' | f<int> | R<int> | 'K' | 'L' | 'A'..'F' | integer
//             | '(' expr ')' | 'extract' '(' expr ',' int ',' int ')'
//   exponent := integer | '(' ['-'] lterm (('+'|'-') lterm)* ')'
//   lterm    := integer ['c'] | 'c'

#include <cctype>
#include <memory>
#include <string>

#include "laurent.hpp"

namespace qelong {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exponent of the form a*c + b
struct LinExp {
    long long c_coeff = 0;
    long long constant = 0;

    long long resolve(std::optional<long long> c) const {
        if (c_coeff == 0)
            return constant;
        if (!c)
            throw std::invalid_argument("expression uses parameter c but no value bound");
        return c_coeff * *c + constant;
    }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { EtaF, Rogers, Q, Const, ParamK, ParamL, Combo, Add, Mul, Pow, Extract };

    Kind kind;
    long long scale = 0;       // EtaF / Rogers scale, Extract modulus
    long long residue = 0;     // Extract residue
    bigint value;              // Const
    char combo = 0;            // Combo name 'A'..'F'
    LinExp exponent;           // Pow
    std::vector<ExprPtr> kids;

    static ExprPtr eta(long long m) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::EtaF; e->scale = m; return e;
    }
    static ExprPtr rogers(long long m) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Rogers; e->scale = m; return e;
    }
    static ExprPtr q() {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Q; return e;
    }
    static ExprPtr constant(bigint v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Const; e->value = std::move(v); return e;
    }
    static ExprPtr param(char sym) {
        auto e = std::make_shared<Expr>();
        e->kind = sym == 'K' ? Kind::ParamK : Kind::ParamL; return e;
    }
    static ExprPtr comboref(char name) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Combo; e->combo = name; return e;
    }
    static ExprPtr add(std::vector<ExprPtr> kids) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Add; e->kids = std::move(kids); return e;
    }
    static ExprPtr mul(std::vector<ExprPtr> kids) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Mul; e->kids = std::move(kids); return e;
    }
    static ExprPtr pow(ExprPtr base, LinExp exp) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow; e->kids = {std::move(base)}; e->exponent = exp; return e;
    }
    static ExprPtr extract_node(ExprPtr base, long long m, long long r) {
        if (m < 1 || r < 0 || r >= m)
            throw parse_error("extract residue must satisfy 0 <= r < m");
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Extract; e->kids = {std::move(base)};
        e->scale = m; e->residue = r; return e;
    }
};

// Named P-combinations, loaded from the combination catalog.
struct ComboTable {
    std::map<char, LaurentPoly> polys;

    const LaurentPoly& get(char name) const {
        auto it = polys.find(name);
        if (it == polys.end())
            throw std::out_of_range(std::string("unknown combination ") + name);
        return it->second;
    }
};

struct EvalContext {
    const ComboTable* combos = nullptr;
    std::optional<long long> c;
};

namespace detail {

template <class Ring>
Series<Ring> eval_budget(const Expr& e, long long B, Ring ring,
                         const EvalContext& ctx) {
    using S = Series<Ring>;
    constexpr long long leaf_pad = 32;
    switch (e.kind) {
    case Expr::Kind::EtaF:
        return eta_series(e.scale, B, ring);
    case Expr::Kind::Rogers: {
        if (e.scale == 1)
            return rogers_ramanujan(B, ring);
        long long inner = (B + e.scale - 1) / e.scale + 1;
        return substitute_power(rogers_ramanujan(inner, ring), e.scale);
    }
    case Expr::Kind::Q:
        return S::monomial(ring, 1, 1, B + leaf_pad);
    case Expr::Kind::Const:
        return scale(e.value, S::one(ring, B + leaf_pad));
    case Expr::Kind::ParamK:
        return param_K(B + 2, ring);
    case Expr::Kind::ParamL:
        return param_L(B + 2, ring);
    case Expr::Kind::Combo: {
        if (!ctx.combos)
            throw std::invalid_argument("expression references a combination but no table bound");
        return eval_at_K(ctx.combos->get(e.combo), B, ring);
    }
    case Expr::Kind::Add: {
        S acc = eval_budget(*e.kids.at(0), B, ring, ctx);
        for (std::size_t i = 1; i < e.kids.size(); ++i)
            acc = acc + eval_budget(*e.kids[i], B, ring, ctx);
        return acc;
    }
    case Expr::Kind::Mul: {
        S acc = eval_budget(*e.kids.at(0), B, ring, ctx);
        for (std::size_t i = 1; i < e.kids.size(); ++i)
            acc = acc * eval_budget(*e.kids[i], B, ring, ctx);
        return acc;
    }
    case Expr::Kind::Pow:
        return pow(eval_budget(*e.kids.at(0), B, ring, ctx),
                   e.exponent.resolve(ctx.c));
    case Expr::Kind::Extract: {
        long long inner = e.scale * (B - 1) + e.residue + 1;
        return extract(eval_budget(*e.kids.at(0), inner, ring, ctx),
                       e.scale, e.residue);
    }
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace detail

// Bottom-up evaluation with a precision budget widened until the root is
// certified at the requested N.
template <class Ring>
Series<Ring> eval_expr(const Expr& e, long long N, Ring ring,
                       const EvalContext& ctx = {}) {
    long long B = N;
    for (int iter = 0; iter < 40 && B < 20'000'000; ++iter) {
        Series<Ring> s = detail::eval_budget(e, B, ring, ctx);
        if (s.precision() >= N)
            return s;
        B += (N - s.precision()) + 8;
    }
    throw insufficient_precision("expression evaluation could not reach requested precision");
}

// ---------------------------------------------------------------- parsing

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw parse_error("trailing characters in expression: " +
                              std::string(s_.substr(pos_)));
        return e;
    }

private:
    ExprPtr expr() {
        std::vector<ExprPtr> terms;
        skip_ws();
        bool neg = eat('-');
        ExprPtr t = term();
        terms.push_back(neg ? negate(t) : t);
        for (;;) {
            skip_ws();
            if (eat('+')) terms.push_back(term());
            else if (eat('-')) terms.push_back(negate(term()));
            else break;
        }
        return terms.size() == 1 ? terms[0] : Expr::add(std::move(terms));
    }

    ExprPtr term() {
        std::vector<ExprPtr> factors{factor()};
        for (;;) {
            skip_ws();
            if (eat('*')) factors.push_back(factor());
            else if (eat('/')) factors.push_back(Expr::pow(factor(), LinExp{0, -1}));
            else break;
        }
        return factors.size() == 1 ? factors[0] : Expr::mul(std::move(factors));
    }

    ExprPtr factor() {
        ExprPtr base = primary();
        skip_ws();
        if (eat('^'))
            return Expr::pow(std::move(base), exponent());
        return base;
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= s_.size())
            throw parse_error("unexpected end of expression");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)))
            return Expr::constant(bigint(integer_literal()));
        if (ch == 'q' && !next_is_alnum(1)) {
            ++pos_;
            return Expr::q();
        }
        if (ch == 'f') {
            ++pos_;
            return Expr::eta(integer_literal_ll());
        }
        if (ch == 'R' && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            return Expr::rogers(integer_literal_ll());
        }
        if ((ch == 'K' || ch == 'L') && !next_is_alnum(1)) {
            ++pos_;
            return Expr::param(ch);
        }
        if (ch >= 'A' && ch <= 'F' && !next_is_alnum(1)) {
            ++pos_;
            return Expr::comboref(ch);
        }
        if (s_.compare(pos_, 8, "extract(") == 0) {
            pos_ += 8;
            ExprPtr inner = expr();
            expect(',');
            long long m = signed_integer();
            expect(',');
            long long r = signed_integer();
            expect(')');
            return Expr::extract_node(std::move(inner), m, r);
        }
        throw parse_error("unexpected character '" + std::string(1, ch) +
                          "' in expression");
    }

    LinExp exponent() {
        skip_ws();
        if (eat('(')) {
            LinExp lin = linear();
            expect(')');
            return lin;
        }
        // "-(...)": negated parenthesized linear form
        std::size_t save = pos_;
        if (eat('-')) {
            skip_ws();
            if (eat('(')) {
                LinExp lin = linear();
                expect(')');
                return LinExp{-lin.c_coeff, -lin.constant};
            }
            if (pos_ < s_.size() && s_[pos_] == 'c' && !next_is_alnum(1)) {
                ++pos_;
                return LinExp{-1, 0};
            }
            pos_ = save;
        }
        if (pos_ < s_.size() && s_[pos_] == 'c' && !next_is_alnum(1)) {
            ++pos_;
            return LinExp{1, 0};
        }
        return LinExp{0, signed_integer()};
    }

    LinExp linear() {
        LinExp lin;
        skip_ws();
        int sign = eat('-') ? -1 : 1;
        lterm(lin, sign);
        for (;;) {
            skip_ws();
            if (eat('+')) lterm(lin, 1);
            else if (eat('-')) lterm(lin, -1);
            else break;
        }
        return lin;
    }

    void lterm(LinExp& lin, int sign) {
        skip_ws();
        long long coeff = 1;
        bool saw_digits = false;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            coeff = integer_literal_ll();
            saw_digits = true;
        }
        if (pos_ < s_.size() && s_[pos_] == 'c') {
            ++pos_;
            lin.c_coeff += sign * coeff;
        } else if (saw_digits) {
            lin.constant += sign * coeff;
        } else {
            throw parse_error("malformed linear exponent");
        }
    }

    static ExprPtr negate(ExprPtr e) {
        return Expr::mul({Expr::constant(bigint(-1)), std::move(e)});
    }

    bool next_is_alnum(std::size_t off) const {
        return pos_ + off < s_.size() &&
               std::isalnum(static_cast<unsigned char>(s_[pos_ + off]));
    }

    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!eat(c))
            throw parse_error(std::string("expected '") + c + "'");
    }

    std::string integer_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw parse_error("expected an integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    long long integer_literal_ll() { return std::stoll(integer_literal()); }

    long long signed_integer() {
        skip_ws();
        int sign = eat('-') ? -1 : 1;
        return sign * integer_literal_ll();
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ExprPtr parse_expr(std::string_view text) {
    return detail::ExprParser(text).parse();
}

// ------------------------------------------------------- identity checking

struct IdentityVerdict {
    bool pass = false;
    std::optional<long long> first_mismatch;
    long long checked_to = 0;
    std::uint64_t modulus = 0; // 0 = exact integers
};

// Evaluates both sides (mod `modulus` when nonzero) and compares every
// coefficient below N.  Exact equality only; there is no tolerance.
inline IdentityVerdict check_identity(const Expr& lhs, const Expr& rhs,
                                      std::uint64_t modulus, long long N,
                                      const EvalContext& ctx = {}) {
    IdentityVerdict v;
    v.checked_to = N;
    v.modulus = modulus;
    if (modulus != 0) {
        ModRing ring(modulus);
        auto a = eval_expr(lhs, N, ring, ctx);
        auto b = eval_expr(rhs, N, ring, ctx);
        v.first_mismatch = first_difference(a, b, N);
    } else {
        ExactRing ring;
        auto a = eval_expr(lhs, N, ring, ctx);
        auto b = eval_expr(rhs, N, ring, ctx);
        v.first_mismatch = first_difference(a, b, N);
    }
    v.pass = !v.first_mismatch.has_value();
    return v;
}

} // namespace qelong

#endif
