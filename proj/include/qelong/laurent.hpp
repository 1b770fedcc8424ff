#ifndef QELONG_LAURENT_HPP
#define QELONG_LAURENT_HPP

// Exact integer Laurent polynomials in the parameter K (or L = K - 4), and
// the P(m,n) recurrence engine.  P(m,n) is the two-term combination of
// Rogers-Ramanujan powers
//   P(m,n) = q^{-m} R_1^{-(m+2n)} R_2^{-(2m-n)}
//          + (-1)^{m+n} q^m R_1^{m+2n} R_2^{2m-n},
// which the recurrences
//   P(m,n+1) = 4 K^{-1} P(m,n) + P(m,n-1)
//   P(m+2,n) = K P(m+1,n) + P(m,n)
// express as Laurent polynomials in K.  K^{-1} is a formal symbol (negative
// exponents), so every coefficient stays an exact integer.

#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

#include "qseries.hpp"

namespace qelong {

enum class Symbol { K, L };

class LaurentPoly {
public:
    explicit LaurentPoly(Symbol sym = Symbol::K) : sym_(sym) {}

    static LaurentPoly constant(long long c, Symbol sym = Symbol::K) {
        LaurentPoly p(sym);
        p.set(0, bigint(c));
        return p;
    }

    static LaurentPoly term(const bigint& c, long long exponent,
                            Symbol sym = Symbol::K) {
        LaurentPoly p(sym);
        p.set(exponent, c);
        return p;
    }

    Symbol symbol() const { return sym_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<long long, bigint>& terms() const { return terms_; }

    bigint coeff(long long e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? bigint(0) : it->second;
    }

    long long min_exp() const {
        if (terms_.empty()) throw std::logic_error("zero polynomial has no exponents");
        return terms_.begin()->first;
    }
    long long max_exp() const {
        if (terms_.empty()) throw std::logic_error("zero polynomial has no exponents");
        return terms_.rbegin()->first;
    }

    void set(long long e, bigint c) {
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[e] = std::move(c);
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.sym_ == b.sym_ && a.terms_ == b.terms_;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_symbol(b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_)
            r.set(e, r.coeff(e) + c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_symbol(b);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_)
            r.set(e, r.coeff(e) - c);
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_symbol(b);
        LaurentPoly r(a.sym_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.set(ea + eb, r.coeff(ea + eb) + ca * cb);
        return r;
    }

    friend LaurentPoly operator*(const bigint& s, const LaurentPoly& a) {
        LaurentPoly r(a.sym_);
        for (const auto& [e, c] : a.terms_)
            r.set(e, s * c);
        return r;
    }

    LaurentPoly pow(long long e) const {
        if (e < 0) throw std::invalid_argument("LaurentPoly::pow needs e >= 0");
        LaurentPoly r = constant(1, sym_);
        LaurentPoly base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return r;
    }

    // coefficients reduced into [0, M)
    LaurentPoly reduce_coeffs(const bigint& M) const {
        LaurentPoly r(sym_);
        for (const auto& [e, c] : terms_) {
            bigint m = c % M;
            if (m < 0) m += M;
            r.set(e, m);
        }
        return r;
    }

    // descending-exponent display, e.g. "-44*K^3 + 352*K^2 + ... + 2816*K^-4"
    std::string str() const {
        if (terms_.empty()) return "0";
        const char* s = sym_ == Symbol::K ? "K" : "L";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            bigint c = it->second;
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            long long e = it->first;
            if (e == 0 || c != 1) os << c;
            if (e != 0) {
                if (c != 1) os << "*";
                os << s;
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    void require_same_symbol(const LaurentPoly& o) const {
        if (sym_ != o.sym_)
            throw std::invalid_argument("mixing K- and L-polynomials");
    }

    Symbol sym_;
    std::map<long long, bigint> terms_;
};

namespace detail {

struct PMemo {
    std::mutex mu;
    std::map<std::pair<long long, long long>, LaurentPoly> table;
};

inline PMemo& p_memo() {
    static PMemo memo;
    return memo;
}

inline LaurentPoly p_poly_unlocked(std::map<std::pair<long long, long long>, LaurentPoly>& tab,
                                   long long m, long long n) {
    auto key = std::make_pair(m, n);
    auto it = tab.find(key);
    if (it != tab.end())
        return it->second;
    LaurentPoly r;
    const LaurentPoly four_kinv = LaurentPoly::term(bigint(4), -1);
    const LaurentPoly K = LaurentPoly::term(bigint(1), 1);
    if (m == 0 && n == 0) {
        r = LaurentPoly::constant(2);
    } else if (m == 0 && n == 1) {
        r = four_kinv;
    } else if (m == 1 && n == 0) {
        r = K;
    } else if (m == 1 && n == -1) {
        r = four_kinv - LaurentPoly::constant(2) + K;
    } else if (m >= 2) {
        r = K * p_poly_unlocked(tab, m - 1, n) + p_poly_unlocked(tab, m - 2, n);
    } else if (n >= 1) {
        // P(m,n) = 4K^{-1} P(m,n-1) + P(m,n-2)
        r = four_kinv * p_poly_unlocked(tab, m, n - 1) +
            p_poly_unlocked(tab, m, n - 2);
    } else {
        // downward rearrangement: P(m,n) = P(m,n+2) - 4K^{-1} P(m,n+1)
        r = p_poly_unlocked(tab, m, n + 2) -
            four_kinv * p_poly_unlocked(tab, m, n + 1);
    }
    tab.emplace(key, r);
    return r;
}

} // namespace detail

// P(m,n) as a Laurent polynomial in K, via the recurrences and initial
// values; memoized and safe to call concurrently.
inline LaurentPoly p_poly(long long m, long long n) {
    if (m < 0)
        throw std::invalid_argument("P(m,n) requires m >= 0");
    auto& memo = detail::p_memo();
    std::lock_guard<std::mutex> lock(memo.mu);
    return detail::p_poly_unlocked(memo.table, m, n);
}

// P(m,n) straight from its definition as a q-series, independent of the
// recurrences.
template <class Ring>
Series<Ring> p_series(long long m, long long n, long long N, Ring ring) {
    if (m < 0)
        throw std::invalid_argument("P(m,n) requires m >= 0");
    long long e1 = m + 2 * n;   // R_1 exponent
    long long e2 = 2 * m - n;   // R_2 exponent
    long long budget = N + 2 * (m + std::llabs(e1) + 2 * std::llabs(e2)) + 4;
    Series<Ring> r1 = rogers_ramanujan(budget, ring);
    Series<Ring> r2 = substitute_power(rogers_ramanujan((budget + 1) / 2 + 1, ring), 2)
                          .truncated(budget);
    Series<Ring> direct = pow(r1, e1) * pow(r2, e2) *
                          Series<Ring>::monomial(ring, 1, m, budget + m);
    Series<Ring> recip = pow(r1, -e1) * pow(r2, -e2) *
                         Series<Ring>::monomial(ring, 1, -m, budget - m);
    long long sign = ((m + n) % 2 == 0) ? 1 : -1;
    Series<Ring> sum = (sign == 1) ? recip + direct : recip - direct;
    if (sum.precision() < N)
        throw insufficient_precision("p_series fell short of requested precision");
    return sum;
}

template <class Ring>
Series<Ring> scale(const bigint& c, const Series<Ring>& s) {
    auto cs = s.coeffs();
    auto cv = s.ring().from_bigint(c);
    for (auto& x : cs) x = s.ring().mul(cv, x);
    if (s.is_zero())
        return s;
    return Series<Ring>(s.ring(), s.valuation(), std::move(cs), s.precision());
}

// Substitute the q-series of the polynomial's symbol (K or L); negative
// exponents go through invert.
template <class Ring>
Series<Ring> eval_at_K(const LaurentPoly& p, long long N, Ring ring) {
    if (p.is_zero())
        return Series<Ring>::zero(ring, N);
    long long spread = std::max(std::llabs(p.min_exp()), std::llabs(p.max_exp()));
    long long budget = N + 2 * spread + 4;
    Series<Ring> base = p.symbol() == Symbol::K ? param_K(budget, ring)
                                                : param_L(budget, ring);
    Series<Ring> acc = Series<Ring>::zero(ring, budget);
    for (const auto& [e, c] : p.terms())
        acc = acc + scale(c, pow(base, e));
    if (acc.precision() < N)
        throw insufficient_precision("eval_at_K fell short of requested precision");
    return acc;
}

// Clears the pole at K = 0 and rewrites in L = K - 4: returns the pair
// (pole order j, polynomial K^j * p with K = L + 4 expanded in L), keeping
// everything in exact integers.
struct PoleClearedL {
    long long cleared_pole = 0;
    LaurentPoly numerator{Symbol::L};
};

inline PoleClearedL substitute_K_equals_L_plus_4(const LaurentPoly& p) {
    if (p.symbol() != Symbol::K)
        throw std::invalid_argument("expected a K-polynomial");
    PoleClearedL out;
    if (p.is_zero())
        return out;
    out.cleared_pole = std::max<long long>(0, -p.min_exp());
    LaurentPoly l_plus_4 = LaurentPoly::term(bigint(1), 1, Symbol::L) +
                           LaurentPoly::constant(4, Symbol::L);
    LaurentPoly acc(Symbol::L);
    for (const auto& [e, c] : p.terms()) {
        long long shifted = e + out.cleared_pole; // >= 0
        acc = acc + c * l_plus_4.pow(shifted);
    }
    out.numerator = acc;
    return out;
}

} // namespace qelong

#endif
