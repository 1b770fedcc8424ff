#ifndef QELONG_SERIES_HPP
#define QELONG_SERIES_HPP

// Truncated Laurent series in q over an exact-integer or fixed-modulus
// coefficient ring.  A series carries its valuation v and a precision bound
// P > v: every coefficient at an exponent < P is certified, and coeffs holds
// exactly c_v .. c_{P-1}.  All operations propagate the tightest provable
// precision; nothing is ever claimed beyond it.

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qelong {

using bigint = boost::multiprecision::cpp_int;

struct ring_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct non_unit : std::domain_error {
    using std::domain_error::domain_error;
};

struct insufficient_precision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact arbitrary-precision integer coefficients.
struct ExactRing {
    using value_type = bigint;

    bool compatible(const ExactRing&) const { return true; }
    std::string name() const { return "Z"; }

    value_type from_int(long long n) const { return value_type(n); }
    value_type from_bigint(const bigint& n) const { return n; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }

    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }

    value_type inv(const value_type& a) const {
        if (!is_unit(a))
            throw non_unit("exact-integer leading coefficient is not +-1");
        return a;
    }
};

// Integers modulo a fixed 64-bit modulus; values are stored reduced in [0, M).
struct ModRing {
    using value_type = std::uint64_t;

    std::uint64_t modulus;

    explicit ModRing(std::uint64_t m) : modulus(m) {
        if (m < 2)
            throw std::invalid_argument("modulus must be >= 2");
    }

    bool compatible(const ModRing& o) const { return modulus == o.modulus; }
    std::string name() const { return "Z/" + std::to_string(modulus); }

    value_type from_int(long long n) const {
        long long r = n % static_cast<long long>(modulus);
        if (r < 0) r += static_cast<long long>(modulus);
        return static_cast<value_type>(r);
    }
    value_type from_bigint(const bigint& n) const {
        bigint r = n % modulus;
        if (r < 0) r += modulus;
        return static_cast<value_type>(r);
    }

    value_type add(value_type a, value_type b) const {
        return a >= modulus - b && b != 0 ? a - (modulus - b) : a + b;
    }
    value_type sub(value_type a, value_type b) const {
        return a >= b ? a - b : a + (modulus - b);
    }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(
            static_cast<unsigned __int128>(a) * b % modulus);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : modulus - a; }

    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    bool is_unit(value_type a) const { return gcd_u64(a % modulus, modulus) == 1; }

    value_type inv(value_type a) const {
        a %= modulus;
        // extended Euclid on (a, modulus)
        std::int64_t t = 0, newt = 1;
        std::uint64_t r = modulus, newr = a;
        while (newr != 0) {
            std::uint64_t q = r / newr;
            std::int64_t tmpt = t - static_cast<std::int64_t>(q) * newt;
            t = newt; newt = tmpt;
            std::uint64_t tmpr = r - q * newr;
            r = newr; newr = tmpr;
        }
        if (r != 1)
            throw non_unit("leading coefficient not coprime to modulus");
        return t < 0 ? static_cast<value_type>(t + static_cast<std::int64_t>(modulus))
                     : static_cast<value_type>(t);
    }

private:
    static std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
        while (a) { std::uint64_t t = b % a; b = a; a = t; }
        return b;
    }
};

template <class Ring>
class Series {
public:
    using value_type = typename Ring::value_type;

    // A zero series known to precision P.  By convention its valuation is P
    // (the best provable lower bound) and its coefficient list is empty.
    static Series zero(Ring ring, long long precision) {
        return Series(std::move(ring), precision, {}, precision, no_normalize{});
    }

    static Series monomial(Ring ring, long long coeff, long long exponent,
                           long long precision) {
        if (precision <= exponent)
            return zero(std::move(ring), precision);
        std::vector<value_type> c(static_cast<std::size_t>(precision - exponent));
        c[0] = ring.from_int(coeff);
        return Series(std::move(ring), exponent, std::move(c), precision);
    }

    static Series one(Ring ring, long long precision) {
        return monomial(std::move(ring), 1, 0, precision);
    }

    Series(Ring ring, long long valuation, std::vector<value_type> coeffs,
           long long precision)
        : ring_(std::move(ring)), val_(valuation), prec_(precision),
          coeffs_(std::move(coeffs)) {
        if (prec_ - val_ != static_cast<long long>(coeffs_.size()))
            throw std::invalid_argument("coeffs length must equal precision - valuation");
        normalize();
    }

    const Ring& ring() const { return ring_; }
    long long valuation() const { return val_; }
    long long precision() const { return prec_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<value_type>& coeffs() const { return coeffs_; }

    value_type coeff(long long n) const {
        if (n >= prec_)
            throw insufficient_precision("coefficient at q^" + std::to_string(n) +
                                         " beyond precision " + std::to_string(prec_));
        if (n < val_ || coeffs_.empty())
            return ring_.from_int(0);
        return coeffs_[static_cast<std::size_t>(n - val_)];
    }

    Series truncated(long long new_precision) const {
        if (new_precision > prec_)
            throw insufficient_precision("cannot raise precision by truncation");
        if (new_precision <= val_)
            return zero(ring_, new_precision);
        std::vector<value_type> c(coeffs_.begin(),
                                  coeffs_.begin() + (new_precision - val_));
        return Series(ring_, val_, std::move(c), new_precision);
    }

    friend Series operator-(const Series& a) {
        std::vector<value_type> c(a.coeffs_);
        for (auto& x : c) x = a.ring_.neg(x);
        return Series(a.ring_, a.val_, std::move(c), a.prec_);
    }

    friend Series operator+(const Series& a, const Series& b) {
        a.require_same_ring(b);
        long long prec = std::min(a.prec_, b.prec_);
        long long val = std::min(a.val_, b.val_);
        if (val >= prec)
            return zero(a.ring_, prec);
        std::vector<value_type> c(static_cast<std::size_t>(prec - val));
        for (auto& x : c) x = a.ring_.from_int(0);
        for (long long n = std::max(val, a.val_); n < std::min(prec, a.prec_); ++n)
            c[static_cast<std::size_t>(n - val)] = a.coeff(n);
        for (long long n = std::max(val, b.val_); n < std::min(prec, b.prec_); ++n) {
            auto& slot = c[static_cast<std::size_t>(n - val)];
            slot = a.ring_.add(slot, b.coeff(n));
        }
        return Series(a.ring_, val, std::move(c), prec);
    }

    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    // Cauchy product; precision = min(P_a + v_b, P_b + v_a).  Quadratic
    // schoolbook kernel, sufficient for every run this library performs.
    friend Series operator*(const Series& a, const Series& b) {
        a.require_same_ring(b);
        long long prec = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
        if (a.is_zero() || b.is_zero())
            return zero(a.ring_, prec);
        long long val = a.val_ + b.val_;
        if (val >= prec)
            return zero(a.ring_, prec);
        std::size_t len = static_cast<std::size_t>(prec - val);
        std::vector<value_type> c(len);
        for (auto& x : c) x = a.ring_.from_int(0);
        const auto& ca = a.coeffs_;
        const auto& cb = b.coeffs_;
        for (std::size_t i = 0; i < ca.size() && i < len; ++i) {
            if (a.ring_.is_zero(ca[i])) continue;
            std::size_t jmax = std::min(cb.size(), len - i);
            for (std::size_t j = 0; j < jmax; ++j)
                c[i + j] = a.ring_.add(c[i + j], a.ring_.mul(ca[i], cb[j]));
        }
        return Series(a.ring_, val, std::move(c), prec);
    }

private:
    struct no_normalize {};
    Series(Ring ring, long long valuation, std::vector<value_type> coeffs,
           long long precision, no_normalize)
        : ring_(std::move(ring)), val_(valuation), prec_(precision),
          coeffs_(std::move(coeffs)) {}

    void require_same_ring(const Series& other) const {
        if (!ring_.compatible(other.ring_))
            throw ring_mismatch("series live in different coefficient rings");
    }

    // Leading zeros are absorbed into the valuation; precision never moves.
    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && ring_.is_zero(coeffs_[lead]))
            ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            val_ = prec_;
        } else if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
            val_ += static_cast<long long>(lead);
        }
    }

    Ring ring_;
    long long val_;
    long long prec_;
    std::vector<value_type> coeffs_;
};

// Multiplicative inverse.  Requires a unit leading coefficient; the result b
// satisfies a*b = 1 to the provable window, with valuation -v and precision
// P - 2v.
template <class Ring>
Series<Ring> invert(const Series<Ring>& a) {
    if (a.is_zero())
        throw non_unit("cannot invert the zero series");
    const Ring& ring = a.ring();
    const auto& u = a.coeffs();
    auto u0inv = ring.inv(u[0]);
    std::size_t len = u.size();
    std::vector<typename Ring::value_type> b(len);
    b[0] = u0inv;
    for (std::size_t n = 1; n < len; ++n) {
        auto s = ring.from_int(0);
        for (std::size_t i = 1; i <= n; ++i)
            if (i < u.size())
                s = ring.add(s, ring.mul(u[i], b[n - i]));
        b[n] = ring.neg(ring.mul(u0inv, s));
    }
    long long v = a.valuation();
    return Series<Ring>(ring, -v, std::move(b), -v + static_cast<long long>(len));
}

// Binary exponentiation; pow(a, 0) = 1 carried at a's relative precision.
template <class Ring>
Series<Ring> pow(const Series<Ring>& a, long long e) {
    if (e < 0)
        return pow(invert(a), -e);
    long long window = a.precision() - a.valuation();
    Series<Ring> result = Series<Ring>::one(a.ring(), window > 0 ? window : 1);
    if (e == 0)
        return result;
    Series<Ring> base = a;
    bool have = false;
    while (e > 0) {
        if (e & 1) {
            result = have ? result * base : base;
            have = true;
        }
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

// q -> q^m.  Valuation m*v, precision m*(P-1)+1.
template <class Ring>
Series<Ring> substitute_power(const Series<Ring>& a, long long m) {
    if (m < 1)
        throw std::invalid_argument("substitute_power requires m >= 1");
    if (m == 1)
        return a;
    long long prec = m * (a.precision() - 1) + 1;
    if (a.is_zero())
        return Series<Ring>::zero(a.ring(), prec);
    long long val = m * a.valuation();
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(prec - val));
    for (auto& x : c) x = a.ring().from_int(0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        c[i * static_cast<std::size_t>(m)] = a.coeffs()[i];
    return Series<Ring>(a.ring(), val, std::move(c), prec);
}

inline Series<ModRing> reduce_mod(const Series<ExactRing>& a, std::uint64_t M) {
    ModRing ring(M);
    std::vector<ModRing::value_type> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = ring.from_bigint(a.coeffs()[i]);
    if (a.is_zero())
        return Series<ModRing>::zero(ring, a.precision());
    return Series<ModRing>(ring, a.valuation(), std::move(c), a.precision());
}

inline Series<ModRing> reduce_mod(const Series<ModRing>& a, std::uint64_t M) {
    if (a.ring().modulus % M != 0)
        throw ring_mismatch("target modulus does not divide series modulus");
    ModRing ring(M);
    std::vector<ModRing::value_type> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeffs()[i] % M;
    if (a.is_zero())
        return Series<ModRing>::zero(ring, a.precision());
    return Series<ModRing>(ring, a.valuation(), std::move(c), a.precision());
}

// First exponent < N at which a and b differ, if any.  Hard error when either
// side cannot certify coefficients up to N.
template <class Ring>
std::optional<long long> first_difference(const Series<Ring>& a,
                                          const Series<Ring>& b, long long N) {
    if (!a.ring().compatible(b.ring()))
        throw ring_mismatch("comparing series over different rings");
    if (a.precision() < N || b.precision() < N)
        throw insufficient_precision(
            "comparison to q^" + std::to_string(N) + " requested but precision is " +
            std::to_string(std::min(a.precision(), b.precision())));
    long long lo = std::min(a.valuation(), b.valuation());
    for (long long n = lo; n < N; ++n)
        if (!a.ring().equal(a.coeff(n), b.coeff(n)))
            return n;
    return std::nullopt;
}

template <class Ring>
bool eq_to_precision(const Series<Ring>& a, const Series<Ring>& b, long long N) {
    return !first_difference(a, b, N).has_value();
}

template <class Ring>
std::ostream& operator<<(std::ostream& os, const Series<Ring>& s) {
    if (s.is_zero())
        return os << "O(q^" << s.precision() << ")";
    bool first = true;
    long long shown = 0;
    for (long long n = s.valuation(); n < s.precision() && shown < 12; ++n) {
        auto c = s.coeff(n);
        if (s.ring().is_zero(c)) continue;
        if (!first) os << " + ";
        os << c;
        if (n != 0) os << "*q^" << n;
        first = false;
        ++shown;
    }
    return os << " + O(q^" << s.precision() << ")";
}

} // namespace qelong

#endif
