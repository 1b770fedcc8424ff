#ifndef QELONG_QSERIES_HPP
#define QELONG_QSERIES_HPP

// The named series of the elongated-diamond congruence machinery: the eta
// products f_m = prod (1 - q^{mn}), general eta quotients, the
// Rogers-Ramanujan continued fraction R(q), the parameters K and L, and the
// m-dissection extraction operator.

#include <algorithm>
#include <vector>

#include "series.hpp"

namespace qelong {

// q^shift * prod f_{m_i}^{e_i}; the normal form of every generating function
// handled here.
struct EtaQuotientSpec {
    long long qshift = 0;
    std::vector<std::pair<long long, long long>> factors; // (scale, exponent)
};

// f_1 via the pentagonal number theorem: exponents k(3k-1)/2, signs (-1)^k.
template <class Ring>
Series<Ring> eta1_series(long long N, Ring ring) {
    if (N < 1)
        throw std::invalid_argument("precision must be >= 1");
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(N));
    for (auto& x : c) x = ring.from_int(0);
    for (long long k = 0;; ++k) {
        long long e1 = k * (3 * k - 1) / 2;
        long long e2 = k * (3 * k + 1) / 2;
        if (e1 >= N && e2 >= N) break;
        long long sign = (k % 2 == 0) ? 1 : -1;
        if (e1 < N) c[static_cast<std::size_t>(e1)] = ring.from_int(sign);
        if (k > 0 && e2 < N) c[static_cast<std::size_t>(e2)] = ring.from_int(sign);
    }
    return Series<Ring>(std::move(ring), 0, std::move(c), N);
}

template <class Ring>
Series<Ring> eta_series(long long m, long long N, Ring ring) {
    if (m < 1)
        throw std::invalid_argument("eta scale must be >= 1");
    if (m == 1)
        return eta1_series(N, std::move(ring));
    long long inner = (N + m - 2) / m + 1;
    return substitute_power(eta1_series(inner, std::move(ring)), m).truncated(
        std::max<long long>(N, 1));
}

// 1/f_1: partition generating function via the pentagonal recurrence
// p(n) = sum_k (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
template <class Ring>
Series<Ring> partition_series(long long N, Ring ring) {
    if (N < 1)
        throw std::invalid_argument("precision must be >= 1");
    std::vector<typename Ring::value_type> p(static_cast<std::size_t>(N));
    p[0] = ring.from_int(1);
    for (long long n = 1; n < N; ++n) {
        auto acc = ring.from_int(0);
        for (long long k = 1;; ++k) {
            long long g1 = k * (3 * k - 1) / 2;
            long long g2 = k * (3 * k + 1) / 2;
            if (g1 > n) break;
            auto term = p[static_cast<std::size_t>(n - g1)];
            if (g2 <= n)
                term = ring.add(term, p[static_cast<std::size_t>(n - g2)]);
            acc = (k % 2 == 1) ? ring.add(acc, term) : ring.sub(acc, term);
        }
        p[static_cast<std::size_t>(n)] = acc;
    }
    return Series<Ring>(std::move(ring), 0, std::move(p), N);
}

template <class Ring>
Series<Ring> eta_quotient(const EtaQuotientSpec& spec, long long N, Ring ring) {
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        if (spec.factors[i].first < 1)
            throw std::invalid_argument("eta scales must be >= 1");
        for (std::size_t j = i + 1; j < spec.factors.size(); ++j)
            if (spec.factors[i].first == spec.factors[j].first)
                throw std::invalid_argument("eta scales must be distinct");
    }
    long long budget = N + std::max<long long>(0, -spec.qshift) + 1;
    Series<Ring> acc = Series<Ring>::one(ring, budget);
    for (const auto& [m, e] : spec.factors) {
        if (e == 0) continue;
        Series<Ring> base = eta_series(m, budget, ring);
        // negative exponents of f_m: invert the unit f_m first
        acc = acc * pow(base, e);
    }
    if (spec.qshift != 0)
        acc = acc * Series<Ring>::monomial(ring, 1, spec.qshift,
                                           budget + spec.qshift);
    if (acc.precision() < N)
        throw insufficient_precision("eta quotient fell short of requested precision");
    return acc;
}

// R(q) = prod (1-q^{5n-1})(1-q^{5n-4}) / ((1-q^{5n-2})(1-q^{5n-3})),
// built from the four residue-class factor products.
template <class Ring>
Series<Ring> rogers_ramanujan(long long N, Ring ring) {
    if (N < 1)
        throw std::invalid_argument("precision must be >= 1");
    auto sparse_product = [&](long long r1, long long r2) {
        std::vector<typename Ring::value_type> c(static_cast<std::size_t>(N));
        for (auto& x : c) x = ring.from_int(0);
        c[0] = ring.from_int(1);
        for (long long d = 1; d < N; ++d) {
            long long r = d % 5;
            if (r != r1 && r != r2) continue;
            // multiply in place by (1 - q^d)
            for (long long n = N - 1; n >= d; --n)
                c[static_cast<std::size_t>(n)] =
                    ring.sub(c[static_cast<std::size_t>(n)],
                             c[static_cast<std::size_t>(n - d)]);
        }
        return Series<Ring>(ring, 0, std::move(c), N);
    };
    Series<Ring> num = sparse_product(1, 4);
    Series<Ring> den = sparse_product(2, 3);
    return num * invert(den);
}

// K = f_2 f_5^5 / (q f_1 f_10^5); valuation -1, leading coefficient 1.
template <class Ring>
Series<Ring> param_K(long long N, Ring ring) {
    return eta_quotient({-1, {{2, 1}, {5, 5}, {1, -1}, {10, -5}}}, N, std::move(ring));
}

// L = f_1^3 f_5 / (q f_2 f_10^3) = K - 4.
template <class Ring>
Series<Ring> param_L(long long N, Ring ring) {
    return eta_quotient({-1, {{1, 3}, {5, 1}, {2, -1}, {10, -3}}}, N, std::move(ring));
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// From F = sum a(n) q^n, the residue-r slice of the m-dissection:
// sum_{n == r (mod m)} a(n) q^{(n-r)/m}.  Residues are normalized into
// [0, m) by Euclidean reduction; negative exponents are handled throughout.
template <class Ring>
Series<Ring> extract(const Series<Ring>& F, long long m, long long r) {
    if (m < 1)
        throw std::invalid_argument("dissection modulus must be >= 1");
    r %= m;
    if (r < 0) r += m;
    long long P = F.precision();
    long long out_prec = floor_div(P - 1 - r, m) + 1;
    if (F.is_zero())
        return Series<Ring>::zero(F.ring(), out_prec);
    long long v = F.valuation();
    // first exponent >= v congruent to r mod m
    long long n0 = v + ((r - v) % m + m) % m;
    long long out_v = floor_div(n0 - r, m);
    if (out_v >= out_prec)
        return Series<Ring>::zero(F.ring(), out_prec);
    std::vector<typename Ring::value_type> c(
        static_cast<std::size_t>(out_prec - out_v));
    for (auto& x : c) x = F.ring().from_int(0);
    for (long long n = n0; n < P; n += m)
        c[static_cast<std::size_t>(floor_div(n - r, m) - out_v)] = F.coeff(n);
    return Series<Ring>(F.ring(), out_v, std::move(c), out_prec);
}

} // namespace qelong

#endif
