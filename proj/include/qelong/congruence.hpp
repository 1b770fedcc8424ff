#ifndef QELONG_CONGRUENCE_HPP
#define QELONG_CONGRUENCE_HPP

// The d_k generating functions (f_2^k / f_1^{3k+1}), an independent
// coefficient oracle, congruence-family verification over explicit ranges,
// the lifting check, and the empirical progression scanner.
//
// Everything here reports "verified in range" at best: the families are
// universally quantified and a series computation cannot prove them, so every
// report carries the exact c- and argument-ranges it covers.

#include <chrono>
#include <functional>

#include "qseries.hpp"

namespace qelong {

// k >= 0; k = 0 degenerates to the unrestricted partition function 1/f_1.
template <class Ring>
Series<Ring> dk_series(long long k, long long N, Ring ring) {
    if (k < 0)
        throw std::invalid_argument("dk_series requires k >= 0");
    Series<Ring> inv_f1 = partition_series(N, ring);
    Series<Ring> acc = pow(inv_f1, 3 * k + 1);
    if (k > 0)
        acc = acc * pow(eta_series(2, N, ring), k);
    return acc;
}

// Second route to d_k(n), for cross-checking dk_series: f_1^{-(3k+1)} by
// repeated convolution of the pentagonal-recurrence partition series, times
// the literal finite product expansion of f_2^k (not the pentagonal form).
inline std::vector<bigint> oracle_dk_table(long long k, long long n_max) {
    if (k < 0 || n_max < 0)
        throw std::invalid_argument("oracle_dk requires k >= 0, n >= 0");
    long long N = n_max + 1;
    ExactRing Z;
    std::vector<bigint> p(static_cast<std::size_t>(N));
    {
        auto ps = partition_series(N, Z);
        for (long long i = 0; i < N; ++i)
            p[static_cast<std::size_t>(i)] = ps.coeff(i);
    }
    std::vector<bigint> acc(static_cast<std::size_t>(N));
    acc[0] = 1;
    for (long long rep = 0; rep < 3 * k + 1; ++rep) {
        std::vector<bigint> next(static_cast<std::size_t>(N));
        for (long long i = 0; i < N; ++i) {
            if (acc[static_cast<std::size_t>(i)].is_zero()) continue;
            for (long long j = 0; i + j < N; ++j)
                next[static_cast<std::size_t>(i + j)] +=
                    acc[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j)];
        }
        acc = std::move(next);
    }
    // multiply by prod_{m>=1} (1 - q^{2m})^k, factor by factor
    for (long long m = 1; 2 * m < N; ++m)
        for (long long rep = 0; rep < k; ++rep)
            for (long long i = N - 1; i >= 2 * m; --i)
                acc[static_cast<std::size_t>(i)] -=
                    acc[static_cast<std::size_t>(i - 2 * m)];
    return acc;
}

inline bigint oracle_dk(long long k, long long n) {
    return oracle_dk_table(k, n)[static_cast<std::size_t>(n)];
}

// Brute-force partition count by enumeration over parts; test-scale only.
inline bigint partition_count_enumerated(long long n) {
    std::function<bigint(long long, long long)> rec = [&](long long rest,
                                                          long long maxpart) -> bigint {
        if (rest == 0) return 1;
        bigint total = 0;
        for (long long part = std::min(rest, maxpart); part >= 1; --part)
            total += rec(rest - part, part);
        return total;
    };
    return rec(n, n);
}

// A parameterized claim: d_{Mk*c + k0}(A*n + b) == 0 (mod `modulus`) for all
// c, n >= 0 and every residue b listed.  Mk = 0 is the sentinel for a fixed-k
// family (the partition function itself when k0 = 0).
struct CongruenceFamily {
    std::string label;
    long long k_modulus = 1;   // Mk; 0 = fixed k
    long long k_residue = 0;   // k0
    long long arg_modulus = 1; // A
    std::vector<long long> arg_residues;
    std::uint64_t modulus = 5; // p^a

    long long k_for(long long c) const {
        return k_modulus == 0 ? k_residue : k_modulus * c + k_residue;
    }
};

enum class Verdict { verified_in_range, counterexample, insufficient_precision };

struct Counterexample {
    long long c = 0;
    long long n = 0; // the full argument A*n + b
    std::uint64_t coefficient = 0;
};

struct VerificationReport {
    std::string label;
    Verdict verdict = Verdict::verified_in_range;
    long long c_max = 0;
    long long coeff_bound = 0;
    long long precision_used = 0;
    std::optional<Counterexample> witness;
    double wall_seconds = 0.0;
    std::string detail;
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::verified_in_range: return "verified-in-range";
    case Verdict::counterexample: return "counterexample";
    case Verdict::insufficient_precision: return "insufficient-precision";
    }
    return "?";
}

// Checks every coefficient d_{k(c)}(A*n+b) <= coeff_bound for c <= c_max.
inline VerificationReport check_family(const CongruenceFamily& fam,
                                       long long c_max, long long coeff_bound) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.label = fam.label;
    rep.c_max = fam.k_modulus == 0 ? 0 : c_max;
    rep.coeff_bound = coeff_bound;
    rep.precision_used = coeff_bound + 1;
    ModRing ring(fam.modulus);
    for (long long c = 0; c <= rep.c_max && rep.verdict == Verdict::verified_in_range;
         ++c) {
        Series<ModRing> s = dk_series(fam.k_for(c), coeff_bound + 1, ring);
        for (long long b : fam.arg_residues) {
            for (long long arg = b; arg <= coeff_bound; arg += fam.arg_modulus) {
                auto coeff = s.coeff(arg);
                if (coeff != 0) {
                    rep.verdict = Verdict::counterexample;
                    rep.witness = Counterexample{c, arg, coeff};
                    break;
                }
            }
            if (rep.witness) break;
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Lifting check: given a verified base family d_k(p^M n + r) == 0 (mod
// p^Nexp), the lifted families d_{p^{M+Nexp-1} j + k} satisfy the same
// congruence; both are verified over the stated range.
inline VerificationReport check_lifting(long long p, long long M, long long Nexp,
                                        long long r, long long k, long long j_max,
                                        long long n_max) {
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t mod = 1;
    for (long long i = 0; i < Nexp; ++i) mod *= static_cast<std::uint64_t>(p);
    long long pM = 1;
    for (long long i = 0; i < M; ++i) pM *= p;
    long long stride = pM;
    long long kstep = 1;
    for (long long i = 0; i < M + Nexp - 1; ++i) kstep *= p;

    VerificationReport rep;
    rep.label = "lifting p=" + std::to_string(p) + " M=" + std::to_string(M) +
                " N=" + std::to_string(Nexp) + " r=" + std::to_string(r) +
                " k=" + std::to_string(k);
    rep.coeff_bound = n_max;
    rep.precision_used = n_max + 1;
    ModRing ring(mod);
    for (long long j = 0; j <= j_max; ++j) {
        long long kk = kstep * j + k;
        Series<ModRing> s = dk_series(kk, n_max + 1, ring);
        for (long long arg = r; arg <= n_max; arg += stride) {
            if (s.coeff(arg) != 0) {
                rep.verdict = Verdict::counterexample;
                rep.witness = Counterexample{j, arg, s.coeff(arg)};
                rep.detail = j == 0 ? "base family fails" : "lifted family fails";
                rep.wall_seconds = std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
                return rep;
            }
        }
    }
    rep.detail = "base and lifted j<=" + std::to_string(j_max) + " verified";
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Tower congruences of the Banerjee-Smoot / Smoot type: series_k names the
// elongation (5 or 2), and the progression is mult*n == 1 (mod ell^alpha),
// whose residue is computed by modular inverse at run time.
inline VerificationReport check_inverse_tower(long long series_k, long long mult,
                                              long long ell, long long alpha,
                                              std::uint64_t strength,
                                              long long coeff_bound,
                                              const std::string& label) {
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t ellpow = 1;
    for (long long i = 0; i < alpha; ++i) ellpow *= static_cast<std::uint64_t>(ell);
    ModRing cond(ellpow);
    long long residue = static_cast<long long>(cond.inv(cond.from_int(mult)));

    CongruenceFamily fam;
    fam.label = label;
    fam.k_modulus = 0;
    fam.k_residue = series_k;
    fam.arg_modulus = static_cast<long long>(ellpow);
    fam.arg_residues = {residue};
    fam.modulus = strength;
    auto rep = check_family(fam, 0, coeff_bound);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// One empirical progression found by the scanner.
struct ScanHit {
    long long k = 0;
    long long arg_modulus = 0;
    long long residue = 0;
    int power = 0; // largest a <= power cap with 5^a dividing every coefficient
    long long tested = 0;
};

// For each k and progression (A, b), reports the largest power of 5 dividing
// all tested coefficients of d_k(A n + b).  Progressions with fewer than
// `min_evidence` tested coefficients are skipped rather than reported.
inline std::vector<ScanHit> scan(const std::vector<long long>& k_set,
                                 const std::vector<long long>& arg_moduli,
                                 int max_power, long long coeff_bound,
                                 long long min_evidence = 16) {
    std::uint64_t working = 1;
    for (int i = 0; i < max_power + 1; ++i) working *= 5;
    ModRing ring(working);
    std::vector<ScanHit> hits;
    for (long long k : k_set) {
        Series<ModRing> s = dk_series(k, coeff_bound + 1, ring);
        for (long long A : arg_moduli) {
            for (long long b = 0; b < A; ++b) {
                long long count = b <= coeff_bound ? (coeff_bound - b) / A + 1 : 0;
                if (count < min_evidence)
                    continue;
                int minval = max_power;
                for (long long arg = b; arg <= coeff_bound && minval > 0; arg += A) {
                    std::uint64_t coeff = s.coeff(arg);
                    int val = 0;
                    while (val < max_power && coeff % 5 == 0 && coeff != 0) {
                        coeff /= 5;
                        ++val;
                    }
                    if (coeff == 0)
                        val = max_power; // zero mod the working modulus
                    minval = std::min(minval, val);
                }
                if (minval > 0)
                    hits.push_back(ScanHit{k, A, b, minval, count});
            }
        }
    }
    return hits;
}

} // namespace qelong

#endif
