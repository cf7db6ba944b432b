#include "faraday/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace faraday::wigner {

namespace {

// ---------------------------------------------------------------------------
// Exact arithmetic support.
//
// Every symbol is an exact sign * sqrt(p/q). The Racah sum is evaluated over
// prime-factorized factorials: each term becomes an integer numerator over a
// common denominator, the numerators are accumulated in arbitrary precision,
// and only the final sign * |N|/D * sqrt(P) is rounded to double (via long
// double mantissas with a separate binary exponent, so nothing overflows).
// ---------------------------------------------------------------------------

constexpr int kMaxTwiceJ = 160; // j up to 80; beyond the supported range

const std::vector<int>& prime_table() {
    // Largest factorial argument: ~2*jmax + 2 for triangle sums, so primes up
    // to 4*80+2 cover every reachable case.
    static const std::vector<int> primes = [] {
        constexpr int limit = 4 * kMaxTwiceJ + 4;
        std::vector<char> sieve(limit + 1, 1);
        std::vector<int> out;
        for (int i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (int k = 2 * i; k <= limit; k += i) sieve[k] = 0;
        }
        return out;
    }();
    return primes;
}

// Exponent of prime p in n! (Legendre's formula).
int factorial_prime_exp(int n, int p) {
    int e = 0;
    while (n > 0) {
        n /= p;
        e += n;
    }
    return e;
}

using ExpVec = std::vector<int>; // exponents aligned with prime_table()

void add_factorial(ExpVec& e, int n, int sign) {
    if (n <= 1) return;
    const auto& primes = prime_table();
    for (std::size_t i = 0; i < primes.size() && primes[i] <= n; ++i)
        e[i] += sign * factorial_prime_exp(n, primes[i]);
}

// Magnitude as mantissa * 2^exp with the mantissa kept in [0.5, 1).
struct MantExp {
    long double m = 0.0L;
    long e = 0;
};

MantExp normalize(long double m, long e) {
    if (m == 0.0L) return {0.0L, 0};
    int k = 0;
    m = std::frexp(m, &k);
    return {m, e + k};
}

MantExp mul(MantExp a, MantExp b) { return normalize(a.m * b.m, a.e + b.e); }

MantExp pow_int(long double base, int n) {
    MantExp r = normalize(1.0L, 0);
    MantExp b = normalize(base, 0);
    while (n > 0) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

// Value of a prime-exponent vector as a mantissa/exponent pair. Exponents may
// be negative.
MantExp exps_value(const ExpVec& e) {
    const auto& primes = prime_table();
    MantExp num = normalize(1.0L, 0);
    MantExp den = normalize(1.0L, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0)
            num = mul(num, pow_int((long double)primes[i], e[i]));
        else if (e[i] < 0)
            den = mul(den, pow_int((long double)primes[i], -e[i]));
    }
    return normalize(num.m / den.m, num.e - den.e);
}

MantExp sqrt_mantexp(MantExp v) {
    if (v.m == 0.0L) return v;
    if (v.e & 1) {
        v.m *= 2.0L;
        v.e -= 1;
    }
    return normalize(std::sqrt(v.m), v.e / 2);
}

struct BigUInt {
    std::vector<std::uint32_t> limbs; // little endian, no trailing zeros

    bool zero() const { return limbs.empty(); }

    void mul_small(std::uint32_t v) {
        if (zero()) return;
        if (v == 0) {
            limbs.clear();
            return;
        }
        std::uint64_t carry = 0;
        for (auto& l : limbs) {
            std::uint64_t cur = (std::uint64_t)l * v + carry;
            l = (std::uint32_t)cur;
            carry = cur >> 32;
        }
        while (carry) {
            limbs.push_back((std::uint32_t)carry);
            carry >>= 32;
        }
    }

    void add(const BigUInt& o) {
        limbs.resize(std::max(limbs.size(), o.limbs.size()), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs.size(); ++i) {
            std::uint64_t cur = (std::uint64_t)limbs[i] + carry +
                                (i < o.limbs.size() ? o.limbs[i] : 0);
            limbs[i] = (std::uint32_t)cur;
            carry = cur >> 32;
        }
        if (carry) limbs.push_back((std::uint32_t)carry);
    }

    // requires *this >= o
    void sub(const BigUInt& o) {
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < limbs.size(); ++i) {
            std::int64_t cur = (std::int64_t)limbs[i] - borrow -
                               (i < o.limbs.size() ? (std::int64_t)o.limbs[i] : 0);
            if (cur < 0) {
                cur += ((std::int64_t)1 << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            limbs[i] = (std::uint32_t)cur;
        }
        while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    }

    static int cmp(const BigUInt& a, const BigUInt& b) {
        if (a.limbs.size() != b.limbs.size())
            return a.limbs.size() < b.limbs.size() ? -1 : 1;
        for (std::size_t i = a.limbs.size(); i-- > 0;) {
            if (a.limbs[i] != b.limbs[i]) return a.limbs[i] < b.limbs[i] ? -1 : 1;
        }
        return 0;
    }

    MantExp to_mantexp() const {
        if (zero()) return {0.0L, 0};
        long double m = 0.0L;
        std::size_t top = limbs.size();
        std::size_t used = std::min<std::size_t>(3, top);
        for (std::size_t i = 0; i < used; ++i)
            m = m * 4294967296.0L + limbs[top - 1 - i];
        long e = 32L * (long)(top - used);
        return normalize(m, e);
    }
};

// Builds prod p_i^{e_i} (all e_i >= 0) as an exact integer.
BigUInt exps_to_biguint(const ExpVec& e) {
    const auto& primes = prime_table();
    BigUInt r;
    r.limbs.push_back(1);
    for (std::size_t i = 0; i < e.size(); ++i) {
        int n = e[i];
        if (n == 0) continue;
        std::uint64_t p = (std::uint64_t)primes[i];
        // multiply in chunks that stay below 2^32
        std::uint64_t chunk = 1;
        for (int k = 0; k < n; ++k) {
            if (chunk * p >= (1ull << 32)) {
                r.mul_small((std::uint32_t)chunk);
                chunk = 1;
            }
            chunk *= p;
        }
        if (chunk > 1) r.mul_small((std::uint32_t)chunk);
    }
    return r;
}

struct SignedSum {
    BigUInt pos, neg;
    void accumulate(const BigUInt& v, int sign) {
        if (sign >= 0)
            pos.add(v);
        else
            neg.add(v);
    }
    // -> (sign, magnitude)
    std::pair<int, BigUInt> resolve() const {
        int c = BigUInt::cmp(pos, neg);
        if (c == 0) return {0, BigUInt{}};
        BigUInt m = c > 0 ? pos : neg;
        m.sub(c > 0 ? neg : pos);
        return {c, m};
    }
};

// Exactly evaluates sign_pre * sqrt(value(sqrt_exps)) * sum_t sign_t * term_t
// where term_t = value(term_exps[t]) is rational.
double exact_sqrt_sum(int sign_pre, const ExpVec& sqrt_exps,
                      const std::vector<std::pair<int, ExpVec>>& terms) {
    if (terms.empty()) return 0.0;
    const std::size_t np = terms[0].second.size();
    ExpVec denom(np, 0);
    for (const auto& [sign, e] : terms) {
        (void)sign;
        for (std::size_t i = 0; i < np; ++i) denom[i] = std::max(denom[i], -e[i]);
    }
    SignedSum sum;
    ExpVec scaled(np, 0);
    for (const auto& [sign, e] : terms) {
        for (std::size_t i = 0; i < np; ++i) scaled[i] = e[i] + denom[i];
        sum.accumulate(exps_to_biguint(scaled), sign);
    }
    auto [nsign, nmag] = sum.resolve();
    if (nsign == 0) return 0.0;

    MantExp v = mul(nmag.to_mantexp(), sqrt_mantexp(exps_value(sqrt_exps)));
    ExpVec neg_denom(np, 0);
    for (std::size_t i = 0; i < np; ++i) neg_denom[i] = -denom[i];
    v = mul(v, exps_value(neg_denom));
    double mag = (double)std::ldexp(v.m, (int)v.e);
    return sign_pre * nsign * mag;
}

bool triangle_ok_t(int tj1, int tj2, int tj3) {
    if ((tj1 + tj2 + tj3) % 2 != 0) return false;
    return std::abs(tj1 - tj2) <= tj3 && tj3 <= tj1 + tj2;
}

void check_magnitude(HalfInt j) {
    if (!valid_magnitude(j))
        throw std::invalid_argument("angular momentum magnitude must be >= 0, got " + j.str());
    if (j.twice() > kMaxTwiceJ)
        throw std::invalid_argument("angular momentum " + j.str() + " exceeds the supported range");
}

void check_pair(HalfInt j, HalfInt m) {
    check_magnitude(j);
    if ((j - m).twice() % 2 != 0)
        throw std::invalid_argument("projection " + m.str() + " does not belong to the j = " +
                                    j.str() + " multiplet");
}

std::size_t num_primes_for(int max_n) {
    const auto& primes = prime_table();
    std::size_t n = 0;
    while (n < primes.size() && primes[n] <= max_n) ++n;
    return std::max<std::size_t>(n, 1);
}

double three_j_exact(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    // all twice-sums here are even by the selection checks above
    const int a1 = (tj1 + tj2 - tj3) / 2;
    const int a2 = (tj1 - tj2 + tj3) / 2;
    const int a3 = (-tj1 + tj2 + tj3) / 2;
    const int big_j = (tj1 + tj2 + tj3) / 2 + 1;

    const std::size_t np = num_primes_for(big_j);
    ExpVec sqrt_exps(np, 0);
    add_factorial(sqrt_exps, a1, +1);
    add_factorial(sqrt_exps, a2, +1);
    add_factorial(sqrt_exps, a3, +1);
    add_factorial(sqrt_exps, big_j, -1);
    add_factorial(sqrt_exps, (tj1 + tm1) / 2, +1);
    add_factorial(sqrt_exps, (tj1 - tm1) / 2, +1);
    add_factorial(sqrt_exps, (tj2 + tm2) / 2, +1);
    add_factorial(sqrt_exps, (tj2 - tm2) / 2, +1);
    add_factorial(sqrt_exps, (tj3 + tm3) / 2, +1);
    add_factorial(sqrt_exps, (tj3 - tm3) / 2, +1);

    const int tmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int tmax = std::min({(tj1 + tj2 - tj3) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});

    std::vector<std::pair<int, ExpVec>> terms;
    for (int t = tmin; t <= tmax; ++t) {
        ExpVec e(np, 0);
        add_factorial(e, t, -1);
        add_factorial(e, (tj3 - tj2 + tm1) / 2 + t, -1);
        add_factorial(e, (tj3 - tj1 - tm2) / 2 + t, -1);
        add_factorial(e, (tj1 + tj2 - tj3) / 2 - t, -1);
        add_factorial(e, (tj1 - tm1) / 2 - t, -1);
        add_factorial(e, (tj2 + tm2) / 2 - t, -1);
        terms.emplace_back(t % 2 ? -1 : 1, std::move(e));
    }

    const int phase_exp = (tj1 - tj2 - tm3) / 2;
    const int sign_pre = (phase_exp % 2 == 0) ? 1 : -1;
    return exact_sqrt_sum(sign_pre, sqrt_exps, terms);
}

void add_triangle_delta(ExpVec& e, int ta, int tb, int tc) {
    add_factorial(e, (ta + tb - tc) / 2, +1);
    add_factorial(e, (ta - tb + tc) / 2, +1);
    add_factorial(e, (-ta + tb + tc) / 2, +1);
    add_factorial(e, (ta + tb + tc) / 2 + 1, -1);
}

double six_j_exact(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    const int alpha[4] = {
        (tj1 + tj2 + tj3) / 2,
        (tj1 + tj5 + tj6) / 2,
        (tj4 + tj2 + tj6) / 2,
        (tj4 + tj5 + tj3) / 2,
    };
    const int beta[3] = {
        (tj1 + tj2 + tj4 + tj5) / 2,
        (tj2 + tj3 + tj5 + tj6) / 2,
        (tj3 + tj1 + tj6 + tj4) / 2,
    };
    const int tmin = *std::max_element(alpha, alpha + 4);
    const int tmax = *std::min_element(beta, beta + 3);
    if (tmin > tmax) return 0.0;

    const std::size_t np = num_primes_for(tmax + 1);
    ExpVec sqrt_exps(np, 0);
    add_triangle_delta(sqrt_exps, tj1, tj2, tj3);
    add_triangle_delta(sqrt_exps, tj1, tj5, tj6);
    add_triangle_delta(sqrt_exps, tj4, tj2, tj6);
    add_triangle_delta(sqrt_exps, tj4, tj5, tj3);

    std::vector<std::pair<int, ExpVec>> terms;
    for (int t = tmin; t <= tmax; ++t) {
        ExpVec e(np, 0);
        add_factorial(e, t + 1, +1);
        for (int i = 0; i < 4; ++i) add_factorial(e, t - alpha[i], -1);
        for (int i = 0; i < 3; ++i) add_factorial(e, beta[i] - t, -1);
        terms.emplace_back(t % 2 ? -1 : 1, std::move(e));
    }
    return exact_sqrt_sum(1, sqrt_exps, terms);
}

// ---------------------------------------------------------------------------
// Memoization. Symbols are keyed by a canonical representative of their
// symmetry class; the symmetry phase is reapplied on lookup, so concurrent
// callers always observe bit-identical values.
// ---------------------------------------------------------------------------

std::uint64_t pack6(const std::array<int, 6>& v) {
    std::uint64_t key = 0;
    for (int x : v) key = (key << 10) | (std::uint64_t)(x + 400);
    return key;
}

struct Canonical {
    std::uint64_t key;
    int sign;
};

Canonical canonical_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    const bool odd_total = ((tj1 + tj2 + tj3) / 2) % 2 != 0;
    std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                                {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    const int js[3] = {tj1, tj2, tj3};
    const int ms[3] = {tm1, tm2, tm3};
    Canonical best{~0ull, 1};
    for (int p = 0; p < 6; ++p) {
        const int psign = (p < 3 || !odd_total) ? 1 : -1;
        for (int neg = 0; neg < 2; ++neg) {
            const int nsign = (neg == 0 || !odd_total) ? 1 : -1;
            const int f = neg ? -1 : 1;
            std::array<int, 6> v = {js[perms[p][0]], js[perms[p][1]], js[perms[p][2]],
                                    f * ms[perms[p][0]], f * ms[perms[p][1]], f * ms[perms[p][2]]};
            std::uint64_t key = pack6(v);
            if (key < best.key) best = {key, psign * nsign};
        }
    }
    return best;
}

std::uint64_t canonical_6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    // columns (upper, lower): any column order, and the upper/lower entries of
    // any two columns may be swapped jointly
    const std::array<std::array<int, 2>, 3> cols = {{{tj1, tj4}, {tj2, tj5}, {tj3, tj6}}};
    std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                                {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    std::uint64_t best = ~0ull;
    for (int p = 0; p < 6; ++p) {
        for (int flip = 0; flip < 4; ++flip) {
            // flip encodes which two columns exchange upper and lower
            std::array<int, 6> v;
            for (int c = 0; c < 3; ++c) {
                bool swap = flip != 0 && c != (flip - 1);
                const auto& col = cols[perms[p][c]];
                v[c] = swap ? col[1] : col[0];
                v[c + 3] = swap ? col[0] : col[1];
            }
            best = std::min(best, pack6(v));
        }
    }
    return best;
}

class MemoTable {
public:
    template <typename F>
    double get(std::uint64_t key, F&& compute) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = table_.find(key);
            if (it != table_.end()) return it->second;
        }
        double value = compute();
        std::lock_guard<std::mutex> lock(mutex_);
        table_.emplace(key, value);
        return value;
    }
    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return table_.size();
    }

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::uint64_t, double> table_;
};

MemoTable& memo_3j() {
    static MemoTable t;
    return t;
}
MemoTable& memo_6j() {
    static MemoTable t;
    return t;
}

} // namespace

bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3) {
    check_magnitude(j1);
    check_magnitude(j2);
    check_magnitude(j3);
    return triangle_ok_t(j1.twice(), j2.twice(), j3.twice());
}

double three_j(HalfInt j1, HalfInt j2, HalfInt j3,
               HalfInt m1, HalfInt m2, HalfInt m3) {
    check_pair(j1, m1);
    check_pair(j2, m2);
    check_pair(j3, m3);
    if (m1.twice() + m2.twice() + m3.twice() != 0) return 0.0;
    if (!triangle_ok_t(j1.twice(), j2.twice(), j3.twice())) return 0.0;
    if (abs(m1) > j1 || abs(m2) > j2 || abs(m3) > j3) return 0.0;

    auto canon = canonical_3j(j1.twice(), j2.twice(), j3.twice(),
                              m1.twice(), m2.twice(), m3.twice());
    double value = memo_3j().get(canon.key, [&] {
        // recompute from the canonical arguments so the stored value is
        // independent of which symmetry image was requested first
        std::array<int, 6> v;
        std::uint64_t k = canon.key;
        for (int i = 5; i >= 0; --i) {
            v[i] = (int)(k & 0x3ff) - 400;
            k >>= 10;
        }
        return three_j_exact(v[0], v[1], v[2], v[3], v[4], v[5]);
    });
    return canon.sign * value;
}

double six_j(HalfInt j1, HalfInt j2, HalfInt j3,
             HalfInt j4, HalfInt j5, HalfInt j6) {
    check_magnitude(j1);
    check_magnitude(j2);
    check_magnitude(j3);
    check_magnitude(j4);
    check_magnitude(j5);
    check_magnitude(j6);
    const int t1 = j1.twice(), t2 = j2.twice(), t3 = j3.twice();
    const int t4 = j4.twice(), t5 = j5.twice(), t6 = j6.twice();
    if (!triangle_ok_t(t1, t2, t3) || !triangle_ok_t(t1, t5, t6) ||
        !triangle_ok_t(t4, t2, t6) || !triangle_ok_t(t4, t5, t3))
        return 0.0;

    std::uint64_t key = canonical_6j(t1, t2, t3, t4, t5, t6);
    return memo_6j().get(key, [&] {
        std::array<int, 6> v;
        std::uint64_t k = key;
        for (int i = 5; i >= 0; --i) {
            v[i] = (int)(k & 0x3ff) - 400;
            k >>= 10;
        }
        return six_j_exact(v[0], v[1], v[2], v[3], v[4], v[5]);
    });
}

double clebsch_gordan(HalfInt j1, HalfInt m1,
                      HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M) {
    check_pair(j1, m1);
    check_pair(j2, m2);
    check_pair(J, M);
    if ((m1 + m2) != M) return 0.0;
    const double w = three_j(j1, j2, J, m1, m2, -M);
    if (w == 0.0) return 0.0;
    const int phase_exp = (j1 - j2 + M).twice() / 2;
    const double sign = (phase_exp % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sqrt((double)(J.twice() + 1)) * w;
}

std::size_t memo_size() { return memo_3j().size() + memo_6j().size(); }

} // namespace faraday::wigner
