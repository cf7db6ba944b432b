#pragma once

// Reference Racah-formula evaluation in long double, independent of the
// exact-arithmetic path in src/wigner.cpp. Test-only.

#include <algorithm>
#include <array>
#include <cmath>

namespace oracle {

inline long double lfact(int n) {
    static const auto table = [] {
        std::array<long double, 200> t{};
        t[0] = 1.0L;
        for (int i = 1; i < 200; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table[n];
}

// arguments as twice-values
inline long double three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0) return 0.0L;
    if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0L;
    if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0L;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0L;
    if ((tj1 - tm1) % 2 || (tj2 - tm2) % 2 || (tj3 - tm3) % 2) return 0.0L;

    const long double pre = std::sqrt(
        lfact((tj1 + tj2 - tj3) / 2) * lfact((tj1 - tj2 + tj3) / 2) *
        lfact((-tj1 + tj2 + tj3) / 2) / lfact((tj1 + tj2 + tj3) / 2 + 1) *
        lfact((tj1 + tm1) / 2) * lfact((tj1 - tm1) / 2) * lfact((tj2 + tm2) / 2) *
        lfact((tj2 - tm2) / 2) * lfact((tj3 + tm3) / 2) * lfact((tj3 - tm3) / 2));

    const int tmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int tmax = std::min({(tj1 + tj2 - tj3) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        const long double den = lfact(t) * lfact((tj3 - tj2 + tm1) / 2 + t) *
                                lfact((tj3 - tj1 - tm2) / 2 + t) *
                                lfact((tj1 + tj2 - tj3) / 2 - t) * lfact((tj1 - tm1) / 2 - t) *
                                lfact((tj2 + tm2) / 2 - t);
        sum += (t % 2 ? -1.0L : 1.0L) / den;
    }
    const int phase = (tj1 - tj2 - tm3) / 2;
    return (phase % 2 ? -1.0L : 1.0L) * pre * sum;
}

inline long double tri_delta(int ta, int tb, int tc) {
    return lfact((ta + tb - tc) / 2) * lfact((ta - tb + tc) / 2) * lfact((-ta + tb + tc) / 2) /
           lfact((ta + tb + tc) / 2 + 1);
}

inline bool triad_ok(int ta, int tb, int tc) {
    return (ta + tb + tc) % 2 == 0 && std::abs(ta - tb) <= tc && tc <= ta + tb;
}

inline long double six_j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    if (!triad_ok(tj1, tj2, tj3) || !triad_ok(tj1, tj5, tj6) || !triad_ok(tj4, tj2, tj6) ||
        !triad_ok(tj4, tj5, tj3))
        return 0.0L;
    const long double pre = std::sqrt(tri_delta(tj1, tj2, tj3) * tri_delta(tj1, tj5, tj6) *
                                      tri_delta(tj4, tj2, tj6) * tri_delta(tj4, tj5, tj3));
    const int alpha[4] = {(tj1 + tj2 + tj3) / 2, (tj1 + tj5 + tj6) / 2, (tj4 + tj2 + tj6) / 2,
                          (tj4 + tj5 + tj3) / 2};
    const int beta[3] = {(tj1 + tj2 + tj4 + tj5) / 2, (tj2 + tj3 + tj5 + tj6) / 2,
                         (tj3 + tj1 + tj6 + tj4) / 2};
    const int tmin = *std::max_element(alpha, alpha + 4);
    const int tmax = *std::min_element(beta, beta + 3);
    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        long double term = lfact(t + 1);
        for (int i = 0; i < 4; ++i) term /= lfact(t - alpha[i]);
        for (int i = 0; i < 3; ++i) term /= lfact(beta[i] - t);
        sum += (t % 2 ? -1.0L : 1.0L) * term;
    }
    return pre * sum;
}

inline long double clebsch(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    const int phase = (tj1 - tj2 + tM) / 2;
    return (phase % 2 ? -1.0L : 1.0L) * std::sqrt((long double)(tJ + 1)) *
           three_j(tj1, tj2, tJ, tm1, tm2, -tM);
}

} // namespace oracle
