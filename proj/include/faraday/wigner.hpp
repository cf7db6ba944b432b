#pragma once

#include "faraday/half_int.hpp"

namespace faraday::wigner {

// Selection rule shared by all coupling symbols: |j1-j2| <= j3 <= j1+j2
// and j1+j2+j3 a whole integer.
bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3);

// Wigner 3j symbol, evaluated through the Racah single-index sum with exact
// integer factorials. The returned double is the float image of an exact
// sign * sqrt(rational) value. Returns 0 for violated selection rules;
// throws std::invalid_argument for arguments that are not valid (j, m) pairs
// up to an out-of-range projection (|m| > j gives 0, a non-whole j - m
// cannot name a state and is rejected).
double three_j(HalfInt j1, HalfInt j2, HalfInt j3,
               HalfInt m1, HalfInt m2, HalfInt m3);

// Wigner 6j symbol, same exact evaluation scheme.
double six_j(HalfInt j1, HalfInt j2, HalfInt j3,
             HalfInt j4, HalfInt j5, HalfInt j6);

// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> with the Condon-Shortley
// phase: (-1)^(j1-j2+M) sqrt(2J+1) * 3j(j1 j2 J; m1 m2 -M).
double clebsch_gordan(HalfInt j1, HalfInt m1,
                      HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M);

// Number of symbols held in the memo tables (diagnostics).
std::size_t memo_size();

} // namespace faraday::wigner
