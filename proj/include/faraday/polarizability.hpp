#pragma once

#include <array>
#include <vector>

#include "faraday/atom.hpp"
#include "faraday/half_int.hpp"

namespace faraday {

// Tensor decomposition of the ground-state polarizability at one detuning.
// a0, a1, a2 weight the scalar/vector/rank-2 parts within the pumped manifold;
// b1, b2 weight the rank-1/rank-2 parts of the manifold-changing channel
// (there is no scalar b0: a manifold-changing operator has no identity part).
struct TensorCoeffs {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0;
    double b1 = 0.0, b2 = 0.0;
    double detuning_mhz = 0.0;
};

// Normalization constants that make the decomposition coefficients multiply
// irreducible tensors: c0 = 1, c1 = 1/sqrt(2F(F+1)),
// c2 = 3/sqrt(10 F(F+1)(2F-1)(2F+3)). k = 2 requires F >= 1.
double c_coeff(int k, HalfInt f);

// Rank-k polarizability coefficient for the F -> F~ ground channel at
// detuning delta (MHz, negative on the blue side of the reference line):
// a signed 6j-weighted sum over the excited levels with resonance factors
// 1/(1 - splitting/delta). Throws PoleError within 0.5 MHz of a resonance.
double a_coeff(const AtomSpec& atom, HalfInt f, HalfInt f_tilde, int k, double detuning_mhz);

TensorCoeffs tensor_coeffs(const AtomSpec& atom, HalfInt f, double detuning_mhz);

// Analytic |detuning| -> infinity limit (every resonance factor set to 1).
TensorCoeffs asymptotic_coeffs(const AtomSpec& atom, HalfInt f);

// a_k^{F F~} for every ground channel F~, as consumed by the scattering
// sums. channels[i].second[k] holds a_k for k = 0, 1, 2 (zero where the
// channel has no rank-k part).
struct ChannelTable {
    HalfInt f;
    std::vector<std::pair<HalfInt, std::array<double, 3>>> channels;
};

ChannelTable channel_table(const AtomSpec& atom, HalfInt f, double detuning_mhz);
ChannelTable channel_table_asymptotic(const AtomSpec& atom, HalfInt f);

// TensorCoeffs view of a channel table (a-row: F~ = F, b-row: F~ = F - 1).
TensorCoeffs tensor_coeffs_from_table(const ChannelTable& table, double detuning_mhz);

} // namespace faraday
