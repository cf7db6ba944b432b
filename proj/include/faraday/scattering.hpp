#pragma once

#include <array>
#include <complex>

#include "faraday/atom.hpp"
#include "faraday/polarizability.hpp"

namespace faraday {

// Relative orientation of the (strong) light polarization and the mean
// atomic spin, both of which the formulas assume to be along fixed axes:
// spin along x; light along x (parallel) or along y (orthogonal).
enum class Orientation { parallel, orthogonal };

const char* orientation_name(Orientation o);

// 3x3 matrix over spherical polarization indices p, q in {-1, 0, +1},
// quantized along the mean spin direction.
struct SphericalMatrix {
    std::array<std::array<std::complex<double>, 3>, 3> entries{};

    std::complex<double>& at(int p, int q) { return entries[p + 1][q + 1]; }
    const std::complex<double>& at(int p, int q) const { return entries[p + 1][q + 1]; }
};

enum class Axis : int { x = 0, y = 1, z = 2 };

// Normalized spontaneous-emission coefficients for one detuning. A scales the
// light attenuation, B the spin decay, C the spin Langevin noise; raw holds
// the unnormalized matrix elements they came from.
struct ScatteringCoeffs {
    double detuning_mhz = 0.0;
    double spin_f = 0.0; // value of the pumped manifold F
    double a_x = 0.0, a_y = 0.0;
    std::array<double, 3> b_par{}, b_orth{};   // indexed by Axis
    std::array<double, 3> c_par{}, c_orth{};
    double alpha2_xx = 0.0, alpha2_yy = 0.0, alpha2_xy = 0.0;
    std::array<double, 3> xi_par{}, xi_orth{};       // spin decay contractions
    std::array<double, 3> zeta2_par{}, zeta2_orth{}; // spin noise powers

    double b(Axis i, Orientation o) const {
        return o == Orientation::parallel ? b_par[(int)i] : b_orth[(int)i];
    }
    double c(Axis i, Orientation o) const {
        return o == Orientation::parallel ? c_par[(int)i] : c_orth[(int)i];
    }
};

// Light attenuation matrix <alpha^2> in the spherical basis: diagonal in
// p = q, one reduced Clebsch-Gordan sum per entry, summed over both ground
// channels. The spin is taken in the stretched state |F, F> along x.
SphericalMatrix alpha2_spherical(const ChannelTable& table);
SphericalMatrix alpha2_spherical(const AtomSpec& atom, HalfInt f, double detuning_mhz);

struct Alpha2Cartesian {
    double xx, yy, xy;
};
Alpha2Cartesian alpha2_cartesian(const ChannelTable& table);
Alpha2Cartesian alpha2_cartesian(const AtomSpec& atom, HalfInt f, double detuning_mhz);

// Spin-noise correlator matrix <zeta_mu zeta_nu>_{pq} for one pair of
// spherical spin indices, zeta_i = i[alpha, j_i]. Entries vanish unless
// p = q + mu + nu.
SphericalMatrix zeta2(const ChannelTable& table, int mu, int nu);
SphericalMatrix zeta2(const AtomSpec& atom, HalfInt f, double detuning_mhz, int mu, int nu);

// Spin-decay correlator matrix <xi_mu j_nu>_{pq} with
// xi_i = alpha^2 j_i + j_i alpha^2 - 2 alpha j_i alpha (the 2 alpha j alpha
// recycling term is dropped for the manifold-changing channel, which leaves
// the observed manifold for good).
SphericalMatrix xi_j(const ChannelTable& table, int mu, int nu);

// Decay contractions Xi_i = <xi_i j_i>/<j_i^2> for all axes and both
// orientations.
struct XiSet {
    std::array<double, 3> par{}, orth{};
};
XiSet xi_decay(const ChannelTable& table);
XiSet xi_decay(const AtomSpec& atom, HalfInt f, double detuning_mhz);

// Full normalized coefficient set: A = <alpha^2>/(F a1^2), B = Xi/(F a1^2),
// C = <zeta^2>/(F a1^2).
ScatteringCoeffs assemble(const ChannelTable& table, double detuning_mhz);
ScatteringCoeffs assemble(const AtomSpec& atom, HalfInt f, double detuning_mhz);
ScatteringCoeffs assemble_asymptotic(const AtomSpec& atom, HalfInt f);

// Closed-form cesium F=4 coefficient polynomials in (a0, a1, a2, b1, b2);
// the independent oracle for assemble(). Throws std::domain_error if a1 = 0.
ScatteringCoeffs closed_form_cs(double detuning_mhz, const TensorCoeffs& tc);

// Both routes to the Langevin commutator (Gamma_y + Gamma_z - Gamma_x)/F at
// kappa^2/d = 1: from the decay contractions, and independently from the
// imaginary part of the noise cross-correlator <[zeta_y, zeta_z]>.
double noise_commutator(const ChannelTable& table, Orientation o);
double noise_commutator(const AtomSpec& atom, HalfInt f, double detuning_mhz, Orientation o);
double noise_commutator_from_zeta(const ChannelTable& table, Orientation o);

// Symmetrized noise cross term <{zeta_y, zeta_z}>; vanishes identically.
double noise_anticommutator(const ChannelTable& table, Orientation o);

} // namespace faraday
