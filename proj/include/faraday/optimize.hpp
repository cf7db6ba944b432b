#pragma once

#include "faraday/dynamics.hpp"

namespace faraday {

struct OptimumPoint {
    double optical_depth = 0.0;
    double detuning_mhz = 0.0;  // negative (blue side) unless red search enabled
    double photon_ratio = 0.0;
    double kappa = 0.0;
    double fidelity = 0.0;
};

// Solves kappa_a(kappa) = 1 at fixed (d, detuning, r) by bracketing the
// first upward crossing on (0, kappa_max] and bisecting to |kappa_a - 1| <
// 1e-10. Throws NoSolutionError when no crossing exists (optical depth too
// low for the decoherence at this detuning).
double solve_kappa(const AtomSpec& atom, HalfInt f, double optical_depth, double detuning_mhz,
                   double photon_ratio, Orientation orientation, double kappa_max = 10.0);

// Same, with the scattering coefficients precomputed for this detuning.
double solve_kappa(const ScatteringCoeffs& coeffs, HalfInt f, double optical_depth,
                   double photon_ratio, Orientation orientation, double kappa_max = 10.0);

struct OptimizeOptions {
    double min_abs_detuning_mhz = 1e2;
    double max_abs_detuning_mhz = 1e7;
    double min_ratio = 1e-2;
    double max_ratio = 1e6;
    int coarse_detuning_points = 32;
    int coarse_ratio_points = 24;
    double fidelity_tol = 1e-6;
    double kappa_max = 10.0;
    bool red_detuned = false; // search Delta > 0 instead of the blue side
};

// Maximizes the memory fidelity over (detuning, photon ratio) at fixed
// optical depth: a coarse log-grid scan seeds nested golden-section searches
// (outer over log|detuning|, inner over log ratio). Among candidates within
// fidelity_tol of the maximum the largest |detuning| wins (least scattering).
OptimumPoint optimize_fidelity(const AtomSpec& atom, HalfInt f, double optical_depth,
                               Orientation orientation, const OptimizeOptions& opts = {});

// Fidelity of the kappa_a = 1 operating point at fixed (d, detuning, r).
double constrained_fidelity(const ScatteringCoeffs& coeffs, const AtomSpec& atom, HalfInt f,
                            double optical_depth, double photon_ratio, Orientation orientation,
                            double kappa_max = 10.0);

} // namespace faraday
