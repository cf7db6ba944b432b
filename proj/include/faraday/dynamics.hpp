#pragma once

#include <array>

#include "faraday/atom.hpp"
#include "faraday/scattering.hpp"

namespace faraday {

// One operating point of the light-matter interface. All dimensional
// constants are absorbed into the normalized knobs: the coupling kappa, the
// optical depth d and the photon-to-atom ratio r fix every decay rate
// through Gamma_i = (kappa^2/d) B_i and gamma_mu = 2 (kappa^2/d) (1/r) A_mu.
struct ProtocolConfig {
    AtomSpec atom;
    HalfInt f;
    double detuning_mhz = 0.0;
    double optical_depth = 0.0;  // d = N_a sigma / A
    double photon_ratio = 0.0;   // r = N_p / N_a
    Orientation orientation = Orientation::parallel;
    double kappa = 0.0;

    void validate() const;
};

// Integrated (dimensionless) decay exponents over one pulse. light_pump is
// the decay of the strong classical field, light_signal of the quantum
// signal mode; spin_* are the Cartesian spin decays with the mean spin along
// x; canonical_x/p = spin_y/z - spin_x/2 drive the canonical variables.
struct DecayRates {
    double light_pump = 0.0, light_signal = 0.0;
    double spin_x = 0.0, spin_y = 0.0, spin_z = 0.0;
    double canonical_x = 0.0, canonical_p = 0.0;
};

// Langevin noise variances of the canonical spin variables,
// <F_X^2> = (2/F)(kappa^2/d) C_y and <F_P^2> = (2/F)(kappa^2/d) C_z.
struct NoiseVariances {
    double fx2 = 0.0, fp2 = 0.0;
};

struct TransferGains {
    double kappa_l = 0.0; // light output <- atomic input
    double kappa_a = 0.0; // atomic output <- light input
};

DecayRates decay_rates(const ProtocolConfig& config, const ScatteringCoeffs& coeffs);
NoiseVariances atomic_noise_variances(const ProtocolConfig& config,
                                      const ScatteringCoeffs& coeffs);

// True when every decay exponent is non-negative. Close to resonance the
// perturbative coefficients can turn negative; there the weak-decoherence
// model has broken down and an operating point must be rejected.
bool rates_physical(const DecayRates& rates);

// h(x) = (1 - exp(-x))/x with h(0) = 1.
double h(double x);

TransferGains transfer_gains(const DecayRates& rates, double kappa);

// Direct-mapping memory after one pass, homodyne detection of the light X
// quadrature and feedback on the atomic P with gain nu = exp(gamma_signal/2)
// (the choice that keeps the stored means exact).
struct MemoryResult {
    double kappa_l = 0.0, kappa_a = 0.0;
    double feedback_gain = 0.0;
    // stored means as linear maps of the input means
    double xa_from_pl = 0.0, xa_from_xa = 0.0; // <X_A_out> = xa_from_pl <P_L_in> + ...
    double pa_from_xl = 0.0, pa_from_pa = 0.0; // <P_A_out> = pa_from_xl <X_L_in> + ...
    double var_xa = 0.0, var_pa = 0.0;
    double noise_xl = 0.0, noise_pl = 0.0, noise_xa = 0.0, noise_pa = 0.0;
    double fidelity = 0.0;
};

// Gaussian mean/variance propagation for coherent (vacuum-variance 1/2)
// inputs. Throws std::logic_error if a propagated variance turns negative.
MemoryResult propagate_memory(const ProtocolConfig& config, const DecayRates& rates,
                              const NoiseVariances& noises, const TransferGains& gains);

// First-order fidelity for small decay:
// sqrt(2/3) (1 - (11/36) gamma_signal - (1/3)[<F_X^2> + 2 <F_P^2> - Gamma_X]).
double fidelity_approx(const DecayRates& rates, const NoiseVariances& noises);

// Large-detuning fidelity deficit coefficients: fidelity ->
// sqrt(2/3) (1 - c_l * (light terms) - c_a / d).
double deficit_atoms(const ScatteringCoeffs& coeffs, Orientation o);  // c_a
double deficit_light(const ScatteringCoeffs& coeffs, Orientation o);  // c_l

using Vec3 = std::array<double, 3>;

// Coherent mean-field rotation of the Stokes vector and the mean spin under
// the vector and rank-2 polarizability, integrated with per-step exact
// rotations (Rodrigues) so |S| and |j| are conserved structurally.
// rotation_strength absorbs the coupling g times the interaction length.
struct RotationResult {
    Vec3 stokes;
    Vec3 spin;
};
RotationResult mean_field_rotation(const Vec3& spin, const Vec3& stokes,
                                   const TensorCoeffs& coeffs, double rotation_strength,
                                   int steps = 1000);

} // namespace faraday
