#include "faraday/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "faraday/errors.hpp"

namespace faraday {

namespace {

// Decay coefficient of the strong (pump) and quantum (signal) light modes.
// The spin is always along x; the parallel configuration pumps along x, the
// orthogonal one along y, so the roles of the xx and yy matrix elements swap.
double a_pump(const ScatteringCoeffs& c, Orientation o) {
    return o == Orientation::parallel ? c.a_x : c.a_y;
}
double a_signal(const ScatteringCoeffs& c, Orientation o) {
    return o == Orientation::parallel ? c.a_y : c.a_x;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Rodrigues rotation of v about axis omega by angle |omega| * dt.
Vec3 rotate(const Vec3& v, const Vec3& omega, double dt) {
    const double w = norm(omega);
    const double angle = w * dt;
    if (angle == 0.0) return v;
    const Vec3 n = {omega[0] / w, omega[1] / w, omega[2] / w};
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec3 nxv = cross(n, v);
    const double ndot = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = v[i] * c + nxv[i] * s + n[i] * ndot * (1.0 - c);
    return out;
}

} // namespace

void ProtocolConfig::validate() const {
    if (!(optical_depth > 0.0)) throw ValidationError("optical depth d must be positive");
    if (!(photon_ratio > 0.0)) throw ValidationError("photon ratio r must be positive");
    if (kappa < 0.0) throw ValidationError("coupling kappa must be non-negative");
}

DecayRates decay_rates(const ProtocolConfig& config, const ScatteringCoeffs& coeffs) {
    config.validate();
    const double k2d = config.kappa * config.kappa / config.optical_depth;
    const Orientation o = config.orientation;

    DecayRates r;
    r.light_pump = 2.0 * k2d / config.photon_ratio * a_pump(coeffs, o);
    r.light_signal = 2.0 * k2d / config.photon_ratio * a_signal(coeffs, o);
    r.spin_x = k2d * coeffs.b(Axis::x, o);
    r.spin_y = k2d * coeffs.b(Axis::y, o);
    r.spin_z = k2d * coeffs.b(Axis::z, o);
    r.canonical_x = r.spin_y - 0.5 * r.spin_x;
    r.canonical_p = r.spin_z - 0.5 * r.spin_x;
    return r;
}

NoiseVariances atomic_noise_variances(const ProtocolConfig& config,
                                      const ScatteringCoeffs& coeffs) {
    config.validate();
    const double k2d = config.kappa * config.kappa / config.optical_depth;
    const double two_over_f = 2.0 / config.f.value();
    return {two_over_f * k2d * coeffs.c(Axis::y, config.orientation),
            two_over_f * k2d * coeffs.c(Axis::z, config.orientation)};
}

bool rates_physical(const DecayRates& r) {
    return r.light_pump >= 0.0 && r.light_signal >= 0.0 && r.spin_x >= 0.0 && r.spin_y >= 0.0 &&
           r.spin_z >= 0.0 && r.canonical_x >= 0.0 && r.canonical_p >= 0.0;
}

double h(double x) {
    if (std::abs(x) < 1e-4)
        return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
    return (1.0 - std::exp(-x)) / x;
}

TransferGains transfer_gains(const DecayRates& r, double kappa) {
    TransferGains g;
    g.kappa_l = kappa * h(0.5 * (r.spin_x + 2.0 * r.canonical_p)) *
                h(0.5 * (r.light_pump - r.light_signal)) * std::exp(-0.5 * r.light_signal);
    g.kappa_a = kappa * h(0.5 * (r.spin_x - 2.0 * r.canonical_x)) *
                h(0.5 * (r.light_pump + r.light_signal)) * std::exp(-r.canonical_x);
    return g;
}

MemoryResult propagate_memory(const ProtocolConfig& config, const DecayRates& rates,
                              const NoiseVariances& noises, const TransferGains& gains) {
    MemoryResult m;
    m.kappa_l = gains.kappa_l;
    m.kappa_a = gains.kappa_a;
    m.feedback_gain = std::exp(0.5 * rates.light_signal);

    const double kappa2 = config.kappa * config.kappa;
    m.noise_pl = 0.5 * rates.light_signal;
    m.noise_xl = 0.5 * rates.light_signal + kappa2 / 3.0 * noises.fp2;
    m.noise_xa = noises.fx2 + kappa2 / 6.0 * rates.light_signal;
    m.noise_pa = noises.fp2;

    // means: the feedback gain cancels the signal attenuation on the stored
    // X_L mean, so pa_from_xl is -1 identically
    m.xa_from_pl = gains.kappa_a;
    m.xa_from_xa = std::exp(-rates.canonical_x);
    m.pa_from_xl = -1.0;
    m.pa_from_pa = std::exp(-rates.canonical_p) - m.feedback_gain * gains.kappa_l;

    const double nu = m.feedback_gain;
    m.var_xa = 0.5 * std::exp(-2.0 * rates.canonical_x) + 0.5 * gains.kappa_a * gains.kappa_a +
               m.noise_xa;
    m.var_pa = 0.5 * m.pa_from_pa * m.pa_from_pa + 0.5 * nu * nu * std::exp(-rates.light_signal) +
               m.noise_pa + nu * nu * m.noise_xl;
    if (m.var_xa < 0.0 || m.var_pa < 0.0)
        throw std::logic_error("propagated variance is negative");

    m.fidelity = 1.0 / std::sqrt((0.5 + m.var_xa) * (0.5 + m.var_pa));
    return m;
}

double fidelity_approx(const DecayRates& rates, const NoiseVariances& noises) {
    return std::sqrt(2.0 / 3.0) *
           (1.0 - 11.0 / 36.0 * rates.light_signal -
            (noises.fx2 + 2.0 * noises.fp2 - rates.canonical_x) / 3.0);
}

double deficit_atoms(const ScatteringCoeffs& coeffs, Orientation o) {
    // (2/3F)(C_y + 2 C_z) - (1/3)(B_y - B_x/2), the 1/d coefficient of the
    // fidelity deficit at kappa = 1
    return 2.0 / (3.0 * coeffs.spin_f) * (coeffs.c(Axis::y, o) + 2.0 * coeffs.c(Axis::z, o)) -
           (coeffs.b(Axis::y, o) - 0.5 * coeffs.b(Axis::x, o)) / 3.0;
}

double deficit_light(const ScatteringCoeffs& coeffs, Orientation o) {
    return 11.0 / 12.0 * a_signal(coeffs, o);
}

RotationResult mean_field_rotation(const Vec3& spin, const Vec3& stokes,
                                   const TensorCoeffs& coeffs, double rotation_strength,
                                   int steps) {
    for (double v : spin)
        if (!std::isfinite(v)) throw std::invalid_argument("spin components must be finite");
    for (double v : stokes)
        if (!std::isfinite(v)) throw std::invalid_argument("Stokes components must be finite");
    if (!std::isfinite(rotation_strength))
        throw std::invalid_argument("rotation strength must be finite");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");

    const double a1 = coeffs.a1, a2 = coeffs.a2;
    const double s0 = norm(stokes); // fully polarized beam: S_0 = |S|
    const double dt = rotation_strength / steps;

    Vec3 s = stokes, j = spin;
    for (int step = 0; step < steps; ++step) {
        // rotation axes from the current means; operator products are
        // factorized, {j_a, j_b} -> 2 j_a j_b
        const Vec3 omega_s = {-a2 * (j[0] * j[0] - j[1] * j[1]), -2.0 * a2 * j[0] * j[1],
                              a1 * j[2]};
        const Vec3 omega_j = {-2.0 * a2 * (j[0] * s[0] + j[1] * s[1]),
                              2.0 * a2 * (j[1] * s[0] - j[0] * s[1]),
                              a1 * s[2] + 2.0 * a2 * j[2] * s0};
        s = rotate(s, omega_s, dt);
        j = rotate(j, omega_j, dt);
    }
    return {s, j};
}

} // namespace faraday
