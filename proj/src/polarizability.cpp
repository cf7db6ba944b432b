#include "faraday/polarizability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "faraday/errors.hpp"
#include "faraday/wigner.hpp"

namespace faraday {

namespace {

constexpr double kPoleGuardMhz = 0.5;

void check_detuning(const AtomSpec& atom, double detuning_mhz) {
    if (!std::isfinite(detuning_mhz))
        throw std::invalid_argument("detuning must be finite");
    for (const auto& lvl : atom.excited_levels) {
        // resonance factor 1/(1 - splitting/detuning) has its pole where the
        // laser sits on the F -> F' transition
        if (std::abs(detuning_mhz - lvl.splitting_mhz) < kPoleGuardMhz)
            throw PoleError("detuning " + std::to_string(detuning_mhz) +
                                " MHz is within " + std::to_string(kPoleGuardMhz) +
                                " MHz of the F' = " + lvl.f.str() + " resonance",
                            detuning_mhz, lvl.f.str());
    }
}

// Shared sum; resonance == nullptr means the asymptotic limit.
double a_coeff_impl(const AtomSpec& atom, HalfInt f, HalfInt f_tilde, int k,
                    const double* detuning_mhz) {
    if (k < 0 || k > 2) throw std::invalid_argument("tensor rank k must be 0, 1 or 2");
    if (!wigner::triangle_ok(f, HalfInt(k), f_tilde)) return 0.0;

    const HalfInt one(1);
    const double ck = c_coeff(k, f);
    double sum = 0.0;
    for (const auto& lvl : atom.excited_levels) {
        const double w6a = wigner::six_j(atom.excited_j, lvl.f, atom.nuclear_spin,
                                         f, atom.ground_j, one);
        const double w6b = wigner::six_j(atom.excited_j, lvl.f, atom.nuclear_spin,
                                         f_tilde, atom.ground_j, one);
        const double w6c = wigner::six_j(f, HalfInt(k), f_tilde, one, lvl.f, one);
        if (w6a == 0.0 || w6b == 0.0 || w6c == 0.0) continue;
        const double resonance =
            detuning_mhz ? 1.0 / (1.0 - lvl.splitting_mhz / *detuning_mhz) : 1.0;
        // (-1)^(F + F') is a whole power: F and F' differ by an integer
        const int phase_exp = (f + lvl.f).twice() / 2;
        const double sign = (phase_exp % 2 == 0) ? 1.0 : -1.0;
        sum += sign * (lvl.f.twice() + 1) * resonance * w6a * w6b * w6c;
    }
    const double prefactor = -(2.0 * k + 1.0) * ck * std::sqrt((f.twice() + 1) / 3.0);
    return prefactor * sum;
}

std::array<double, 3> channel_row(const AtomSpec& atom, HalfInt f, HalfInt f_tilde,
                                  const double* detuning_mhz) {
    std::array<double, 3> row{0.0, 0.0, 0.0};
    for (int k = 0; k <= 2; ++k) {
        if (k == 2 && HalfInt(1) > f) continue; // no rank-2 part below F = 1
        row[k] = a_coeff_impl(atom, f, f_tilde, k, detuning_mhz);
    }
    return row;
}

ChannelTable make_table(const AtomSpec& atom, HalfInt f, const double* detuning_mhz) {
    atom.validate();
    if (!wigner::triangle_ok(atom.nuclear_spin, atom.ground_j, f))
        throw ValidationError("F = " + f.str() + " is not a ground manifold of " + atom.name);
    ChannelTable table;
    table.f = f;
    for (HalfInt ft : atom.ground_manifolds()) {
        if (abs(f - ft) > HalfInt(2)) continue;
        table.channels.emplace_back(ft, channel_row(atom, f, ft, detuning_mhz));
    }
    return table;
}

} // namespace

double c_coeff(int k, HalfInt f) {
    const double fv = f.value();
    switch (k) {
    case 0:
        return 1.0;
    case 1:
        if (f.twice() < 1) throw std::domain_error("c_1 requires F >= 1/2");
        return 1.0 / std::sqrt(2.0 * fv * (fv + 1.0));
    case 2:
        if (f < HalfInt(1))
            throw std::domain_error("c_2 requires F >= 1");
        return 3.0 / std::sqrt(10.0 * fv * (fv + 1.0) * (2.0 * fv - 1.0) * (2.0 * fv + 3.0));
    default:
        throw std::invalid_argument("tensor rank k must be 0, 1 or 2");
    }
}

double a_coeff(const AtomSpec& atom, HalfInt f, HalfInt f_tilde, int k, double detuning_mhz) {
    check_detuning(atom, detuning_mhz);
    return a_coeff_impl(atom, f, f_tilde, k, &detuning_mhz);
}

ChannelTable channel_table(const AtomSpec& atom, HalfInt f, double detuning_mhz) {
    check_detuning(atom, detuning_mhz);
    return make_table(atom, f, &detuning_mhz);
}

ChannelTable channel_table_asymptotic(const AtomSpec& atom, HalfInt f) {
    return make_table(atom, f, nullptr);
}

TensorCoeffs tensor_coeffs_from_table(const ChannelTable& table, double detuning_mhz) {
    TensorCoeffs tc;
    tc.detuning_mhz = detuning_mhz;
    for (const auto& [ft, row] : table.channels) {
        if (ft == table.f) {
            tc.a0 = row[0];
            tc.a1 = row[1];
            tc.a2 = row[2];
        } else if (ft == table.f - HalfInt(1)) {
            tc.b1 = row[1];
            tc.b2 = row[2];
        }
    }
    return tc;
}

TensorCoeffs tensor_coeffs(const AtomSpec& atom, HalfInt f, double detuning_mhz) {
    return tensor_coeffs_from_table(channel_table(atom, f, detuning_mhz), detuning_mhz);
}

TensorCoeffs asymptotic_coeffs(const AtomSpec& atom, HalfInt f) {
    return tensor_coeffs_from_table(channel_table_asymptotic(atom, f),
                                    -std::numeric_limits<double>::infinity());
}

} // namespace faraday
