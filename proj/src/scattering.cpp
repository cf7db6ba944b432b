#include "faraday/scattering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "faraday/errors.hpp"
#include "faraday/wigner.hpp"

namespace faraday {

namespace {

using wigner::clebsch_gordan;
using cplx = std::complex<double>;

constexpr double kImagTol = 1e-12;

double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    return clebsch_gordan(j1, m1, j2, m2, J, M);
}

// integer-argument shorthand for the photon / rank-space coefficients
double cgi(int j1, int m1, int j2, int m2, int J, int M) {
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
    return clebsch_gordan(HalfInt(j1), HalfInt(m1), HalfInt(j2), HalfInt(m2), HalfInt(J),
                          HalfInt(M));
}

double c_norm(int k, HalfInt f) { return c_coeff(k, f); }

// <alpha^2>_{qq} contribution of one ground channel. The pumped-manifold
// channel reduces to one Clebsch-Gordan chain; the manifold-changing channel
// goes out and back through F~, which brings a (-1)^l phase and both spin
// factors anchored at the stretched state.
double alpha2_entry(HalfInt f, HalfInt ft, const std::array<double, 3>& a, int q) {
    double total = 0.0;
    for (int k = 0; k <= 2; ++k) {
        if (a[k] == 0.0) continue;
        for (int kp = 0; kp <= 2; ++kp) {
            if (a[kp] == 0.0) continue;
            const double pref = a[k] * a[kp] / (c_norm(k, f) * c_norm(kp, f));
            double s_sum = 0.0;
            for (int s = -1; s <= 1; ++s) {
                const double photon = cgi(1, q, k, s - q, 1, s) * cgi(1, s, kp, q - s, 1, q);
                if (photon == 0.0) continue;
                double spin;
                if (ft == f) {
                    spin = cg(f, f + HalfInt(q - s), HalfInt(k), HalfInt(s - q), f, f) *
                           cg(f, f, HalfInt(kp), HalfInt(q - s), f, f + HalfInt(q - s));
                } else {
                    const double phase = ((s - q) % 2 == 0) ? 1.0 : -1.0;
                    spin = phase *
                           cg(f, f, HalfInt(k), HalfInt(q - s), ft, f + HalfInt(q - s)) *
                           cg(f, f, HalfInt(kp), HalfInt(q - s), ft, f + HalfInt(q - s));
                }
                s_sum += photon * spin;
            }
            total += pref * s_sum;
        }
    }
    return total;
}

// <zeta_mu zeta_nu>_{pq} for the channel staying in the pumped manifold.
// The rank-k operators transform like spin-k tensors, so both commutators
// reduce to single Clebsch-Gordan recouplings.
double zeta_entry_same(HalfInt f, const std::array<double, 3>& a, int mu, int nu, int p, int q) {
    double total = 0.0;
    for (int k = 1; k <= 2; ++k) {
        if (a[k] == 0.0) continue;
        for (int kp = 1; kp <= 2; ++kp) {
            if (a[kp] == 0.0) continue;
            const double pref = -a[k] * a[kp] / (c_norm(k, f) * c_norm(kp, f)) *
                                std::sqrt((double)(k * (k + 1) * kp * (kp + 1)));
            double s_sum = 0.0;
            for (int s = -1; s <= 1; ++s) {
                s_sum += cgi(k, s - p, 1, mu, k, s - q - nu) *
                         cgi(kp, q - s, 1, nu, kp, q - s + nu) *
                         cg(f, f + HalfInt(q - s + nu), HalfInt(k), HalfInt(s - q - nu), f, f) *
                         cg(f, f, HalfInt(kp), HalfInt(q - s + nu), f, f + HalfInt(q - s + nu)) *
                         cgi(1, p, k, s - p, 1, s) *
                         cgi(1, s, kp, q - s, 1, q);
            }
            total += pref * s_sum;
        }
    }
    return total;
}

// Manifold-changing channel. The noise acts on the spin of the observed
// manifold only (an atom decaying to F~ drops out of the collective spin),
// so the commutators are taken with the projected spin P_F j P_F: each
// two-sided tensor then contributes a single rotation on the F side.
double zeta_entry_diff(HalfInt f, HalfInt ft, const std::array<double, 3>& b, int mu, int nu,
                       int p, int q) {
    const HalfInt one(1);
    const double ff1 = f.value() * (f.value() + 1.0);
    const double cg_mu = cg(f, f - HalfInt(mu), one, HalfInt(mu), f, f);
    const double cg_nu = cg(f, f, one, HalfInt(nu), f, f + HalfInt(nu));
    if (cg_mu == 0.0 || cg_nu == 0.0) return 0.0;

    double total = 0.0;
    for (int k = 1; k <= 2; ++k) {
        if (b[k] == 0.0) continue;
        for (int kp = 1; kp <= 2; ++kp) {
            if (b[kp] == 0.0) continue;
            const double pref = b[k] * b[kp] / (c_norm(k, f) * c_norm(kp, f)) * ff1 * cg_mu * cg_nu;
            double s_sum = 0.0;
            for (int s = -1; s <= 1; ++s) {
                const double phase = ((s - p) % 2 == 0) ? 1.0 : -1.0;
                s_sum += phase *
                         cg(f, f - HalfInt(mu), HalfInt(k), HalfInt(p - s),
                            ft, f + HalfInt(q - s + nu)) *
                         cg(f, f + HalfInt(nu), HalfInt(kp), HalfInt(q - s),
                            ft, f + HalfInt(q - s + nu)) *
                         cgi(1, p, k, s - p, 1, s) * cgi(1, s, kp, q - s, 1, q);
            }
            total += pref * s_sum;
        }
    }
    return total;
}

// <xi_mu j_nu>_{pq}, pumped-manifold channel (keeps the recycling term).
double xi_entry_same(HalfInt f, const std::array<double, 3>& a, int mu, int nu, int p, int q) {
    const HalfInt one(1);
    const double g_f = std::sqrt(f.value() * (f.value() + 1.0));
    const double cg_nu = cg(f, f, one, HalfInt(nu), f, f + HalfInt(nu));
    if (cg_nu == 0.0) return 0.0;

    double total = 0.0;
    for (int k = 1; k <= 2; ++k) {
        if (a[k] == 0.0) continue;
        for (int kp = 0; kp <= 2; ++kp) {
            if (a[kp] == 0.0) continue;
            const double pref = -a[k] * a[kp] / (c_norm(k, f) * c_norm(kp, f)) * cg_nu *
                                std::sqrt((double)(k * (k + 1))) * g_f;
            double s_sum = 0.0;
            for (int s = -1; s <= 1; ++s) {
                const double term1 =
                    cg(f, f + HalfInt(p - s), HalfInt(kp), HalfInt(s - p), f, f) *
                    cg(f, f + HalfInt(nu), HalfInt(k), HalfInt(q - s + mu), f, f + HalfInt(p - s)) *
                    cgi(k, q - s, 1, mu, k, q - s + mu) *
                    cgi(1, p, kp, s - p, 1, s) *
                    cgi(1, s, k, q - s, 1, q);
                const double term2 =
                    cg(f, f + HalfInt(q - s + nu), HalfInt(k), HalfInt(s - p + mu), f, f) *
                    cg(f, f + HalfInt(nu), HalfInt(kp), HalfInt(q - s), f, f + HalfInt(q - s + nu)) *
                    cgi(k, s - p, 1, mu, k, s - p + mu) *
                    cgi(1, p, k, s - p, 1, s) *
                    cgi(1, s, kp, q - s, 1, q);
                s_sum += term1 - term2;
            }
            total += pref * s_sum;
        }
    }
    return total;
}

// <xi_mu j_nu>_{pq}, manifold-changing channel (recycling term dropped).
double xi_entry_diff(HalfInt f, HalfInt ft, const std::array<double, 3>& b, int mu, int nu,
                     int p, int q) {
    const HalfInt one(1);
    const double cg_nu = cg(f, f, one, HalfInt(nu), f, f + HalfInt(nu));
    if (cg_nu == 0.0) return 0.0;
    const double ff1 = f.value() * (f.value() + 1.0);

    double total = 0.0;
    for (int k = 1; k <= 2; ++k) {
        if (b[k] == 0.0) continue;
        for (int kp = 1; kp <= 2; ++kp) {
            if (b[kp] == 0.0) continue;
            const double pref = b[k] * b[kp] / (c_norm(k, f) * c_norm(kp, f)) * ff1 * cg_nu;
            double s_sum = 0.0;
            for (int s = -1; s <= 1; ++s) {
                const double phase = ((s - p) % 2 == 0) ? 1.0 : -1.0;
                const double photon =
                    cgi(1, p, k, s - p, 1, s) * cgi(1, s, kp, q - s, 1, q);
                if (photon == 0.0) continue;
                const double term1 =
                    cg(f, f, HalfInt(k), HalfInt(p - s), ft, f + HalfInt(p - s)) *
                    cg(f, f + HalfInt(mu + nu), HalfInt(kp), HalfInt(q - s), ft, f + HalfInt(p - s)) *
                    cg(f, f + HalfInt(nu), one, HalfInt(mu), f, f + HalfInt(mu + nu));
                const double term2 =
                    cg(f, f - HalfInt(mu), one, HalfInt(mu), f, f) *
                    cg(f, f - HalfInt(mu), HalfInt(k), HalfInt(p - s), ft, f + HalfInt(q - s + nu)) *
                    cg(f, f + HalfInt(nu), HalfInt(kp), HalfInt(q - s), ft, f + HalfInt(q - s + nu));
                s_sum += phase * photon * (term1 + term2);
            }
            total += pref * s_sum;
        }
    }
    return total;
}

SphericalMatrix spherical_sum(const ChannelTable& table, int mu, int nu, bool xi) {
    SphericalMatrix m;
    for (int q = -1; q <= 1; ++q) {
        const int p = q + mu + nu;
        if (p < -1 || p > 1) continue;
        double entry = 0.0;
        for (const auto& [ft, row] : table.channels) {
            if (ft == table.f)
                entry += xi ? xi_entry_same(table.f, row, mu, nu, p, q)
                            : zeta_entry_same(table.f, row, mu, nu, p, q);
            else
                entry += xi ? xi_entry_diff(table.f, ft, row, mu, nu, p, q)
                            : zeta_entry_diff(table.f, ft, row, mu, nu, p, q);
        }
        m.at(p, q) = entry;
    }
    return m;
}

// Orientation projections of an operator-valued polarization matrix: the
// parallel configuration reads the xx light element, the orthogonal one the
// yy element, with e_0 along the spin and e_{+-} spanning the (y, z) plane.
cplx project(const SphericalMatrix& m, Orientation o) {
    if (o == Orientation::parallel) return m.at(0, 0);
    return 0.5 * (m.at(-1, -1) + m.at(1, 1)) - 0.5 * (m.at(1, -1) + m.at(-1, 1));
}

struct PairWeight {
    int mu, nu;
    cplx w;
};

// Cartesian spin bilinears in terms of spherical components:
// v_x = v_0, v_y = (v_- - v_+)/sqrt(2), v_z = i (v_- + v_+)/sqrt(2).
std::vector<PairWeight> cartesian_pairs(Axis i) {
    switch (i) {
    case Axis::x:
        return {{0, 0, 1.0}};
    case Axis::y:
        return {{-1, -1, 0.5}, {-1, 1, -0.5}, {1, -1, -0.5}, {1, 1, 0.5}};
    case Axis::z:
        return {{-1, -1, -0.5}, {-1, 1, -0.5}, {1, -1, -0.5}, {1, 1, -0.5}};
    }
    throw std::logic_error("unreachable");
}

double real_checked(cplx v, const char* what) {
    if (std::abs(v.imag()) > kImagTol)
        throw std::logic_error(std::string(what) + ": imaginary residue " +
                               std::to_string(v.imag()));
    return v.real();
}

double cartesian_correlator(const ChannelTable& table, Axis i, Orientation o, bool xi) {
    cplx total = 0.0;
    for (const auto& pw : cartesian_pairs(i))
        total += pw.w * project(spherical_sum(table, pw.mu, pw.nu, xi), o);
    return real_checked(total, xi ? "spin decay contraction" : "spin noise power");
}

double a1_of(const ChannelTable& table) {
    for (const auto& [ft, row] : table.channels)
        if (ft == table.f) return row[1];
    throw std::logic_error("channel table lacks the pumped manifold row");
}

double spin_norm(HalfInt f, Axis i) {
    // stretched state |F, F> along x: <j_x^2> = F^2, <j_y^2> = <j_z^2> = F/2
    return i == Axis::x ? f.value() * f.value() : 0.5 * f.value();
}

} // namespace

const char* orientation_name(Orientation o) {
    return o == Orientation::parallel ? "parallel" : "orthogonal";
}

SphericalMatrix alpha2_spherical(const ChannelTable& table) {
    SphericalMatrix m;
    for (int q = -1; q <= 1; ++q) {
        double entry = 0.0;
        for (const auto& [ft, row] : table.channels)
            entry += alpha2_entry(table.f, ft, row, q);
        m.at(q, q) = entry;
    }
    return m;
}

SphericalMatrix alpha2_spherical(const AtomSpec& atom, HalfInt f, double detuning_mhz) {
    return alpha2_spherical(channel_table(atom, f, detuning_mhz));
}

Alpha2Cartesian alpha2_cartesian(const ChannelTable& table) {
    SphericalMatrix m = alpha2_spherical(table);
    Alpha2Cartesian c{};
    c.xx = real_checked(m.at(0, 0), "<alpha^2>_xx");
    c.yy = real_checked(0.5 * (m.at(-1, -1) + m.at(1, 1)) - 0.5 * (m.at(1, -1) + m.at(-1, 1)),
                        "<alpha^2>_yy");
    // x.e_p picks p = 0; e_q*.y = -+ 1/sqrt(2) for q = +-1; diagonal selection
    // rules leave nothing
    c.xy = real_checked((m.at(0, 1) * (-1.0) + m.at(0, -1)) / std::sqrt(2.0), "<alpha^2>_xy");
    return c;
}

Alpha2Cartesian alpha2_cartesian(const AtomSpec& atom, HalfInt f, double detuning_mhz) {
    return alpha2_cartesian(channel_table(atom, f, detuning_mhz));
}

SphericalMatrix zeta2(const ChannelTable& table, int mu, int nu) {
    return spherical_sum(table, mu, nu, false);
}

SphericalMatrix zeta2(const AtomSpec& atom, HalfInt f, double detuning_mhz, int mu, int nu) {
    return zeta2(channel_table(atom, f, detuning_mhz), mu, nu);
}

SphericalMatrix xi_j(const ChannelTable& table, int mu, int nu) {
    return spherical_sum(table, mu, nu, true);
}

XiSet xi_decay(const ChannelTable& table) {
    XiSet out;
    for (Axis i : {Axis::x, Axis::y, Axis::z}) {
        const double norm = spin_norm(table.f, i);
        out.par[(int)i] = cartesian_correlator(table, i, Orientation::parallel, true) / norm;
        out.orth[(int)i] = cartesian_correlator(table, i, Orientation::orthogonal, true) / norm;
    }
    return out;
}

XiSet xi_decay(const AtomSpec& atom, HalfInt f, double detuning_mhz) {
    return xi_decay(channel_table(atom, f, detuning_mhz));
}

ScatteringCoeffs assemble(const ChannelTable& table, double detuning_mhz) {
    const double a1 = a1_of(table);
    if (a1 == 0.0) throw std::domain_error("a1 vanishes; coefficients are not defined");
    const double fa12 = table.f.value() * a1 * a1;

    ScatteringCoeffs out;
    out.detuning_mhz = detuning_mhz;
    out.spin_f = table.f.value();

    const Alpha2Cartesian al = alpha2_cartesian(table);
    out.alpha2_xx = al.xx;
    out.alpha2_yy = al.yy;
    out.alpha2_xy = al.xy;
    out.a_x = al.xx / fa12;
    out.a_y = al.yy / fa12;

    const XiSet xis = xi_decay(table);
    out.xi_par = xis.par;
    out.xi_orth = xis.orth;
    for (int i = 0; i < 3; ++i) {
        out.b_par[i] = xis.par[i] / fa12;
        out.b_orth[i] = xis.orth[i] / fa12;
        out.zeta2_par[i] = cartesian_correlator(table, (Axis)i, Orientation::parallel, false);
        out.zeta2_orth[i] = cartesian_correlator(table, (Axis)i, Orientation::orthogonal, false);
        out.c_par[i] = out.zeta2_par[i] / fa12;
        out.c_orth[i] = out.zeta2_orth[i] / fa12;
    }
    return out;
}

ScatteringCoeffs assemble(const AtomSpec& atom, HalfInt f, double detuning_mhz) {
    return assemble(channel_table(atom, f, detuning_mhz), detuning_mhz);
}

ScatteringCoeffs assemble_asymptotic(const AtomSpec& atom, HalfInt f) {
    return assemble(channel_table_asymptotic(atom, f),
                    -std::numeric_limits<double>::infinity());
}

ScatteringCoeffs closed_form_cs(double detuning_mhz, const TensorCoeffs& tc) {
    const double a0 = tc.a0, a1 = tc.a1, a2 = tc.a2, b1 = tc.b1, b2 = tc.b2;
    if (a1 == 0.0) throw std::domain_error("a1 vanishes; coefficients are not defined");
    const double s775 = std::sqrt(77.0 / 5.0);
    const double s557 = std::sqrt(55.0 / 7.0);

    ScatteringCoeffs out;
    out.detuning_mhz = detuning_mhz;
    out.spin_f = 4.0;

    out.a_x = (a0 * a0 + 4 * a1 * a1 + 56 * a1 * a2 - (112.0 / 3.0) * a0 * a2 +
               (4900.0 / 9.0) * a2 * a2 +
               (140.0 / 9.0) * (b1 * b1 + (77.0 / 5.0) * b2 * b2 + 2 * s775 * b1 * b2)) /
              (4 * a1 * a1);
    out.a_y = (a0 * a0 + 18 * a1 * a1 - 28 * a1 * a2 + (56.0 / 3.0) * a0 * a2 +
               (2170.0 / 9.0) * a2 * a2 +
               (70.0 / 9.0) * (b1 * b1 + (539.0 / 15.0) * b2 * b2 - 2 * s775 * b1 * b2)) /
              (4 * a1 * a1);

    out.b_par[(int)Axis::x] =
        (a1 * a1 + 14 * a2 * a1 + 49 * a2 * a2 +
         (140.0 / 9.0) * (b1 * b1 + (77.0 / 5.0) * b2 * b2 + 2 * s775 * b1 * b2)) /
        (2 * a1 * a1);
    out.b_par[(int)Axis::y] =
        (a1 * a1 - 98 * a2 * a1 + 273 * a2 * a2 +
         (245.0 / 9.0) * (b1 * b1 + (55.0 / 3.0) * b2 * b2 + 2 * s557 * b1 * b2)) /
        (4 * a1 * a1);
    out.b_par[(int)Axis::z] = out.b_par[(int)Axis::y];
    out.b_orth[(int)Axis::x] =
        (a1 * a1 - 14 * a2 * a1 + 105 * a2 * a2 +
         (140.0 / 9.0) * (b1 * b1 + (539.0 / 15.0) * b2 * b2 - 2 * s775 * b1 * b2)) /
        (4 * a1 * a1);
    out.b_orth[(int)Axis::y] =
        (a1 * a1 + 56 * a2 * a1 - 35 * a2 * a2 +
         (175.0 / 18.0) * (b1 * b1 + (693.0 / 25.0) * b2 * b2 - 0.4 * s775 * b1 * b2)) /
        (2 * a1 * a1);
    out.b_orth[(int)Axis::z] = out.b_orth[(int)Axis::x];

    out.c_par[(int)Axis::x] =
        (a1 * a1 + 14 * a2 * a1 + 49 * a2 * a2 +
         (560.0 / 9.0) * (b1 * b1 + (77.0 / 5.0) * b2 * b2 + 2 * s775 * b1 * b2)) /
        (a1 * a1);
    out.c_par[(int)Axis::y] =
        (4 * a1 * a1 + 308 * a2 * a2 +
         (35.0 / 6.0) * (b1 * b1 + (1001.0 / 45.0) * b2 * b2 + (2.0 / 3.0) * s775 * b1 * b2)) /
        (a1 * a1);
    out.c_par[(int)Axis::z] = out.c_par[(int)Axis::y];
    out.c_orth[(int)Axis::x] =
        (a1 * a1 - 14 * a2 * a1 + 161 * a2 * a2 +
         (560.0 / 9.0) * (b1 * b1 + (539.0 / 15.0) * b2 * b2 - 2 * s775 * b1 * b2)) /
        (2 * a1 * a1);
    out.c_orth[(int)Axis::y] =
        (9 * a1 * a1 - 14 * a2 * a1 + 63 * a2 * a2 +
         (175.0 / 18.0) * (b1 * b1 + (693.0 / 25.0) * b2 * b2 - 0.4 * s775 * b1 * b2)) /
        (2 * a1 * a1);
    out.c_orth[(int)Axis::z] =
        (a1 * a1 + 14 * a2 * a1 + 651 * a2 * a2 +
         (175.0 / 18.0) * (b1 * b1 + (693.0 / 25.0) * b2 * b2 - 0.4 * s775 * b1 * b2)) /
        (2 * a1 * a1);

    const double fa12 = 4.0 * a1 * a1; // cesium pumped to F = 4
    out.alpha2_xx = out.a_x * fa12;
    out.alpha2_yy = out.a_y * fa12;
    out.alpha2_xy = 0.0;
    for (int i = 0; i < 3; ++i) {
        out.xi_par[i] = out.b_par[i] * fa12;
        out.xi_orth[i] = out.b_orth[i] * fa12;
        out.zeta2_par[i] = out.c_par[i] * fa12;
        out.zeta2_orth[i] = out.c_orth[i] * fa12;
    }
    return out;
}

double noise_commutator(const ChannelTable& table, Orientation o) {
    const double a1 = a1_of(table);
    const double fa12 = table.f.value() * a1 * a1;
    const XiSet xis = xi_decay(table);
    const auto& x = o == Orientation::parallel ? xis.par : xis.orth;
    const double b_sum = (x[(int)Axis::y] + x[(int)Axis::z] - x[(int)Axis::x]) / fa12;
    return b_sum / table.f.value();
}

double noise_commutator(const AtomSpec& atom, HalfInt f, double detuning_mhz, Orientation o) {
    return noise_commutator(channel_table(atom, f, detuning_mhz), o);
}

double noise_commutator_from_zeta(const ChannelTable& table, Orientation o) {
    // [zeta_y, zeta_z] = i (zeta_- zeta_+ - zeta_+ zeta_-)
    const cplx diff = project(zeta2(table, -1, 1), o) - project(zeta2(table, 1, -1), o);
    const double k = real_checked(diff, "noise commutator");
    const double a1 = a1_of(table);
    const double fv = table.f.value();
    return 2.0 * k / (fv * fv * fv * a1 * a1);
}

double noise_anticommutator(const ChannelTable& table, Orientation o) {
    // {zeta_y, zeta_z} = i (zeta_- zeta_- - zeta_+ zeta_+)
    const cplx diff = project(zeta2(table, -1, -1), o) - project(zeta2(table, 1, 1), o);
    return real_checked(diff, "noise anticommutator");
}

} // namespace faraday
