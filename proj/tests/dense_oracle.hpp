#pragma once

// Brute-force operator-algebra oracle, test-only. Materializes the ground
// manifolds as dense matrices, builds the dimensionless polarizability from
// its rank-k tensor decomposition, and evaluates every correlator by plain
// matrix products in the stretched state. Nothing here shares code with the
// reduced sums in src/scattering.cpp beyond the Clebsch-Gordan kernel.

#include <complex>
#include <vector>

#include "faraday/polarizability.hpp"
#include "faraday/wigner.hpp"

namespace dense {

using faraday::ChannelTable;
using faraday::HalfInt;

struct Matrix {
    int n = 0;
    std::vector<std::complex<double>> a;
    explicit Matrix(int n = 0) : n(n), a(n * n, 0.0) {}
    std::complex<double>& at(int r, int c) { return a[r * n + c]; }
    const std::complex<double>& at(int r, int c) const { return a[r * n + c]; }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix z(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const auto v = x.at(i, k);
                if (v == std::complex<double>(0.0)) continue;
                for (int j = 0; j < x.n; ++j) z.at(i, j) += v * y.at(k, j);
            }
        return z;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        Matrix z(x.n);
        for (int i = 0; i < x.n * x.n; ++i) z.a[i] = x.a[i] + y.a[i];
        return z;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        Matrix z(x.n);
        for (int i = 0; i < x.n * x.n; ++i) z.a[i] = x.a[i] - y.a[i];
        return z;
    }
    friend Matrix operator*(std::complex<double> s, const Matrix& y) {
        Matrix z(y.n);
        for (int i = 0; i < y.n * y.n; ++i) z.a[i] = s * y.a[i];
        return z;
    }
};

// Ground-space basis: all |F~, m> blocks of the channel table, pumped
// manifold first.
class System {
public:
    explicit System(const ChannelTable& table) : table_(table) {
        manifolds_.push_back(table.f);
        for (const auto& [ft, row] : table.channels) {
            (void)row;
            if (ft != table.f) manifolds_.push_back(ft);
        }
        for (HalfInt f : manifolds_) {
            offsets_.push_back(dim_);
            dim_ += f.twice() + 1;
        }
    }

    int dim() const { return dim_; }

    int index(HalfInt f, HalfInt m) const {
        for (std::size_t i = 0; i < manifolds_.size(); ++i)
            if (manifolds_[i] == f) return offsets_[i] + (m + f).twice() / 2;
        return -1;
    }

    // spherical spin component j_mu, block-diagonal over manifolds
    Matrix j_sph(int mu) const {
        Matrix m(dim_);
        for (HalfInt f : manifolds_) {
            const double g = std::sqrt(f.value() * (f.value() + 1.0));
            for (int tm = -f.twice(); tm <= f.twice(); tm += 2) {
                const HalfInt mm = HalfInt::from_twice(tm);
                const HalfInt mp = mm + HalfInt(mu);
                if (abs(mp) > f) continue;
                m.at(index(f, mp), index(f, mm)) =
                    g * faraday::wigner::clebsch_gordan(f, mm, HalfInt(1), HalfInt(mu), f, mp);
            }
        }
        return m;
    }

    // spin projected onto the pumped manifold, P_F j_mu P_F: the spin
    // observable whose Langevin noise the zeta correlators describe
    Matrix j_sph_pumped(int mu) const {
        Matrix m(dim_);
        const HalfInt f = table_.f;
        const double g = std::sqrt(f.value() * (f.value() + 1.0));
        for (int tm = -f.twice(); tm <= f.twice(); tm += 2) {
            const HalfInt mm = HalfInt::from_twice(tm);
            const HalfInt mp = mm + HalfInt(mu);
            if (abs(mp) > f) continue;
            m.at(index(f, mp), index(f, mm)) =
                g * faraday::wigner::clebsch_gordan(f, mm, HalfInt(1), HalfInt(mu), f, mp);
        }
        return m;
    }

    Matrix j_cart(int axis) const { // 0 = x (quantization), 1 = y, 2 = z
        const Matrix jm = j_sph(-1), jp = j_sph(1), j0 = j_sph(0);
        const double inv = 1.0 / std::sqrt(2.0);
        switch (axis) {
        case 0:
            return j0;
        case 1:
            return inv * (jm - jp);
        case 2:
            return std::complex<double>(0, inv) * (jm + jp);
        }
        throw std::logic_error("axis");
    }

    // M^k_l for one channel: single-sided for F~ = F, symmetrized two-sided
    // otherwise.
    Matrix tensor_m(HalfInt ft, int k, int l) const {
        const HalfInt f = table_.f;
        Matrix m(dim_);
        for (int tm = -f.twice(); tm <= f.twice(); tm += 2) {
            const HalfInt mm = HalfInt::from_twice(tm);
            const HalfInt mn = mm + HalfInt(l);
            if (abs(mn) <= ft)
                m.at(index(ft, mn), index(f, mm)) +=
                    faraday::wigner::clebsch_gordan(f, mm, HalfInt(k), HalfInt(l), ft, mn);
            if (ft != f) {
                const HalfInt mn2 = mm - HalfInt(l);
                if (abs(mn2) <= ft)
                    m.at(index(f, mm), index(ft, mn2)) +=
                        (l % 2 ? -1.0 : 1.0) *
                        faraday::wigner::clebsch_gordan(f, mm, HalfInt(k), HalfInt(-l), ft, mn2);
            }
        }
        return m;
    }

    // polarization matrix alpha_{pq} for one channel
    Matrix alpha_pq(HalfInt ft, const std::array<double, 3>& row, int p, int q) const {
        Matrix m(dim_);
        const int l = q - p;
        for (int k = 0; k <= 2; ++k) {
            if (row[k] == 0.0 || std::abs(l) > k) continue;
            const double photon = faraday::wigner::clebsch_gordan(
                HalfInt(1), HalfInt(p), HalfInt(k), HalfInt(l), HalfInt(1), HalfInt(q));
            if (photon == 0.0) continue;
            m = m + (row[k] / faraday::c_coeff(k, table_.f) * photon) * tensor_m(ft, k, l);
        }
        return m;
    }

    std::complex<double> expect(const Matrix& m) const {
        const int i = index(table_.f, table_.f);
        return m.at(i, i);
    }

    const ChannelTable& table() const { return table_; }

private:
    ChannelTable table_;
    std::vector<HalfInt> manifolds_;
    std::vector<int> offsets_;
    int dim_ = 0;
};

struct Correlators {
    // [p+1][q+1] spherical light indices
    std::complex<double> alpha2[3][3];
    // [mu+1][nu+1][p+1][q+1]
    std::complex<double> zeta[3][3][3][3];
    std::complex<double> xij[3][3][3][3];
};

// Evaluates <alpha^2>, <zeta_mu zeta_nu> and <xi_mu j_nu> by direct matrix
// algebra, channel by channel (no manifold-changing cross terms survive the
// hyperfine beat). The recycling term 2 alpha j alpha is kept only for the
// pumped-manifold channel.
inline Correlators correlators(const ChannelTable& table) {
    System sys(table);
    Correlators out{};

    for (const auto& [ft, row] : table.channels) {
        Matrix alpha[3][3] = {{Matrix(sys.dim()), Matrix(sys.dim()), Matrix(sys.dim())},
                              {Matrix(sys.dim()), Matrix(sys.dim()), Matrix(sys.dim())},
                              {Matrix(sys.dim()), Matrix(sys.dim()), Matrix(sys.dim())}};
        for (int p = -1; p <= 1; ++p)
            for (int q = -1; q <= 1; ++q) alpha[p + 1][q + 1] = sys.alpha_pq(ft, row, p, q);

        Matrix jmu[3] = {sys.j_sph(-1), sys.j_sph(0), sys.j_sph(1)};
        Matrix jproj[3] = {sys.j_sph_pumped(-1), sys.j_sph_pumped(0), sys.j_sph_pumped(1)};

        for (int p = -1; p <= 1; ++p)
            for (int q = -1; q <= 1; ++q) {
                // (alpha^2)_{pq}
                Matrix a2(sys.dim());
                for (int s = -1; s <= 1; ++s)
                    a2 = a2 + alpha[p + 1][s + 1] * alpha[s + 1][q + 1];
                out.alpha2[p + 1][q + 1] += sys.expect(a2);

                for (int mu = -1; mu <= 1; ++mu)
                    for (int nu = -1; nu <= 1; ++nu) {
                        // <zeta_mu zeta_nu>_{pq} = -sum_s <[alpha_ps, j_mu][alpha_sq, j_nu]>
                        // with the projected spin P_F j P_F
                        std::complex<double> z = 0.0;
                        for (int s = -1; s <= 1; ++s) {
                            const Matrix cmu = alpha[p + 1][s + 1] * jproj[mu + 1] -
                                               jproj[mu + 1] * alpha[p + 1][s + 1];
                            const Matrix cnu = alpha[s + 1][q + 1] * jproj[nu + 1] -
                                               jproj[nu + 1] * alpha[s + 1][q + 1];
                            z -= sys.expect(cmu * cnu);
                        }
                        out.zeta[mu + 1][nu + 1][p + 1][q + 1] += z;

                        // <xi_mu j_nu>_{pq}
                        Matrix xi = a2 * jmu[mu + 1] + jmu[mu + 1] * a2;
                        if (ft == table.f) {
                            for (int s = -1; s <= 1; ++s)
                                xi = xi - 2.0 * (alpha[p + 1][s + 1] * jmu[mu + 1] *
                                                 alpha[s + 1][q + 1]);
                        }
                        out.xij[mu + 1][nu + 1][p + 1][q + 1] +=
                            sys.expect(xi * jmu[nu + 1]);
                    }
            }
    }
    return out;
}

} // namespace dense
