#include "faraday/optimize.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "faraday/errors.hpp"

namespace faraday {

namespace {

constexpr double kKappaTol = 1e-10;

double kappa_a_of(const ScatteringCoeffs& coeffs, HalfInt f, double d, double r, Orientation o,
                  double kappa) {
    ProtocolConfig cfg;
    cfg.f = f;
    cfg.detuning_mhz = coeffs.detuning_mhz;
    cfg.optical_depth = d;
    cfg.photon_ratio = r;
    cfg.orientation = o;
    cfg.kappa = kappa;
    return transfer_gains(decay_rates(cfg, coeffs), kappa).kappa_a;
}

// Golden-section maximum of fn on [lo, hi]; fn must be unimodal-ish, the
// search merely refines a coarse seed. Returns (x, fn(x)).
std::pair<double, double> golden_max(const std::function<double(double)>& fn, double lo,
                                     double hi, double xtol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = fn(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

} // namespace

double solve_kappa(const ScatteringCoeffs& coeffs, HalfInt f, double optical_depth,
                   double photon_ratio, Orientation orientation, double kappa_max) {
    {
        // rate signs are independent of kappa; reject detunings where the
        // weak-decoherence coefficients have turned negative
        ProtocolConfig probe;
        probe.f = f;
        probe.optical_depth = optical_depth;
        probe.photon_ratio = photon_ratio;
        probe.orientation = orientation;
        probe.kappa = 1.0;
        if (!rates_physical(decay_rates(probe, coeffs)))
            throw NoSolutionError("negative decay rate at detuning " +
                                  std::to_string(coeffs.detuning_mhz) +
                                  " MHz; outside the weak-decoherence domain");
    }
    const auto residual = [&](double kappa) {
        return kappa_a_of(coeffs, f, optical_depth, photon_ratio, orientation, kappa) - 1.0;
    };

    // kappa_a rises from 0, peaks and falls off as decay wins; take the first
    // upward crossing of 1
    const int scan = 512;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= scan; ++i) {
        const double kappa = kappa_max * i / scan;
        if (residual(kappa) >= 0.0) {
            hi = kappa;
            bracketed = true;
            break;
        }
        lo = kappa;
    }
    if (!bracketed)
        throw NoSolutionError("kappa_a never reaches 1 for d = " + std::to_string(optical_depth) +
                              ", detuning = " + std::to_string(coeffs.detuning_mhz) +
                              " MHz, r = " + std::to_string(photon_ratio) +
                              " (optical depth too low)");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double res = residual(mid);
        if (std::abs(res) < kKappaTol) return mid;
        if (res < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double kappa = 0.5 * (lo + hi);
    if (std::abs(residual(kappa)) > 1e-8)
        throw NoSolutionError("kappa_a = 1 bisection failed to converge");
    return kappa;
}

double solve_kappa(const AtomSpec& atom, HalfInt f, double optical_depth, double detuning_mhz,
                   double photon_ratio, Orientation orientation, double kappa_max) {
    return solve_kappa(assemble(atom, f, detuning_mhz), f, optical_depth, photon_ratio,
                       orientation, kappa_max);
}

double constrained_fidelity(const ScatteringCoeffs& coeffs, const AtomSpec& atom, HalfInt f,
                            double optical_depth, double photon_ratio, Orientation orientation,
                            double kappa_max) {
    const double kappa =
        solve_kappa(coeffs, f, optical_depth, photon_ratio, orientation, kappa_max);
    ProtocolConfig cfg;
    cfg.atom = atom;
    cfg.f = f;
    cfg.detuning_mhz = coeffs.detuning_mhz;
    cfg.optical_depth = optical_depth;
    cfg.photon_ratio = photon_ratio;
    cfg.orientation = orientation;
    cfg.kappa = kappa;
    const DecayRates rates = decay_rates(cfg, coeffs);
    return propagate_memory(cfg, rates, atomic_noise_variances(cfg, coeffs),
                            transfer_gains(rates, kappa))
        .fidelity;
}

OptimumPoint optimize_fidelity(const AtomSpec& atom, HalfInt f, double optical_depth,
                               Orientation orientation, const OptimizeOptions& opts) {
    const double sign = opts.red_detuned ? 1.0 : -1.0;

    struct Candidate {
        double log_abs_detuning;
        double detuning_mhz;
        double ratio;
        double kappa;
        double fidelity;
    };
    std::vector<Candidate> evaluated;

    // best fidelity over the photon ratio at one detuning
    const auto eval_detuning = [&](double log_abs_det) -> double {
        const double detuning = sign * std::pow(10.0, log_abs_det);
        std::optional<ScatteringCoeffs> coeffs;
        try {
            coeffs = assemble(atom, f, detuning);
        } catch (const PoleError&) {
            return -1.0;
        }
        const auto eval_ratio = [&](double log_r) -> double {
            try {
                return constrained_fidelity(*coeffs, atom, f, optical_depth,
                                            std::pow(10.0, log_r), orientation, opts.kappa_max);
            } catch (const NoSolutionError&) {
                return -1.0;
            }
        };

        const double rlo = std::log10(opts.min_ratio), rhi = std::log10(opts.max_ratio);
        double best_x = rlo, best_f = -1.0;
        for (int i = 0; i < opts.coarse_ratio_points; ++i) {
            const double x = rlo + (rhi - rlo) * i / (opts.coarse_ratio_points - 1);
            const double v = eval_ratio(x);
            if (v > best_f) {
                best_f = v;
                best_x = x;
            }
        }
        if (best_f < 0.0) return -1.0;
        const double span = (rhi - rlo) / (opts.coarse_ratio_points - 1);
        auto [x, fx] = golden_max(eval_ratio, std::max(rlo, best_x - span),
                                  std::min(rhi, best_x + span), 1e-4);
        if (fx < best_f) {
            x = best_x;
            fx = best_f;
        }
        const double ratio = std::pow(10.0, x);
        double kappa = 0.0;
        try {
            kappa = solve_kappa(*coeffs, f, optical_depth, ratio, orientation, opts.kappa_max);
        } catch (const NoSolutionError&) {
            return -1.0;
        }
        evaluated.push_back({log_abs_det, detuning, ratio, kappa, fx});
        return fx;
    };

    const double dlo = std::log10(opts.min_abs_detuning_mhz);
    const double dhi = std::log10(opts.max_abs_detuning_mhz);
    double best_x = dlo, best_f = -1.0;
    for (int i = 0; i < opts.coarse_detuning_points; ++i) {
        const double x = dlo + (dhi - dlo) * i / (opts.coarse_detuning_points - 1);
        const double v = eval_detuning(x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    if (best_f < 0.0)
        throw NoSolutionError("no feasible operating point at d = " +
                              std::to_string(optical_depth) + " (" +
                              orientation_name(orientation) + ")");
    const double span = (dhi - dlo) / (opts.coarse_detuning_points - 1);
    golden_max(eval_detuning, std::max(dlo, best_x - span), std::min(dhi, best_x + span), 1e-4);

    // flat maxima: among near-optimal candidates prefer the largest |detuning|
    double max_fid = -1.0;
    for (const auto& c : evaluated) max_fid = std::max(max_fid, c.fidelity);
    const Candidate* pick = nullptr;
    for (const auto& c : evaluated) {
        if (c.fidelity < max_fid - opts.fidelity_tol) continue;
        if (!pick || std::abs(c.detuning_mhz) > std::abs(pick->detuning_mhz)) pick = &c;
    }

    OptimumPoint out;
    out.optical_depth = optical_depth;
    out.detuning_mhz = pick->detuning_mhz;
    out.photon_ratio = pick->ratio;
    out.kappa = pick->kappa;
    out.fidelity = pick->fidelity;
    return out;
}

} // namespace faraday
