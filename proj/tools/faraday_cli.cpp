// Command-line frontend: CSV tables for the coefficient and memory figures,
// scalar reports for single protocol configurations.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "faraday/atom.hpp"
#include "faraday/dynamics.hpp"
#include "faraday/errors.hpp"
#include "faraday/optimize.hpp"
#include "faraday/polarizability.hpp"
#include "faraday/scattering.hpp"

using namespace faraday;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitPole = 4;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Detuning and depth grids, written start:stop:n:log|lin on the positive
// figure axis (-detuning in MHz for detuning grids).
struct Grid {
    double start = 0.0, stop = 0.0;
    int n = 0;
    bool log = true;

    std::vector<double> values() const {
        std::vector<double> out;
        if (n == 1) {
            out.push_back(start);
            return out;
        }
        for (int i = 0; i < n; ++i) {
            const double t = (double)i / (n - 1);
            out.push_back(log ? start * std::pow(stop / start, t)
                              : start + (stop - start) * t);
        }
        return out;
    }

    std::string str() const {
        return fmt(start) + ":" + fmt(stop) + ":" + std::to_string(n) + ":" +
               (log ? "log" : "lin");
    }
};

Grid parse_grid(const std::string& text) {
    Grid g;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw CLI::ValidationError("grid", "expected start:stop:n:log|lin");
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        g.n = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("grid", "malformed number in '" + text + "'");
    }
    if (parts[3] == "log")
        g.log = true;
    else if (parts[3] == "lin")
        g.log = false;
    else
        throw CLI::ValidationError("grid", "scale must be 'log' or 'lin'");
    if (g.n < 1) throw CLI::ValidationError("grid", "need at least one point");
    if (g.log && (g.start <= 0.0 || g.stop <= 0.0))
        throw CLI::ValidationError("grid", "log grids need positive endpoints");
    return g;
}

AtomSpec resolve_atom(const std::string& spec_text) {
    if (spec_text == "cesium-d2" || spec_text == "cs" || spec_text == "cesium")
        return builtin_cesium_d2();
    std::vector<std::filesystem::path> candidates{spec_text};
    if (const char* dir = std::getenv("FARADAY_ATOM_DIR")) {
        candidates.emplace_back(std::filesystem::path(dir) / spec_text);
        candidates.emplace_back(std::filesystem::path(dir) / (spec_text + ".atom"));
    }
    for (const auto& path : candidates) {
        std::ifstream in(path);
        if (!in) continue;
        std::stringstream buf;
        buf << in.rdbuf();
        return load_atom(buf.str());
    }
    throw ParseError("no atom named '" + spec_text +
                     "' (not a builtin, not a readable file, not in FARADAY_ATOM_DIR)");
}

Orientation parse_orientation(const std::string& text) {
    if (text == "par" || text == "parallel") return Orientation::parallel;
    if (text == "orth" || text == "orthogonal") return Orientation::orthogonal;
    throw CLI::ValidationError("orientation", "must be par or orth");
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary); // '\n' endings regardless of platform
        if (!file) throw std::runtime_error("cannot open output file " + path);
        os = &file;
    }
    template <typename T>
    Output& operator<<(const T& v) {
        *os << v;
        return *this;
    }
};

void write_row(Output& out, const std::vector<double>& values, int status) {
    for (const auto& v : values) out << fmt(v) << ",";
    out << status << "\n";
}

void write_pole_row(Output& out, double first, std::size_t columns) {
    out << fmt(first) << ",";
    for (std::size_t i = 1; i < columns; ++i) out << "nan,";
    out << kExitPole << "\n";
}

// ----------------------------------------------------------------------
// subcommands
// ----------------------------------------------------------------------

struct CommonArgs {
    std::string atom = "cesium-d2";
    std::string f_text;
    std::string out_path;

    AtomSpec atom_spec;
    HalfInt f;

    void resolve() {
        atom_spec = resolve_atom(atom);
        f = f_text.empty() ? atom_spec.ground_f : HalfInt::parse(f_text);
    }
    void emit_config(Output& out, const std::string& cmd) const {
        out << "# command = " << cmd << "\n";
        out << "# atom = " << atom_spec.name << "\n";
        out << "# F = " << f.str() << "\n";
    }
};

int run_coeffs(CommonArgs& common, const Grid& grid, Output& out) {
    common.emit_config(out, "coeffs");
    out << "# grid = " << grid.str() << "\n";
    out << "detuning_MHz_neg,a0,a1,a2,b1,b2,status\n";
    int exit_code = kExitOk;
    for (double neg : grid.values()) {
        try {
            const TensorCoeffs t = tensor_coeffs(common.atom_spec, common.f, -neg);
            write_row(out, {neg, t.a0, t.a1, t.a2, t.b1, t.b2}, kExitOk);
        } catch (const PoleError& e) {
            std::cerr << "pole: " << e.what() << "\n";
            write_pole_row(out, neg, 6);
            exit_code = kExitPole;
        }
    }
    return exit_code;
}

int run_scatter(CommonArgs& common, const Grid& grid, bool oracle, Output& out) {
    if (oracle && !(common.atom_spec.nuclear_spin == HalfInt::from_twice(7) &&
                    common.f == HalfInt(4)))
        throw CLI::ValidationError("--oracle",
                                   "closed-form columns exist only for cesium with F = 4");
    common.emit_config(out, "scatter");
    out << "# grid = " << grid.str() << "\n";
    std::string header =
        "detuning_MHz_neg,A_x,A_y,B_x_par,B_y_par,B_z_par,B_x_orth,B_y_orth,B_z_orth,"
        "C_y_par,C_z_par,C_y_orth,C_z_orth";
    if (oracle)
        header += ",oracle_A_x,oracle_A_y,oracle_B_x_par,oracle_B_y_par,oracle_B_z_par,"
                  "oracle_B_x_orth,oracle_B_y_orth,oracle_B_z_orth,oracle_C_y_par,"
                  "oracle_C_z_par,oracle_C_y_orth,oracle_C_z_orth";
    out << header << ",status\n";
    const std::size_t ncols = oracle ? 25 : 13;

    int exit_code = kExitOk;
    double max_dev = 0.0;
    for (double neg : grid.values()) {
        try {
            const ScatteringCoeffs sc = assemble(common.atom_spec, common.f, -neg);
            std::vector<double> row{neg,
                                    sc.a_x,
                                    sc.a_y,
                                    sc.b_par[0],
                                    sc.b_par[1],
                                    sc.b_par[2],
                                    sc.b_orth[0],
                                    sc.b_orth[1],
                                    sc.b_orth[2],
                                    sc.c_par[1],
                                    sc.c_par[2],
                                    sc.c_orth[1],
                                    sc.c_orth[2]};
            if (oracle) {
                const ScatteringCoeffs cf =
                    closed_form_cs(-neg, tensor_coeffs(common.atom_spec, common.f, -neg));
                const double ora[] = {cf.a_x,       cf.a_y,       cf.b_par[0], cf.b_par[1],
                                      cf.b_par[2],  cf.b_orth[0], cf.b_orth[1], cf.b_orth[2],
                                      cf.c_par[1],  cf.c_par[2],  cf.c_orth[1], cf.c_orth[2]};
                for (std::size_t i = 0; i < 12; ++i) {
                    row.push_back(ora[i]);
                    max_dev = std::max(max_dev, std::abs(row[1 + i] / ora[i] - 1.0));
                }
            }
            write_row(out, row, kExitOk);
        } catch (const PoleError& e) {
            std::cerr << "pole: " << e.what() << "\n";
            write_pole_row(out, neg, ncols);
            exit_code = kExitPole;
        }
    }
    if (oracle) {
        out << "# oracle_max_rel_dev = " << fmt(max_dev) << "\n";
        std::cerr << "oracle max relative deviation: " << fmt(max_dev) << "\n";
    }
    return exit_code;
}

struct MemoryArgs {
    double neg_detuning = 2000.0;
    double depth = 100.0;
    double ratio = 10.0;
    std::string orientation_text = "par";
    double kappa = 0.0; // 0: solve kappa_a = 1
    bool zero_decay = false;
    bool optimize = false;
    bool red_detuned = false;
    std::string sweep; // "", "d", "detuning"
};

void memory_report(Output& out, const ProtocolConfig& cfg, const DecayRates& r,
                   const NoiseVariances& n, const MemoryResult& m) {
    out << "detuning_MHz = " << fmt(cfg.detuning_mhz) << "\n";
    out << "optical_depth = " << fmt(cfg.optical_depth) << "\n";
    out << "photon_ratio = " << fmt(cfg.photon_ratio) << "\n";
    out << "orientation = " << orientation_name(cfg.orientation) << "\n";
    out << "kappa = " << fmt(cfg.kappa) << "\n";
    out << "kappa_L = " << fmt(m.kappa_l) << "\n";
    out << "kappa_A = " << fmt(m.kappa_a) << "\n";
    out << "gamma_pump = " << fmt(r.light_pump) << "\n";
    out << "gamma_signal = " << fmt(r.light_signal) << "\n";
    out << "Gamma_x = " << fmt(r.spin_x) << "\n";
    out << "Gamma_y = " << fmt(r.spin_y) << "\n";
    out << "Gamma_z = " << fmt(r.spin_z) << "\n";
    out << "Gamma_X = " << fmt(r.canonical_x) << "\n";
    out << "Gamma_P = " << fmt(r.canonical_p) << "\n";
    out << "noise_FX2 = " << fmt(n.fx2) << "\n";
    out << "noise_FP2 = " << fmt(n.fp2) << "\n";
    out << "feedback_gain = " << fmt(m.feedback_gain) << "\n";
    out << "var_XA = " << fmt(m.var_xa) << "\n";
    out << "var_PA = " << fmt(m.var_pa) << "\n";
    char fid[32];
    std::snprintf(fid, sizeof fid, "%.6f", m.fidelity);
    out << "fidelity = " << fid << "\n";
    out << "fidelity_full = " << fmt(m.fidelity) << "\n";
}

MemoryResult evaluate_point(const AtomSpec& atom, HalfInt f, double detuning, double d,
                            double ratio, Orientation o, double kappa_in, ProtocolConfig* cfg_out,
                            DecayRates* rates_out, NoiseVariances* noise_out) {
    const ScatteringCoeffs sc = assemble(atom, f, detuning);
    ProtocolConfig cfg{atom, f, detuning, d, ratio, o, kappa_in};
    if (kappa_in <= 0.0) cfg.kappa = solve_kappa(sc, f, d, ratio, o);
    const DecayRates r = decay_rates(cfg, sc);
    if (!rates_physical(r))
        throw NoSolutionError("negative decay rate at detuning " + fmt(detuning) +
                              " MHz; outside the weak-decoherence domain");
    const NoiseVariances n = atomic_noise_variances(cfg, sc);
    const MemoryResult m = propagate_memory(cfg, r, n, transfer_gains(r, cfg.kappa));
    if (cfg_out) *cfg_out = cfg;
    if (rates_out) *rates_out = r;
    if (noise_out) *noise_out = n;
    return m;
}

int run_memory(CommonArgs& common, const MemoryArgs& args, const Grid* grid, const Grid* dgrid,
               Output& out) {
    const Orientation o = parse_orientation(args.orientation_text);
    common.emit_config(out, "memory");

    if (args.zero_decay) {
        ProtocolConfig cfg{common.atom_spec, common.f, -args.neg_detuning, args.depth, args.ratio, o,
                           args.kappa > 0.0 ? args.kappa : 1.0};
        const DecayRates r{};
        const NoiseVariances n{};
        const MemoryResult m =
            propagate_memory(cfg, r, n, TransferGains{cfg.kappa, cfg.kappa});
        memory_report(out, cfg, r, n, m);
        return kExitOk;
    }

    if (args.optimize) {
        const std::vector<double> depths =
            dgrid ? dgrid->values() : std::vector<double>{args.depth};
        out << "# orientation = " << orientation_name(o) << "\n";
        out << "d,detuning_MHz_neg,ratio,kappa,fidelity,status\n";
        int exit_code = kExitOk;
        for (double d : depths) {
            try {
                OptimizeOptions opts;
                opts.red_detuned = args.red_detuned;
                const OptimumPoint opt =
                    optimize_fidelity(common.atom_spec, common.f, d, o, opts);
                write_row(out, {d, -opt.detuning_mhz, opt.photon_ratio, opt.kappa, opt.fidelity},
                          kExitOk);
            } catch (const NoSolutionError& e) {
                std::cerr << "infeasible: " << e.what() << "\n";
                write_pole_row(out, d, 5);
                exit_code = kExitInfeasible;
            }
        }
        return exit_code;
    }

    if (args.sweep == "d") {
        const Grid g = dgrid ? *dgrid : Grid{30, 3000, 25, true};
        out << "# detuning_MHz_neg = " << fmt(args.neg_detuning) << "\n";
        out << "# ratio = " << fmt(args.ratio) << "\n";
        out << "# orientation = " << orientation_name(o) << "\n";
        out << "d,kappa,kappa_L,kappa_A,Gamma_X,Gamma_P,gamma_signal,var_XA,var_PA,fidelity,"
               "status\n";
        int exit_code = kExitOk;
        for (double d : g.values()) {
            try {
                ProtocolConfig cfg;
                DecayRates r;
                NoiseVariances n;
                const MemoryResult m =
                    evaluate_point(common.atom_spec, common.f, -args.neg_detuning, d, args.ratio, o,
                                   args.kappa, &cfg, &r, &n);
                write_row(out,
                          {d, cfg.kappa, m.kappa_l, m.kappa_a, r.canonical_x, r.canonical_p,
                           r.light_signal, m.var_xa, m.var_pa, m.fidelity},
                          kExitOk);
            } catch (const NoSolutionError& e) {
                std::cerr << "infeasible: " << e.what() << "\n";
                write_pole_row(out, d, 10);
                exit_code = kExitInfeasible;
            }
        }
        return exit_code;
    }

    if (args.sweep == "detuning") {
        const Grid g = grid ? *grid : Grid{300, 1e5, 40, true};
        out << "# d = " << fmt(args.depth) << "\n";
        out << "# ratio = " << fmt(args.ratio) << "\n";
        out << "# orientation = " << orientation_name(o) << "\n";
        out << "detuning_MHz_neg,kappa,kappa_L,kappa_A,var_XA,var_PA,fidelity,status\n";
        int exit_code = kExitOk;
        for (double neg : g.values()) {
            try {
                ProtocolConfig cfg;
                const MemoryResult m = evaluate_point(common.atom_spec, common.f, -neg, args.depth,
                                                      args.ratio, o, args.kappa, &cfg, nullptr,
                                                      nullptr);
                write_row(out, {neg, cfg.kappa, m.kappa_l, m.kappa_a, m.var_xa, m.var_pa,
                                m.fidelity},
                          kExitOk);
            } catch (const PoleError& e) {
                std::cerr << "pole: " << e.what() << "\n";
                write_pole_row(out, neg, 7);
                exit_code = exit_code == kExitOk ? kExitPole : exit_code;
            } catch (const NoSolutionError& e) {
                std::cerr << "infeasible: " << e.what() << "\n";
                write_pole_row(out, neg, 7);
                exit_code = kExitInfeasible;
            }
        }
        return exit_code;
    }

    // single-point report
    ProtocolConfig cfg;
    DecayRates r;
    NoiseVariances n;
    const MemoryResult m = evaluate_point(common.atom_spec, common.f, -args.neg_detuning, args.depth,
                                          args.ratio, o, args.kappa, &cfg, &r, &n);
    memory_report(out, cfg, r, n, m);
    return kExitOk;
}

struct MeanfieldArgs {
    std::vector<double> spin{0.0, 0.0, 4.0};
    std::vector<double> stokes{100.0, 0.0, 0.0};
    double strength = 0.1;
    int steps = 1000;
    double neg_detuning = 0.0; // 0: asymptotic coefficients
    int trace_every = 0;
};

int run_meanfield(CommonArgs& common, const MeanfieldArgs& args, Output& out) {
    if (args.spin.size() != 3 || args.stokes.size() != 3)
        throw CLI::ValidationError("meanfield", "--spin and --stokes need three components");
    const TensorCoeffs tc = args.neg_detuning > 0.0
                                ? tensor_coeffs(common.atom_spec, common.f, -args.neg_detuning)
                                : asymptotic_coeffs(common.atom_spec, common.f);
    common.emit_config(out, "meanfield");
    out << "# strength = " << fmt(args.strength) << ", steps = " << args.steps << "\n";
    out << "tau,S_x,S_y,S_z,j_x,j_y,j_z,status\n";

    Vec3 s{args.stokes[0], args.stokes[1], args.stokes[2]};
    Vec3 j{args.spin[0], args.spin[1], args.spin[2]};
    write_row(out, {0.0, s[0], s[1], s[2], j[0], j[1], j[2]}, kExitOk);

    if (args.trace_every > 0) {
        const double dtau = args.strength / args.steps;
        for (int step = 1; step <= args.steps; ++step) {
            const RotationResult rr = mean_field_rotation(j, s, tc, dtau, 1);
            s = rr.stokes;
            j = rr.spin;
            if (step % args.trace_every == 0 || step == args.steps)
                write_row(out, {step * dtau, s[0], s[1], s[2], j[0], j[1], j[2]}, kExitOk);
        }
    } else {
        const RotationResult rr = mean_field_rotation(j, s, tc, args.strength, args.steps);
        write_row(out, {args.strength, rr.stokes[0], rr.stokes[1], rr.stokes[2], rr.spin[0],
                        rr.spin[1], rr.spin[2]},
                  kExitOk);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tensor polarizability, spontaneous-emission coefficients and quantum-memory "
                 "fidelities for Faraday light-matter interfaces"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string grid_text, dgrid_text;
    bool oracle = false;
    MemoryArgs margs;
    MeanfieldArgs fargs;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--atom", common.atom, "builtin name or atom config path");
        cmd->add_option("--F", common.f_text, "pumped ground manifold (default: atom's)");
        cmd->add_option("--out", common.out_path, "output path (default: stdout)");
    };

    CLI::App* coeffs = app.add_subcommand("coeffs", "tensor polarizability coefficients table");
    add_common(coeffs);
    coeffs->add_option("--grid", grid_text, "detuning grid start:stop:n:log|lin on -detuning, MHz")
        ->required();

    CLI::App* scatter = app.add_subcommand("scatter", "decay and noise coefficient table");
    add_common(scatter);
    scatter->add_option("--grid", grid_text, "detuning grid start:stop:n:log|lin")->required();
    scatter->add_flag("--oracle", oracle, "append closed-form columns and the max deviation");

    CLI::App* memory = app.add_subcommand("memory", "direct-mapping memory figures of merit");
    add_common(memory);
    memory->add_option("--detuning", margs.neg_detuning, "-detuning in MHz (positive, blue side)");
    memory->add_option("--d", margs.depth, "optical depth");
    memory->add_option("--ratio", margs.ratio, "photon-to-atom ratio");
    memory->add_option("--orientation", margs.orientation_text, "par | orth");
    memory->add_option("--kappa", margs.kappa, "coupling (omit to solve kappa_A = 1)");
    memory->add_flag("--zero-decay", margs.zero_decay, "ideal lossless protocol");
    memory->add_flag("--optimize", margs.optimize, "optimize fidelity over detuning and ratio");
    memory->add_flag("--red-detuned", margs.red_detuned,
                     "search the red side of the reference line instead");
    memory->add_option("--sweep", margs.sweep, "sweep variable: d | detuning")
        ->check(CLI::IsMember({"d", "detuning"}));
    memory->add_option("--grid", grid_text, "detuning grid for --sweep detuning");
    memory->add_option("--dgrid", dgrid_text, "optical-depth grid for --sweep d / --optimize");

    CLI::App* meanfield =
        app.add_subcommand("meanfield", "coherent rotation of Stokes vector and mean spin");
    add_common(meanfield);
    meanfield->add_option("--spin", fargs.spin, "initial mean spin jx,jy,jz")->delimiter(',');
    meanfield->add_option("--stokes", fargs.stokes, "initial Stokes Sx,Sy,Sz")->delimiter(',');
    meanfield->add_option("--strength", fargs.strength, "integrated rotation strength");
    meanfield->add_option("--steps", fargs.steps, "integration steps");
    meanfield->add_option("--detuning", fargs.neg_detuning,
                          "-detuning in MHz (omit for the asymptotic coefficients)");
    meanfield->add_option("--trace", fargs.trace_every, "emit every n-th step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        common.resolve();
        Output out;
        out.open(common.out_path);
        std::optional<Grid> grid, dgrid;
        if (!grid_text.empty()) grid = parse_grid(grid_text);
        if (!dgrid_text.empty()) dgrid = parse_grid(dgrid_text);

        if (coeffs->parsed()) return run_coeffs(common, *grid, out);
        if (scatter->parsed()) return run_scatter(common, *grid, oracle, out);
        if (memory->parsed())
            return run_memory(common, margs, grid ? &*grid : nullptr,
                              dgrid ? &*dgrid : nullptr, out);
        if (meanfield->parsed()) return run_meanfield(common, fargs, out);
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPole;
    } catch (const NoSolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
