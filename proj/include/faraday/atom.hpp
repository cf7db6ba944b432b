#pragma once

#include <string>
#include <vector>

#include "faraday/half_int.hpp"

namespace faraday {

struct ExcitedLevel {
    HalfInt f;             // total angular momentum F' of the excited level
    double splitting_mhz;  // energy relative to the reference level, as consumed
                           // by the resonance factors 1/(1 - splitting/detuning);
                           // the reference level has splitting 0
};

// Static description of one alkali atom driven on a single D line. Immutable
// after construction; values are validated once and shared freely.
struct AtomSpec {
    std::string name;
    HalfInt nuclear_spin;  // I
    HalfInt ground_j;      // J, 1/2 for an S_1/2 ground state
    HalfInt excited_j;     // J', 3/2 for a D2 line
    HalfInt ground_f;      // manifold the ensemble is pumped to
    std::vector<ExcitedLevel> excited_levels; // sorted by F'
    double gamma_rad_mhz;  // radiative decay rate of the excited state, in 1e6/s
    double lambda_nm;      // transition wavelength

    // Both ground-state hyperfine manifolds |I - J| .. I + J.
    std::vector<HalfInt> ground_manifolds() const;

    // Splitting of a given excited level; throws ValidationError if absent.
    double splitting(HalfInt f_excited) const;

    // Resonant scattering cross section 3*lambda^2/(2*pi), in nm^2.
    double cross_section_nm2() const;

    // Throws ValidationError naming the first violated invariant.
    void validate() const;
};

// Cesium D2 preset: I=7/2, pumped to F=4, excited levels F'=2..5 with the
// F'=5 level as the detuning reference. Hyperfine constants are transcribed
// from the published cesium D-line data (see data/cesium_d2.atom).
AtomSpec builtin_cesium_d2();

// Parses the line-oriented `key = value` config format:
//
//   [atom]
//   name = cesium-d2
//   I = 7/2
//   J = 1/2
//   Jp = 3/2
//   F = 4
//   gamma_rad_MHz = 32.81
//   lambda_nm = 852.347
//   [excited]
//   5 = 0
//   4 = 251.0916
//
// Unknown keys are rejected. Throws ParseError or ValidationError.
AtomSpec load_atom(const std::string& config_text);

// Inverse of load_atom: load_atom(serialize_atom(a)) == a for any valid a.
std::string serialize_atom(const AtomSpec& atom);

} // namespace faraday
