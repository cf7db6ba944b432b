#include "faraday/atom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "faraday/errors.hpp"
#include "faraday/wigner.hpp"

namespace faraday {

std::vector<HalfInt> AtomSpec::ground_manifolds() const {
    std::vector<HalfInt> out;
    for (HalfInt f = abs(nuclear_spin - ground_j); f <= nuclear_spin + ground_j;
         f = f + HalfInt(1))
        out.push_back(f);
    return out;
}

double AtomSpec::splitting(HalfInt f_excited) const {
    for (const auto& lvl : excited_levels)
        if (lvl.f == f_excited) return lvl.splitting_mhz;
    throw ValidationError("atom '" + name + "' has no excited level F' = " + f_excited.str());
}

double AtomSpec::cross_section_nm2() const {
    return 3.0 * lambda_nm * lambda_nm / (2.0 * M_PI);
}

void AtomSpec::validate() const {
    if (name.empty()) throw ValidationError("atom name must not be empty");
    if (!valid_magnitude(nuclear_spin) || !valid_magnitude(ground_j) || !valid_magnitude(excited_j))
        throw ValidationError("spins I, J, Jp must be non-negative");
    if (!wigner::triangle_ok(nuclear_spin, ground_j, ground_f))
        throw ValidationError("pumped manifold F = " + ground_f.str() +
                              " is outside |I-J| .. I+J");
    if (!(gamma_rad_mhz > 0.0) || !std::isfinite(gamma_rad_mhz))
        throw ValidationError("gamma_rad_MHz must be positive and finite");
    if (!(lambda_nm > 0.0) || !std::isfinite(lambda_nm))
        throw ValidationError("lambda_nm must be positive and finite");

    // The level list must be exactly the set of dipole-reachable F' values:
    // |Fg - 1| <= F' <= Fg + 1 for at least one ground manifold, within the
    // I (x) J' coupling range.
    std::set<int> required;
    for (HalfInt fg : ground_manifolds()) {
        for (HalfInt fp = abs(nuclear_spin - excited_j); fp <= nuclear_spin + excited_j;
             fp = fp + HalfInt(1)) {
            if (wigner::triangle_ok(fg, HalfInt(1), fp)) required.insert(fp.twice());
        }
    }
    std::set<int> provided;
    for (const auto& lvl : excited_levels) {
        if (!provided.insert(lvl.f.twice()).second)
            throw ValidationError("excited level F' = " + lvl.f.str() + " appears twice");
        if (!std::isfinite(lvl.splitting_mhz))
            throw ValidationError("splitting of F' = " + lvl.f.str() + " is not finite");
    }
    if (provided != required) {
        std::ostringstream msg;
        msg << "excited levels must be exactly {";
        bool first = true;
        for (int t : required) {
            if (!first) msg << ", ";
            msg << HalfInt::from_twice(t).str();
            first = false;
        }
        msg << "}";
        throw ValidationError(msg.str());
    }

    int reference_count = 0;
    std::set<double> splittings;
    for (const auto& lvl : excited_levels) {
        if (lvl.splitting_mhz == 0.0) ++reference_count;
        if (!splittings.insert(lvl.splitting_mhz).second)
            throw ValidationError("excited levels must have mutually distinct splittings");
    }
    if (reference_count != 1)
        throw ValidationError("exactly one excited level must be the reference (splitting 0)");
}

AtomSpec builtin_cesium_d2() {
    AtomSpec cs;
    cs.name = "cesium-d2";
    cs.nuclear_spin = HalfInt::from_twice(7);
    cs.ground_j = HalfInt::from_twice(1);
    cs.excited_j = HalfInt::from_twice(3);
    cs.ground_f = HalfInt(4);
    // 6P_3/2 hyperfine splittings relative to F'=5, from the measured
    // intervals 5-4: 251.0916 MHz, 4-3: 201.2871 MHz, 3-2: 151.2247 MHz.
    cs.excited_levels = {
        {HalfInt(2), 603.6034},
        {HalfInt(3), 452.3787},
        {HalfInt(4), 251.0916},
        {HalfInt(5), 0.0},
    };
    cs.gamma_rad_mhz = 32.815; // 1/tau with tau = 30.473 ns, i.e. 2*pi * 5.2227 MHz
    cs.lambda_nm = 852.347;
    cs.validate();
    return cs;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" +
                         text + "'");
    }
}

HalfInt parse_half(const std::string& text, int line_no) {
    try {
        return HalfInt::parse(text);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a half-integer, got '" +
                         text + "'");
    }
}

} // namespace

AtomSpec load_atom(const std::string& config_text) {
    AtomSpec atom;
    enum class Section { none, atom, excited } section = Section::none;
    std::set<std::string> seen;

    std::istringstream in(config_text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[atom]")
                section = Section::atom;
            else if (line == "[excited]")
                section = Section::excited;
            else
                throw ParseError("line " + std::to_string(line_no) + ": unknown section " + line);
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");

        if (section == Section::atom) {
            if (!seen.insert(key).second)
                throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            if (key == "name")
                atom.name = value;
            else if (key == "I")
                atom.nuclear_spin = parse_half(value, line_no);
            else if (key == "J")
                atom.ground_j = parse_half(value, line_no);
            else if (key == "Jp")
                atom.excited_j = parse_half(value, line_no);
            else if (key == "F")
                atom.ground_f = parse_half(value, line_no);
            else if (key == "gamma_rad_MHz")
                atom.gamma_rad_mhz = parse_number(value, line_no);
            else if (key == "lambda_nm")
                atom.lambda_nm = parse_number(value, line_no);
            else
                throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key +
                                 "' in [atom]");
        } else if (section == Section::excited) {
            HalfInt f = parse_half(key, line_no);
            atom.excited_levels.push_back({f, parse_number(value, line_no)});
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": key outside any section");
        }
    }

    for (const char* required : {"name", "I", "J", "Jp", "F", "gamma_rad_MHz", "lambda_nm"})
        if (!seen.count(required))
            throw ParseError(std::string("missing key '") + required + "' in [atom] section");

    std::sort(atom.excited_levels.begin(), atom.excited_levels.end(),
              [](const ExcitedLevel& a, const ExcitedLevel& b) { return a.f < b.f; });
    atom.validate();
    return atom;
}

std::string serialize_atom(const AtomSpec& atom) {
    std::ostringstream out;
    char buf[64];
    out << "[atom]\n";
    out << "name = " << atom.name << "\n";
    out << "I = " << atom.nuclear_spin.str() << "\n";
    out << "J = " << atom.ground_j.str() << "\n";
    out << "Jp = " << atom.excited_j.str() << "\n";
    out << "F = " << atom.ground_f.str() << "\n";
    std::snprintf(buf, sizeof buf, "%.12g", atom.gamma_rad_mhz);
    out << "gamma_rad_MHz = " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.12g", atom.lambda_nm);
    out << "lambda_nm = " << buf << "\n";
    out << "[excited]\n";
    for (const auto& lvl : atom.excited_levels) {
        std::snprintf(buf, sizeof buf, "%.12g", lvl.splitting_mhz);
        out << lvl.f.str() << " = " << buf << "\n";
    }
    return out.str();
}

} // namespace faraday
