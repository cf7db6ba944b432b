#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "faraday/atom.hpp"

namespace {

std::string cli_path() {
    const char* p = std::getenv("FARADAY_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const auto tmp = std::filesystem::temp_directory_path() / "faraday_cli_out.txt";
    const std::string cmd = cli_path() + " " + args + " > " + tmp.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    bool seen_header = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        out.push_back(line);
    }
    return out;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
}

} // namespace

TEST_CASE("byte-deterministic CSV output") {
    const RunResult a = run("scatter --grid 600:100000:20:log");
    const RunResult b = run("scatter --grid 600:100000:20:log");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\r") == std::string::npos);
}

TEST_CASE("coeffs table approaches the asymptotes") {
    const RunResult r = run("coeffs --grid 1000:1e8:30:log");
    CHECK(r.exit_code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 30);
    const auto last = fields(lines.back());
    REQUIRE(last.size() == 7);
    CHECK(last[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-6));          // a0
    CHECK(last[2] == doctest::Approx(1.0 / 48.0).epsilon(1e-6));         // a1
    CHECK(std::abs(last[3]) < 1e-8);                                     // a2
    CHECK(last[4] == doctest::Approx(1.0 / (16 * std::sqrt(5.0))).epsilon(1e-6)); // b1
    CHECK(last[6] == 0.0);                                               // status
}

TEST_CASE("single-point grid gives a single data row") {
    const RunResult r = run("coeffs --grid 700:700:1:log");
    CHECK(r.exit_code == 0);
    CHECK(data_lines(r.out).size() == 1);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("bogus").exit_code == 2);
    CHECK(run("coeffs").exit_code == 2);                      // missing grid
    CHECK(run("coeffs --grid 1:2:0:log").exit_code == 2);     // empty grid
    CHECK(run("coeffs --grid nonsense").exit_code == 2);
    CHECK(run("memory --orientation sideways").exit_code == 2);
    CHECK(run("coeffs --grid 600:700:2:log --atom no-such-atom").exit_code == 2);
}

TEST_CASE("pole inside the grid marks the row and exits 4") {
    const RunResult r = run("coeffs --grid -252:-250:3:lin");
    CHECK(r.exit_code == 4);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1].find("nan") != std::string::npos);
    CHECK(fields(lines[1]).back() == 4.0);
    CHECK(fields(lines[0]).back() == 0.0);
}

TEST_CASE("infeasible optical depth exits 3") {
    CHECK(run("memory --d 2 --detuning 500").exit_code == 3);
}

TEST_CASE("scatter schema carries both orientations and the oracle check") {
    const RunResult r = run("scatter --grid 800:2000:3:log --oracle");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("B_y_par") != std::string::npos);
    CHECK(r.out.find("B_y_orth") != std::string::npos);
    CHECK(r.out.find("C_z_par") != std::string::npos);
    CHECK(r.out.find("C_z_orth") != std::string::npos);
    CHECK(r.out.find("oracle_C_z_orth") != std::string::npos);

    // the deviation summary line reports the closed-form agreement
    const auto pos = r.out.find("# oracle_max_rel_dev = ");
    REQUIRE(pos != std::string::npos);
    const double dev = std::strtod(r.out.c_str() + pos + 23, nullptr);
    CHECK(dev < 1e-10);
}

TEST_CASE("zero-decay memory reports the ideal fidelity") {
    const RunResult r = run("memory --zero-decay");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("fidelity = 0.816497") != std::string::npos);
}

TEST_CASE("memory sweep over optical depth is monotone") {
    const RunResult r = run("memory --sweep d --dgrid 30:1000:6:log --detuning 500 --ratio 10");
    CHECK(r.exit_code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 6);
    double prev_fid = 0.0, prev_kappa = 1e9;
    for (const auto& line : lines) {
        const auto f = fields(line);
        REQUIRE(f.size() == 11);
        CHECK(f[1] < prev_kappa);    // kappa decreases with d
        CHECK(f[9] > prev_fid);      // fidelity increases with d
        CHECK(std::abs(f[3] - 1.0) < 1e-8); // kappa_A = 1 met
        prev_kappa = f[1];
        prev_fid = f[9];
    }
}

TEST_CASE("meanfield conserves the vector norms") {
    const RunResult r =
        run("meanfield --spin 1,2,3 --stokes 4,0,1 --strength 1.5 --steps 2000 --detuning 900");
    CHECK(r.exit_code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 2);
    const auto first = fields(lines.front()), last = fields(lines.back());
    const auto norm = [](const std::vector<double>& f, int base) {
        return std::sqrt(f[base] * f[base] + f[base + 1] * f[base + 1] +
                         f[base + 2] * f[base + 2]);
    };
    CHECK(norm(last, 1) == doctest::Approx(norm(first, 1)).epsilon(1e-12));
    CHECK(norm(last, 4) == doctest::Approx(norm(first, 4)).epsilon(1e-12));
    CHECK(last[0] == 1.5);
}

TEST_CASE("atom config file via FARADAY_ATOM_DIR") {
    const auto dir = std::filesystem::temp_directory_path() / "faraday_atoms";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "mycs.atom");
        f << faraday::serialize_atom(faraday::builtin_cesium_d2());
    }
    const std::string cmd = "FARADAY_ATOM_DIR=" + dir.string() + " " + cli_path() +
                            " coeffs --grid 700:700:1:log --atom mycs > " +
                            (dir / "out.csv").string() + " 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);

    const RunResult direct = run("coeffs --grid 700:700:1:log --atom " +
                                 (dir / "mycs.atom").string());
    CHECK(direct.exit_code == 0);

    std::ifstream via_dir(dir / "out.csv");
    std::stringstream buf;
    buf << via_dir.rdbuf();
    CHECK(data_lines(buf.str()) == data_lines(direct.out));
}

TEST_CASE("optimize table reports a feasible near-ideal point") {
    const RunResult r = run("memory --optimize --d 300 --orientation orth");
    CHECK(r.exit_code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 1);
    const auto f = fields(lines[0]);
    REQUIRE(f.size() == 6);
    CHECK(f[4] > 0.80);
    CHECK(f[4] < std::sqrt(2.0 / 3.0));
    CHECK(f[5] == 0.0);
}

TEST_CASE("shipped cesium data file equals the builtin preset") {
    const char* data_dir = std::getenv("FARADAY_DATA_DIR");
    REQUIRE(data_dir != nullptr);
    const RunResult from_file =
        run("scatter --grid 900:9000:4:log --atom " + std::string(data_dir) + "/cesium_d2.atom");
    const RunResult builtin = run("scatter --grid 900:9000:4:log");
    CHECK(from_file.exit_code == 0);
    CHECK(data_lines(from_file.out) == data_lines(builtin.out));
}

TEST_CASE("--out writes the same bytes as stdout") {
    const auto path = std::filesystem::temp_directory_path() / "faraday_out_test.csv";
    const RunResult direct = run("coeffs --grid 600:5000:4:log");
    const RunResult filed = run("coeffs --grid 600:5000:4:log --out " + path.string());
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == direct.out);
}
