#include "lienard/cli.hpp"
#include "lienard/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace lienard;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status = -1;
    std::string out;
};

// Runs the built executable with LIENARD_OUT_DIR pointing at `dir`.
Outcome run_binary(const fs::path& dir, const std::string& args)
{
    const char* exe = std::getenv("LIENARD_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "LIENARD_CLI must name the built executable");
    const std::string cmd = "LIENARD_OUT_DIR='" + dir.string() + "' '" + exe + "' " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        o.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return o;
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("lienard_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<double> p_column(const fs::path& csv)
{
    std::istringstream in(io::read_file(csv));
    std::string line;
    std::getline(in, line);
    std::vector<double> p;
    while (std::getline(in, line))
        p.push_back(std::stod(line.substr(0, line.find(','))));
    return p;
}

}  // namespace

TEST_CASE("analytic spectrum")
{
    const fs::path dir = scratch_dir("spectrum");
    const Outcome o = run_binary(dir, "spectrum --omega 1 --k 1 --hbar 1 --n-max 4 --method analytic");
    CHECK(o.status == 0);
    const auto j = nlohmann::json::parse(io::read_file(dir / "spectrum_analytic_bound.json"));
    REQUIRE(j["levels"].size() == 5);
    for (int n = 0; n <= 4; ++n)
        CHECK(j["levels"][n]["E_n"].get<double>() == n + 0.5);
    CHECK(j["method"] == "analytic");
    CHECK(j["sector"] == "bound");
    CHECK(j["N"] == 4);
    CHECK(fs::exists(dir / "spectrum_analytic_bound.json.meta.json"));
}

TEST_CASE("shooting and semiclassical spectra")
{
    const fs::path dir = scratch_dir("shooting");
    CHECK(run_binary(dir, "spectrum --n-max 2 --method shooting").status == 0);
    const auto j = nlohmann::json::parse(io::read_file(dir / "spectrum_shooting_bound.json"));
    for (int n = 0; n <= 2; ++n)
        CHECK(std::abs(j["levels"][n]["E_n"].get<double>() - (n + 0.5)) < 1e-6);

    CHECK(run_binary(dir, "semiclassical").status == 0);
    const auto s = nlohmann::json::parse(io::read_file(dir / "semiclassical.json"));
    CHECK(s["N"] == 3);
    CHECK(s["levels"].size() == 4);
    CHECK(s["levels"][1]["A_n"].get<double>() == std::sqrt(3.0));

    CHECK(run_binary(dir, "spectrum --sector broken --n-max 1").status == 0);
    const auto b = nlohmann::json::parse(io::read_file(dir / "spectrum_analytic_broken.json"));
    CHECK(b["levels"][1]["E_n"].get<double>() == -1.5);
    CHECK(run_binary(dir, "spectrum --sector broken --method shooting").status == 1);
}

TEST_CASE("simulate the fixed point")
{
    const fs::path dir = scratch_dir("fixed");
    const Outcome o = run_binary(dir, "simulate --A 0 --periods 1");
    CHECK(o.status == 0);
    CHECK(io::read_file(dir / "trajectory.csv") == "t,x,xdot,p,H\n0,0,0,0,0\n");
}

TEST_CASE("simulate is deterministic and isochronous")
{
    const fs::path a = scratch_dir("sim_a");
    const fs::path b = scratch_dir("sim_b");
    CHECK(run_binary(a, "simulate --A 2 --periods 2").status == 0);
    CHECK(run_binary(b, "simulate --A 2 --periods 2").status == 0);
    CHECK(io::read_file(a / "trajectory.csv") == io::read_file(b / "trajectory.csv"));
    CHECK(io::read_file(a / "trajectory.csv.meta.json") == io::read_file(b / "trajectory.csv.meta.json"));
    const auto meta = nlohmann::json::parse(io::read_file(a / "trajectory.csv.meta.json"));
    CHECK(std::abs(meta["details"]["period"].get<double>() - 2 * std::numbers::pi) < 1e-6);
    CHECK(run_binary(a, "simulate --A 3").status == 1);
    CHECK(run_binary(a, "simulate --dt -1").status == 64);
}

TEST_CASE("portrait writes one contour per energy")
{
    const fs::path dir = scratch_dir("portrait");
    CHECK(run_binary(dir, "portrait --energies 0.5,4.5 --points 201").status == 0);
    const auto low = p_column(dir / "contour_E0.5.csv");
    const auto high = p_column(dir / "contour_E4.5.csv");
    REQUIRE(low.size() == 201);
    CHECK(std::abs(low.front() + 7.0 / 6.0) < 1e-12);
    CHECK(std::abs(low.back() - 5.0 / 6.0) < 1e-12);
    CHECK(std::abs(high.front() + 4.5) < 1e-12);
    // open level set: sampling stops at y = 1e-2 of the upper end (y = 2)
    CHECK(std::abs(high.back() - 1.5 * (1.0 - 0.02 * 0.02)) < 1e-12);
    CHECK(run_binary(dir, "portrait").status == 64);
    CHECK(run_binary(dir, "portrait --energies -1").status == 1);
}

TEST_CASE("emit_fig1 rejects an empty energy list")
{
    CHECK_THROWS_AS(cli::emit_fig1({}, 101, PhysParams{}, fs::temp_directory_path()), cli::UsageError);
}

TEST_CASE("wavefunction output round-trips through the residual")
{
    const fs::path dir = scratch_dir("wavefunction");
    CHECK(run_binary(dir, "wavefunction --n 1 --p-min -5 --p-max 1.4 --points 801").status == 0);
    const auto table = io::read_wavefunction_csv(dir / "wavefunction_n1_bound.csv");
    REQUIRE(table.p.size() == 801);
    const PhysParams unit{};
    const EigenState s = normalized_bound_state(1, unit);
    std::vector<std::complex<double>> fresh;
    for (double p : table.p)
        fresh.push_back(s(p));
    const double from_file = residual_norm_tabulated(1, Sector::Bound, 1.5, table.p, table.values, unit).residual_norm;
    const double in_memory = residual_norm_tabulated(1, Sector::Bound, 1.5, table.p, fresh, unit).residual_norm;
    CHECK(std::abs(from_file - in_memory) <= 1e-12);
    const auto report = nlohmann::json::parse(io::read_file(dir / "wavefunction_n1_bound.residual.json"));
    CHECK(report["residual_norm"].get<double>() <= 1e-8);
    CHECK(report["n"] == 1);

    CHECK(run_binary(dir, "wavefunction --n 0 --sector broken --p-min 1.5 --p-max 6 --points 101").status == 0);
    const auto broken = io::read_wavefunction_csv(dir / "wavefunction_n0_broken.csv");
    CHECK(broken.values[50].imag() != 0.0);
    CHECK(run_binary(dir, "wavefunction --n 0 --p-max 3").status == 1);
}

TEST_CASE("usage errors and global flags")
{
    const fs::path dir = scratch_dir("usage");
    CHECK(run_binary(dir, "").status == 64);
    CHECK(run_binary(dir, "spectrum --method nonsense").status == 64);
    CHECK(run_binary(dir, "spectrum --k 0").status == 64);
    CHECK(run_binary(dir, "frobnicate").status == 64);
    CHECK(run_binary(dir, "--help").status == 0);
    CHECK(run_binary(dir, "spectrum --omega 2 --n-max 1").status == 0);
    const auto j = nlohmann::json::parse(io::read_file(dir / "spectrum_analytic_bound.json"));
    CHECK(j["levels"][1]["E_n"].get<double>() == 3.0);
}

TEST_CASE("unwritable output directory is an I/O error")
{
    const fs::path dir = scratch_dir("blocked");
    io::write_atomic(dir / "file", "x");
    CHECK(run_binary(dir / "file", "spectrum").status == 74);
}

TEST_CASE("verify runs the suites")
{
    const fs::path dir = scratch_dir("verify");
    const Outcome o = run_binary(dir, "verify --suite semiclassical");
    CHECK(o.status == 0);
    CHECK(o.out.find("verification passed") != std::string::npos);
    const auto j = nlohmann::json::parse(io::read_file(dir / "verify_semiclassical.json"));
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() >= 3);
}

TEST_CASE("verify all in parallel")
{
    const fs::path dir = scratch_dir("verify_all");
    const Outcome o = run_binary(dir, "verify --suite all --parallel");
    CHECK(o.status == 0);
    CHECK(o.out.find("FAIL") == std::string::npos);
}
