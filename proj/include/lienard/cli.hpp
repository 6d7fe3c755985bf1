#pragma once

// Batch front end: parses flags into a RunConfig and runs the matching pipeline.

#include "lienard/params.hpp"
#include "lienard/spectral_analytic.hpp"
#include "lienard/verification.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lienard::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int domain = 1;        ///< model precondition violated
inline constexpr int verification = 2;  ///< a verification check failed
inline constexpr int usage = 64;        ///< bad flags or values (EX_USAGE)
inline constexpr int io = 74;           ///< output could not be written (EX_IOERR)
}  // namespace exit_code

/// Invalid command-line input detected after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Simulate, Portrait, Semiclassical, Spectrum, Wavefunction, Verify };
enum class SpectrumMethod { Analytic, Shooting, Semiclassical };

struct RunConfig {
    Command command = Command::Spectrum;
    PhysParams params;

    // simulate
    double A = 1.0;
    double delta = 0.0;
    double periods = 10.0;
    std::optional<double> dt;

    // portrait
    std::vector<double> energies;
    int points = 401;

    // spectrum / wavefunction
    int n_max = 4;
    SpectrumMethod method = SpectrumMethod::Analytic;
    Sector sector = Sector::Bound;
    int n = 0;
    std::optional<double> p_min;
    std::optional<double> p_max;

    // verify
    verification::Suite suite = verification::Suite::All;
    bool parallel = false;

    std::filesystem::path out_dir = ".";
    std::vector<std::string> arguments;  ///< recorded in sidecar metadata
};

/// One contour CSV per energy, named contour_E<energy>.csv; returns the paths.
std::vector<std::filesystem::path> emit_fig1(const std::vector<double>& energies, int n_points,
                                             const PhysParams& params, const std::filesystem::path& out_dir);

/// Runs `config`, writing artifacts under config.out_dir and a one-line
/// summary per artifact to `out`. Returns an exit code.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (LIENARD_OUT_DIR sets the output directory) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lienard::cli
