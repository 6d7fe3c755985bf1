#pragma once

// Artifact formats: CSV tables at 17 significant digits and JSON documents
// whose numbers use the shortest round-trip representation of binary64.

#include "lienard/classical.hpp"
#include "lienard/params.hpp"
#include "lienard/spectral_analytic.hpp"
#include "lienard/spectral_numeric.hpp"

#include <json.hpp>

#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lienard::io {

/// printf("%.17g"), enough to round-trip any double.
std::string format_number(double value);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Header `t,x,xdot,p,H`.
std::string trajectory_csv(const Trajectory& trajectory);

/// Header `p,x_plus,x_minus`.
std::string contour_csv(const PhaseContour& contour);

/// Header `p,re,im`.
std::string wavefunction_csv(std::span<const double> p, std::span<const std::complex<double>> values);

struct WavefunctionTable {
    std::vector<double> p;
    std::vector<std::complex<double>> values;
};

WavefunctionTable parse_wavefunction_csv(std::string_view text);

WavefunctionTable read_wavefunction_csv(const std::filesystem::path& path);

struct SpectrumLevel {
    int n = 0;
    std::optional<double> A_n;
    double E_n = 0.0;
};

struct SpectrumDocument {
    PhysParams params;
    int N = 0;
    std::string method;
    std::optional<Sector> sector;
    std::vector<SpectrumLevel> levels;
};

nlohmann::ordered_json to_json(const SpectrumDocument& doc);

nlohmann::ordered_json to_json(const ResidualReport& report);

nlohmann::ordered_json params_json(const PhysParams& params);

/// Pretty-printed JSON followed by a newline.
std::string dump(const nlohmann::ordered_json& doc);

}  // namespace lienard::io
