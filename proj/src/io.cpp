#include "lienard/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lienard::io {

namespace fs = std::filesystem;

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_atomic(const fs::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw IoError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename temporary file onto " + path.string());
    }
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trajectory_csv(const Trajectory& trajectory)
{
    std::string out = "t,x,xdot,p,H\n";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const auto& s = trajectory.states[i];
        out += format_number(trajectory.times[i]) + ',' + format_number(s.x) + ',' + format_number(s.xdot) + ','
               + format_number(trajectory.momenta[i]) + ',' + format_number(trajectory.energies[i]) + '\n';
    }
    return out;
}

std::string contour_csv(const PhaseContour& contour)
{
    std::string out = "p,x_plus,x_minus\n";
    for (std::size_t i = 0; i < contour.p.size(); ++i)
        out += format_number(contour.p[i]) + ',' + format_number(contour.x_plus[i]) + ','
               + format_number(contour.x_minus[i]) + '\n';
    return out;
}

std::string wavefunction_csv(std::span<const double> p, std::span<const std::complex<double>> values)
{
    if (p.size() != values.size())
        throw DegenerateGridError("grid and samples differ in length");
    std::string out = "p,re,im\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        out += format_number(p[i]) + ',' + format_number(values[i].real()) + ',' + format_number(values[i].imag())
               + '\n';
    return out;
}

WavefunctionTable parse_wavefunction_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "p,re,im")
        throw IoError("wavefunction CSV must start with the header p,re,im");
    WavefunctionTable table;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        double p = 0.0, re = 0.0, im = 0.0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &p, &re, &im, &tail) != 3)
            throw IoError("malformed wavefunction row " + std::to_string(row));
        table.p.push_back(p);
        table.values.emplace_back(re, im);
    }
    return table;
}

WavefunctionTable read_wavefunction_csv(const fs::path& path)
{
    return parse_wavefunction_csv(read_file(path));
}

nlohmann::ordered_json params_json(const PhysParams& params)
{
    return {{"omega", params.omega}, {"k", params.k}, {"hbar", params.hbar}};
}

nlohmann::ordered_json to_json(const SpectrumDocument& doc)
{
    nlohmann::ordered_json j = params_json(doc.params);
    j["N"] = doc.N;
    j["method"] = doc.method;
    if (doc.sector)
        j["sector"] = std::string(to_string(*doc.sector));
    auto levels = nlohmann::ordered_json::array();
    for (const auto& level : doc.levels) {
        nlohmann::ordered_json entry;
        entry["n"] = level.n;
        if (level.A_n)
            entry["A_n"] = *level.A_n;
        entry["E_n"] = level.E_n;
        levels.push_back(std::move(entry));
    }
    j["levels"] = std::move(levels);
    return j;
}

nlohmann::ordered_json to_json(const ResidualReport& report)
{
    return {{"n", report.n},
            {"sector", std::string(to_string(report.sector))},
            {"E", report.energy},
            {"residual_norm", report.residual_norm},
            {"grid_size", report.grid_size},
            {"guard_band", report.guard_band}};
}

std::string dump(const nlohmann::ordered_json& doc)
{
    return doc.dump(2) + '\n';
}

}  // namespace lienard::io
