#include "lienard/cli.hpp"

#include "lienard/classical.hpp"
#include "lienard/errors.hpp"
#include "lienard/io.hpp"
#include "lienard/semiclassical.hpp"
#include "lienard/spectral_numeric.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <ostream>

namespace lienard::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string_view command_name(Command c)
{
    switch (c) {
    case Command::Simulate:
        return "simulate";
    case Command::Portrait:
        return "portrait";
    case Command::Semiclassical:
        return "semiclassical";
    case Command::Spectrum:
        return "spectrum";
    case Command::Wavefunction:
        return "wavefunction";
    case Command::Verify:
        return "verify";
    }
    return "unknown";
}

std::string_view method_name(SpectrumMethod m)
{
    switch (m) {
    case SpectrumMethod::Analytic:
        return "analytic";
    case SpectrumMethod::Shooting:
        return "shooting";
    case SpectrumMethod::Semiclassical:
        return "semiclassical";
    }
    return "unknown";
}

// Shortest round-trip text of a double, used in file names.
std::string short_number(double v)
{
    return ordered_json(v).dump();
}

// Run metadata lives next to the data file so the data stay byte-reproducible.
void write_with_sidecar(const RunConfig& config, const fs::path& path, std::string_view content, ordered_json extra,
                        std::ostream& out)
{
    io::write_atomic(path, content);
    ordered_json meta;
    meta["tool"] = "lienard";
    meta["command"] = std::string(command_name(config.command));
    meta["arguments"] = config.arguments;
    meta["params"] = io::params_json(config.params);
    meta["artifact"] = path.filename().string();
    if (!extra.is_null())
        meta["details"] = std::move(extra);
    fs::path sidecar = path;
    sidecar += ".meta.json";
    io::write_atomic(sidecar, io::dump(meta));
    out << "wrote " << path.string() << '\n';
}

int run_simulate(const RunConfig& config, std::ostream& out)
{
    const PhysParams& P = config.params;
    validate(P);
    if (!(config.periods > 0.0))
        throw UsageError("--periods must be positive");
    const double dt = config.dt.value_or(default_time_step(P));
    if (!(dt > 0.0))
        throw UsageError("--dt must be positive");
    const OrbitParams orbit{config.A, config.delta};
    if (classify(orbit, P) == OrbitKind::Singular)
        throw DomainError("amplitude A must stay below 3 omega / k; singular orbits are not integrated");

    Trajectory traj;
    if (config.A == 0.0) {
        // the fixed point: one row at the origin
        traj.times = {0.0};
        traj.states = {ClassicalState{}};
        traj.momenta = {0.0};
        traj.energies = {0.0};
        traj.meta.integrator = "none";
    } else {
        const double t_end = config.periods * 2.0 * std::numbers::pi / P.omega;
        traj = integrate_orbit(exact_state(orbit, 0.0, P), t_end, dt, P);
    }
    ordered_json extra{{"A", config.A},
                       {"delta", config.delta},
                       {"periods", config.periods},
                       {"dt", dt},
                       {"integrator", traj.meta.integrator},
                       {"rows", traj.size()},
                       {"max_relative_drift", traj.meta.max_relative_drift},
                       {"drift_warning", traj.meta.drift_warning}};
    if (traj.meta.period)
        extra["period"] = *traj.meta.period;
    write_with_sidecar(config, config.out_dir / "trajectory.csv", io::trajectory_csv(traj), std::move(extra), out);
    return exit_code::ok;
}

int run_portrait(const RunConfig& config, std::ostream& out)
{
    for (const fs::path& path : emit_fig1(config.energies, config.points, config.params, config.out_dir))
        out << "wrote " << path.string() << '\n';
    return exit_code::ok;
}

io::SpectrumDocument semiclassical_document(const PhysParams& P, std::optional<int> n_max)
{
    io::SpectrumDocument doc;
    doc.params = P;
    doc.method = "semiclassical";
    for (const auto& level : semiclassical_spectrum(P)) {
        if (n_max && level.n > *n_max)
            break;
        doc.levels.push_back({level.n, level.A_n, level.E_n});
    }
    doc.N = static_cast<int>(doc.levels.size()) - 1;
    return doc;
}

int emit_spectrum(const RunConfig& config, const io::SpectrumDocument& doc, const std::string& name,
                  std::ostream& out)
{
    const std::string text = io::dump(io::to_json(doc));
    write_with_sidecar(config, config.out_dir / name, text, nullptr, out);
    out << text;
    return exit_code::ok;
}

int run_semiclassical(const RunConfig& config, std::ostream& out)
{
    validate(config.params);
    return emit_spectrum(config, semiclassical_document(config.params, std::nullopt), "semiclassical.json", out);
}

int run_spectrum(const RunConfig& config, std::ostream& out)
{
    const PhysParams& P = config.params;
    validate(P);
    if (config.n_max < 0)
        throw UsageError("--n-max must be non-negative");
    io::SpectrumDocument doc;
    if (config.method == SpectrumMethod::Semiclassical) {
        if (config.sector != Sector::Bound)
            throw DomainError("the semiclassical spectrum exists only for the bound sector");
        doc = semiclassical_document(P, config.n_max);
    } else {
        doc.params = P;
        doc.N = config.n_max;
        doc.method = std::string(method_name(config.method));
        if (config.method == SpectrumMethod::Shooting) {
            if (config.sector != Sector::Bound)
                throw DomainError("the shooting solver covers the bound sector only");
            const auto levels = numeric_spectrum(config.n_max, {}, P);
            for (int n = 0; n <= config.n_max; ++n)
                doc.levels.push_back({n, std::nullopt, levels[static_cast<std::size_t>(n)]});
        } else {
            for (int n = 0; n <= config.n_max; ++n)
                doc.levels.push_back(
                    {n, std::nullopt, config.sector == Sector::Bound ? bound_energy(n, P) : broken_energy(n, P)});
        }
    }
    doc.sector = config.sector;
    const std::string name = "spectrum_" + std::string(method_name(config.method)) + "_"
                             + std::string(to_string(config.sector)) + ".json";
    return emit_spectrum(config, doc, name, out);
}

int run_wavefunction(const RunConfig& config, std::ostream& out)
{
    const PhysParams& P = config.params;
    validate(P);
    if (config.n < 0)
        throw UsageError("--n must be non-negative");
    if (config.points < 5)
        throw UsageError("--points must be at least 5");
    const double ps = P.p_star();
    const bool bound = config.sector == Sector::Bound;
    const double p_min = config.p_min.value_or(bound ? -4.0 * ps : ps);
    const double p_max = config.p_max.value_or(bound ? ps : 5.0 * ps);
    if (!(p_max > p_min))
        throw UsageError("--p-max must exceed --p-min");
    if (bound && p_max > ps)
        throw DomainError("bound-sector grid must stay at or below p*");
    if (!bound && p_min < ps)
        throw DomainError("broken-sector grid must stay at or above p*");

    const EigenState state = bound ? normalized_bound_state(config.n, P) : make_broken_state(config.n, P);
    std::vector<double> grid(static_cast<std::size_t>(config.points));
    std::vector<std::complex<double>> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = p_min + (p_max - p_min) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        values[i] = state(grid[i]);
    }
    const std::string stem = "wavefunction_n" + std::to_string(config.n) + "_" + std::string(to_string(state.sector));
    ordered_json extra{{"n", config.n},
                       {"sector", std::string(to_string(state.sector))},
                       {"energy", state.energy},
                       {"norm_constant", state.norm_constant},
                       {"scaled_norm", state.scaled_norm},
                       {"p_min", p_min},
                       {"p_max", p_max},
                       {"points", config.points}};
    write_with_sidecar(config, config.out_dir / (stem + ".csv"), io::wavefunction_csv(grid, values),
                       std::move(extra), out);
    try {
        const ResidualReport report = residual_norm(state, grid, P);
        write_with_sidecar(config, config.out_dir / (stem + ".residual.json"), io::dump(io::to_json(report)), nullptr,
                           out);
    } catch (const DegenerateGridError&) {
        out << "residual skipped: no usable grid points\n";
    } catch (const ZeroAmplitudeError&) {
        out << "residual skipped: state vanishes on the grid\n";
    }
    return exit_code::ok;
}

int run_verify(const RunConfig& config, std::ostream& out)
{
    const verification::Report report = verification::run(config.suite, config.parallel);
    for (const auto& c : report.checks)
        out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (value " << c.value << ", bound "
            << c.tolerance << ")\n";
    const std::string name = "verify_" + std::string(verification::to_string(config.suite)) + ".json";
    write_with_sidecar(config, config.out_dir / name, io::dump(verification::to_json(report, config.suite)),
                       {{"parallel", config.parallel}}, out);
    out << (report.passed() ? "verification passed\n" : "verification FAILED\n");
    return report.passed() ? exit_code::ok : exit_code::verification;
}

}  // namespace

std::vector<fs::path> emit_fig1(const std::vector<double>& energies, int n_points, const PhysParams& params,
                                const fs::path& out_dir)
{
    if (energies.empty())
        throw UsageError("at least one energy is required");
    if (n_points < 2)
        throw UsageError("--points must be at least 2");
    for (double E : energies)
        if (!(E > 0.0))
            throw DomainError("contour energies must be positive");
    std::vector<fs::path> paths;
    for (double E : energies) {
        const PhaseContour contour = phase_contour(E, n_points, params);
        const fs::path path = out_dir / ("contour_E" + short_number(E) + ".csv");
        io::write_atomic(path, io::contour_csv(contour));
        ordered_json meta{{"tool", "lienard"},
                          {"command", "portrait"},
                          {"params", io::params_json(params)},
                          {"energy", E},
                          {"points", n_points},
                          {"closed", contour.closed},
                          {"p_range", {contour.p_range.first, contour.p_range.second}}};
        fs::path sidecar = path;
        sidecar += ".meta.json";
        io::write_atomic(sidecar, io::dump(meta));
        paths.push_back(path);
    }
    return paths;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        switch (config.command) {
        case Command::Simulate:
            return run_simulate(config, out);
        case Command::Portrait:
            return run_portrait(config, out);
        case Command::Semiclassical:
            return run_semiclassical(config, out);
        case Command::Spectrum:
            return run_spectrum(config, out);
        case Command::Wavefunction:
            return run_wavefunction(config, out);
        case Command::Verify:
            return run_verify(config, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::domain;
    }
    return exit_code::usage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    for (int i = 1; i < argc; ++i)
        config.arguments.emplace_back(argv[i]);
    if (const char* dir = std::getenv("LIENARD_OUT_DIR"); dir && *dir)
        config.out_dir = dir;

    CLI::App app{"Classical, semiclassical and quantum checks of the isochronous Lienard oscillator", "lienard"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--omega", config.params.omega, "angular frequency")->capture_default_str();
    app.add_option("--k", config.params.k, "nonlinearity strength")->capture_default_str();
    app.add_option("--hbar", config.params.hbar, "reduced Planck constant")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "integrate a regular orbit and write trajectory.csv");
    simulate->add_option("--A", config.A, "amplitude")->capture_default_str();
    simulate->add_option("--delta", config.delta, "phase offset")->capture_default_str();
    simulate->add_option("--periods", config.periods, "number of periods 2 pi / omega")->capture_default_str();
    simulate->add_option("--dt", config.dt, "RK4 step (default 1e-3 of a period)");

    auto* portrait = app.add_subcommand("portrait", "write one phase contour CSV per energy");
    portrait->add_option("--energies", config.energies, "comma-separated energies")->delimiter(',');
    portrait->add_option("--points", config.points, "samples per contour")->capture_default_str();

    auto* semiclassical = app.add_subcommand("semiclassical", "Bohr-Sommerfeld levels of the regular orbits");

    std::string method = "analytic";
    std::string sector = "bound";
    auto* spectrum = app.add_subcommand("spectrum", "energy levels as JSON");
    spectrum->add_option("--n-max", config.n_max, "highest level")->capture_default_str();
    spectrum->add_option("--method", method, "analytic, shooting or semiclassical")
        ->check(CLI::IsMember({"analytic", "shooting", "semiclassical"}))
        ->capture_default_str();
    spectrum->add_option("--sector", sector, "bound or broken")
        ->check(CLI::IsMember({"bound", "broken"}))
        ->capture_default_str();

    auto* wavefunction = app.add_subcommand("wavefunction", "tabulate an eigenfunction as p,re,im");
    wavefunction->add_option("--n", config.n, "level")->capture_default_str();
    wavefunction->add_option("--sector", sector, "bound or broken")
        ->check(CLI::IsMember({"bound", "broken"}))
        ->capture_default_str();
    wavefunction->add_option("--p-min", config.p_min, "grid start");
    wavefunction->add_option("--p-max", config.p_max, "grid end");
    wavefunction->add_option("--points", config.points, "grid size")->capture_default_str();

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the cross-validation suites");
    verify->add_option("--suite", suite, "classical, semiclassical, quantum or all")
        ->check(CLI::IsMember({"classical", "semiclassical", "quantum", "all"}))
        ->capture_default_str();
    verify->add_flag("--parallel", config.parallel, "run suites concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    if (simulate->parsed())
        config.command = Command::Simulate;
    else if (portrait->parsed())
        config.command = Command::Portrait;
    else if (semiclassical->parsed())
        config.command = Command::Semiclassical;
    else if (spectrum->parsed())
        config.command = Command::Spectrum;
    else if (wavefunction->parsed())
        config.command = Command::Wavefunction;
    else
        config.command = Command::Verify;

    if (method == "shooting")
        config.method = SpectrumMethod::Shooting;
    else if (method == "semiclassical")
        config.method = SpectrumMethod::Semiclassical;
    config.sector = sector == "broken" ? Sector::Broken : Sector::Bound;
    config.suite = verification::parse_suite(suite);

    try {
        validate(config.params);
    } catch (const DegenerateParameterError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return dispatch(config, out, err);
}

}  // namespace lienard::cli
