#include "lienard/spectral_numeric.hpp"

#include "lienard/ode.hpp"
#include "lienard/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

namespace lienard {

namespace {

using LongComplex = std::complex<long double>;

// Coordinate along which the state varies: y in the bound sector, ỹ beyond p*.
double sector_coordinate(double p, const PhysParams& params)
{
    const double s = detail::threshold_fraction(p, params);
    return std::sqrt(std::abs(1.0 - s));
}

}  // namespace

double local_momentum_scale(double p, int n, const PhysParams& params)
{
    const auto sc = detail::spectral_scales(params);
    const double Y = sector_coordinate(p, params);
    const double width = 1.0 / (sc.quart_a * std::sqrt(2.0 * n + 1.0));
    const double ell = std::min({width, 1.0 / sc.sqrt_a, Y});
    // dp = (3ω²/k)·Y·dY
    return 3.0 * params.omega * params.omega / params.k * Y * ell;
}

std::complex<double> apply_transformed_hamiltonian(const std::function<std::complex<double>(double)>& f, double p,
                                                   const PhysParams& params, std::optional<double> step)
{
    validate(params);
    if (p == params.p_star())
        throw SingularityError("transformed Hamiltonian is singular at p*");
    const double h = step.value_or(1e-3 * local_momentum_scale(p, 0, params));
    if (!(h > 0.0))
        throw DomainError("finite-difference step must be positive");
    const std::complex<double> second = five_point_second_derivative(f, p, h);
    return apply_transformed_hamiltonian<double>(f(p), second, p, params);
}

namespace {

struct ResidualAccumulator {
    long double num = 0.0L;
    long double den = 0.0L;
};

void check_sector(double p, Sector sector, double guard, const PhysParams& params)
{
    const double ps = params.p_star();
    if (sector == Sector::Bound && p > ps + guard)
        throw DomainError("grid point " + std::to_string(p) + " lies beyond p* for a bound state");
    if (sector == Sector::Broken && p < ps - guard)
        throw DomainError("grid point " + std::to_string(p) + " lies below p* for a broken state");
}

bool in_guard_band(double p, double guard, const PhysParams& params)
{
    return std::abs(p - params.p_star()) <= guard;
}

}  // namespace

ResidualReport residual_norm(const EigenState& state, std::span<const double> grid, const PhysParams& params,
                             const ResidualOptions& options)
{
    validate(params);
    if (grid.size() < 2)
        throw DegenerateGridError("residual grid needs at least two points");

    ResidualReport report;
    report.n = state.n;
    report.sector = state.sector;
    report.energy = options.energy.value_or(state.energy);
    report.guard_band = options.guard_band_fraction * params.p_star();

    std::vector<double> candidates;
    std::vector<long double> magnitude;
    for (double p : grid) {
        check_sector(p, state.sector, report.guard_band, params);
        if (in_guard_band(p, report.guard_band, params))
            continue;
        candidates.push_back(p);
        magnitude.push_back(std::abs(state.amplitude<long double>(p)));
    }
    if (candidates.empty())
        throw DegenerateGridError("every grid point falls inside the guard band around p*");
    const long double peak = *std::max_element(magnitude.begin(), magnitude.end());
    if (!(peak > 0.0L))
        throw ZeroAmplitudeError("state vanishes on the residual grid");

    const long double E = report.energy;
    ResidualAccumulator acc;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (magnitude[i] < options.tail_cutoff * peak)
            continue;
        const long double p = candidates[i];
        const long double h = options.step_fraction * local_momentum_scale(candidates[i], state.n, params);
        const auto f = [&](long double q) { return state.amplitude<long double>(q); };
        const LongComplex value = f(p);
        const LongComplex second = five_point_second_derivative(f, p, h);
        const LongComplex applied = apply_transformed_hamiltonian<long double>(value, second, p, params);
        acc.num = std::max(acc.num, std::abs(applied - E * value));
        acc.den = std::max(acc.den, std::abs(E * value));
        report.grid.push_back(candidates[i]);
    }
    if (!(acc.den > 0.0L))
        throw ZeroAmplitudeError("E·Φ vanishes on the residual grid");
    report.grid_size = report.grid.size();
    report.residual_norm = static_cast<double>(acc.num / acc.den);
    return report;
}

ResidualReport residual_norm_tabulated(int n, Sector sector, double energy, std::span<const double> p,
                                       std::span<const std::complex<double>> values, const PhysParams& params,
                                       const ResidualOptions& options)
{
    validate(params);
    if (p.size() != values.size())
        throw DegenerateGridError("momentum grid and samples differ in length");
    if (p.size() < 5)
        throw DegenerateGridError("tabulated residual needs at least five samples");
    const double h = (p.back() - p.front()) / static_cast<double>(p.size() - 1);
    if (!(h > 0.0))
        throw DegenerateGridError("tabulated grid must be increasing");
    for (std::size_t i = 1; i < p.size(); ++i)
        if (std::abs((p[i] - p[i - 1]) - h) > 1e-6 * h)
            throw DegenerateGridError("tabulated grid must be uniform");

    ResidualReport report;
    report.n = n;
    report.sector = sector;
    report.energy = options.energy.value_or(energy);
    report.guard_band = options.guard_band_fraction * params.p_star();

    long double peak = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i) {
        check_sector(p[i], sector, report.guard_band, params);
        peak = std::max<long double>(peak, std::abs(values[i]));
    }
    if (!(peak > 0.0L))
        throw ZeroAmplitudeError("tabulated state vanishes");

    const long double E = report.energy;
    const long double hl = h;
    ResidualAccumulator acc;
    for (std::size_t i = 2; i + 2 < p.size(); ++i) {
        // the stencil must not straddle the guard band
        bool blocked = false;
        for (std::size_t j = i - 2; j <= i + 2; ++j)
            blocked = blocked || in_guard_band(p[j], report.guard_band, params);
        if (blocked || std::abs(values[i]) < options.tail_cutoff * peak)
            continue;
        const auto at = [&](std::size_t j) { return LongComplex(values[j]); };
        const LongComplex second = (-at(i + 2) + 16.0L * at(i + 1) - 30.0L * at(i) + 16.0L * at(i - 1) - at(i - 2))
                                   / (12.0L * hl * hl);
        const LongComplex applied = apply_transformed_hamiltonian<long double>(at(i), second, p[i], params);
        acc.num = std::max(acc.num, std::abs(applied - E * at(i)));
        acc.den = std::max(acc.den, std::abs(E * at(i)));
        report.grid.push_back(p[i]);
    }
    if (!(acc.den > 0.0L))
        throw DegenerateGridError("no usable interior points in the tabulated grid");
    report.grid_size = report.grid.size();
    report.residual_norm = static_cast<double>(acc.num / acc.den);
    return report;
}

// ---------------------------------------------------------------------------
// Shooting

double y_ode_rhs(double y, double phi, double dphi, double E_tilde, double a)
{
    if (!(y > 0.0))
        throw SingularityError("the y-equation is singular at y = 0");
    const double d = y - 1.0;
    return dphi / y - (E_tilde + 0.75 / (y * y) - a * d * d) * phi;
}

namespace {

using Vec2 = ode::State<double, 2>;

struct ShootingSetup {
    double a;
    double sqrt_a;
    double y_start;
    double y_max;
    double y_min;  ///< left end of the continuation in y < 0 (≥ 0 means none)
    ode::AdaptiveOptions ode;
};

ShootingSetup make_setup(const ShootingConfig& config, const PhysParams& params)
{
    validate(params);
    const auto sc = detail::spectral_scales(params);
    ShootingSetup s;
    s.sqrt_a = sc.sqrt_a;
    s.a = sc.sqrt_a * sc.sqrt_a;
    s.y_start = config.y_start;
    s.y_max = config.y_max.value_or(1.0 + 12.0 / sc.quart_a);
    if (!(s.y_start > 0.0 && s.y_start < 1.0))
        throw DomainError("y_start must lie in (0, 1)");
    if (!(s.y_max > 1.0))
        throw DomainError("y_max must exceed the matching point y = 1");
    s.y_min = 2.0 - s.y_max;
    s.ode.rel_tol = config.ode_rel_tol;
    return s;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct ZeroCounter {
    int last = 0;
    int count = 0;
    void operator()(double v)
    {
        const int s = sign_of(v);
        if (s == 0)
            return;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
};

// u = Φ/√y satisfies u'' = −(Ẽ − a(y − 1)²)u, regular through y = 0.
struct LeftData {
    double c0;
    double c1;
    int zeros;  ///< zeros of u on (y_min, 0)
};

LeftData continue_from_left(double E_tilde, const ShootingSetup& s)
{
    if (s.y_min >= 0.0)
        return {1.0, s.sqrt_a, 0};
    const auto rhs = [&](double y, const Vec2& v) {
        const double d = y - 1.0;
        return Vec2(v[1], -(E_tilde - s.a * d * d) * v[0]);
    };
    Vec2 v(1.0, -s.sqrt_a * (s.y_min - 1.0));
    ZeroCounter zc;
    zc(v[0]);
    v = ode::integrate_rkf45(rhs, s.y_min, 0.0, v, s.ode, [&](double, const Vec2& w) { zc(w[0]); });
    return {v[0], v[1], zc.count};
}

// Φ and Φ' at y from the s = ½ Frobenius series.
Vec2 frobenius(double E_tilde, double c0, double c1, double y, const ShootingSetup& s)
{
    constexpr int terms = 24;
    std::array<double, terms> c{};
    c[0] = c0;
    c[1] = c1;
    for (int j = 2; j < terms; ++j) {
        double acc = (E_tilde - s.a) * c[j - 2];
        if (j >= 3)
            acc += 2.0 * s.a * c[j - 3];
        if (j >= 4)
            acc -= s.a * c[j - 4];
        c[j] = -acc / (j * (j - 1.0));
    }
    double u = 0.0, du = 0.0;
    for (int j = terms - 1; j >= 0; --j) {
        u = u * y + c[j];
        if (j >= 1)
            du = du * y + j * c[j];
    }
    const double r = std::sqrt(y);
    return Vec2(r * u, du * r + u / (2.0 * r));
}

auto phi_rhs(double E_tilde, const ShootingSetup& s)
{
    return [E_tilde, &s](double y, const Vec2& v) { return Vec2(v[1], y_ode_rhs(y, v[0], v[1], E_tilde, s.a)); };
}

Vec2 right_seed(const ShootingSetup& s)
{
    return Vec2(1.0, 1.0 / (2.0 * s.y_max) - s.sqrt_a * (s.y_max - 1.0));
}

// Zeros of the one-sided solution launched from the left over the whole line.
int one_sided_zeros(double lambda, const ShootingSetup& s)
{
    const double E_tilde = lambda * s.sqrt_a;
    const LeftData left = continue_from_left(E_tilde, s);
    Vec2 v = frobenius(E_tilde, left.c0, left.c1, s.y_start, s);
    ZeroCounter zc;
    zc(left.c0);
    zc(v[0]);
    ode::integrate_rkf45(phi_rhs(E_tilde, s), s.y_start, s.y_max, v, s.ode,
                         [&](double, const Vec2& w) { zc(w[0]); });
    return left.zeros + zc.count;
}

struct MatchData {
    double wronskian;
    int zeros_positive;
    int zeros_total;
};

// Scale that joins the inward branch onto the outward one at y = 1 in the
// least-squares sense on (Φ, Φ'); robust when Φ(1) = 0.
double join_scale(const Vec2& left, const Vec2& right)
{
    return left.dot(right) / right.squaredNorm();
}

MatchData match(double lambda, const ShootingSetup& s)
{
    const double E_tilde = lambda * s.sqrt_a;
    const LeftData left = continue_from_left(E_tilde, s);
    Vec2 vl = frobenius(E_tilde, left.c0, left.c1, s.y_start, s);
    std::vector<double> trace{left.c0, vl[0]};
    vl = ode::integrate_rkf45(phi_rhs(E_tilde, s), s.y_start, 1.0, vl, s.ode,
                              [&](double, const Vec2& w) { trace.push_back(w[0]); });
    std::vector<double> inward{right_seed(s)[0]};
    const Vec2 vr = ode::integrate_rkf45(phi_rhs(E_tilde, s), s.y_max, 1.0, right_seed(s), s.ode,
                                         [&](double, const Vec2& w) { inward.push_back(w[0]); });
    const double w = (vl[1] * vr[0] - vl[0] * vr[1]) / (vl.norm() * vr.norm());

    // nodes of the joined function, so that a zero at the matching point counts once
    const double scale = join_scale(vl, vr);
    ZeroCounter zc;
    for (double v : trace)
        zc(v);
    // the last inward sample is y = 1 itself, already covered by the outward trace
    for (auto it = std::next(inward.rbegin()); it != inward.rend(); ++it)
        zc(scale * *it);
    return {w, zc.count, zc.count + left.zeros};
}

}  // namespace

ShootingResult shoot_bound_state(int n, const ShootingConfig& config, const PhysParams& params)
{
    if (n < 0)
        throw DomainError("level index must be non-negative");
    if (n > config.max_nodes)
        throw DomainError("level " + std::to_string(n) + " exceeds the configured node ceiling");
    const ShootingSetup s = make_setup(config, params);

    ShootingResult result;
    result.n = n;

    // 1. node-count bracket in λ = Ẽ/√a
    double lo = config.search_lo.value_or(0.0);
    double hi = config.search_hi.value_or(4.0 * (n + 2));
    if (!(hi > lo))
        throw BracketError("search interval is empty");
    if (one_sided_zeros(lo, s) > n)
        throw BracketError("lower search bound already exceeds level " + std::to_string(n));
    int count_hi = one_sided_zeros(hi, s);
    if (!config.search_hi) {
        const double ceiling = 8.0 * (config.max_nodes + 2);
        while (count_hi < n + 1 && hi < ceiling) {
            hi *= 2.0;
            count_hi = one_sided_zeros(hi, s);
        }
    }
    if (count_hi < n + 1)
        throw BracketError("search interval does not reach level " + std::to_string(n));

    constexpr double count_width = 1e-3;
    while (hi - lo > count_width) {
        const double mid = 0.5 * (lo + hi);
        if (one_sided_zeros(mid, s) <= n)
            lo = mid;
        else
            hi = mid;
        ++result.iterations;
    }

    // 2. Wronskian sign change around the count transition
    double w_lo = match(lo, s).wronskian;
    double w_hi = match(hi, s).wronskian;
    for (int widen = 0; sign_of(w_lo) * sign_of(w_hi) > 0 && widen < 4; ++widen) {
        const double pad = hi - lo;
        if (config.search_lo)
            lo = std::max(*config.search_lo, lo - pad);
        else
            lo = std::max(0.0, lo - pad);
        hi = config.search_hi ? std::min(*config.search_hi, hi + pad) : hi + pad;
        w_lo = match(lo, s).wronskian;
        w_hi = match(hi, s).wronskian;
    }
    if (sign_of(w_lo) * sign_of(w_hi) > 0)
        throw BracketError("matching Wronskian does not change sign near level " + std::to_string(n));

    // 3. bisection on the Wronskian
    while (hi - lo > config.bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        const double w_mid = match(mid, s).wronskian;
        if (w_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if (sign_of(w_mid) == sign_of(w_lo)) {
            lo = mid;
            w_lo = w_mid;
        } else {
            hi = mid;
        }
        ++result.iterations;
    }

    result.lambda = 0.5 * (lo + hi);
    result.E_tilde = result.lambda * s.sqrt_a;
    result.energy = params.hbar * params.hbar * params.k * params.k * result.E_tilde
                    / (18.0 * params.omega * params.omega);
    const MatchData final_match = match(result.lambda, s);
    result.nodes_positive_y = final_match.zeros_positive;
    result.nodes_total = final_match.zeros_total;
    if (result.nodes_total != n)
        throw NodeCountError("converged state for level " + std::to_string(n) + " has "
                             + std::to_string(result.nodes_total) + " nodes");
    return result;
}

double shoot_bound_eigenvalue(int n, const ShootingConfig& config, const PhysParams& params)
{
    return shoot_bound_state(n, config, params).energy;
}

std::vector<double> numeric_spectrum(int n_max, const ShootingConfig& config, const PhysParams& params)
{
    if (n_max < 0)
        throw DomainError("n_max must be non-negative");
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        levels.push_back(shoot_bound_eigenvalue(n, config, params));
        if (n > 0 && !(levels[n] > levels[n - 1]))
            throw NodeCountError("numeric spectrum is not strictly increasing at level " + std::to_string(n));
    }
    return levels;
}

std::vector<double> shooting_solution(double E_tilde, std::span<const double> ys, const ShootingConfig& config,
                                      const PhysParams& params)
{
    const ShootingSetup s = make_setup(config, params);
    for (double y : ys)
        if (!(y > 0.0 && y <= s.y_max))
            throw DomainError("requested y outside (0, y_max]");

    std::vector<std::size_t> order(ys.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ys[i] < ys[j]; });

    std::vector<double> out(ys.size(), 0.0);
    const auto rhs = phi_rhs(E_tilde, s);
    const LeftData left = continue_from_left(E_tilde, s);

    // outward branch, ascending
    Vec2 vl = frobenius(E_tilde, left.c0, left.c1, s.y_start, s);
    double y_cur = s.y_start;
    for (std::size_t idx : order) {
        const double y = ys[idx];
        if (y > 1.0)
            break;
        if (y < s.y_start) {
            out[idx] = frobenius(E_tilde, left.c0, left.c1, y, s)[0];
            continue;
        }
        vl = ode::integrate_rkf45(rhs, y_cur, y, vl, s.ode);
        y_cur = y;
        out[idx] = vl[0];
    }
    vl = ode::integrate_rkf45(rhs, y_cur, 1.0, vl, s.ode);

    // inward branch, descending
    Vec2 vr = right_seed(s);
    y_cur = s.y_max;
    std::vector<std::pair<std::size_t, double>> right_raw;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const double y = ys[*it];
        if (y <= 1.0)
            break;
        vr = ode::integrate_rkf45(rhs, y_cur, y, vr, s.ode);
        y_cur = y;
        right_raw.emplace_back(*it, vr[0]);
    }
    vr = ode::integrate_rkf45(rhs, y_cur, 1.0, vr, s.ode);
    const double scale = join_scale(vl, vr);
    for (const auto& [idx, value] : right_raw)
        out[idx] = scale * value;

    double peak = 0.0;
    for (double v : out)
        if (std::abs(v) > std::abs(peak))
            peak = v;
    if (peak == 0.0)
        throw ZeroAmplitudeError("shooting solution vanishes on the requested points");
    for (double& v : out)
        v /= peak;
    return out;
}

NormSplit quadrature_norm_split(const EigenState& state, const PhysParams& params, int panels)
{
    validate(params);
    if (state.sector != Sector::Bound)
        throw DomainError("quadrature norm is defined for bound states");
    if (panels < 1)
        throw DomainError("panel count must be positive");
    static const quadrature::GaussLegendre<double> rule(20);
    const auto sc = detail::spectral_scales(params);
    const double z_cut = std::sqrt(2.0 * state.n + 1.0) + 12.0;
    const double dy = z_cut / sc.quart_a;
    const double jac = 3.0 * params.omega * params.omega / params.k;
    const auto density = [&](double y) {
        const double v = std::abs(state(y_to_p(y, params)));
        return v * v * jac * y;
    };
    NormSplit split;
    split.right = rule.integrate_composite(density, std::max(0.0, 1.0 - dy), 1.0, panels);
    split.left = rule.integrate_composite(density, 1.0, 1.0 + dy, panels);
    split.total = split.left + split.right;
    return split;
}

double quadrature_norm(const EigenState& state, const PhysParams& params, int panels)
{
    return quadrature_norm_split(state, params, panels).total;
}

}  // namespace lienard
