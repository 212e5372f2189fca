#include "rwkb/wavefunction.hpp"

#include "rwkb/error.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rwkb {

namespace {

using Rule = boost::math::quadrature::gauss<double, 15>;

double trapezoid(const std::vector<double>& x, const std::vector<double>& y)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        sum += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
    }
    return sum;
}

} // namespace

std::complex<double> branch_superposition(double phase)
{
    using namespace std::complex_literals;
    return std::exp(-1i * phase) + std::exp(-1i * (0.5 * std::numbers::pi) + 1i * phase);
}

int count_sign_changes(const std::vector<double>& values)
{
    int changes = 0;
    double previous = 0.0;
    for (double v : values) {
        if (v == 0.0) {
            continue;
        }
        if (previous != 0.0 && (v < 0.0) != (previous < 0.0)) {
            ++changes;
        }
        previous = v;
    }
    return changes;
}

SemiclassicalSolution build_wavefunction(const RadialPotential& potential,
                                         const PhysicalContext& ctx, const SpectrumEntry& entry,
                                         std::size_t grid_size, const Tolerances& tol)
{
    if (grid_size < 16) {
        throw DomainError("wavefunction grid needs at least 16 points");
    }
    if (entry.branch != Branch::particle) {
        throw DomainError("wavefunctions are built on the particle branch only");
    }
    const double angular = angular_action(ctx, entry.l);
    const Energy energy{entry.kinetic};
    const ClassicalRegion region = find_classical_region(potential, ctx, energy, angular, tol);
    const auto radicand = effective_radicand(potential, ctx, energy, angular);

    // r(theta) = r_a + width sin^2(theta); theta in [theta_lo, theta_hi] maps onto
    // [r_a + eps, r_b - eps].
    const double width = region.width();
    const double theta_lo = std::asin(std::sqrt(turning_point_margin));
    const double theta_hi = 0.5 * std::numbers::pi - theta_lo;
    const double scale = 1.0 / (ctx.c * ctx.hbar);
    auto radius = [&](double theta) {
        const double s = std::sin(theta);
        return region.r_a + width * s * s;
    };
    auto momentum = [&](double r) {
        const double v = radicand(r);
        return v > 0.0 ? std::sqrt(v) / ctx.c : 0.0;
    };
    auto phase_density = [&](double theta) {
        const double r = radius(theta);
        const double v = radicand(r);
        return (v > 0.0 ? std::sqrt(v) : 0.0) * width * std::sin(2.0 * theta) * scale;
    };

    SemiclassicalSolution sol;
    sol.entry = entry;
    sol.region = region;
    sol.grid.resize(grid_size);
    sol.amplitude.resize(grid_size);
    sol.phase.resize(grid_size);
    sol.value.resize(grid_size);

    std::vector<double> thetas(grid_size);
    const double dtheta = (theta_hi - theta_lo) / static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) {
        thetas[i] = theta_lo + dtheta * static_cast<double>(i);
        sol.grid[i] = radius(thetas[i]);
    }
    thetas.back() = theta_hi;
    sol.grid.front() = region.r_a + turning_point_margin * width;
    sol.grid.back() = region.r_b - turning_point_margin * width;

    // accumulate the phase inward from r_b
    double accumulated = Rule::integrate(phase_density, theta_hi, 0.5 * std::numbers::pi);
    sol.phase.back() = accumulated;
    for (std::size_t i = grid_size - 1; i-- > 0;) {
        accumulated += Rule::integrate(phase_density, thetas[i], thetas[i + 1]);
        sol.phase[i] = accumulated;
    }

    for (std::size_t i = 0; i < grid_size; ++i) {
        sol.amplitude[i] = 1.0 / std::sqrt(momentum(sol.grid[i]));
        sol.value[i] = sol.amplitude[i] * std::sin(sol.phase[i] + 0.25 * std::numbers::pi);
    }

    std::vector<double> density(grid_size);
    std::transform(sol.value.begin(), sol.value.end(), density.begin(),
                   [](double v) { return v * v; });
    const double norm = std::sqrt(trapezoid(sol.grid, density));
    const double sign = sol.value.front() < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < grid_size; ++i) {
        sol.amplitude[i] /= norm;
        sol.value[i] *= sign / norm;
    }

    const int nodes = count_sign_changes(sol.value);
    if (nodes != entry.n_r) {
        std::ostringstream msg;
        msg << "semiclassical wavefunction has " << nodes << " sign changes, expected "
            << entry.n_r;
        throw NodeCountError(msg.str());
    }
    return sol;
}

TurningZones airy_lengths(const RadialPotential& potential, const PhysicalContext& ctx,
                          const ClassicalRegion& region)
{
    const auto radicand = effective_radicand(potential, ctx, region.energy, region.angular);
    // one-sided differences stay inside the allowed region (and inside a table)
    const double h = 1e-6 * region.width();
    const double slope_a = std::abs(radicand(region.r_a + h) - radicand(region.r_a)) / h;
    const double slope_b = std::abs(radicand(region.r_b) - radicand(region.r_b - h)) / h;
    const double hc2 = ctx.hbar_c() * ctx.hbar_c();
    return {std::cbrt(hc2 / slope_a), std::cbrt(hc2 / slope_b)};
}

double overlap_with_oracle(const SemiclassicalSolution& semi, const OracleSolution& exact,
                           const TurningZones& excluded)
{
    std::vector<double> grid;
    std::vector<double> value;
    for (std::size_t i = 0; i < semi.grid.size(); ++i) {
        const double r = semi.grid[i];
        if (r - semi.region.r_a >= excluded.inner && semi.region.r_b - r >= excluded.outer) {
            grid.push_back(r);
            value.push_back(semi.value[i]);
        }
    }
    if (grid.size() < 2 || exact.grid.size() < 2) {
        throw GridMismatchError("fewer than two grid points to compare");
    }
    if (grid.front() < exact.grid.front() || grid.back() > exact.grid.back()) {
        throw GridMismatchError("oracle mesh does not cover the semiclassical grid");
    }

    std::vector<double> interpolated(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        auto upper = std::upper_bound(exact.grid.begin(), exact.grid.end(), r);
        if (upper == exact.grid.end()) {
            interpolated[i] = exact.u.back();
            continue;
        }
        const auto k = static_cast<std::size_t>(upper - exact.grid.begin());
        const double x0 = std::log(exact.grid[k - 1]);
        const double x1 = std::log(exact.grid[k]);
        const double t = (std::log(r) - x0) / (x1 - x0);
        interpolated[i] = (1.0 - t) * exact.u[k - 1] + t * exact.u[k];
    }

    std::vector<double> ss(grid.size());
    std::vector<double> ee(grid.size());
    std::vector<double> se(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ss[i] = value[i] * value[i];
        ee[i] = interpolated[i] * interpolated[i];
        se[i] = value[i] * interpolated[i];
    }
    const double denom = std::sqrt(trapezoid(grid, ss) * trapezoid(grid, ee));
    if (!(denom > 0.0)) {
        throw GridMismatchError("functions vanish on the common grid");
    }
    return std::min(1.0, std::abs(trapezoid(grid, se)) / denom);
}

} // namespace rwkb
