#include "rwkb/kinematics.hpp"

#include "rwkb/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace rwkb {

namespace {

constexpr double scan_start = 1e-3; // in Compton lengths
constexpr double scan_stop = 1e6;

ClassicalRegion coulomb_region(const PhysicalContext& ctx, Energy total, double angular)
{
    const double rest = ctx.rest_energy();
    const double e2 = ctx.coulomb_strength();
    const double energy = total.value(ctx);
    const double kinetic = total.kinetic;
    if (!(kinetic > -rest) || !(kinetic < 0.0)) {
        throw NoBoundRegionError("Coulomb motion is unbounded unless 0 < E < m c^2");
    }
    if (!(angular > e2)) {
        throw DomainError("Coulomb problem requires (l + 1/2) > alpha");
    }

    // radicand * r^2 = A u^2 + B u + C in u = 1/r
    const double a = e2 * e2 - angular * angular;
    const double b = 2.0 * energy * e2;
    const double c = kinetic * (kinetic + 2.0 * rest);
    const double quarter_disc = e2 * e2 * rest * rest + angular * angular * c;
    if (!(quarter_disc > 0.0)) {
        throw NoBoundRegionError("energy below the bottom of the effective Coulomb well");
    }
    const double q = -0.5 * (b + 2.0 * std::sqrt(quarter_disc));
    const double u1 = q / a;
    const double u2 = c / q;

    ClassicalRegion region;
    region.r_a = 1.0 / std::max(u1, u2);
    region.r_b = 1.0 / std::min(u1, u2);
    region.energy = total;
    region.angular = angular;
    if (!(region.r_a < region.r_b)) {
        throw NoBoundRegionError("degenerate Coulomb region");
    }
    return region;
}

// Bisection down to `width`, then one secant step inside the final bracket.
double refine_turning_point(const EffectiveRadicand& f, double lo, double hi, double width)
{
    double f_lo = f(lo);
    double f_hi = f(hi);
    for (int iter = 0; iter < 400 && hi - lo > width; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    if (f_hi != f_lo) {
        const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        if (secant >= lo && secant <= hi) {
            return secant;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double radial_momentum(const RadialPotential& potential, const PhysicalContext& ctx, double energy,
                       double angular, double r)
{
    return radial_momentum(potential, ctx, Energy::total(ctx, energy), angular, r);
}

double radial_momentum(const RadialPotential& potential, const PhysicalContext& ctx, Energy energy,
                       double angular, double r)
{
    const auto radicand = effective_radicand(potential, ctx, energy, angular);
    const double value = radicand(r);
    if (value >= 0.0) {
        return std::sqrt(value) / ctx.c;
    }
    const double kinetic = energy.value(ctx) - evaluate(potential, ctx, r);
    const double scale = std::max({kinetic * kinetic, ctx.rest_energy() * ctx.rest_energy(),
                                   (angular / r) * (angular / r)});
    if (value > -64.0 * std::numeric_limits<double>::epsilon() * scale) {
        return 0.0;
    }
    std::ostringstream msg;
    msg << "r = " << r << " is classically forbidden (radicand " << value << ")";
    throw DomainError(msg.str());
}

ClassicalRegion find_classical_region(const RadialPotential& potential, const PhysicalContext& ctx,
                                      double energy, double angular, const Tolerances& tol)
{
    return find_classical_region(potential, ctx, Energy::total(ctx, energy), angular, tol);
}

ClassicalRegion find_classical_region(const RadialPotential& potential, const PhysicalContext& ctx,
                                      Energy energy, double angular, const Tolerances& tol)
{
    validate(ctx);
    validate(tol);
    if (!std::isfinite(energy.kinetic)) {
        throw DomainError("energy must be finite");
    }
    if (!(angular >= 0.0)) {
        throw DomainError("angular action must be >= 0");
    }
    if (potential.kind() == PotentialKind::coulomb) {
        return coulomb_region(ctx, energy, angular);
    }

    const auto radicand = effective_radicand(potential, ctx, energy, angular);
    const double lambda = ctx.compton_length();
    const double lo = std::max(scan_start * lambda, potential.domain_min());
    const double hi = std::min(scan_stop * lambda, potential.domain_max());
    if (!(lo < hi)) {
        throw NoBoundRegionError("empty scan range");
    }

    std::vector<double> radii;
    for (double r = lo; r < hi; r *= tol.bracket_expansion) {
        radii.push_back(r);
    }
    radii.push_back(hi);
    std::vector<double> values(radii.size());
    std::transform(radii.begin(), radii.end(), values.begin(), radicand);

    if (values.front() > 0.0 || values.back() > 0.0) {
        throw NoBoundRegionError("allowed region does not close inside the scan range");
    }

    // sign changes: entering (- to +) and leaving (+ to -)
    std::vector<std::size_t> entries;
    std::vector<std::size_t> exits;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i] <= 0.0 && values[i + 1] > 0.0) {
            entries.push_back(i);
        } else if (values[i] > 0.0 && values[i + 1] <= 0.0) {
            exits.push_back(i);
        }
    }
    if (entries.size() > 1) {
        throw MultipleWellsError("radicand has more than one allowed interval");
    }

    double a_lo = 0.0, a_hi = 0.0, b_lo = 0.0, b_hi = 0.0;
    if (entries.empty()) {
        // A narrow well can hide between two samples: maximise around the best sample.
        const auto best = static_cast<std::size_t>(
            std::max_element(values.begin(), values.end()) - values.begin());
        if (best == 0 || best + 1 == values.size()) {
            throw NoBoundRegionError("radicand is negative everywhere");
        }
        double x0 = std::log(radii[best - 1]);
        double x1 = std::log(radii[best + 1]);
        const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double c1 = x1 - inv_phi * (x1 - x0);
        double c2 = x0 + inv_phi * (x1 - x0);
        double f1 = radicand(std::exp(c1));
        double f2 = radicand(std::exp(c2));
        for (int iter = 0; iter < 200 && std::max(f1, f2) <= 0.0 && x1 - x0 > 1e-15; ++iter) {
            if (f1 > f2) {
                x1 = c2;
                c2 = c1;
                f2 = f1;
                c1 = x1 - inv_phi * (x1 - x0);
                f1 = radicand(std::exp(c1));
            } else {
                x0 = c1;
                c1 = c2;
                f1 = f2;
                c2 = x0 + inv_phi * (x1 - x0);
                f2 = radicand(std::exp(c2));
            }
        }
        if (std::max(f1, f2) <= 0.0) {
            throw NoBoundRegionError("radicand is negative everywhere");
        }
        const double peak = std::exp(f1 > f2 ? c1 : c2);
        a_lo = radii[best - 1];
        a_hi = peak;
        b_lo = peak;
        b_hi = radii[best + 1];
    } else {
        a_lo = radii[entries.front()];
        a_hi = radii[entries.front() + 1];
        b_lo = radii[exits.front()];
        b_hi = radii[exits.front() + 1];
    }

    const double width = tol.root_abs * lambda;
    ClassicalRegion region;
    region.r_a = refine_turning_point(radicand, a_lo, a_hi, width);
    region.r_b = refine_turning_point(radicand, b_lo, b_hi, width);
    region.energy = energy;
    region.angular = angular;
    if (!(region.r_a < region.r_b)) {
        throw NoBoundRegionError("degenerate allowed region");
    }
    return region;
}

} // namespace rwkb
