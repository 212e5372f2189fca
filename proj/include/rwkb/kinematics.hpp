#pragma once

#include "rwkb/context.hpp"
#include "rwkb/potential.hpp"

namespace rwkb {

/// Classically allowed radial interval [r_a, r_b] at energy E and angular action L.
struct ClassicalRegion {
    double r_a = 0.0;
    double r_b = 0.0;
    Energy energy;
    /// Angular action L in energy * length units.
    double angular = 0.0;

    double width() const noexcept { return r_b - r_a; }
};

/// Positive branch of the radial momentum, p_r = sqrt(radicand) / c.
///
/// Returns 0 at a turning point (round-off sized negative radicands are clamped);
/// throws DomainError in the classically forbidden region.
double radial_momentum(const RadialPotential& potential, const PhysicalContext& ctx, Energy energy,
                       double angular, double r);
double radial_momentum(const RadialPotential& potential, const PhysicalContext& ctx, double energy,
                       double angular, double r);

/// Turning points bracketing the classically allowed interval.
///
/// Coulomb uses the closed-form quadratic in 1/r. Other potentials are scanned
/// geometrically from 1e-3 to 1e6 Compton lengths (clipped to a table's range) and
/// refined by bisection followed by one secant step.
///
/// Throws NoBoundRegionError if nothing is allowed (or the region does not close
/// inside the scan range) and MultipleWellsError for more than one allowed interval.
ClassicalRegion find_classical_region(const RadialPotential& potential, const PhysicalContext& ctx,
                                      Energy energy, double angular, const Tolerances& tol = {});
ClassicalRegion find_classical_region(const RadialPotential& potential, const PhysicalContext& ctx,
                                      double energy, double angular, const Tolerances& tol = {});

} // namespace rwkb
