#pragma once

#include "rwkb/context.hpp"
#include "rwkb/kinematics.hpp"
#include "rwkb/potential.hpp"

#include <optional>

namespace rwkb {

/// Radial action I_r = (1/2 pi) * loop integral of p_r dr, stored in units of hbar.
struct ActionValue {
    double in_hbar = 0.0;
    /// Absolute error estimate, in units of hbar.
    double estimated_error = 0.0;
    /// Region the action was integrated over; empty for a closed-form value below
    /// the bottom of the well.
    std::optional<ClassicalRegion> region;
};

/// I_r = (1/pi) * int_{r_a}^{r_b} p_r dr / hbar.
///
/// The substitution r = r_a + (r_b - r_a) sin^2(theta) removes the square-root
/// behaviour of p_r at both turning points; the smooth theta integrand is summed
/// with composite Gauss-Legendre rules, doubling the panel count until two
/// successive resolutions agree to Tolerances::quadrature_rel * max(I_r, 1).
/// Throws AccuracyError if that never happens.
ActionValue radial_action(const RadialPotential& potential, const PhysicalContext& ctx,
                          const ClassicalRegion& region, const Tolerances& tol = {});

/// The same quadrature at a fixed resolution: every graded panel split into
/// `subdivision` equal Gauss-Legendre intervals, without refinement.
double radial_action_at_resolution(const RadialPotential& potential, const PhysicalContext& ctx,
                                   const ClassicalRegion& region, int subdivision);

/// Exact Coulomb radial action
///     I_r / hbar = E alpha / sqrt((m c^2)^2 - E^2) - sqrt((l + 1/2)^2 - alpha^2).
/// Throws DomainError unless 0 < E < m c^2 and l + 1/2 > alpha.
ActionValue closed_form_coulomb_action(const PhysicalContext& ctx, Energy energy, int l);
ActionValue closed_form_coulomb_action(const PhysicalContext& ctx, double energy, int l);

} // namespace rwkb
