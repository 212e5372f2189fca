#pragma once

#include "rwkb/context.hpp"
#include "rwkb/kinematics.hpp"
#include "rwkb/oracle.hpp"
#include "rwkb/potential.hpp"
#include "rwkb/quantize.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace rwkb {

/// Semiclassical radial wavefunction sampled inside the classically allowed region.
struct SemiclassicalSolution {
    SpectrumEntry entry;
    ClassicalRegion region;
    /// Strictly increasing radii in [r_a + eps, r_b - eps], eps = 1e-4 (r_b - r_a).
    std::vector<double> grid;
    /// |R(r)| = A p_r^{-1/2}, with A fixed by the normalisation of `value`.
    std::vector<double> amplitude;
    /// int_r^{r_b} p_r dr / hbar.
    std::vector<double> phase;
    /// amplitude * sin(phase + pi/4), normalised to int value^2 dr = 1 (trapezoid)
    /// and positive at the first grid point.
    std::vector<double> value;
};

/// Relative distance of the grid ends from the turning points.
inline constexpr double turning_point_margin = 1e-4;

/// Two-branch superposition exp(-i theta) + exp(-i pi/2 + i theta) of the incoming
/// and reflected waves; the second carries the pi/2 retardation of one simple
/// conjugate point. Equals 2 exp(-i pi/4) sin(theta + pi/4).
std::complex<double> branch_superposition(double phase);

/// Builds the wavefunction of a solved particle level on `grid_size` points
/// clustered towards the turning points (uniform in the angle of the sin^2 map).
///
/// Throws NodeCountError if the sampled function does not have exactly n_r sign
/// changes, DomainError for antiparticle entries or grid_size < 16.
SemiclassicalSolution build_wavefunction(const RadialPotential& potential,
                                         const PhysicalContext& ctx, const SpectrumEntry& entry,
                                         std::size_t grid_size = 2001, const Tolerances& tol = {});

/// Radial extent excluded next to each turning point when comparing wavefunctions.
struct TurningZones {
    double inner = 0.0;
    double outer = 0.0;
};

/// Airy lengths (hbar^2 c^2 / |d radicand / dr|)^{1/3} at r_a and r_b: the scale
/// over which the semiclassical form fails near a linear turning point.
TurningZones airy_lengths(const RadialPotential& potential, const PhysicalContext& ctx,
                          const ClassicalRegion& region);

/// |int semi * exact dr| over the semiclassical grid, after renormalising both
/// functions there; the exact solution is linearly interpolated in ln r.
/// Grid points closer than `excluded` to r_a or r_b are left out.
/// Throws GridMismatchError if the oracle mesh does not cover the retained grid or
/// fewer than two points remain.
double overlap_with_oracle(const SemiclassicalSolution& semi, const OracleSolution& exact,
                           const TurningZones& excluded = {});

/// Number of strict sign changes in a sampled function.
int count_sign_changes(const std::vector<double>& values);

} // namespace rwkb
