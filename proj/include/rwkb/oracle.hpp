#pragma once

#include "rwkb/context.hpp"
#include "rwkb/potential.hpp"

#include <vector>

namespace rwkb {

/// Radial mesh for the exact solver. The mesh is uniform in x = ln r; zero extents
/// are chosen automatically.
struct OracleGrid {
    /// 0: 1e-4 Compton lengths (or the start of a potential table).
    double r_min = 0.0;
    /// 0: iterate until the tunnelling exponent past the outer turning point
    /// reaches 40 (and, for Coulomb, at least 15 asymptotic decay lengths).
    double r_max = 0.0;
    /// Spacing in ln r.
    double step = 2e-3;
};

/// Converged bound state of the stationary radial Klein-Gordon equation
///     u'' + { [(E - V)^2 - (m c^2)^2] / (hbar c)^2 - l(l+1)/r^2 } u = 0.
struct OracleSolution {
    double energy = 0.0;
    /// E - m c^2, carried separately because it is resolved far below the ulp of E.
    double kinetic = 0.0;
    int n_r = 0;
    int l = 0;
    std::vector<double> grid;
    /// u = r * phi, normalised to int u^2 dr = 1 and positive near the origin.
    std::vector<double> u;
    /// |sin| of the Pruefer-angle mismatch between the outward and inward solutions
    /// at the matching point.
    double match_defect = 0.0;
    /// Index of the matching point (outer classical turning point) in `grid`.
    std::size_t match_index = 0;
};

/// Numerov shooting on the log mesh.
///
/// The energy is bracketed by bisection on the Sturm count of the outward
/// solution, then refined by a bracketing secant iteration on the matching defect.
/// Throws ConvergenceError if the defect stays above 1e-10 or no tail fits before
/// the Klein region of a confining wall, and NodeCountError if the requested level
/// cannot be bracketed.
OracleSolution solve_exact(const RadialPotential& potential, const PhysicalContext& ctx, int n_r,
                           int l, const OracleGrid& grid = {});

} // namespace rwkb
