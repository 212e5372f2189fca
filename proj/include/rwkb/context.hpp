#pragma once

namespace rwkb {

/// Unit system shared by all modules.
///
/// `coupling` is the dimensionless Coulomb strength alpha = e^2 / (hbar c); it is only
/// read by the Coulomb potential and by the closed-form Coulomb results.
struct PhysicalContext {
    double mass = 1.0;
    double c = 1.0;
    double hbar = 1.0;
    double coupling = 0.0;

    double rest_energy() const noexcept { return mass * c * c; }
    double hbar_c() const noexcept { return hbar * c; }
    /// Reduced Compton wavelength hbar / (m c).
    double compton_length() const noexcept { return hbar / (mass * c); }
    /// e^2 in energy * length units.
    double coulomb_strength() const noexcept { return coupling * hbar * c; }
};

/// Numerical tolerances.
struct Tolerances {
    /// Relative tolerance of the action quadrature.
    double quadrature_rel = 1e-12;
    /// Absolute root tolerance, as a fraction of m c^2 (energies) or of hbar (actions).
    double root_abs = 1e-10;
    /// Growth factor of the geometric turning-point scan.
    double bracket_expansion = 1.5;
};

/// Throws DomainError unless mass, c, hbar > 0 and coupling >= 0.
void validate(const PhysicalContext& ctx);
/// Throws DomainError unless every tolerance is strictly positive (expansion > 1).
void validate(const Tolerances& tol);

/// m = c = hbar = 1, no Coulomb coupling.
PhysicalContext natural_units();

/// Natural units with the given fine-structure-like coupling.
PhysicalContext hydrogen_context(double alpha = 1.0 / 137.035999);

} // namespace rwkb
