#pragma once

#include "rwkb/context.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rwkb {

enum class PotentialKind { coulomb, harmonic, linear, custom_table };

/// Where bound levels sit relative to the rest energy.
enum class BoundClass {
    /// V -> 0 at infinity, bound levels in (0, m c^2).
    coulomb_like,
    /// V grows outward, bound levels above m c^2 + min V.
    confining,
};

std::string_view to_string(PotentialKind kind);
/// Throws ConfigError for an unknown name.
PotentialKind potential_kind_from_string(std::string_view name);

/// Scalar potential V(r) entering the Klein-Gordon equation through E -> E - V.
///
/// The Coulomb strength is read from PhysicalContext::coupling and the harmonic
/// mass from PhysicalContext::mass, so the same potential object can be reused
/// across unit systems. Custom tables are small and copied by value.
class RadialPotential {
public:
    /// V(r) = -coupling * hbar c / r.
    static RadialPotential coulomb();
    /// V(r) = m omega^2 r^2 / 2, omega in inverse time units.
    static RadialPotential harmonic(double omega);
    /// V(r) = slope * r.
    static RadialPotential linear(double slope);
    /// Monotone piecewise-cubic Hermite interpolation of at least four (r, V) samples with strictly
    /// increasing r > 0.
    static RadialPotential table(std::vector<double> radii, std::vector<double> values);

    PotentialKind kind() const noexcept { return kind_; }
    BoundClass bound_class() const noexcept;
    /// True iff V diverges as r -> 0.
    bool origin_singularity() const noexcept { return kind_ == PotentialKind::coulomb; }
    double omega() const noexcept { return strength_; }
    double slope() const noexcept { return strength_; }

    /// Evaluation interval; (0, inf) for the analytic kinds.
    double domain_min() const noexcept;
    double domain_max() const noexcept;

    /// Lower bound of V on its domain (V(0+) for the analytic kinds, -inf for Coulomb).
    double minimum_value() const noexcept;

    const std::vector<double>& table_radii() const noexcept { return radii_; }
    const std::vector<double>& table_values() const noexcept { return values_; }

    double operator()(const PhysicalContext& ctx, double r) const;

private:
    RadialPotential(PotentialKind kind, double strength) : kind_(kind), strength_(strength) {}

    PotentialKind kind_;
    double strength_ = 0.0;
    std::vector<double> radii_;
    std::vector<double> values_;
    /// Hermite slopes at the table nodes.
    std::vector<double> slopes_;
};

/// V(r). Throws DomainError if r <= 0 and ExtrapolationError outside a table's range.
double evaluate(const RadialPotential& potential, const PhysicalContext& ctx, double r);

/// Two-column `r value` text; `#` starts a comment. Throws ConfigError with the
/// offending line on malformed input.
RadialPotential parse_potential_table(std::istream& in);
RadialPotential load_potential_table(const std::string& path);

/// Langer-corrected angular action L = (l + 1/2) hbar c, in energy * length units.
double angular_action(const PhysicalContext& ctx, int l);

/// Energy split as E = m c^2 + kinetic. Weakly bound levels differ from m c^2 far
/// below the ulp of E, so solvers work with the offset.
struct Energy {
    double kinetic = 0.0;

    static Energy total(const PhysicalContext& ctx, double energy)
    {
        return Energy{energy - ctx.rest_energy()};
    }
    double value(const PhysicalContext& ctx) const { return ctx.rest_energy() + kinetic; }
};

/// c^2 p_r^2 on the particle branch as a function of r.
///
/// With K = E - V(r) the value is K|K| - (m c^2)^2 - (L/r)^2. Where K >= 0 this is
/// the familiar (E - V)^2 - (m c^2)^2 - (L/r)^2; where K < 0 (the antiparticle
/// continuum beyond a confining wall) it stays negative, so the particle turning
/// points are exactly the sign changes.
class EffectiveRadicand {
public:
    EffectiveRadicand(RadialPotential potential, PhysicalContext ctx, Energy energy,
                      double angular);

    double operator()(double r) const;

    double energy() const noexcept { return ctx_.rest_energy() + kinetic_; }
    double kinetic() const noexcept { return kinetic_; }
    double angular() const noexcept { return angular_; }
    const RadialPotential& potential() const noexcept { return potential_; }
    const PhysicalContext& context() const noexcept { return ctx_; }

private:
    RadialPotential potential_;
    PhysicalContext ctx_;
    double kinetic_;
    double angular_;
};

/// Throws DomainError if angular < 0.
EffectiveRadicand effective_radicand(const RadialPotential& potential, const PhysicalContext& ctx,
                                     double energy, double angular);
EffectiveRadicand effective_radicand(const RadialPotential& potential, const PhysicalContext& ctx,
                                     Energy energy, double angular);

} // namespace rwkb
