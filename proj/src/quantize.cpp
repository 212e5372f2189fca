#include "rwkb/quantize.hpp"

#include "rwkb/action.hpp"
#include "rwkb/error.hpp"
#include "rwkb/kinematics.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <tuple>

namespace rwkb {

namespace {

// Largest kinetic offset E - m c^2 tried for confining wells, in units of m c^2.
constexpr double max_confining_offset = 1e3;

struct ActionMismatch {
    const RadialPotential& potential;
    const PhysicalContext& ctx;
    const Tolerances& tol;
    double angular;
    double target;

    // I_r(E) - target, with I_r = 0 where no allowed region exists. A zero target
    // gets a negative sentinel there so that the sign change sits on the well bottom.
    double operator()(double kinetic) const
    {
        std::optional<ClassicalRegion> region;
        try {
            region = find_classical_region(potential, ctx, Energy{kinetic}, angular, tol);
        } catch (const NoBoundRegionError&) {
            return target > 0.0 ? -target : -1.0;
        }
        return radial_action(potential, ctx, *region, tol).in_hbar - target;
    }
};

// Bracket of E - m c^2 with f(lo) < 0 < f(hi).
std::pair<double, double> kinetic_bracket(const ActionMismatch& f, const RadialPotential& potential,
                                          const PhysicalContext& ctx)
{
    const double rest = ctx.rest_energy();
    if (potential.bound_class() == BoundClass::coulomb_like) {
        if (!(ctx.coupling > 0.0)) {
            throw NoRootError("no Coulomb bound states without coupling");
        }
        const double hi = -1e-12 * rest;
        if (f(hi) <= 0.0) {
            throw NoRootError("target action not reached below m c^2");
        }
        return {-rest, hi};
    }

    const double lo = potential.minimum_value();
    double cap = max_confining_offset * rest;
    if (potential.kind() == PotentialKind::custom_table) {
        const auto& values = potential.table_values();
        cap = *std::max_element(values.begin(), values.end());
    }
    for (double step = 1e-8 * rest;; step *= 2.0) {
        const double hi = std::min(lo + step, cap);
        if (f(hi) > 0.0) {
            return {lo, hi};
        }
        if (hi >= cap) {
            throw NoRootError("target action not reached inside the bound range");
        }
    }
}

} // namespace

void validate(const QuantumCondition& condition)
{
    if (condition.n_r < 0 || condition.l < 0) {
        throw DomainError("quantum numbers must be >= 0");
    }
    if (condition.maslov_m < 0) {
        throw DomainError("Maslov index must be >= 0");
    }
}

SpectrumEntry solve_level(const RadialPotential& potential, const PhysicalContext& ctx,
                          const QuantumCondition& condition, const Tolerances& tol, Branch branch)
{
    validate(ctx);
    validate(tol);
    validate(condition);

    const double angular = angular_action(ctx, condition.l);
    if (potential.kind() == PotentialKind::coulomb && !(angular > ctx.coulomb_strength())) {
        throw DomainError("Coulomb problem requires (l + 1/2) > alpha");
    }
    const ActionMismatch f{potential, ctx, tol, angular, condition.target_in_hbar()};
    auto [lo, hi] = kinetic_bracket(f, potential, ctx);

    std::uintmax_t max_iter = 300;
    const auto bracket = boost::math::tools::toms748_solve(
        f, lo, hi, f(lo), f(hi), boost::math::tools::eps_tolerance<double>(52), max_iter);

    double kinetic = bracket.first;
    double mismatch = 0.0;
    if (condition.target_in_hbar() == 0.0) {
        // the lower end may sit on the no-region sentinel; the upper end has a region
        kinetic = std::max(bracket.first, bracket.second);
        mismatch = f(kinetic);
    } else {
        mismatch = f(bracket.first);
        if (bracket.second != bracket.first) {
            const double other = f(bracket.second);
            if (std::abs(other) < std::abs(mismatch)) {
                kinetic = bracket.second;
                mismatch = other;
            }
        }
    }

    SpectrumEntry entry;
    entry.n_r = condition.n_r;
    entry.l = condition.l;
    entry.maslov_m = condition.maslov_m;
    entry.residual = std::abs(mismatch);
    if (!(entry.residual <= tol.root_abs)) {
        std::ostringstream msg;
        msg << "quantum condition residual " << entry.residual << " exceeds " << tol.root_abs
            << " (n_r = " << condition.n_r << ", l = " << condition.l << ")";
        throw AccuracyError(msg.str());
    }
    entry.branch = branch;
    entry.kinetic = kinetic;
    const double energy = ctx.rest_energy() + kinetic;
    entry.energy = branch == Branch::particle ? energy : -energy;
    return entry;
}

Energy coulomb_level(const PhysicalContext& ctx, int n_r, int l, int maslov_m)
{
    validate(ctx);
    validate(QuantumCondition{n_r, l, maslov_m});
    const double alpha = ctx.coupling;
    const double lang = l + 0.5;
    if (!(lang > alpha)) {
        throw DomainError("Coulomb spectrum requires l + 1/2 > alpha");
    }
    const double denom = n_r + 0.25 * maslov_m + std::sqrt((lang - alpha) * (lang + alpha));
    const double ratio = alpha / denom;
    const double root = std::sqrt(1.0 + ratio * ratio);
    // m c^2 (1/root - 1) rearranged to avoid cancellation
    return Energy{-ctx.rest_energy() * ratio * ratio / (root * (1.0 + root))};
}

double coulomb_energy(const PhysicalContext& ctx, int n_r, int l, Branch branch, int maslov_m)
{
    const double alpha = ctx.coupling;
    const double lang = l + 0.5;
    validate(ctx);
    validate(QuantumCondition{n_r, l, maslov_m});
    if (!(lang > alpha)) {
        throw DomainError("Coulomb spectrum requires l + 1/2 > alpha");
    }
    const double denom = n_r + 0.25 * maslov_m + std::sqrt((lang - alpha) * (lang + alpha));
    const double ratio = alpha / denom;
    const double energy = ctx.rest_energy() / std::sqrt(1.0 + ratio * ratio);
    return branch == Branch::particle ? energy : -energy;
}

SpectrumScan scan_spectrum(const RadialPotential& potential, const PhysicalContext& ctx,
                           const LevelRange& range, const ScanOptions& options)
{
    SpectrumScan scan;
    if (range.empty()) {
        return scan;
    }

    std::vector<QuantumCondition> conditions;
    for (int n_r = range.n_r_min; n_r <= range.n_r_max; ++n_r) {
        for (int l = range.l_min; l <= range.l_max; ++l) {
            conditions.push_back({n_r, l, options.maslov_m});
        }
    }

    std::vector<std::optional<SpectrumEntry>> solved(conditions.size());
    std::vector<std::string> errors(conditions.size());
    parallel_for(conditions.size(), options.workers, [&](std::size_t i) {
        try {
            solved[i] = solve_level(potential, ctx, conditions[i], options.tol);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (!solved[i]) {
            scan.failures.push_back({conditions[i].n_r, conditions[i].l, errors[i]});
            continue;
        }
        scan.entries.push_back(*solved[i]);
        if (options.include_antiparticle) {
            SpectrumEntry mirror = *solved[i];
            mirror.branch = Branch::antiparticle;
            mirror.energy = -mirror.energy;
            scan.entries.push_back(mirror);
        }
    }
    std::stable_sort(scan.entries.begin(), scan.entries.end(),
                     [](const SpectrumEntry& a, const SpectrumEntry& b) {
                         return std::tie(a.energy, a.n_r, a.l, a.branch)
                                < std::tie(b.energy, b.n_r, b.l, b.branch);
                     });
    return scan;
}

SpectrumScan scan_spectrum(const RadialPotential& potential, const PhysicalContext& ctx,
                           int n_r_max, int l_max, const ScanOptions& options)
{
    if (n_r_max < 0 || l_max < 0) {
        throw DomainError("scan_spectrum needs n_r_max, l_max >= 0");
    }
    return scan_spectrum(potential, ctx, LevelRange{0, n_r_max, 0, l_max}, options);
}

} // namespace rwkb
