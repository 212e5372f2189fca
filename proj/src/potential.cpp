#include "rwkb/potential.hpp"

#include "rwkb/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace rwkb {

namespace {

// Fritsch-Carlson slopes: zero at local extrema and on flat segments, weighted
// harmonic mean of the adjacent secants otherwise. One-sided secants at the ends.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        secant[k] = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    }
    std::vector<double> slope(n, 0.0);
    slope.front() = secant.front();
    slope.back() = secant.back();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double left = secant[k - 1];
        const double right = secant[k];
        if (left * right <= 0.0) {
            continue;
        }
        const double h_left = x[k] - x[k - 1];
        const double h_right = x[k + 1] - x[k];
        const double w1 = 2.0 * h_right + h_left;
        const double w2 = h_right + 2.0 * h_left;
        slope[k] = (w1 + w2) / (w1 / left + w2 / right);
    }
    return slope;
}

double hermite(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& slope, double r)
{
    auto upper = std::upper_bound(x.begin(), x.end(), r);
    std::size_t k = upper == x.end() ? x.size() - 2
                                     : static_cast<std::size_t>(upper - x.begin()) - 1;
    const double h = x[k + 1] - x[k];
    const double t = (r - x[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * y[k] + (t3 - 2.0 * t2 + t) * h * slope[k]
           + (-2.0 * t3 + 3.0 * t2) * y[k + 1] + (t3 - t2) * h * slope[k + 1];
}

} // namespace

std::string_view to_string(PotentialKind kind)
{
    switch (kind) {
    case PotentialKind::coulomb:
        return "coulomb";
    case PotentialKind::harmonic:
        return "harmonic";
    case PotentialKind::linear:
        return "linear";
    case PotentialKind::custom_table:
        return "custom-table";
    }
    return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view name)
{
    if (name == "coulomb") {
        return PotentialKind::coulomb;
    }
    if (name == "harmonic") {
        return PotentialKind::harmonic;
    }
    if (name == "linear") {
        return PotentialKind::linear;
    }
    if (name == "custom-table") {
        return PotentialKind::custom_table;
    }
    throw ConfigError("unknown potential kind '" + std::string(name) + "'");
}

RadialPotential RadialPotential::coulomb()
{
    return RadialPotential(PotentialKind::coulomb, 0.0);
}

RadialPotential RadialPotential::harmonic(double omega)
{
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("harmonic potential requires omega > 0");
    }
    return RadialPotential(PotentialKind::harmonic, omega);
}

RadialPotential RadialPotential::linear(double slope)
{
    if (!(slope > 0.0) || !std::isfinite(slope)) {
        throw DomainError("linear potential requires slope > 0");
    }
    return RadialPotential(PotentialKind::linear, slope);
}

RadialPotential RadialPotential::table(std::vector<double> radii, std::vector<double> values)
{
    if (radii.size() != values.size()) {
        throw DomainError("potential table: radius and value columns differ in length");
    }
    if (radii.size() < 4) {
        throw DomainError("potential table needs at least four samples");
    }
    if (!(radii.front() > 0.0)) {
        throw DomainError("potential table radii must be positive");
    }
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] > radii[i - 1])) {
            throw DomainError("potential table radii must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DomainError("potential table values must be finite");
        }
    }

    RadialPotential p(PotentialKind::custom_table, 0.0);
    p.slopes_ = monotone_slopes(radii, values);
    p.radii_ = std::move(radii);
    p.values_ = std::move(values);
    return p;
}

BoundClass RadialPotential::bound_class() const noexcept
{
    return kind_ == PotentialKind::coulomb ? BoundClass::coulomb_like : BoundClass::confining;
}

double RadialPotential::domain_min() const noexcept
{
    return kind_ == PotentialKind::custom_table ? radii_.front() : 0.0;
}

double RadialPotential::domain_max() const noexcept
{
    return kind_ == PotentialKind::custom_table ? radii_.back()
                                                : std::numeric_limits<double>::infinity();
}

double RadialPotential::minimum_value() const noexcept
{
    switch (kind_) {
    case PotentialKind::coulomb:
        return -std::numeric_limits<double>::infinity();
    case PotentialKind::harmonic:
    case PotentialKind::linear:
        return 0.0;
    case PotentialKind::custom_table: {
        double vmin = values_.front();
        for (double v : values_) {
            vmin = std::min(vmin, v);
        }
        return vmin;
    }
    }
    return 0.0;
}

double RadialPotential::operator()(const PhysicalContext& ctx, double r) const
{
    switch (kind_) {
    case PotentialKind::coulomb:
        return -ctx.coulomb_strength() / r;
    case PotentialKind::harmonic:
        return 0.5 * ctx.mass * strength_ * strength_ * r * r;
    case PotentialKind::linear:
        return strength_ * r;
    case PotentialKind::custom_table:
        if (r < radii_.front() || r > radii_.back()) {
            std::ostringstream msg;
            msg << "radius " << r << " outside potential table range [" << radii_.front() << ", "
                << radii_.back() << "]";
            throw ExtrapolationError(msg.str());
        }
        return hermite(radii_, values_, slopes_, r);
    }
    return 0.0;
}

double evaluate(const RadialPotential& potential, const PhysicalContext& ctx, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("potential evaluated at r <= 0");
    }
    return potential(ctx, r);
}

RadialPotential parse_potential_table(std::istream& in)
{
    std::vector<double> radii;
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        double r = 0.0;
        double v = 0.0;
        if (!(fields >> r)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw ConfigError("potential table: expected two numbers", line_no, 1);
        }
        if (!(fields >> v)) {
            throw ConfigError("potential table: missing value column", line_no, 1);
        }
        std::string rest;
        if (fields >> rest) {
            throw ConfigError("potential table: trailing text '" + rest + "'", line_no, 1);
        }
        radii.push_back(r);
        values.push_back(v);
    }
    try {
        return RadialPotential::table(std::move(radii), std::move(values));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

RadialPotential load_potential_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open potential table '" + path + "'");
    }
    return parse_potential_table(in);
}

double angular_action(const PhysicalContext& ctx, int l)
{
    if (l < 0) {
        throw DomainError("angular quantum number must be >= 0");
    }
    return (l + 0.5) * ctx.hbar_c();
}

EffectiveRadicand::EffectiveRadicand(RadialPotential potential, PhysicalContext ctx, Energy energy,
                                     double angular)
    : potential_(std::move(potential)), ctx_(ctx), kinetic_(energy.kinetic), angular_(angular)
{
}

double EffectiveRadicand::operator()(double r) const
{
    const double rest = ctx_.rest_energy();
    const double offset = kinetic_ - evaluate(potential_, ctx_, r); // E - V - m c^2
    const double kinetic = offset + rest;
    const double centrifugal = (angular_ / r) * (angular_ / r);
    if (kinetic >= 0.0) {
        return offset * (kinetic + rest) - centrifugal;
    }
    return -kinetic * kinetic - rest * rest - centrifugal;
}

EffectiveRadicand effective_radicand(const RadialPotential& potential, const PhysicalContext& ctx,
                                     Energy energy, double angular)
{
    if (!(angular >= 0.0)) {
        throw DomainError("angular action must be >= 0");
    }
    return EffectiveRadicand(potential, ctx, energy, angular);
}

EffectiveRadicand effective_radicand(const RadialPotential& potential, const PhysicalContext& ctx,
                                     double energy, double angular)
{
    return effective_radicand(potential, ctx, Energy::total(ctx, energy), angular);
}

} // namespace rwkb
