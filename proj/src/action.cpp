#include "rwkb/action.hpp"

#include "rwkb/error.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace rwkb {

namespace {

constexpr int max_subdivision = 1 << 12;

using Rule = boost::math::quadrature::gauss<double, 20>;

// Panel breakpoints on [0, pi/2], halving towards theta = 0 down to about half the
// distance of the nearest complex singularity of the integrand, which sits near
// theta ~ i sqrt(r_a / (r_b - r_a)) when 1/r terms are present.
std::vector<double> graded_breakpoints(double pole_distance)
{
    std::vector<double> points{0.5 * std::numbers::pi};
    while (points.back() > 0.5 * pole_distance && points.size() < 64) {
        points.push_back(0.5 * points.back());
    }
    points.push_back(0.0);
    std::reverse(points.begin(), points.end());
    return points;
}

template <class F>
double composite_gauss(const F& f, const std::vector<double>& breakpoints, int subdivision)
{
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const double a = breakpoints[k];
        const double h = (breakpoints[k + 1] - a) / subdivision;
        for (int j = 0; j < subdivision; ++j) {
            sum += Rule::integrate(f, a + j * h, a + (j + 1) * h);
        }
    }
    return sum;
}

} // namespace

namespace {

// (1/pi) p_r dr/dtheta / hbar under r = r_a + (r_b - r_a) sin^2(theta): one-way
// integral times 2 (both momentum branches), over 2 pi hbar.
class ActionIntegrand {
public:
    ActionIntegrand(const RadialPotential& potential, const PhysicalContext& ctx,
                    const ClassicalRegion& region)
        : radicand_(effective_radicand(potential, ctx, region.energy, region.angular)),
          r_a_(region.r_a), width_(region.width()),
          scale_(1.0 / (std::numbers::pi * ctx.c * ctx.hbar)),
          breakpoints_(graded_breakpoints(std::sqrt(region.r_a / region.width())))
    {
        if (!(region.r_a > 0.0) || !(region.r_a < region.r_b)) {
            throw DomainError("radial action needs 0 < r_a < r_b");
        }
    }

    double operator()(double theta) const
    {
        const double s = std::sin(theta);
        const double value = radicand_(r_a_ + width_ * s * s);
        const double momentum = value > 0.0 ? std::sqrt(value) : 0.0;
        return momentum * width_ * std::sin(2.0 * theta) * scale_;
    }

    double integrate(int subdivision) const
    {
        return composite_gauss(*this, breakpoints_, subdivision);
    }

private:
    EffectiveRadicand radicand_;
    double r_a_;
    double width_;
    double scale_;
    std::vector<double> breakpoints_;
};

} // namespace

ActionValue radial_action(const RadialPotential& potential, const PhysicalContext& ctx,
                          const ClassicalRegion& region, const Tolerances& tol)
{
    validate(ctx);
    validate(tol);
    const ActionIntegrand integrand(potential, ctx, region);
    double coarse = integrand.integrate(1);
    for (int subdivision = 2; subdivision <= max_subdivision; subdivision *= 2) {
        const double fine = integrand.integrate(subdivision);
        const double error = std::abs(fine - coarse);
        if (error <= tol.quadrature_rel * std::max(std::abs(fine), 1.0)) {
            ActionValue result;
            result.in_hbar = fine;
            result.estimated_error = error;
            result.region = region;
            return result;
        }
        coarse = fine;
    }
    std::ostringstream msg;
    msg << "action quadrature did not reach relative tolerance " << tol.quadrature_rel
        << " at E = " << region.energy.value(ctx);
    throw AccuracyError(msg.str());
}

double radial_action_at_resolution(const RadialPotential& potential, const PhysicalContext& ctx,
                                   const ClassicalRegion& region, int subdivision)
{
    validate(ctx);
    if (subdivision < 1) {
        throw DomainError("subdivision must be at least 1");
    }
    return ActionIntegrand(potential, ctx, region).integrate(subdivision);
}

ActionValue closed_form_coulomb_action(const PhysicalContext& ctx, double energy, int l)
{
    return closed_form_coulomb_action(ctx, Energy::total(ctx, energy), l);
}

ActionValue closed_form_coulomb_action(const PhysicalContext& ctx, Energy total, int l)
{
    validate(ctx);
    const double rest = ctx.rest_energy();
    const double energy = total.value(ctx);
    const double kinetic = total.kinetic;
    if (!(kinetic > -rest) || !(kinetic < 0.0)) {
        throw DomainError("closed-form Coulomb action requires 0 < E < m c^2");
    }
    if (l < 0) {
        throw DomainError("angular quantum number must be >= 0");
    }
    const double alpha = ctx.coupling;
    const double lang = l + 0.5;
    if (!(lang > alpha)) {
        throw DomainError("closed-form Coulomb action requires l + 1/2 > alpha");
    }

    ActionValue result;
    result.in_hbar = energy * alpha / std::sqrt(-kinetic * (kinetic + 2.0 * rest))
                     - std::sqrt((lang - alpha) * (lang + alpha));
    result.estimated_error = 0.0;
    if (alpha > 0.0) {
        try {
            result.region = find_classical_region(RadialPotential::coulomb(), ctx, total,
                                                  angular_action(ctx, l));
        } catch (const NoBoundRegionError&) {
            result.region.reset();
        }
    }
    return result;
}

} // namespace rwkb
