#include "rwkb/context.hpp"

#include "rwkb/error.hpp"

#include <cmath>

namespace rwkb {

void validate(const PhysicalContext& ctx)
{
    if (!(ctx.mass > 0.0) || !(ctx.c > 0.0) || !(ctx.hbar > 0.0)) {
        throw DomainError("physical context requires mass, c and hbar > 0");
    }
    if (!(ctx.coupling >= 0.0) || !std::isfinite(ctx.coupling)) {
        throw DomainError("physical context requires a finite coupling >= 0");
    }
}

void validate(const Tolerances& tol)
{
    if (!(tol.quadrature_rel > 0.0) || !(tol.root_abs > 0.0)) {
        throw DomainError("tolerances must be strictly positive");
    }
    if (!(tol.bracket_expansion > 1.0)) {
        throw DomainError("bracket_expansion must exceed 1");
    }
}

PhysicalContext natural_units()
{
    return PhysicalContext{};
}

PhysicalContext hydrogen_context(double alpha)
{
    PhysicalContext ctx;
    ctx.coupling = alpha;
    validate(ctx);
    return ctx;
}

} // namespace rwkb
