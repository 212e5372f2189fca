#include "doctest.h"

#include "rwkb/error.hpp"
#include "rwkb/potential.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace rwkb;

TEST_CASE("evaluate the analytic potentials")
{
    PhysicalContext ctx = natural_units();
    ctx.coupling = 0.1;
    CHECK(evaluate(RadialPotential::coulomb(), ctx, 1.0) == doctest::Approx(-0.1));
    CHECK(evaluate(RadialPotential::harmonic(2.0), ctx, 3.0) == doctest::Approx(18.0));
    CHECK(evaluate(RadialPotential::linear(0.5), ctx, 4.0) == doctest::Approx(2.0));
}

TEST_CASE("evaluate rejects non-positive radii")
{
    const PhysicalContext ctx = hydrogen_context();
    CHECK_THROWS_AS(evaluate(RadialPotential::coulomb(), ctx, 0.0), DomainError);
    CHECK_THROWS_AS(evaluate(RadialPotential::harmonic(1.0), ctx, -1.0), DomainError);
    CHECK_THROWS_AS(evaluate(RadialPotential::linear(1.0), ctx, 0.0), DomainError);
}

TEST_CASE("potential metadata")
{
    CHECK(RadialPotential::coulomb().origin_singularity());
    CHECK_FALSE(RadialPotential::harmonic(1.0).origin_singularity());
    CHECK_FALSE(RadialPotential::linear(1.0).origin_singularity());
    CHECK(RadialPotential::coulomb().bound_class() == BoundClass::coulomb_like);
    CHECK(RadialPotential::harmonic(1.0).bound_class() == BoundClass::confining);
    CHECK(RadialPotential::linear(1.0).bound_class() == BoundClass::confining);
    CHECK(potential_kind_from_string("custom-table") == PotentialKind::custom_table);
    CHECK(to_string(PotentialKind::harmonic) == "harmonic");
    CHECK_THROWS_AS(potential_kind_from_string("yukawa"), ConfigError);
}

TEST_CASE("analytic potentials are monotone increasing")
{
    PhysicalContext ctx = natural_units();
    ctx.coupling = 0.3;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_r(-4.0, 4.0);
    for (const auto& p : {RadialPotential::coulomb(), RadialPotential::harmonic(0.7),
                          RadialPotential::linear(0.2)}) {
        for (int i = 0; i < 200; ++i) {
            double a = std::pow(10.0, log_r(rng));
            double b = std::pow(10.0, log_r(rng));
            if (a > b) {
                std::swap(a, b);
            }
            if (a < b) {
                CHECK(evaluate(p, ctx, a) < evaluate(p, ctx, b));
            }
        }
    }
    CHECK(evaluate(RadialPotential::coulomb(), ctx, 1e6) < 0.0);
}

TEST_CASE("table interpolation is monotone and exact at the nodes")
{
    const PhysicalContext ctx = natural_units();
    const std::vector<double> r{0.5, 1.0, 1.5, 2.0, 4.0, 8.0};
    const std::vector<double> v{3.0, 0.0, 0.0, 0.2, 5.0, 5.1};
    const auto p = RadialPotential::table(r, v);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(evaluate(p, ctx, r[i]) == doctest::Approx(v[i]).epsilon(1e-15));
    }
    // no overshoot: each interval stays inside the range of its end values
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double lo = std::min(v[i], v[i + 1]);
        const double hi = std::max(v[i], v[i + 1]);
        double previous = v[i];
        for (int k = 1; k < 200; ++k) {
            const double x = r[i] + (r[i + 1] - r[i]) * k / 200.0;
            const double y = evaluate(p, ctx, x);
            CHECK(y >= lo);
            CHECK(y <= hi);
            CHECK((v[i + 1] >= v[i] ? y >= previous : y <= previous));
            previous = y;
        }
    }
    CHECK(evaluate(p, ctx, 1.25) == 0.0);
    CHECK(p.minimum_value() == 0.0);
    CHECK(p.domain_min() == 0.5);
    CHECK(p.domain_max() == 8.0);
}

TEST_CASE("table reproduces a cubic-free linear profile")
{
    const PhysicalContext ctx = natural_units();
    const auto p = RadialPotential::table({1.0, 2.0, 3.0, 4.0, 5.0}, {0.0, 1.0, 2.0, 3.0, 4.0});
    for (double x = 1.0; x <= 5.0; x += 0.125) {
        CHECK(evaluate(p, ctx, x) == doctest::Approx(x - 1.0).epsilon(1e-14));
    }
}

TEST_CASE("table errors")
{
    const PhysicalContext ctx = natural_units();
    CHECK_THROWS_AS(RadialPotential::table({1.0, 2.0, 3.0}, {0.0, 1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(RadialPotential::table({1.0, 2.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 3.0}),
                    DomainError);
    CHECK_THROWS_AS(RadialPotential::table({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 3.0}),
                    DomainError);
    const auto p = RadialPotential::table({1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 2.0, 3.0});
    CHECK_THROWS_AS(evaluate(p, ctx, 0.5), ExtrapolationError);
    CHECK_THROWS_AS(evaluate(p, ctx, 4.5), ExtrapolationError);
}

TEST_CASE("table text format")
{
    std::istringstream good("# r V\n1 0\n2 1   # inline\n\n3 4\n4 9\n");
    const auto p = parse_potential_table(good);
    CHECK(p.kind() == PotentialKind::custom_table);
    CHECK(p.table_radii().size() == 4);
    CHECK(p.table_values()[2] == 4.0);

    std::istringstream bad("1 0\n2 x\n3 4\n4 9\n");
    try {
        parse_potential_table(bad);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(load_potential_table("/nonexistent/table.txt"), ConfigError);
}

TEST_CASE("effective radicand examples")
{
    SUBCASE("free particle at rest energy")
    {
        const PhysicalContext ctx = natural_units();
        const auto f = effective_radicand(RadialPotential::coulomb(), ctx, 1.0, 0.0);
        for (double r : {1e-3, 0.5, 1.0, 10.0, 1e5}) {
            CHECK(f(r) == 0.0);
        }
    }
    SUBCASE("Coulomb s-wave at the ground state has exactly two roots")
    {
        const PhysicalContext ctx = hydrogen_context(0.0072974);
        const auto f = effective_radicand(RadialPotential::coulomb(), ctx, 0.999973372204059,
                                          angular_action(ctx, 0));
        int changes = 0;
        double previous = f(1e-3);
        for (double r = 1e-3; r < 1e6; r *= 1.01) {
            const double v = f(r);
            changes += (v > 0.0) != (previous > 0.0);
            previous = v;
        }
        CHECK(changes == 2);
    }
    SUBCASE("Coulomb s-wave below the bottom of the effective well has no roots")
    {
        // bottom at E = sqrt(1/4 - alpha^2) / (1/2) = 0.99989349...
        const PhysicalContext ctx = hydrogen_context(0.0072974);
        const auto f = effective_radicand(RadialPotential::coulomb(), ctx, 0.999893,
                                          angular_action(ctx, 0));
        for (double r = 1e-3; r < 1e6; r *= 1.01) {
            CHECK(f(r) < 0.0);
        }
    }
    SUBCASE("harmonic well is positive on a single interval")
    {
        const PhysicalContext ctx = natural_units();
        const auto f = effective_radicand(RadialPotential::harmonic(1.0), ctx, 2.5,
                                          angular_action(ctx, 1));
        CHECK(f(1e-3) < 0.0);
        CHECK(f(1e3) < 0.0);
        int intervals = 0;
        bool inside = false;
        for (double r = 1e-3; r < 1e3; r *= 1.001) {
            const bool positive = f(r) > 0.0;
            intervals += positive && !inside;
            inside = positive;
        }
        CHECK(intervals == 1);
    }
    SUBCASE("radicand formula")
    {
        PhysicalContext ctx = natural_units();
        ctx.coupling = 0.2;
        const double L = angular_action(ctx, 2);
        const auto f = effective_radicand(RadialPotential::coulomb(), ctx, 0.9, L);
        for (double r : {0.5, 3.0, 40.0}) {
            const double k = 0.9 + 0.2 / r;
            CHECK(f(r) == doctest::Approx(k * k - 1.0 - L * L / (r * r)).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(effective_radicand(RadialPotential::coulomb(), natural_units(), 0.9, -1.0),
                    DomainError);
}

TEST_CASE("radicand asymptotics")
{
    const PhysicalContext ctx = hydrogen_context(0.0072974);
    const double L = angular_action(ctx, 1);
    for (const auto& p : {RadialPotential::harmonic(1e-2), RadialPotential::linear(1e-2)}) {
        const auto f = effective_radicand(p, ctx, 1.1, L);
        CHECK(f(1e-6) < -1e10);
        CHECK(f(1e-8) < f(1e-6));
        CHECK(f(1e6) < 0.0);
        CHECK(f(1e7) < f(1e6));
    }
    const double e = 0.9999;
    const auto coulomb = effective_radicand(RadialPotential::coulomb(), ctx, e, L);
    CHECK(coulomb(1e12) == doctest::Approx(e * e - 1.0).epsilon(1e-6));
}

TEST_CASE("Langer angular action")
{
    PhysicalContext ctx = natural_units();
    ctx.hbar = 2.0;
    ctx.c = 3.0;
    CHECK(angular_action(ctx, 0) == doctest::Approx(3.0));
    CHECK(angular_action(ctx, 2) == doctest::Approx(15.0));
    CHECK_THROWS_AS(angular_action(ctx, -1), DomainError);
}
