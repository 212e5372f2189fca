#include "doctest.h"

#include "rwkb/error.hpp"
#include "rwkb/kinematics.hpp"
#include "rwkb/wavefunction.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace rwkb;

namespace {

constexpr double alpha_h = 0.0072974;

SemiclassicalSolution coulomb_state(int n_r, int l, std::size_t grid_size = 2001)
{
    const PhysicalContext ctx = hydrogen_context(alpha_h);
    const auto p = RadialPotential::coulomb();
    return build_wavefunction(p, ctx, solve_level(p, ctx, {n_r, l}), grid_size);
}

double trapezoid_norm(const SemiclassicalSolution& s)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < s.grid.size(); ++i) {
        sum += 0.5 * (s.grid[i + 1] - s.grid[i])
               * (s.value[i] * s.value[i] + s.value[i + 1] * s.value[i + 1]);
    }
    return sum;
}

} // namespace

TEST_CASE("branch superposition reduces to a sine")
{
    using namespace std::complex_literals;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> theta(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = theta(rng);
        const std::complex<double> expected =
            2.0 * std::exp(-1i * (0.25 * std::numbers::pi)) * std::sin(t + 0.25 * std::numbers::pi);
        CHECK(std::abs(branch_superposition(t) - expected) <= 1e-14);
    }
}

TEST_CASE("grid, normalisation and sign convention")
{
    const SemiclassicalSolution s = coulomb_state(2, 1, 500);
    REQUIRE(s.grid.size() == 500);
    const double eps = turning_point_margin * s.region.width();
    CHECK(s.grid.front() == doctest::Approx(s.region.r_a + eps).epsilon(1e-14));
    CHECK(s.grid.back() == doctest::Approx(s.region.r_b - eps).epsilon(1e-14));
    for (std::size_t i = 1; i < s.grid.size(); ++i) {
        CHECK(s.grid[i] > s.grid[i - 1]);
    }
    CHECK(trapezoid_norm(s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.value.front() > 0.0);
    CHECK(s.phase.back() > 0.0);
    CHECK(s.phase.front() > s.phase.back());
}

TEST_CASE("value is the amplitude times the shifted sine")
{
    const SemiclassicalSolution s = coulomb_state(3, 0);
    const bool same_sign =
        (s.value.front() > 0.0) == (std::sin(s.phase.front() + 0.25 * std::numbers::pi) > 0.0);
    const double sign = same_sign ? 1.0 : -1.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        const double expected = sign * s.amplitude[i] * std::sin(s.phase[i] + 0.25 * std::numbers::pi);
        CHECK(s.value[i] == doctest::Approx(expected).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("phase at the inner end is the full half-period action")
{
    // int_{r_a}^{r_b} p dr / hbar = pi I_r = pi (n_r + 1/2), up to the eps margins
    for (int n_r : {0, 2, 4}) {
        const SemiclassicalSolution s = coulomb_state(n_r, 1);
        CHECK(s.phase.front() == doctest::Approx(std::numbers::pi * (n_r + 0.5)).epsilon(1e-4));
        // near r_b the phase is small and the argument is dominated by pi/4
        CHECK(s.phase.back() < 1e-4);
    }
}

TEST_CASE("amplitude squared times momentum is constant")
{
    const PhysicalContext ctx = hydrogen_context(alpha_h);
    const auto check = [&](const RadialPotential& p, const PhysicalContext& c, int n_r, int l) {
        const SpectrumEntry e = solve_level(p, c, {n_r, l});
        const SemiclassicalSolution s = build_wavefunction(p, c, e);
        const double L = angular_action(c, l);
        const double reference =
            s.amplitude.front() * s.amplitude.front()
            * radial_momentum(p, c, Energy{e.kinetic}, L, s.grid.front());
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            const double v =
                s.amplitude[i] * s.amplitude[i] * radial_momentum(p, c, Energy{e.kinetic}, L, s.grid[i]);
            CHECK(v == doctest::Approx(reference).epsilon(1e-10));
        }
    };
    check(RadialPotential::coulomb(), ctx, 1, 0);
    check(RadialPotential::harmonic(1e-3), natural_units(), 3, 1);
    check(RadialPotential::linear(1e-3), natural_units(), 2, 2);
}

TEST_CASE("node counts equal n_r")
{
    const PhysicalContext ctx = natural_units();
    for (int n_r = 0; n_r <= 5; ++n_r) {
        for (int l : {0, 2}) {
            CHECK(count_sign_changes(coulomb_state(n_r, l).value) == n_r);
            const auto h = RadialPotential::harmonic(1e-3);
            const auto s = build_wavefunction(h, ctx, solve_level(h, ctx, {n_r, l}));
            CHECK(count_sign_changes(s.value) == n_r);
        }
    }
}

TEST_CASE("count sign changes")
{
    CHECK(count_sign_changes({}) == 0);
    CHECK(count_sign_changes({1.0, 2.0, 3.0}) == 0);
    CHECK(count_sign_changes({1.0, -2.0, 3.0}) == 2);
    CHECK(count_sign_changes({1.0, 0.0, -1.0}) == 1);
    CHECK(count_sign_changes({1.0, 0.0, 1.0}) == 0);
}

TEST_CASE("a wrong energy is caught by the node count")
{
    const PhysicalContext ctx = hydrogen_context(alpha_h);
    const auto p = RadialPotential::coulomb();
    SpectrumEntry e = solve_level(p, ctx, {2, 0});
    e.n_r = 1;
    CHECK_THROWS_AS(build_wavefunction(p, ctx, e), NodeCountError);
}

TEST_CASE("wavefunction argument checks")
{
    const PhysicalContext ctx = hydrogen_context(alpha_h);
    const auto p = RadialPotential::coulomb();
    const SpectrumEntry e = solve_level(p, ctx, {0, 0});
    CHECK_THROWS_AS(build_wavefunction(p, ctx, e, 15), DomainError);
    CHECK_NOTHROW(build_wavefunction(p, ctx, e, 16));
    const SpectrumEntry anti = solve_level(p, ctx, {0, 0}, {}, Branch::antiparticle);
    CHECK_THROWS_AS(build_wavefunction(p, ctx, anti), DomainError);
}

TEST_CASE("overlap with itself is one")
{
    const SemiclassicalSolution s = coulomb_state(1, 1);
    OracleSolution same;
    same.grid = s.grid;
    same.u = s.value;
    CHECK(overlap_with_oracle(s, same) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Coulomb overlap with the exact state away from the turning points")
{
    const PhysicalContext ctx = hydrogen_context(alpha_h);
    const auto p = RadialPotential::coulomb();
    const SemiclassicalSolution s = coulomb_state(0, 1);
    const OracleSolution exact = solve_exact(p, ctx, 0, 1);
    const TurningZones airy = airy_lengths(p, ctx, s.region);
    CHECK(airy.inner > 0.0);
    CHECK(airy.outer > airy.inner);
    CHECK(overlap_with_oracle(s, exact, airy) >= 0.98);
    // over the full grid the Airy zones, a third of this orbit, pull it down
    const double full = overlap_with_oracle(s, exact);
    CHECK(full >= 0.95);
    CHECK(full < overlap_with_oracle(s, exact, airy));
}

TEST_CASE("distinct exact eigenstates are nearly orthogonal")
{
    const PhysicalContext ctx = hydrogen_context(alpha_h);
    const auto p = RadialPotential::coulomb();
    const OracleSolution excited = solve_exact(p, ctx, 1, 0);
    const OracleSolution ground = solve_exact(p, ctx, 0, 0);
    // present the ground state on its own mesh
    SemiclassicalSolution wrapped;
    wrapped.grid = ground.grid;
    wrapped.value = ground.u;
    wrapped.region.r_a = ground.grid.front();
    wrapped.region.r_b = ground.grid.back();
    CHECK(overlap_with_oracle(wrapped, excited) <= 0.1);
    CHECK(overlap_with_oracle(wrapped, ground) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlap grid checks")
{
    const SemiclassicalSolution s = coulomb_state(0, 0);
    OracleSolution short_mesh;
    short_mesh.grid = {s.grid.front(), 0.5 * (s.grid.front() + s.grid.back())};
    short_mesh.u = {1.0, 1.0};
    CHECK_THROWS_AS(overlap_with_oracle(s, short_mesh), GridMismatchError);
    OracleSolution same;
    same.grid = s.grid;
    same.u = s.value;
    CHECK_THROWS_AS(overlap_with_oracle(s, same, {s.region.width(), 0.0}), GridMismatchError);
}
