#pragma once

#include "rwkb/context.hpp"
#include "rwkb/potential.hpp"

#include <string>
#include <vector>

namespace rwkb {

/// Quantum condition I_r = (n_r + maslov_m / 4) hbar for one radial libration.
///
/// maslov_m is the order sum of the conjugate points met on a closed orbit; two
/// simple turning points give 2.
struct QuantumCondition {
    int n_r = 0;
    int l = 0;
    int maslov_m = 2;

    double target_in_hbar() const noexcept { return n_r + 0.25 * maslov_m; }
};

/// Throws DomainError for negative quantum numbers or Maslov index.
void validate(const QuantumCondition& condition);

enum class Branch { particle, antiparticle };

struct SpectrumEntry {
    int n_r = 0;
    int l = 0;
    int maslov_m = 2;
    double energy = 0.0;
    /// E - m c^2 of the particle solution, resolved below the ulp of `energy`.
    double kinetic = 0.0;
    Branch branch = Branch::particle;
    /// |I_r(E) - target| in units of hbar.
    double residual = 0.0;
};

/// Solves the quantum condition for E on the particle branch.
///
/// The bracket depends on the potential class: (0, m c^2) for Coulomb, and
/// upward from m c^2 + min V for confining wells. Below the bottom of the well
/// I_r is taken as zero, so maslov_m = 0 with n_r = 0 lands on the bottom of the
/// effective well. The antiparticle branch is the mirror image -E of the
/// particle solution.
///
/// Throws NoRootError if the target action is never reached and AccuracyError if
/// the residual stays above Tolerances::root_abs.
SpectrumEntry solve_level(const RadialPotential& potential, const PhysicalContext& ctx,
                          const QuantumCondition& condition, const Tolerances& tol = {},
                          Branch branch = Branch::particle);

/// Closed-form relativistic Coulomb level
///     E = m c^2 [1 + alpha^2 / (n_r + m/4 + sqrt((l + 1/2)^2 - alpha^2))^2]^{-1/2},
/// i.e. the exact Coulomb action inverted at the target (n_r + m/4) hbar.
/// Negated on the antiparticle branch. Throws DomainError if l + 1/2 <= alpha.
double coulomb_energy(const PhysicalContext& ctx, int n_r, int l, Branch branch = Branch::particle,
                      int maslov_m = 2);
/// Particle-branch Coulomb level as an offset from m c^2, without cancellation.
Energy coulomb_level(const PhysicalContext& ctx, int n_r, int l, int maslov_m = 2);

struct LevelRange {
    int n_r_min = 0;
    int n_r_max = 0;
    int l_min = 0;
    int l_max = 0;

    bool empty() const noexcept { return n_r_min > n_r_max || l_min > l_max; }
};

struct LevelFailure {
    int n_r = 0;
    int l = 0;
    std::string message;
};

struct SpectrumScan {
    /// Sorted by energy, ties broken by (n_r, l, branch).
    std::vector<SpectrumEntry> entries;
    /// In (n_r, l) order.
    std::vector<LevelFailure> failures;
};

struct ScanOptions {
    Tolerances tol{};
    int maslov_m = 2;
    bool include_antiparticle = false;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// Solves every level of the range concurrently. Per-level errors are collected,
/// not thrown.
SpectrumScan scan_spectrum(const RadialPotential& potential, const PhysicalContext& ctx,
                           const LevelRange& range, const ScanOptions& options = {});

SpectrumScan scan_spectrum(const RadialPotential& potential, const PhysicalContext& ctx,
                           int n_r_max, int l_max, const ScanOptions& options = {});

/// Runs `task(i)` for i in [0, count) on up to `workers` threads.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task);

} // namespace rwkb

#include "rwkb/detail/parallel.hpp"
