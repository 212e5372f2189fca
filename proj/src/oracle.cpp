#include "rwkb/oracle.hpp"

#include "rwkb/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace rwkb {

namespace {

constexpr double rescale_above = 1e150;
constexpr double tail_exponent = 40.0;
constexpr double coulomb_decay_lengths = 15.0;
constexpr double defect_tolerance = 1e-10;

// Numerov propagation of w'' + g(x) w = 0 on a uniform mesh in x = ln r,
// with u = sqrt(r) w.
class Shooter {
public:
    Shooter(const RadialPotential& potential, const PhysicalContext& ctx, int l, double r_min,
            double r_max, double step)
        : potential_(potential), ctx_(ctx), l_(l)
    {
        const double x0 = std::log(r_min);
        const double x1 = std::log(r_max);
        const auto points = static_cast<std::size_t>(std::ceil((x1 - x0) / step)) + 1;
        if (points < 16) {
            throw DomainError("oracle grid has fewer than 16 points");
        }
        h_ = (x1 - x0) / static_cast<double>(points - 1);
        radii_.resize(points);
        potential_values_.resize(points);
        for (std::size_t i = 0; i < points; ++i) {
            radii_[i] = std::exp(x0 + h_ * static_cast<double>(i));
            potential_values_[i] = evaluate(potential_, ctx_, radii_[i]);
        }
        radii_.back() = r_max;
        g_.resize(points);
        f_.resize(points);
    }

    std::size_t size() const noexcept { return radii_.size(); }
    const std::vector<double>& radii() const noexcept { return radii_; }
    double step() const noexcept { return h_; }

    // kinetic = E - m c^2
    void set_energy(double kinetic)
    {
        kinetic_ = kinetic;
        const double rest = ctx_.rest_energy();
        const double hc2 = ctx_.hbar_c() * ctx_.hbar_c();
        const double centrifugal = l_ * (l_ + 1.0);
        for (std::size_t i = 0; i < size(); ++i) {
            const double r = radii_[i];
            const double offset = kinetic - potential_values_[i]; // E - V - m c^2
            g_[i] = r * r * offset * (offset + 2.0 * rest) / hc2 - centrifugal - 0.25;
            f_[i] = 1.0 + h_ * h_ * g_[i] / 12.0;
        }
    }

    // Q r^2 on the particle branch (negative beyond a confining wall's Klein edge).
    double particle_q_r2(std::size_t i) const
    {
        const double rest = ctx_.rest_energy();
        const double r = radii_[i];
        const double k = kinetic_ + rest - potential_values_[i];
        const double hc = ctx_.hbar_c();
        return r * r * (k * std::abs(k) - rest * rest) / (hc * hc) - l_ * (l_ + 1.0);
    }

    // Last index of the classically allowed region; 0 if there is none.
    std::size_t outer_turning_index() const
    {
        std::size_t last = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (particle_q_r2(i) > 0.0) {
                last = i;
            }
        }
        return last;
    }

    // Outward solution from the regular series at the origin, up to index `last`.
    void integrate_outward(std::vector<double>& w, std::size_t last, int* nodes = nullptr) const
    {
        w.assign(last + 1, 0.0);
        const double rest = ctx_.rest_energy();
        double exponent = l_ + 1.0; // u ~ r^s
        double linear = 0.0;        // u ~ r^s (1 + linear r)
        if (potential_.kind() == PotentialKind::coulomb) {
            const double alpha = ctx_.coupling;
            const double lang = l_ + 0.5;
            exponent = 0.5 + std::sqrt((lang - alpha) * (lang + alpha));
            linear = -(kinetic_ + rest) * alpha / (exponent * ctx_.hbar_c());
        }
        for (std::size_t i = 0; i < 2 && i <= last; ++i) {
            const double r = radii_[i];
            w[i] = std::pow(r / radii_[0], exponent - 0.5) * (1.0 + linear * r);
        }
        int count = 0;
        for (std::size_t i = 1; i < last; ++i) {
            w[i + 1] = ((12.0 - 10.0 * f_[i]) * w[i] - f_[i - 1] * w[i - 1]) / f_[i + 1];
            if (std::abs(w[i + 1]) > rescale_above) {
                for (std::size_t j = 0; j <= i + 1; ++j) {
                    w[j] /= rescale_above;
                }
            }
            if ((w[i + 1] < 0.0 && w[i] > 0.0) || (w[i + 1] > 0.0 && w[i] < 0.0)) {
                ++count;
            }
        }
        if (nodes) {
            *nodes = count;
        }
    }

    // Inward solution from w = 0 at the last mesh point, down to index `first`.
    void integrate_inward(std::vector<double>& w, std::size_t first) const
    {
        const std::size_t n = size();
        w.assign(n, 0.0);
        w[n - 1] = 0.0;
        w[n - 2] = 1e-30;
        for (std::size_t i = n - 2; i > first; --i) {
            w[i - 1] = ((12.0 - 10.0 * f_[i]) * w[i] - f_[i + 1] * w[i + 1]) / f_[i - 1];
            if (std::abs(w[i - 1]) > rescale_above) {
                for (std::size_t j = i - 1; j < n; ++j) {
                    w[j] /= rescale_above;
                }
            }
        }
    }

    // Number of Dirichlet eigenvalues on [r_min, r_max] below the current energy.
    int sturm_count() const
    {
        int nodes = 0;
        integrate_outward(work_, size() - 1, &nodes);
        return nodes;
    }

    // sin of the Pruefer-angle difference of outward and inward solutions at m.
    double defect(std::size_t m) const
    {
        integrate_outward(work_, m + 1);
        integrate_inward(inward_, m - 1);
        const double w_out = work_[m];
        const double d_out = (work_[m + 1] - work_[m - 1]) / (2.0 * h_);
        const double w_in = inward_[m];
        const double d_in = (inward_[m + 1] - inward_[m - 1]) / (2.0 * h_);
        const double wronskian = w_out * d_in - d_out * w_in;
        return wronskian / (std::hypot(w_out, d_out) * std::hypot(w_in, d_in));
    }

    // Matched solution u = sqrt(r) w, normalised, positive at the origin.
    std::vector<double> matched(std::size_t m) const
    {
        integrate_outward(work_, m);
        integrate_inward(inward_, m);
        std::vector<double> u(size());
        const double scale = work_[m] / inward_[m];
        for (std::size_t i = 0; i < size(); ++i) {
            const double w = i <= m ? work_[i] : inward_[i] * scale;
            u[i] = std::sqrt(radii_[i]) * w;
        }
        // int u^2 dr = int u^2 r dx, trapezoid on the uniform x mesh
        double norm = 0.0;
        for (std::size_t i = 0; i + 1 < size(); ++i) {
            norm += 0.5 * h_ * (u[i] * u[i] * radii_[i] + u[i + 1] * u[i + 1] * radii_[i + 1]);
        }
        const double inv = 1.0 / std::sqrt(norm);
        for (double& value : u) {
            value *= inv;
        }
        return u;
    }

    // x-integral of sqrt(-Q) r from index `from` outward; the index where it first
    // exceeds `target`, or size() if the mesh ends first. Sets `klein` if Q turns
    // positive again (antiparticle continuum beyond a confining wall) before that.
    std::size_t tail_index(std::size_t from, double target, bool& klein) const
    {
        klein = false;
        double exponent = 0.0;
        for (std::size_t i = from; i + 1 < size(); ++i) {
            if (i > from && g_[i + 1] + 0.25 > 0.0) {
                klein = true;
                return i + 1;
            }
            const double a = std::sqrt(std::max(-(g_[i] + 0.25), 0.0));
            const double b = std::sqrt(std::max(-(g_[i + 1] + 0.25), 0.0));
            exponent += 0.5 * h_ * (a + b);
            if (exponent >= target) {
                return i + 1;
            }
        }
        return size();
    }

private:
    const RadialPotential& potential_;
    const PhysicalContext& ctx_;
    int l_;
    double h_ = 0.0;
    double kinetic_ = 0.0;
    std::vector<double> radii_;
    std::vector<double> potential_values_;
    std::vector<double> g_;
    std::vector<double> f_;
    mutable std::vector<double> work_;
    mutable std::vector<double> inward_;
};

struct ShotResult {
    double kinetic = 0.0;
    double defect = 0.0;
    std::size_t match = 0;
};

// Eigenvalue on a fixed mesh; empty if the mesh cannot hold the requested level.
std::optional<ShotResult> solve_on_mesh(Shooter& shooter, const RadialPotential& potential,
                                        const PhysicalContext& ctx, int n_r)
{
    const double rest = ctx.rest_energy();
    auto count_at = [&](double kinetic) {
        shooter.set_energy(kinetic);
        return shooter.sturm_count();
    };

    double lo = 0.0;
    double hi = 0.0;
    if (potential.bound_class() == BoundClass::coulomb_like) {
        // search downward from threshold; deep energies make Numerov unstable in the tail
        hi = -1e-12 * rest;
        if (count_at(hi) <= n_r) {
            return std::nullopt;
        }
        for (lo = -1e-8 * rest; count_at(lo) > n_r; lo *= 2.0) {
            if (lo < -rest) {
                throw NodeCountError("requested Coulomb level could not be bracketed");
            }
        }
    } else {
        lo = potential.minimum_value();
        double step = 1e-8 * rest;
        for (hi = lo + step; count_at(hi) <= n_r; hi = lo + step) {
            step *= 2.0;
            if (step > rest) {
                return std::nullopt;
            }
        }
        if (count_at(lo) > n_r) {
            throw NodeCountError("lower energy bound already exceeds the requested node count");
        }
    }

    // Sturm bisection until only the requested eigenvalue is inside and the bracket is narrow.
    int count_lo = count_at(lo);
    int count_hi = count_at(hi);
    for (int iter = 0; iter < 400; ++iter) {
        const bool isolated = count_lo == n_r && count_hi == n_r + 1;
        if (isolated && hi - lo <= 1e-9 * std::max(std::abs(hi), std::abs(lo))) {
            break;
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const int count = count_at(mid);
        if (count > n_r) {
            hi = mid;
            count_hi = count;
        } else {
            lo = mid;
            count_lo = count;
        }
    }

    ShotResult result;
    shooter.set_energy(0.5 * (lo + hi));
    result.match = std::clamp<std::size_t>(shooter.outer_turning_index(), 2, shooter.size() - 3);
    const std::size_t m = result.match;
    auto defect_at = [&](double kinetic) {
        shooter.set_energy(kinetic);
        return shooter.defect(m);
    };

    double d_lo = defect_at(lo);
    double d_hi = defect_at(hi);
    if ((d_lo < 0.0) == (d_hi < 0.0)) {
        // no sign change seen: keep bisecting on the Sturm count to the last bit
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            (count_at(mid) > n_r ? hi : lo) = mid;
        }
        result.kinetic = 0.5 * (lo + hi);
        result.defect = std::abs(defect_at(result.kinetic));
        return result;
    }


    std::uintmax_t max_iter = 200;
    const auto root = boost::math::tools::toms748_solve(
        defect_at, lo, hi, d_lo, d_hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    const double a = defect_at(root.first);
    const double b = defect_at(root.second);
    result.kinetic = std::abs(a) <= std::abs(b) ? root.first : root.second;
    result.defect = std::min(std::abs(a), std::abs(b));
    return result;
}

// Starting outer radius from the natural length of the well; grown or trimmed later.
double initial_outer_radius(const RadialPotential& potential, const PhysicalContext& ctx, int n_r,
                            int l)
{
    const double lambda = ctx.compton_length();
    const double n = n_r + l + 1.0;
    switch (potential.kind()) {
    case PotentialKind::coulomb:
        return lambda * (4.0 * n * n + 20.0 * n) / ctx.coupling;
    case PotentialKind::harmonic:
        return 6.0 * std::sqrt(n * ctx.hbar / (ctx.mass * potential.omega()));
    case PotentialKind::linear:
        return 6.0 * std::cbrt(n * n * ctx.hbar_c() * ctx.hbar_c()
                               / (ctx.rest_energy() * potential.slope()));
    case PotentialKind::custom_table:
        return potential.domain_max();
    }
    return lambda;
}

} // namespace

OracleSolution solve_exact(const RadialPotential& potential, const PhysicalContext& ctx, int n_r,
                           int l, const OracleGrid& grid)
{
    validate(ctx);
    if (n_r < 0 || l < 0) {
        throw DomainError("quantum numbers must be >= 0");
    }
    if (!(grid.step > 0.0)) {
        throw DomainError("oracle mesh step must be > 0");
    }
    if (potential.kind() == PotentialKind::coulomb) {
        if (!(ctx.coupling > 0.0)) {
            throw NodeCountError("no Coulomb bound states without coupling");
        }
        if (!(l + 0.5 > ctx.coupling)) {
            throw DomainError("Coulomb problem requires l + 1/2 > alpha");
        }
    }

    const double lambda = ctx.compton_length();
    const double r_min =
        grid.r_min > 0.0 ? grid.r_min : std::max(1e-4 * lambda, potential.domain_min());
    const bool automatic = !(grid.r_max > 0.0);
    double r_max = automatic ? std::min(initial_outer_radius(potential, ctx, n_r, l),
                                        potential.domain_max())
                             : grid.r_max;
    if (!(r_max > r_min)) {
        throw DomainError("oracle mesh needs r_min < r_max");
    }

    ShotResult shot;
    std::vector<double> u;
    std::vector<double> radii;
    for (int pass = 0;; ++pass) {
        if (pass > 40) {
            throw ConvergenceError("oracle mesh extent did not settle");
        }
        Shooter shooter(potential, ctx, l, r_min, r_max, grid.step);
        auto found = solve_on_mesh(shooter, potential, ctx, n_r);
        if (!found) {
            if (!automatic || r_max >= potential.domain_max()) {
                throw NodeCountError("oracle mesh cannot hold the requested level");
            }
            r_max = std::min(2.0 * r_max, potential.domain_max());
            continue;
        }
        shot = *found;
        shooter.set_energy(shot.kinetic);

        if (automatic) {
            bool klein = false;
            const std::size_t turning = shooter.outer_turning_index();
            const std::size_t tail = shooter.tail_index(turning, tail_exponent, klein);
            if (klein) {
                throw ConvergenceError(
                    "barrier beyond the outer turning point is too thin for a bound state");
            }
            double needed = tail < shooter.size() ? shooter.radii()[tail] : 2.0 * r_max;
            if (potential.kind() == PotentialKind::coulomb) {
                const double energy = ctx.rest_energy() + shot.kinetic;
                const double kappa =
                    std::sqrt(-shot.kinetic * (energy + ctx.rest_energy())) / ctx.hbar_c();
                needed = std::max(needed, shooter.radii()[turning] + coulomb_decay_lengths / kappa);
            }
            needed = std::min(needed, potential.domain_max());
            if (std::abs(needed - r_max) > 0.05 * r_max) {
                r_max = needed;
                continue;
            }
        }

        u = shooter.matched(shot.match);
        radii = shooter.radii();
        break;
    }

    if (!(shot.defect <= defect_tolerance)) {
        std::ostringstream msg;
        msg << "oracle matching defect " << shot.defect << " above " << defect_tolerance;
        throw ConvergenceError(msg.str());
    }

    const double peak = std::abs(*std::max_element(u.begin(), u.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    }));
    int nodes = 0;
    double previous = 0.0;
    for (double value : u) {
        if (std::abs(value) < 1e-12 * peak) {
            continue;
        }
        if (previous != 0.0 && (value < 0.0) != (previous < 0.0)) {
            ++nodes;
        }
        previous = value;
    }
    if (nodes != n_r) {
        std::ostringstream msg;
        msg << "oracle solution has " << nodes << " nodes, expected " << n_r;
        throw NodeCountError(msg.str());
    }

    OracleSolution solution;
    solution.kinetic = shot.kinetic;
    solution.energy = ctx.rest_energy() + shot.kinetic;
    solution.n_r = n_r;
    solution.l = l;
    solution.grid = std::move(radii);
    solution.u = std::move(u);
    solution.match_defect = shot.defect;
    solution.match_index = shot.match;
    return solution;
}

} // namespace rwkb
