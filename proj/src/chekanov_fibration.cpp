#include "lagrtori/chekanov_fibration.hpp"

#include "lagrtori/clifford_fibration.hpp"
#include "lagrtori/error.hpp"
#include "lagrtori/parallel.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace lagrtori {

namespace {

// Reduce to [0, 1), folding quadrature noise just below an integer onto 0.
double reduce_period(double x)
{
    const double r = reduce_mod1(x);
    return r > 1.0 - 1e-10 ? 0.0 : r;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegenerateTolerance = 1e-9;

}  // namespace

void ChekanovParams::validate() const
{
    if (!(a > 0.0))
        throw Error(ErrorCode::PreconditionFailed, "a must be positive");
    if (!(std::abs(mu) > 0.0))
        throw Error(ErrorCode::PreconditionFailed, "mu must be nonzero");
    if (!(std::abs(delta) < 1.0))
        throw Error(ErrorCode::PreconditionFailed, "delta must lie in (-1, 1)");
}

bool ChekanovParams::degenerate() const { return std::abs(a - std::abs(mu)) <= kDegenerateTolerance; }

Complex ChekanovParams::pencil_parameter(double t) const { return a * std::polar(1.0, t) - mu; }

Conic::Conic(Complex eps) : eps_(eps)
{
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
        throw Error(ErrorCode::SingularConic, "eps = infinity is the double line z2^2 = 0");
    if (std::abs(eps) < 1e-12)
        throw Error(ErrorCode::SingularConic, "eps = 0 is the pair of lines z0 z1 = 0");
    scale_ = std::sqrt(std::abs(eps));
    direction_ = eps / std::abs(eps);
}

Vec3c Conic::lift(double level, double s) const
{
    const double beta = 0.5 * std::numbers::pi * level;
    const double c = std::cos(beta), sn = std::sin(beta);
    return Vec3c(c * c * scale_ * std::polar(1.0, s), sn * sn * scale_ * direction_ * std::polar(1.0, -s), c * sn);
}

double Conic::residual(Complex eps, const HomogeneousPoint& p)
{
    return std::abs(p[0] * p[1] - eps * p[2] * p[2]);
}

double Conic::disc_area(double level) const
{
    const Vec3c z = lift(level, 0.0);
    return 1.0 - (std::norm(z[0]) - std::norm(z[1])) / z.squaredNorm();
}

ParamSurface Conic::fixed_point_disc(double level) const
{
    ParamSurface s;
    s.eval = [c = *this, level](double u, double v) { return c.lift(u * level, -kTwoPi * v); };
    s.periodic_v = true;
    return s;
}

ParamSurface Conic::surface() const { return fixed_point_disc(1.0); }

namespace {

ParamSurface far_disc(const Conic& conic, double level)
{
    ParamSurface s;
    s.eval = [conic, level](double u, double v) { return conic.lift(1.0 - u * (1.0 - level), kTwoPi * v); };
    s.periodic_v = true;
    return s;
}

}  // namespace

ParamSurface ConicCircle::disc() const
{
    return anchor == Anchor::E0 ? conic.fixed_point_disc(level) : far_disc(conic, level);
}

ParamSurface ConicCircle::complementary_disc() const
{
    return anchor == Anchor::E0 ? far_disc(conic, level) : conic.fixed_point_disc(level);
}

Conic conic_parametrize(Complex eps) { return Conic(eps); }

ConicCircle conic_circle(Complex eps, double delta, Anchor anchor)
{
    Conic conic(eps);
    const double target = anchor == Anchor::E0 ? 1.0 + delta : 1.0 - delta;
    auto f = [&](double level) { return conic.disc_area(level) - target; };
    const double f0 = f(0.0), f1 = f(1.0);
    if (!(f0 < 0.0 && f1 > 0.0))
        throw Error(ErrorCode::RootNotBracketed, "delta = " + std::to_string(delta) + " outside (-1, 1)");
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        f, 0.0, 1.0, f0, f1, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
        iterations);
    return ConicCircle{conic, delta, 0.5 * (lo + hi), anchor};
}

ChekanovTorus::ChekanovTorus(ChekanovParams p) : params_(p) {}

Vec3c ChekanovTorus::lift(double t, double s) const
{
    return conic_circle(params_.pencil_parameter(t), params_.delta, params_.anchor).lift(s);
}

double ChekanovTorus::lagrangian_residual(int grid) const
{
    return lagrtori::lagrangian_residual([this](double t, double s) { return lift(t, s); }, grid);
}

double ChekanovTorus::equation_residual(int grid) const
{
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = kTwoPi * i / grid;
        const Complex eps = params_.pencil_parameter(t);
        const ConicCircle circle = conic_circle(eps, params_.delta, params_.anchor);
        for (int j = 0; j < grid; ++j)
            worst = std::max(worst, Conic::residual(eps, HomogeneousPoint(circle.lift(kTwoPi * j / grid))));
    }
    return worst;
}

ChekanovTorus chekanov_torus(const ChekanovParams& p)
{
    p.validate();
    if (p.degenerate())
        throw Error(ErrorCode::DegenerateFamily, "a = |mu|: the pencil circle passes through eps = 0");
    return ChekanovTorus(p);
}

const char* to_string(TorusType t)
{
    switch (t) {
    case TorusType::Clifford: return "CliffordType";
    case TorusType::Chekanov: return "ChekanovType";
    case TorusType::Boundary: return "Boundary";
    }
    return "Unknown";
}

TorusType classify_type(const ChekanovParams& p)
{
    if (p.degenerate())
        return TorusType::Boundary;
    return p.a > std::abs(p.mu) ? TorusType::Clifford : TorusType::Chekanov;
}

ChekanovPeriods torus_periods_chekanov(const ChekanovParams& p, const QuadSpec& q, std::uint64_t seed)
{
    const ChekanovTorus torus = chekanov_torus(p);
    ChekanovPeriods out;
    const ConicCircle circle = conic_circle(p.pencil_parameter(0.0), p.delta, p.anchor);
    out.p_orbit = reduce_period(surface_symplectic_area(circle.disc(), q).value);

    constexpr int kMaxAttempts = 8;
    constexpr int kCheckGrid = 64;
    constexpr int kExtraLevels = 3;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(seed + attempt);
        std::normal_distribution<double> g;
        Vec3c base;
        for (int i = 0; i < 3; ++i)
            base[i] = Complex(g(rng), g(rng));
        base.normalize();
        auto loop = [&torus](double t) -> Vec3c { return torus.section(t).normalized(); };
        bool degenerate = false;
        for (int i = 0; i < kCheckGrid && !degenerate; ++i) {
            const Vec3c z = loop(kTwoPi * i / kCheckGrid);
            for (int j = 0; j <= kCheckGrid; ++j) {
                const double s = double(j) / kCheckGrid;
                if (((1.0 - s) * base + s * z).norm() < 0.05) {
                    degenerate = true;
                    break;
                }
            }
        }
        ++out.attempts;
        if (degenerate)
            continue;
        ParamSurface cone;
        cone.eval = [base, loop](double s, double v) -> Vec3c { return (1.0 - s) * base + s * loop(kTwoPi * v); };
        cone.periodic_v = true;
        // The section loop turns quickly when the pencil circle passes close to eps = 0.
        for (int extra = 0; extra <= kExtraLevels; ++extra) {
            QuadSpec refined = q;
            refined.refinement_levels += extra;
            try {
                out.p_section = reduce_period(surface_symplectic_area(cone, refined).value);
                out.levels = refined.refinement_levels;
                return out;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NonConvergent)
                    throw;
            }
        }
    }
    throw Error(ErrorCode::ConingDegenerate, "no admissible coning basepoint after 8 attempts");
}

ScanReport canonical_bs_scan(Complex mu, const std::vector<double>& a_grid, const std::vector<double>& delta_grid,
                             const QuadSpec& q, std::uint64_t seed)
{
    for (double a : a_grid)
        if (!(a > 0.0 && a < std::abs(mu) - kDegenerateTolerance))
            throw Error(ErrorCode::PreconditionFailed,
                        "a = " + std::to_string(a) + " is outside the Chekanov regime (0, |mu|)");
    if (a_grid.empty() || delta_grid.empty())
        throw Error(ErrorCode::PreconditionFailed, "empty scan grid");

    ScanReport report;
    report.mu = mu;
    report.rows.resize(a_grid.size() * delta_grid.size());
    parallel_for(report.rows.size(), [&](std::size_t idx) {
        ScanRow& row = report.rows[idx];
        row.a = a_grid[idx / delta_grid.size()];
        row.delta = delta_grid[idx % delta_grid.size()];
        const auto periods = torus_periods_chekanov({row.a, mu, row.delta, Anchor::E0}, q, seed);
        row.p_orbit = periods.p_orbit;
        row.p_section = periods.p_section;
        const double orbit_defect = integer_distance(3.0 * row.p_orbit);
        row.defect = std::max(orbit_defect, integer_distance(3.0 * row.p_section));
        row.defect_any_section = row.defect;
        for (int k : {-1, 1})
            row.defect_any_section = std::min(
                row.defect_any_section,
                std::max(orbit_defect, integer_distance(3.0 * (row.p_section + k * row.p_orbit))));
    });
    report.min_defect = std::numeric_limits<double>::infinity();
    report.min_defect_any_section = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (report.rows[i].defect < report.min_defect) {
            report.min_defect = report.rows[i].defect;
            report.argmin = i;
        }
        report.min_defect_any_section = std::min(report.min_defect_any_section, report.rows[i].defect_any_section);
    }
    report.no_canonical_bs = std::min(report.min_defect, report.min_defect_any_section) > 10.0 * kPeriodTolerance;
    return report;
}

std::vector<double> make_grid(double lo, double hi, double step)
{
    if (!(step > 0.0) || hi < lo)
        throw Error(ErrorCode::PreconditionFailed, "grid needs step > 0 and hi >= lo");
    const double span = (hi - lo) / step;
    const long n = std::abs(span - std::round(span)) <= 1e-9 ? std::lround(span) : static_cast<long>(std::floor(span));
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (long i = 0; i <= n; ++i)
        grid.push_back(std::round((lo + i * step) * 1e12) / 1e12);
    return grid;
}

}  // namespace lagrtori
