#include "lagrtori/clifford_fibration.hpp"

#include "lagrtori/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lagrtori {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};

Complex phase(double t) { return std::polar(1.0, t); }

std::string describe(const ActionCoords& b)
{
    return "(" + std::to_string(b.r0) + ", " + std::to_string(b.r1) + ")";
}

std::pair<Vec3c, Vec3c> torus_frame(const Vec3c& z)
{
    return {Vec3c(kI * z[0], 0.0, 0.0), Vec3c(0.0, kI * z[1], 0.0)};
}

ParamSurface disc_surface(std::function<Vec3c(double, double)> f)
{
    ParamSurface s;
    s.eval = std::move(f);
    s.periodic_v = true;
    return s;
}

}  // namespace

CliffordFiber::CliffordFiber(ActionCoords base)
    : base_(base), a0_(std::sqrt(base.r0)), a1_(std::sqrt(base.r1)), a2_(std::sqrt(base.r2()))
{
}

Vec3c CliffordFiber::lift(double theta0, double theta1) const
{
    return Vec3c(a0_ * phase(theta0), a1_ * phase(theta1), a2_);
}

std::pair<Vec3c, Vec3c> CliffordFiber::frame(double theta0, double theta1) const
{
    return torus_frame(lift(theta0, theta1));
}

double CliffordFiber::lagrangian_defect(int grid) const
{
    double worst = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double t0 = kTwoPi * i / grid, t1 = kTwoPi * j / grid;
            const auto [e1, e2] = frame(t0, t1);
            worst = std::max(worst, std::abs(fs_form_lift(lift(t0, t1), e1, e2)));
        }
    return worst;
}

CliffordFiber clifford_fiber(ActionCoords b)
{
    if (!b.interior())
        throw Error(ErrorCode::BoundaryFiber, "fiber over " + describe(b) + " is degenerate");
    return CliffordFiber(b);
}

DiscWithBoundary standard_disc(const CliffordFiber& fiber, HomologyClass c)
{
    const double r0 = fiber.base().r0, r1 = fiber.base().r1;
    const double a0 = std::sqrt(r0), a1 = std::sqrt(r1);
    DiscWithBoundary d;
    d.chart = 2;
    if (c == kD1) {
        d.disc = disc_surface([=](double s, double t) {
            return Vec3c(a0 * s * phase(kTwoPi * t), a1, std::sqrt(1.0 - r0 * s * s - r1));
        });
        d.boundary_loop = [fiber](double t) { return fiber.lift(t, 0.0); };
        d.frame = [fiber](double t) { return fiber.frame(t, 0.0); };
    } else if (c == kD2) {
        d.disc = disc_surface([=](double s, double t) {
            return Vec3c(a0, a1 * s * phase(kTwoPi * t), std::sqrt(1.0 - r0 - r1 * s * s));
        });
        d.boundary_loop = [fiber](double t) { return fiber.lift(0.0, t); };
        d.frame = [fiber](double t) { return fiber.frame(0.0, t); };
    } else if (c == kD3) {
        d.disc = disc_surface([=](double s, double t) {
            const Complex e = phase(kTwoPi * t);
            return Vec3c(a0 * s * e, a1 * s * e, std::sqrt(1.0 - (r0 + r1) * s * s));
        });
        d.boundary_loop = [fiber](double t) { return fiber.lift(t, t); };
        d.frame = [fiber](double t) { return fiber.frame(t, t); };
    } else {
        throw Error(ErrorCode::UnsupportedClass,
                    "no standard disc for class (" + std::to_string(c.p) + ", " + std::to_string(c.q) + ")");
    }
    return d;
}

DiscWithBoundary d3_cap_disc(const CliffordFiber& fiber)
{
    const double r0 = fiber.base().r0, r1 = fiber.base().r1, r2 = fiber.base().r2();
    const double a0 = std::sqrt(r0), a1 = std::sqrt(r1), a2 = std::sqrt(r2);
    DiscWithBoundary d;
    d.chart = 0;
    d.disc = disc_surface([=](double s, double t) {
        const double lambda = std::sqrt((1.0 - r2 * s * s) / (r0 + r1));
        return Vec3c(lambda * a0, lambda * a1, a2 * s * phase(-kTwoPi * t));
    });
    d.boundary_loop = [=](double t) { return Vec3c(a0, a1, a2 * phase(-t)); };
    d.frame = [=](double t) { return torus_frame(Vec3c(a0, a1, a2 * phase(-t))); };
    return d;
}

DiscWithBoundary d1_complement_disc(const CliffordFiber& fiber)
{
    const double r0 = fiber.base().r0, r1 = fiber.base().r1, r2 = fiber.base().r2();
    const double a0 = std::sqrt(r0), a1 = std::sqrt(r1), a2 = std::sqrt(r2);
    DiscWithBoundary d;
    d.chart = 0;
    d.disc = disc_surface([=](double s, double t) {
        const Complex e = phase(-kTwoPi * t);
        return Vec3c(std::sqrt(1.0 - (1.0 - r0) * s * s), a1 * s * e, a2 * s * e);
    });
    d.boundary_loop = [=](double t) { return Vec3c(a0, a1 * phase(-t), a2 * phase(-t)); };
    d.frame = [=](double t) { return torus_frame(Vec3c(a0, a1 * phase(-t), a2 * phase(-t))); };
    return d;
}

double reduce_mod1(double x)
{
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

std::array<Estimate, 2> standard_disc_areas(const ActionCoords& b, const QuadSpec& q)
{
    const CliffordFiber fiber = clifford_fiber(b);
    return {surface_symplectic_area(standard_disc(fiber, kD1).disc, q),
            surface_symplectic_area(standard_disc(fiber, kD2).disc, q)};
}

std::pair<double, double> fiber_periods(const ActionCoords& b, const QuadSpec& q)
{
    const auto areas = standard_disc_areas(b, q);
    return {reduce_mod1(areas[0].value), reduce_mod1(areas[1].value)};
}

double period_at_level(double disc_area, int level) { return reduce_mod1(level * disc_area); }

BSFiberSet enumerate_bs_fibers(int k, bool closed)
{
    if (k < 1)
        throw Error(ErrorCode::PreconditionFailed, "level must be at least 1");
    BSFiberSet set;
    set.level = k;
    set.closed = closed;
    const int lo = closed ? 0 : 1;
    const int hi = closed ? k : k - 1;
    for (int i = lo; i <= hi; ++i)
        for (int j = lo; i + j <= hi; ++j)
            set.fibers.push_back({Rational(i, k), Rational(j, k)});
    set.count = set.fibers.size();
    return set;
}

std::int64_t bs_count_formula(int k, bool closed)
{
    const std::int64_t kk = k;
    return closed ? (kk + 1) * (kk + 2) / 2 : (kk - 1) * (kk - 2) / 2;
}

std::int64_t sections_dimension(int d)
{
    if (d < 0)
        return 0;
    return static_cast<std::int64_t>(d + 2) * (d + 1) / 2;
}

HilbertComparison hilbert_dimension(int k, bool closed)
{
    HilbertComparison h;
    h.bs_count = static_cast<std::int64_t>(enumerate_bs_fibers(k, closed).count);
    h.line_bundle_degree = closed ? k : k - 3;
    h.section_dimension = sections_dimension(h.line_bundle_degree);
    h.equal = h.bs_count == h.section_dimension;
    return h;
}

std::pair<double, double> lifted_period_map(const ActionCoords& b, const QuadSpec& q)
{
    if (!b.in_closed_triangle(1e-12))
        throw Error(ErrorCode::PreconditionFailed, "point " + describe(b) + " is outside the triangle");
    if (!b.interior())
        return {std::clamp(b.r0, 0.0, 1.0), std::clamp(b.r1, 0.0, 1.0)};
    const auto areas = standard_disc_areas(b, q);
    return {areas[0].value, areas[1].value};
}

KsJacobian ks_jacobian(const ActionCoords& b, double h, const QuadSpec& q)
{
    const ActionCoords stencil[4] = {{b.r0 + h, b.r1}, {b.r0 - h, b.r1}, {b.r0, b.r1 + h}, {b.r0, b.r1 - h}};
    for (const auto& s : stencil)
        if (!s.interior())
            throw Error(ErrorCode::StencilOutOfDomain, "stencil around " + describe(b) + " leaves the open triangle");
    const auto xp = lifted_period_map(stencil[0], q), xm = lifted_period_map(stencil[1], q);
    const auto yp = lifted_period_map(stencil[2], q), ym = lifted_period_map(stencil[3], q);
    KsJacobian j;
    j.matrix[0][0] = (xp.first - xm.first) / (2 * h);
    j.matrix[1][0] = (xp.second - xm.second) / (2 * h);
    j.matrix[0][1] = (yp.first - ym.first) / (2 * h);
    j.matrix[1][1] = (yp.second - ym.second) / (2 * h);
    j.determinant = j.matrix[0][0] * j.matrix[1][1] - j.matrix[0][1] * j.matrix[1][0];
    return j;
}

double TrigPolynomial::value(double t0, double t1) const
{
    double v = 0.0;
    for (const auto& term : terms) {
        const double arg = term.m0 * t0 + term.m1 * t1;
        v += term.a_cos * std::cos(arg) + term.a_sin * std::sin(arg);
    }
    return v;
}

std::array<double, 2> TrigPolynomial::gradient(double t0, double t1) const
{
    std::array<double, 2> g{0.0, 0.0};
    for (const auto& term : terms) {
        const double arg = term.m0 * t0 + term.m1 * t1;
        const double d = -term.a_cos * std::sin(arg) + term.a_sin * std::cos(arg);
        g[0] += term.m0 * d;
        g[1] += term.m1 * d;
    }
    return g;
}

DeformedTorus::DeformedTorus(CliffordFiber fiber, DeformationSpec spec)
    : fiber_(std::move(fiber)), spec_(std::move(spec))
{
}

std::array<double, 2> DeformedTorus::actions(double theta0, double theta1) const
{
    const auto g = spec_.f.gradient(theta0, theta1);
    return {fiber_.base().r0 + spec_.s * (spec_.c1 + g[0]), fiber_.base().r1 + spec_.s * (spec_.c2 + g[1])};
}

Vec3c DeformedTorus::lift(double theta0, double theta1) const
{
    const auto r = actions(theta0, theta1);
    return Vec3c(std::sqrt(r[0]) * phase(theta0), std::sqrt(r[1]) * phase(theta1), std::sqrt(1.0 - r[0] - r[1]));
}

ParamSurface DeformedTorus::basis_disc(int index) const
{
    if (index == 0)
        return disc_surface([this](double s, double v) {
            const double t = kTwoPi * v;
            const auto r = actions(t, 0.0);
            return Vec3c(s * std::sqrt(r[0]) * phase(t), std::sqrt(r[1]), std::sqrt(1.0 - s * s * r[0] - r[1]));
        });
    return disc_surface([this](double s, double v) {
        const double t = kTwoPi * v;
        const auto r = actions(0.0, t);
        return Vec3c(std::sqrt(r[0]), s * std::sqrt(r[1]) * phase(t), std::sqrt(1.0 - r[0] - s * s * r[1]));
    });
}

double DeformedTorus::lagrangian_residual(int grid) const
{
    return lagrtori::lagrangian_residual([this](double a, double b) { return lift(a, b); }, grid);
}

DeformedTorus deform_fiber(const CliffordFiber& fiber, const DeformationSpec& d)
{
    DeformedTorus torus(fiber, d);
    constexpr int kGrid = 64;
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j) {
            const auto r = torus.actions(kTwoPi * i / kGrid, kTwoPi * j / kGrid);
            if (!ActionCoords{r[0], r[1]}.interior())
                throw Error(ErrorCode::LeavesTriangle, "deformed actions leave the open triangle");
        }
    return torus;
}

std::pair<double, double> deformed_periods(const DeformedTorus& torus, const QuadSpec& q)
{
    return {reduce_mod1(surface_symplectic_area(torus.basis_disc(0), q).value),
            reduce_mod1(surface_symplectic_area(torus.basis_disc(1), q).value)};
}

}  // namespace lagrtori
