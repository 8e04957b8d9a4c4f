#include "doctest.h"

#include "lagrtori/chekanov_fibration.hpp"
#include "lagrtori/error.hpp"
#include "test_support.hpp"

#include <chrono>

using namespace lagrtori;
using namespace lagrtori::testing;

namespace {

// Level of the orbit with anchored disc area 1 + delta, from the quadratic in x = tan^2(beta).
double closed_form_level(Complex eps, double delta)
{
    const double r2 = std::abs(eps);
    const double r4 = r2 * r2;
    const double x = (delta + std::sqrt(delta * delta + 4 * r4 * (1 - delta * delta))) / (2 * r2 * (1 - delta));
    return 2.0 / kPi * std::atan(std::sqrt(x));
}

double circular_distance(double x, double y)
{
    const double d = std::abs(x - y);
    return std::min(d, 1.0 - d);
}

// (1/2pi) of the integral of sum_k rho_k d arg(z_k / z2) around a loop avoiding z2 = 0.
// The 1-form is a primitive of the area form on the affine chart, so this is a disc area mod 1.
double chart_primitive_integral(const std::function<Vec3c(double)>& loop, int n)
{
    double total = 0.0;
    Vec3c prev = loop(0.0);
    for (int i = 1; i <= n; ++i) {
        const Vec3c cur = loop(2 * kPi * i / n);
        const Vec3c mid = loop(2 * kPi * (i - 0.5) / n);
        for (int k = 0; k < 2; ++k) {
            const double dtheta = std::arg((cur[k] / cur[2]) / (prev[k] / prev[2]));
            const double rho = std::norm(mid[k]) / mid.squaredNorm();
            total += rho * dtheta;
        }
        prev = cur;
    }
    return total / (2 * kPi);
}

double reduce(double x)
{
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

}  // namespace

TEST_CASE("conic parametrization satisfies the defining equation")
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        const Complex eps(g(rng), g(rng));
        const Conic c = conic_parametrize(eps);
        double worst = 0.0;
        for (int i = 0; i <= 64; ++i)
            for (int j = 0; j < 64; ++j)
                worst = std::max(worst, Conic::residual(eps, HomogeneousPoint(c.lift(i / 64.0, 2 * kPi * j / 64))));
        CHECK(worst <= 1e-10);
        CHECK(HomogeneousPoint(c.lift(0.0, 1.0)).projectively_equal(HomogeneousPoint(Vec3c(1, 0, 0))));
        CHECK(HomogeneousPoint(c.lift(1.0, 1.0)).projectively_equal(HomogeneousPoint(Vec3c(0, 1, 0))));
    }
}

TEST_CASE("singular pencil members are rejected")
{
    for (Complex eps : {Complex(0, 0), Complex(INFINITY, 0), Complex(NAN, 1)}) {
        try {
            conic_parametrize(eps);
            FAIL("expected SingularConic");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SingularConic);
        }
    }
}

TEST_CASE("circle action preserves the orbit at each level")
{
    const Conic c(Complex(0.3, -0.8));
    for (double level : {0.1, 0.5, 0.9}) {
        const double s = 0.7, phi = 1.9;
        Vec3c rotated = c.lift(level, s);
        rotated[0] *= std::polar(1.0, phi);
        rotated[1] *= std::polar(1.0, -phi);
        CHECK(HomogeneousPoint(rotated).projectively_equal(HomogeneousPoint(c.lift(level, s + phi)), 1e-12));
    }
}

TEST_CASE("conic total area is two")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 10; ++trial) {
        const Complex eps(std::exp(g(rng)) * std::cos(3.0 * g(rng)), std::exp(g(rng)) * std::sin(3.0 * g(rng)));
        const auto area = surface_symplectic_area(conic_parametrize(eps).surface(), QuadSpec{48, 3});
        CHECK(std::abs(area.value - 2.0) <= 1e-6);
    }
}

TEST_CASE("conic circle level matches the closed form and the quadrature area")
{
    for (Complex eps : {Complex(1, 0), Complex(-0.5, 0.5), Complex(0.1, -2.0), Complex(4.0, 3.0)}) {
        for (double delta : {-0.8, -1.0 / 3, 0.0, 0.25, 0.6}) {
            const ConicCircle circle = conic_circle(eps, delta);
            CHECK(std::abs(circle.level - closed_form_level(eps, delta)) <= 1e-12);
            const auto disc = surface_symplectic_area(circle.disc());
            CHECK(std::abs(disc.value - (1 + delta)) <= 1e-7);
            const auto other = surface_symplectic_area(circle.complementary_disc());
            CHECK(std::abs(other.value - (1 - delta)) <= 1e-7);
            for (int j = 0; j < 16; ++j)
                CHECK(Conic::residual(eps, HomogeneousPoint(circle.lift(2 * kPi * j / 16))) <= 1e-10);
        }
    }
}

TEST_CASE("delta zero bisects the conic and the anchor flag swaps the discs")
{
    const ConicCircle c0 = conic_circle(Complex(0.7, 0.2), 0.0);
    CHECK(std::abs(surface_symplectic_area(c0.disc()).value - 1.0) <= 1e-7);
    const ConicCircle e0 = conic_circle(Complex(0.7, 0.2), 0.3, Anchor::E0);
    const ConicCircle e1 = conic_circle(Complex(0.7, 0.2), -0.3, Anchor::E1);
    CHECK(std::abs(e0.level - e1.level) <= 1e-12);
    const ConicCircle f1 = conic_circle(Complex(0.7, 0.2), 0.3, Anchor::E1);
    CHECK(std::abs(surface_symplectic_area(f1.disc()).value - 1.3) <= 1e-7);
    CHECK(std::abs(surface_symplectic_area(f1.complementary_disc()).value - 0.7) <= 1e-7);
}

TEST_CASE("conic circle rejects delta outside the open interval")
{
    for (double delta : {1.0, -1.0, 1.5}) {
        try {
            conic_circle(Complex(1, 0), delta);
            FAIL("expected RootNotBracketed");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::RootNotBracketed);
        }
    }
}

TEST_CASE("pencil tori are lagrangian and lie on their conics")
{
    for (double a : {0.3, 0.5, 2.0}) {
        for (double delta : {-0.5, 0.0, 0.2}) {
            for (double arg : {0.0, 2.0}) {
                const ChekanovParams p{a, std::polar(1.0, arg), delta};
                const ChekanovTorus t = chekanov_torus(p);
                CHECK(t.lagrangian_residual(32) <= 1e-8);
                CHECK(t.equation_residual(16) <= 1e-10);
            }
        }
    }
    CHECK(chekanov_torus({0.5, 1.0, 0.0}).lagrangian_residual(64) <= 1e-8);
    CHECK(chekanov_torus({2.0, 1.0, 0.2}).lagrangian_residual(64) <= 1e-8);
}

TEST_CASE("degenerate and invalid parameters")
{
    try {
        chekanov_torus({1.0, 1.0, 0.0});
        FAIL("expected DegenerateFamily");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateFamily);
    }
    try {
        chekanov_torus({1.0, Complex(0.6, 0.8), 0.3});
        FAIL("expected DegenerateFamily");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateFamily);
    }
    for (ChekanovParams p : {ChekanovParams{-0.1, 1.0, 0.0}, ChekanovParams{0.5, 0.0, 0.0}, ChekanovParams{0.5, 1.0, 1.0}}) {
        try {
            chekanov_torus(p);
            FAIL("expected PreconditionFailed");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::PreconditionFailed);
        }
    }
}

TEST_CASE("type classification")
{
    CHECK(classify_type({2.0, 1.0, 0.0}) == TorusType::Clifford);
    CHECK(classify_type({0.5, 1.0, 0.0}) == TorusType::Chekanov);
    CHECK(classify_type({1.0, 1.0, 0.0}) == TorusType::Boundary);
    CHECK(classify_type({1.0 + 1e-10, Complex(0, 1), 0.4}) == TorusType::Boundary);
    CHECK(std::string(to_string(TorusType::Chekanov)) == "ChekanovType");
}

TEST_CASE("orbit period is delta mod 1")
{
    for (double delta : {0.25, -0.4, 0.0}) {
        const auto periods = torus_periods_chekanov({0.5, 1.0, delta});
        CHECK(circular_distance(periods.p_orbit, reduce(delta)) <= 1e-6);
    }
}

TEST_CASE("section period agrees with the affine-chart primitive")
{
    for (ChekanovParams p : {ChekanovParams{0.5, 1.0, 0.0}, ChekanovParams{0.3, Complex(0, 1), 0.25},
                             ChekanovParams{2.0, 1.0, -0.2}, ChekanovParams{0.8, Complex(-1, 0.5), 0.6}}) {
        const ChekanovTorus t = chekanov_torus(p);
        const double oracle = reduce(chart_primitive_integral([&](double s) { return t.section(s); }, 4096));
        const auto periods = torus_periods_chekanov(p);
        CHECK(circular_distance(periods.p_section, oracle) <= 2e-6);
        // Same oracle on the orbit loop, traversed against the disc orientation.
        const ConicCircle c = conic_circle(p.pencil_parameter(0.0), p.delta);
        const double orbit = reduce(-chart_primitive_integral([&](double s) { return c.lift(s); }, 4096));
        CHECK(circular_distance(periods.p_orbit, orbit) <= 2e-6);
    }
}

TEST_CASE("section period is independent of the coning basepoint")
{
    const ChekanovParams p{0.6, 1.0, 0.1};
    const auto a = torus_periods_chekanov(p, {}, 1);
    const auto b = torus_periods_chekanov(p, {}, 977);
    const auto c = torus_periods_chekanov(p, {}, 123456789);
    CHECK(circular_distance(a.p_section, b.p_section) <= 2e-6);
    CHECK(circular_distance(a.p_section, c.p_section) <= 2e-6);
}

TEST_CASE("section period is continuous in a")
{
    const auto grid = make_grid(0.3, 0.9, 0.01);
    REQUIRE(grid.size() == 61);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const ChekanovTorus t = chekanov_torus({grid[i], 1.0, 0.0});
        values[i] = reduce(chart_primitive_integral([&](double s) { return t.section(s); }, 1024));
    }
    // Spot check the coning result against the oracle at a few grid points.
    for (std::size_t i : {std::size_t(0), std::size_t(30), std::size_t(60)})
        CHECK(circular_distance(torus_periods_chekanov({grid[i], 1.0, 0.0}).p_section, values[i]) <= 2e-6);
    double worst = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i)
        worst = std::max(worst, circular_distance(values[i], values[i - 1]));
    CHECK(worst <= 0.01);
}

TEST_CASE("canonical class scan finds no Bohr-Sommerfeld Chekanov fiber")
{
    const auto report = canonical_bs_scan(1.0, make_grid(0.1, 0.9, 0.1), make_grid(-0.9, 0.9, 0.1));
    REQUIRE(report.rows.size() == 9 * 19);
    CHECK(report.rows.front().a == 0.1);
    CHECK(report.rows.front().delta == -0.9);
    CHECK(report.rows[1].delta == -0.8);
    CHECK(report.min_defect > 1e-4);
    CHECK(report.min_defect_any_section > 1e-4);
    CHECK(report.no_canonical_bs);
    for (const auto& row : report.rows) {
        CHECK(row.defect >= std::abs(3 * row.p_orbit - std::round(3 * row.p_orbit)) - 1e-15);
        if (std::abs(row.delta) > 1e-9)
            CHECK(row.defect > 1e-4);
    }
}

TEST_CASE("single point scan is decided by the section period")
{
    const auto report = canonical_bs_scan(1.0, {0.5}, {1.0 / 3});
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK(std::abs(3 * row.p_orbit - std::round(3 * row.p_orbit)) <= 1e-6);
    CHECK(row.defect == doctest::Approx(std::abs(3 * row.p_section - std::round(3 * row.p_section))));
}

TEST_CASE("scan is deterministic and rejects the Clifford regime")
{
    const auto r1 = canonical_bs_scan(1.0, {0.2, 0.4}, {0.0, 0.5});
    const auto r2 = canonical_bs_scan(1.0, {0.2, 0.4}, {0.0, 0.5});
    for (std::size_t i = 0; i < r1.rows.size(); ++i)
        CHECK(r1.rows[i].p_section == r2.rows[i].p_section);
    try {
        canonical_bs_scan(1.0, {0.5, 1.5}, {0.0});
        FAIL("expected PreconditionFailed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PreconditionFailed);
    }
}

TEST_CASE("grid construction")
{
    const auto g = make_grid(-0.9, 0.9, 0.1);
    REQUIRE(g.size() == 19);
    CHECK(g.front() == -0.9);
    CHECK(g[9] == 0.0);
    CHECK(g.back() == 0.9);
    CHECK(g[12] == 0.3);
    CHECK(make_grid(0.5, 0.5, 0.1).size() == 1);
    CHECK(make_grid(0.0, 1.0, 0.3).size() == 4);
}
