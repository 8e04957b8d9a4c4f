#include "doctest.h"

#include "lagrtori/cp2_geometry.hpp"
#include "lagrtori/error.hpp"
#include "lagrtori/quadrature.hpp"
#include "test_support.hpp"

using namespace lagrtori;
using namespace lagrtori::testing;

TEST_CASE("normalize_point scales to unit norm and keeps the class")
{
    const HomogeneousPoint p = normalize_point(Vec3c(2.0, 0.0, 0.0));
    CHECK(p.z().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.projectively_equal(HomogeneousPoint(Vec3c(1.0, 0.0, 0.0))));

    const HomogeneousPoint q = normalize_point(Vec3c(1.0, 1.0, 1.0));
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(q[i]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

    CHECK_THROWS_AS(normalize_point(Vec3c::Zero()), Error);
    try {
        normalize_point(Vec3c(1e-301, 0.0, 0.0));
        FAIL("expected ZeroVector");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroVector);
    }
}

TEST_CASE("projective equality ignores a unit phase")
{
    std::mt19937_64 rng(7);
    const Vec3c z = random_vector(rng);
    const HomogeneousPoint a(z), b(z * std::polar(3.0, 1.234));
    CHECK(a.projectively_equal(b));
    CHECK_FALSE(a.projectively_equal(HomogeneousPoint(z + Vec3c(0.01, 0.0, 0.0))));
    const Vec3c c = b.canonical();
    CHECK(c[0].imag() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c[0].real() > 0.0);
    CHECK(HomogeneousPoint(c).projectively_equal(a));
}

TEST_CASE("fs_form_value is antisymmetric and real bilinear on random horizontal pairs")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const HomogeneousPoint p(random_vector(rng));
        const auto u = TangentVector::horizontal(p, random_vector(rng));
        const auto v = TangentVector::horizontal(p, random_vector(rng));
        const auto w = TangentVector::horizontal(p, random_vector(rng));
        const double a = coef(rng), b = coef(rng);
        CHECK(std::abs(fs_form_value(p, u, v) + fs_form_value(p, v, u)) <= 1e-12);
        CHECK(std::abs(fs_form_value(p, u, u)) <= 1e-12);
        const TangentVector combo{p, a * u.u + b * w.u};
        const double lhs = fs_form_value(p, combo, v);
        const double rhs = a * fs_form_value(p, u, v) + b * fs_form_value(p, w, v);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("fs_form_value rejects non-horizontal vectors")
{
    const HomogeneousPoint p(Vec3c(1.0, 0.0, 0.0));
    const TangentVector bad{p, Vec3c(1.0, 1.0, 0.0)};
    const auto good = TangentVector::horizontal(p, Vec3c(0.0, 1.0, 0.0));
    CHECK_THROWS_AS(fs_form_value(p, bad, good), Error);
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly")
{
    for (int n : {4, 7, 32}) {
        const GaussRule r = gauss_legendre(n);
        for (int deg = 0; deg <= 2 * n - 1; deg += 3) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                sum += r.weights[i] * std::pow(r.nodes[i], deg);
            CHECK(sum == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("projective line has area one")
{
    // Oracle: in the chart w = z1/z0 the form is (1/pi) dx dy / (1 + |w|^2)^2; integrate
    // the radial profile 2 r / (1 + r^2)^2 with r = tan(phi) by composite Simpson.
    const int n = 20000;
    const double h = (kPi / 2) / n;
    double simpson = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double phi = i * h;
        const double val = (i == n) ? 0.0 : 2.0 * std::tan(phi) / std::pow(1 + std::tan(phi) * std::tan(phi), 2) /
                                                 std::pow(std::cos(phi), 2);
        simpson += val * ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2));
    }
    simpson *= h / 3;
    CHECK(simpson == doctest::Approx(1.0).epsilon(1e-9));

    const Estimate area = surface_symplectic_area(line_surface());
    CHECK(std::abs(area.value - 1.0) <= 1e-9);
    CHECK(area.error <= 1e-9);
}

TEST_CASE("line area is invariant under random unitaries")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Mat3c u = random_unitary(rng);
        REQUIRE(is_unitary(u));
        CHECK(std::abs(surface_symplectic_area(apply_unitary(u, line_surface())).value - 1.0) <= 1e-9);
    }
}

TEST_CASE("constant surface has zero area")
{
    ParamSurface s;
    s.eval = [](double, double) { return Vec3c(1.0, 2.0, 3.0); };
    CHECK(std::abs(surface_symplectic_area(s).value) <= 1e-15);
}

namespace {

// Small cap around [0:0:1]: [u cos(2 pi v) r : u sin(2 pi v) r i : 1] style patches.
ParamSurface test_patch(int which)
{
    ParamSurface s;
    switch (which) {
    case 0:
        s.eval = [](double u, double v) { return Vec3c(0.4 * u * std::polar(1.0, 2 * kPi * v), 0.3, 1.0); };
        s.periodic_v = true;
        break;
    case 1:
        s.eval = [](double u, double v) { return Vec3c(u + 0.2 * v * v, Complex(0.5, v), Complex(1.0, 0.3 * u * v)); };
        break;
    default:
        s.eval = [](double u, double v) {
            return Vec3c(std::cos(u), std::sin(u) * std::polar(1.0, v), 0.7 * std::polar(1.0, u * v));
        };
        break;
    }
    return s;
}

}  // namespace

TEST_CASE("symplectic area is unitary invariant")
{
    std::mt19937_64 rng(5);
    for (int which = 0; which < 3; ++which) {
        const double base = surface_symplectic_area(test_patch(which)).value;
        for (int trial = 0; trial < 10; ++trial) {
            const Mat3c u = random_unitary(rng);
            CHECK(std::abs(surface_symplectic_area(apply_unitary(u, test_patch(which))).value - base) <= 1e-8);
        }
    }
}

TEST_CASE("quadrature is additive under domain splitting")
{
    for (int which = 0; which < 3; ++which) {
        const ParamSurface s = test_patch(which);
        const Estimate whole = surface_symplectic_area(s);
        const Estimate left = surface_symplectic_area(s.restricted_u(0.0, 0.37));
        const Estimate right = surface_symplectic_area(s.restricted_u(0.37, 1.0));
        CHECK(std::abs(whole.value - left.value - right.value) <= whole.error + left.error + right.error + 1e-13);
    }
}

TEST_CASE("finite-difference derivatives converge at least quadratically")
{
    ParamSurface s = test_patch(2);
    // Exact derivative of the normalized lift is unavailable in closed form; compare the
    // density against a much finer step and check the error ratio under halving.
    s.step = 1e-5;
    const double ref = s.form_density(0.4, 0.6);
    s.step = 0.04;
    const double e1 = std::abs(s.form_density(0.4, 0.6) - ref);
    s.step = 0.02;
    const double e2 = std::abs(s.form_density(0.4, 0.6) - ref);
    CHECK(e1 > 0.0);
    CHECK(e2 <= e1 / 4.0);
}

TEST_CASE("moment_map values")
{
    auto m = moment_map(HomogeneousPoint(Vec3c(1.0, 0.0, 0.0)));
    CHECK(m.first == doctest::Approx(1.0));
    CHECK(m.second == doctest::Approx(0.0));
    m = moment_map(HomogeneousPoint(Vec3c(1.0, 1.0, 1.0)));
    CHECK(m.first == doctest::Approx(1.0 / 3));
    CHECK(m.second == doctest::Approx(1.0 / 3));
    m = moment_map(HomogeneousPoint(Vec3c(0.0, 0.0, 1.0)));
    CHECK(m.first == doctest::Approx(0.0));
    CHECK(m.second == doctest::Approx(0.0));
}

TEST_CASE("apply_unitary on points")
{
    std::mt19937_64 rng(9);
    const HomogeneousPoint p(random_vector(rng));
    CHECK(apply_unitary(Mat3c::Identity(), p).projectively_equal(p));

    const HomogeneousPoint q(Vec3c(std::sqrt(0.2), std::sqrt(0.5) * std::polar(1.0, 0.3), std::sqrt(0.3)));
    const auto m = moment_map(apply_unitary(swap_matrix(0, 1), q));
    CHECK(m.first == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.second == doctest::Approx(0.2).epsilon(1e-14));

    Mat3c not_unitary = Mat3c::Identity();
    not_unitary(0, 0) = 1.001;
    CHECK_THROWS_AS(apply_unitary(not_unitary, p), Error);
}

TEST_CASE("non-convergent surfaces are reported")
{
    ParamSurface s;
    s.eval = [](double u, double v) {
        return Vec3c(std::polar(1.0, 40.0 * u * v), (1.0 + u) * std::polar(1.0, 35.0 * v * v * u), 0.5 + v);
    };
    QuadSpec q;
    q.nodes_per_axis = 4;
    try {
        surface_symplectic_area(s, q);
        FAIL("expected NonConvergent");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonConvergent);
    }
}
