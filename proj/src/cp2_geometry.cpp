#include "lagrtori/cp2_geometry.hpp"

#include "lagrtori/error.hpp"
#include "lagrtori/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lagrtori {

HomogeneousPoint::HomogeneousPoint(const Vec3c& raw)
{
    if (raw.cwiseAbs().maxCoeff() < 1e-300)
        throw Error(ErrorCode::ZeroVector, "all homogeneous coordinates vanish");
    z_ = raw / raw.norm();
}

Vec3c HomogeneousPoint::canonical() const
{
    for (int i = 0; i < 3; ++i) {
        const double r = std::abs(z_[i]);
        if (r > 1e-300) {
            Vec3c w = z_ * (std::conj(z_[i]) / r);
            w[i] = Complex(r, 0.0);
            return w;
        }
    }
    return z_;
}

bool HomogeneousPoint::projectively_equal(const HomogeneousPoint& other, double tol) const
{
    return chordal_distance(*this, other) <= tol;
}

HomogeneousPoint normalize_point(const Vec3c& raw) { return HomogeneousPoint(raw); }

double chordal_distance(const HomogeneousPoint& a, const HomogeneousPoint& b)
{
    // Norm of the component of b orthogonal to a; avoids cancellation in 1 - |<a,b>|^2.
    return (b.z() - hermitian(b.z(), a.z()) * a.z()).norm();
}

TangentVector TangentVector::horizontal(const HomogeneousPoint& base, const Vec3c& u)
{
    return {base, u - hermitian(u, base.z()) * base.z()};
}

double fs_form_value(const HomogeneousPoint& p, const TangentVector& u, const TangentVector& v)
{
    if (!u.base.projectively_equal(p, 1e-10) || !v.base.projectively_equal(p, 1e-10))
        throw Error(ErrorCode::GaugeViolation, "tangent vectors are based at a different point");
    // Both vectors must be horizontal with respect to the same representative.
    const Complex phase_u = hermitian(p.z(), u.base.z());
    const Complex phase_v = hermitian(p.z(), v.base.z());
    const Vec3c uu = u.u * phase_u;
    const Vec3c vv = v.u * phase_v;
    if (std::abs(hermitian(uu, p.z())) > kGaugeTolerance ||
        std::abs(hermitian(vv, p.z())) > kGaugeTolerance)
        throw Error(ErrorCode::GaugeViolation, "tangent vector is not horizontal");
    return kFormScale * hermitian(uu, vv).imag();
}

double fs_form_lift(const Vec3c& z, const Vec3c& du, const Vec3c& dv)
{
    const Vec3c hu = du - hermitian(du, z) * z;
    const Vec3c hv = dv - hermitian(dv, z) * z;
    return kFormScale * hermitian(hu, hv).imag();
}

namespace {

Vec3c unit(const Vec3c& w)
{
    const double n = w.norm();
    if (!(n > 1e-300))
        throw Error(ErrorCode::ZeroVector, "surface lift vanishes");
    return w / n;
}

// Fourth-order first derivative of g at x along one axis.
template <typename G>
Vec3c derivative(const G& g, double x, double h, bool periodic)
{
    if (periodic || (x - 2 * h >= 0.0 && x + 2 * h <= 1.0))
        return (g(x - 2 * h) - 8.0 * g(x - h) + 8.0 * g(x + h) - g(x + 2 * h)) / (12.0 * h);
    const double s = (x - 2 * h < 0.0) ? h : -h;
    return (-25.0 * g(x) + 48.0 * g(x + s) - 36.0 * g(x + 2 * s) + 16.0 * g(x + 3 * s) -
            3.0 * g(x + 4 * s)) /
           (12.0 * s);
}

Estimate integrate(const ParamSurface& s, const std::function<double(const HomogeneousPoint&)>* weight,
                   const QuadSpec& q)
{
    q.validate();
    auto level_value = [&](int nodes, int panels) {
        const GaussRule rule = composite_gauss_legendre(nodes, panels);
        double total = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const auto jet = s.jet(rule.nodes[i], rule.nodes[j]);
                double f = fs_form_lift(jet.z, jet.du, jet.dv);
                if (weight)
                    f *= (*weight)(HomogeneousPoint(jet.z));
                row += rule.weights[j] * f;
            }
            total += rule.weights[i] * row;
        }
        return total;
    };
    const int n = q.nodes_per_axis;
    const int finest = 1 << (q.refinement_levels - 1);
    const double fine = level_value(n, finest);
    const double coarse = q.refinement_levels > 1 ? level_value(n, finest / 2) : level_value(n / 2, 1);
    Estimate e{fine, std::abs(fine - coarse)};
    if (!(e.error <= kConvergenceTolerance))
        throw Error(ErrorCode::NonConvergent,
                    "refinement levels disagree by " + std::to_string(e.error));
    return e;
}

}  // namespace

ParamSurface::Jet ParamSurface::jet(double u, double v) const
{
    Jet j;
    j.z = unit(eval(u, v));
    // Derivatives of the unit lift; rephase each stencil sample onto z so that lifts
    // with a discontinuous phase gauge still difference correctly.
    auto aligned = [&](const Vec3c& w) {
        const Vec3c n = unit(w);
        const Complex overlap = hermitian(j.z, n);
        const double a = std::abs(overlap);
        return a > 0.0 ? Vec3c(n * (overlap / a)) : n;
    };
    j.du = derivative([&](double x) { return aligned(eval(x, v)); }, u, step, periodic_u);
    j.dv = derivative([&](double y) { return aligned(eval(u, y)); }, v, step, periodic_v);
    return j;
}

double ParamSurface::form_density(double u, double v) const
{
    const Jet j = jet(u, v);
    return fs_form_lift(j.z, j.du, j.dv);
}

ParamSurface ParamSurface::restricted_u(double u0, double u1) const
{
    ParamSurface r = *this;
    r.eval = [f = eval, u0, u1](double u, double v) { return f(u0 + (u1 - u0) * u, v); };
    return r;
}

void QuadSpec::validate() const
{
    if (nodes_per_axis < 4)
        throw Error(ErrorCode::PreconditionFailed, "QuadSpec needs at least 4 nodes per axis");
    if (refinement_levels < 1 || refinement_levels > 8)
        throw Error(ErrorCode::PreconditionFailed, "QuadSpec refinement_levels must be in [1, 8]");
}

Estimate surface_symplectic_area(const ParamSurface& s, const QuadSpec& q)
{
    return integrate(s, nullptr, q);
}

Estimate surface_weighted_area(const ParamSurface& s,
                               const std::function<double(const HomogeneousPoint&)>& weight,
                               const QuadSpec& q)
{
    return integrate(s, &weight, q);
}

double lagrangian_residual(const std::function<Vec3c(double, double)>& torus, int grid)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    ParamSurface s;
    s.eval = [&torus](double u, double v) { return torus(two_pi * u, two_pi * v); };
    s.periodic_u = s.periodic_v = true;
    double worst = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            worst = std::max(worst, std::abs(s.form_density(double(i) / grid, double(j) / grid)));
    return worst / (two_pi * two_pi);
}

std::pair<double, double> moment_map(const HomogeneousPoint& p)
{
    return {std::norm(p[0]), std::norm(p[1])};
}

bool is_unitary(const Mat3c& u, double tol)
{
    return (u.adjoint() * u - Mat3c::Identity()).norm() <= tol;
}

HomogeneousPoint apply_unitary(const Mat3c& u, const HomogeneousPoint& p)
{
    if (!is_unitary(u))
        throw Error(ErrorCode::NotUnitary, "matrix is not unitary within 1e-10");
    return HomogeneousPoint(u * p.z());
}

ParamSurface apply_unitary(const Mat3c& u, const ParamSurface& s)
{
    if (!is_unitary(u))
        throw Error(ErrorCode::NotUnitary, "matrix is not unitary within 1e-10");
    ParamSurface r = s;
    r.eval = [f = s.eval, u](double a, double b) -> Vec3c { return u * f(a, b); };
    return r;
}

Mat3c swap_matrix(int i, int j)
{
    Mat3c m = Mat3c::Identity();
    m.row(i).swap(m.row(j));
    return m;
}

}  // namespace lagrtori
