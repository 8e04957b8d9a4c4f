#pragma once

#include "lagrtori/cp2_geometry.hpp"
#include "lagrtori/maslov_index.hpp"

#include <boost/rational.hpp>

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace lagrtori {

/// Point (r0, r1) of the moment triangle {r0 >= 0, r1 >= 0, r0 + r1 <= 1}.
struct ActionCoords {
    double r0 = 0.0;
    double r1 = 0.0;

    double r2() const { return 1.0 - r0 - r1; }
    bool in_closed_triangle(double tol = 0.0) const
    {
        return r0 >= -tol && r1 >= -tol && r0 + r1 <= 1.0 + tol;
    }
    bool interior() const { return r0 > 0.0 && r1 > 0.0 && r0 + r1 < 1.0; }
};

/// (p, q) in the basis (d1, d2) of H_1 of a fiber.
struct HomologyClass {
    int p = 0;
    int q = 0;
    friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

inline constexpr HomologyClass kD1{1, 0};
inline constexpr HomologyClass kD2{0, 1};
inline constexpr HomologyClass kD3{1, 1};

/// Torus (t0, t1) -> [sqrt(r0) e^{i t0} : sqrt(r1) e^{i t1} : sqrt(r2)].
class CliffordFiber {
public:
    explicit CliffordFiber(ActionCoords base);

    const ActionCoords& base() const noexcept { return base_; }
    Vec3c lift(double theta0, double theta1) const;
    HomogeneousPoint at(double theta0, double theta1) const { return HomogeneousPoint(lift(theta0, theta1)); }

    /// Torus tangent vectors d/dtheta0, d/dtheta1 relative to lift(theta0, theta1).
    std::pair<Vec3c, Vec3c> frame(double theta0, double theta1) const;

    /// sup |omega(d/dtheta0, d/dtheta1)| on a grid x grid lattice, from the exact frame.
    double lagrangian_defect(int grid = 32) const;

private:
    ActionCoords base_;
    double a0_, a1_, a2_;
};

/// Throws BoundaryFiber unless b is interior.
CliffordFiber clifford_fiber(ActionCoords b);

/// Standard disc of class d1, d2 (shrinking to D1 resp. D2 at fixed other action) or d3
/// (shrinking along the ray to the corner D1 cap D2; area r0 + r1). Boundary loops run
/// through theta = 0 in the fixed coordinate. Throws UnsupportedClass for other classes.
DiscWithBoundary standard_disc(const CliffordFiber& fiber, HomologyClass c);

/// Disc of class d3 that caps the loop through the divisor D3 = {z2 = 0}; area
/// -(1 - r0 - r1), chart z0 != 0. Differs from the standard d3 disc by one line.
DiscWithBoundary d3_cap_disc(const CliffordFiber& fiber);

/// Disc of class d1 through the corner [1:0:0]; area r0 - 1, chart z0 != 0. Differs from
/// the standard d1 disc by minus one line.
DiscWithBoundary d1_complement_disc(const CliffordFiber& fiber);

/// x mod 1 in [0, 1).
double reduce_mod1(double x);

/// Unreduced symplectic areas of the standard discs (d1, d2).
std::array<Estimate, 2> standard_disc_areas(const ActionCoords& b, const QuadSpec& q = {});

/// Periods of (d1, d2) reduced to [0, 1).
std::pair<double, double> fiber_periods(const ActionCoords& b, const QuadSpec& q = {});

/// Period of an arbitrary class, k * area of its disc reduced mod 1 (level k).
double period_at_level(double disc_area, int level);

using Rational = boost::rational<std::int64_t>;

struct RationalActions {
    Rational r0;
    Rational r1;
    friend bool operator==(const RationalActions&, const RationalActions&) = default;
};

struct BSFiberSet {
    int level = 1;
    bool closed = false;
    std::vector<RationalActions> fibers;
    std::size_t count = 0;
};

/// Exact lattice {(i/k, j/k)} in the open (or closed) triangle, in lexicographic (i, j) order.
BSFiberSet enumerate_bs_fibers(int k, bool closed);

/// Closed-form counts (k-1)(k-2)/2 (open) and (k+1)(k+2)/2 (closed).
std::int64_t bs_count_formula(int k, bool closed);

struct HilbertComparison {
    std::int64_t bs_count = 0;
    std::int64_t section_dimension = 0;  ///< dim H^0(O(k-3)) open, dim H^0(O(k)) closed
    int line_bundle_degree = 0;
    bool equal = false;
};

HilbertComparison hilbert_dimension(int k, bool closed);

/// dim H^0(CP^2, O(d)) = binomial(d + 2, 2), zero for d < 0.
std::int64_t sections_dimension(int d);

/// Lift of the period map for (d1, d2): unreduced standard-disc areas in the interior,
/// continuous extension (r0, r1) on the boundary of the triangle.
std::pair<double, double> lifted_period_map(const ActionCoords& b, const QuadSpec& q = {});

struct KsJacobian {
    std::array<std::array<double, 2>, 2> matrix{};
    double determinant = 0.0;
};

/// Central-difference Jacobian of the lifted period map; throws StencilOutOfDomain when the
/// stencil leaves the open triangle.
KsJacobian ks_jacobian(const ActionCoords& b, double h = 1e-4, const QuadSpec& q = {});

/// Real trigonometric polynomial on T^2: sum of a_cos cos(m0 t0 + m1 t1) + a_sin sin(...).
struct TrigPolynomial {
    struct Term {
        int m0 = 0, m1 = 0;
        double a_cos = 0.0, a_sin = 0.0;
    };
    std::vector<Term> terms;

    double value(double t0, double t1) const;
    std::array<double, 2> gradient(double t0, double t1) const;
};

/// Closed 1-form c1 dt0 + c2 dt1 + df scaled by s, in area units.
struct DeformationSpec {
    double c1 = 0.0;
    double c2 = 0.0;
    TrigPolynomial f;
    double s = 0.0;
};

/// Graph of a closed 1-form over a Clifford fiber in action-angle coordinates.
class DeformedTorus {
public:
    DeformedTorus(CliffordFiber fiber, DeformationSpec spec);

    std::array<double, 2> actions(double theta0, double theta1) const;
    Vec3c lift(double theta0, double theta1) const;
    const CliffordFiber& fiber() const noexcept { return fiber_; }
    const DeformationSpec& spec() const noexcept { return spec_; }

    /// Disc bounding the d1 (theta1 = 0) or d2 (theta0 = 0) loop of the deformed torus.
    ParamSurface basis_disc(int index) const;

    double lagrangian_residual(int grid = 32) const;

private:
    CliffordFiber fiber_;
    DeformationSpec spec_;
};

/// Throws LeavesTriangle when the graph leaves the open triangle on a 64x64 sample grid.
DeformedTorus deform_fiber(const CliffordFiber& fiber, const DeformationSpec& d);

/// Level-1 periods of the deformed torus, reduced to [0, 1).
std::pair<double, double> deformed_periods(const DeformedTorus& torus, const QuadSpec& q = {});

}  // namespace lagrtori
