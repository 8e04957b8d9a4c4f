#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <utility>

namespace lagrtori {

using Complex = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

/// Hermitian product sum_i u_i * conj(v_i).
inline Complex hermitian(const Vec3c& u, const Vec3c& v) { return v.dot(u); }

/// A point [z0:z1:z2] of the projective plane, stored as a unit-norm representative.
class HomogeneousPoint {
public:
    /// Normalizes `raw`; throws ZeroVector when every component is below 1e-300.
    explicit HomogeneousPoint(const Vec3c& raw);

    const Vec3c& z() const noexcept { return z_; }
    Complex operator[](int i) const { return z_[i]; }

    /// Representative whose first nonzero coordinate is real and positive.
    Vec3c canonical() const;

    /// True when the representatives differ by a unit phase, i.e. 1 - |<z,w>|^2 <= tol^2.
    bool projectively_equal(const HomogeneousPoint& other, double tol = 1e-12) const;

private:
    Vec3c z_;
};

HomogeneousPoint normalize_point(const Vec3c& raw);

/// Chordal (Fubini-Study sine) distance sqrt(1 - |<z,w>|^2).
double chordal_distance(const HomogeneousPoint& a, const HomogeneousPoint& b);

/// A tangent vector in the horizontal gauge: <u, z> = 0.
struct TangentVector {
    HomogeneousPoint base;
    Vec3c u;

    /// Projects an arbitrary derivative of the unit lift onto the horizontal subspace.
    static TangentVector horizontal(const HomogeneousPoint& base, const Vec3c& u);
};

/// Scale of the symplectic form: omega(u, v) = kFormScale * Im<u, v>. The value makes
/// every projective line have area exactly +1 in its complex orientation.
inline constexpr double kFormScale = -0.31830988618379067154;  // -1/pi

inline constexpr double kGaugeTolerance = 1e-10;

/// Fubini-Study form on horizontal tangent vectors at a common base point.
double fs_form_value(const HomogeneousPoint& p, const TangentVector& u, const TangentVector& v);

/// Form value for derivatives du, dv of a unit-norm lift through z in any phase gauge.
double fs_form_lift(const Vec3c& z, const Vec3c& du, const Vec3c& dv);

/// Smooth map [0,1]^2 -> C^3 \ {0}; its projectivization is the surface. An axis flagged
/// periodic is differenced across the domain edge, so eval must accept values outside [0,1]
/// along it.
struct ParamSurface {
    std::function<Vec3c(double, double)> eval;
    bool periodic_u = false;
    bool periodic_v = false;
    double step = 2.5e-4;

    HomogeneousPoint point(double u, double v) const { return HomogeneousPoint(eval(u, v)); }

    /// Unit lift and its partial derivatives (fourth-order differences, one-sided near
    /// non-periodic edges).
    struct Jet {
        Vec3c z, du, dv;
    };
    Jet jet(double u, double v) const;

    /// omega(d/du, d/dv) at (u, v).
    double form_density(double u, double v) const;

    /// Reparametrized restriction to [u0, u1] x [0, 1].
    ParamSurface restricted_u(double u0, double u1) const;
};

struct QuadSpec {
    int nodes_per_axis = 32;
    int refinement_levels = 2;

    void validate() const;
};

/// Value plus the difference between the last two refinement levels.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

inline constexpr double kConvergenceTolerance = 1e-6;

/// Integral of omega over S; throws NonConvergent when the last two refinement levels
/// disagree by more than kConvergenceTolerance.
Estimate surface_symplectic_area(const ParamSurface& s, const QuadSpec& q = {});

/// Integral of weight * omega over S.
Estimate surface_weighted_area(const ParamSurface& s,
                               const std::function<double(const HomogeneousPoint&)>& weight,
                               const QuadSpec& q = {});

/// sup |omega(d/da, d/db)| of a torus map over angles (a, b) in [0, 2pi)^2, sampled on a
/// grid x grid lattice; derivatives per unit angle.
double lagrangian_residual(const std::function<Vec3c(double, double)>& torus, int grid);

/// (|z0|^2, |z1|^2) of the unit representative.
std::pair<double, double> moment_map(const HomogeneousPoint& p);

bool is_unitary(const Mat3c& u, double tol = 1e-10);

HomogeneousPoint apply_unitary(const Mat3c& u, const HomogeneousPoint& p);
ParamSurface apply_unitary(const Mat3c& u, const ParamSurface& s);

/// Coordinate-swap permutation matrix exchanging z_i and z_j.
Mat3c swap_matrix(int i, int j);

}  // namespace lagrtori
