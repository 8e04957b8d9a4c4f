#pragma once

#include "lagrtori/cp2_geometry.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lagrtori {

/// Which fixed point of the circle action anchors the delta label: the orbit's disc through
/// that point has area 1 + delta.
enum class Anchor { E0, E1 };

/// Parameters of the conic-pencil torus built over the circle {a e^{it} - mu}.
struct ChekanovParams {
    double a = 0.5;
    Complex mu{1.0, 0.0};
    double delta = 0.0;
    Anchor anchor = Anchor::E0;

    /// Throws PreconditionFailed unless a > 0, mu != 0, |delta| < 1.
    void validate() const;
    /// True when a = |mu| within 1e-9 (the pencil circle passes through 0).
    bool degenerate() const;
    Complex pencil_parameter(double t) const;
};

/// Smooth conic Q_eps = {z0 z1 = eps z2^2}, parametrized equivariantly for the circle
/// action (z0, z1, z2) -> (e^{is} z0, e^{-is} z1, z2). level in [0, 1] runs from the fixed
/// point [1:0:0] (level 0) to [0:1:0] (level 1); s is the orbit angle.
class Conic {
public:
    explicit Conic(Complex eps);

    Complex eps() const noexcept { return eps_; }
    Vec3c lift(double level, double s) const;

    /// |z0 z1 - eps z2^2| on the unit representative.
    static double residual(Complex eps, const HomogeneousPoint& p);

    /// Area of the in-conic disc containing [1:0:0] bounded by the orbit at `level`,
    /// evaluated through the circle action's moment map: 1 - (|z0|^2 - |z1|^2).
    double disc_area(double level) const;

    /// Disc (in the conic) bounded by the orbit at `level` containing [1:0:0]; oriented so
    /// that its area is positive.
    ParamSurface fixed_point_disc(double level) const;
    /// The whole conic as a surface.
    ParamSurface surface() const;

private:
    Complex eps_;
    double scale_;  // sqrt|eps|
    Complex direction_;  // eps / |eps|
};

/// Throws SingularConic for eps = 0 or non-finite eps.
Conic conic_parametrize(Complex eps);

struct ConicPoint {
    Complex eps;
    double s = 0.0;
    double level = 0.0;
};

/// Orbit on Q_eps whose disc through the anchor point has area 1 + delta.
struct ConicCircle {
    Conic conic;
    double delta = 0.0;
    double level = 0.0;
    Anchor anchor = Anchor::E0;

    Vec3c lift(double s) const { return conic.lift(level, s); }
    /// Disc through the anchor; area 1 + delta.
    ParamSurface disc() const;
    /// Disc through the other fixed point; area 1 - delta.
    ParamSurface complementary_disc() const;
};

/// Root of the anchored disc area = 1 + delta by TOMS 748 to full double precision.
/// Throws SingularConic or RootNotBracketed.
ConicCircle conic_circle(Complex eps, double delta, Anchor anchor = Anchor::E0);

/// Torus (t, s) -> orbit at delta on Q_{a e^{it} - mu}.
class ChekanovTorus {
public:
    explicit ChekanovTorus(ChekanovParams p);

    const ChekanovParams& params() const noexcept { return params_; }
    Vec3c lift(double t, double s) const;
    /// Section loop t -> lift(t, 0).
    Vec3c section(double t) const { return lift(t, 0.0); }
    double lagrangian_residual(int grid = 64) const;
    /// sup of the defining-equation residual over a grid x grid sample.
    double equation_residual(int grid = 64) const;

private:
    ChekanovParams params_;
};

/// Throws DegenerateFamily when a = |mu|, PreconditionFailed for invalid parameters.
ChekanovTorus chekanov_torus(const ChekanovParams& p);

enum class TorusType { Clifford, Chekanov, Boundary };

const char* to_string(TorusType t);

TorusType classify_type(const ChekanovParams& p);

struct ChekanovPeriods {
    double p_orbit = 0.0;
    double p_section = 0.0;
    int attempts = 0;  ///< coning basepoints tried
    int levels = 0;  ///< quadrature refinement levels used for the section disc
};

/// Orbit period from the in-conic disc and section period from a coning disc to a seeded
/// random basepoint; both reduced to [0, 1). The section quadrature is refined up to three
/// extra levels per basepoint. Throws ConingDegenerate after 8 failed bases.
ChekanovPeriods torus_periods_chekanov(const ChekanovParams& p, const QuadSpec& q = {},
                                       std::uint64_t seed = 20240601);

struct ScanRow {
    double a = 0.0;
    double delta = 0.0;
    double p_orbit = 0.0;
    double p_section = 0.0;
    /// max_i dist(3 p_i, Z) for (orbit, section)
    double defect = 0.0;
    /// min over k in {-1, 0, 1} of the joint defect with section + k * orbit
    double defect_any_section = 0.0;
};

struct ScanReport {
    Complex mu;
    std::vector<ScanRow> rows;  ///< a-major, delta-minor order
    double min_defect = 0.0;
    std::size_t argmin = 0;
    double min_defect_any_section = 0.0;
    bool no_canonical_bs = false;
};

inline constexpr double kPeriodTolerance = 1e-6;

/// Canonical-class Bohr-Sommerfeld defects over the grid; every a must lie in (0, |mu|).
ScanReport canonical_bs_scan(Complex mu, const std::vector<double>& a_grid,
                             const std::vector<double>& delta_grid, const QuadSpec& q = {},
                             std::uint64_t seed = 20240601);

/// Inclusive grid lo, lo + step, ..., snapped so that hi is hit when (hi - lo) / step is
/// integral within 1e-9.
std::vector<double> make_grid(double lo, double hi, double step);

}  // namespace lagrtori
