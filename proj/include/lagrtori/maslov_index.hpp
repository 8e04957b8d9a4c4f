#pragma once

#include "lagrtori/cp2_geometry.hpp"

#include <array>
#include <functional>
#include <optional>
#include <utility>

namespace lagrtori {

/// A disc u in [0,1] (radial), v in [0,1) (angular, periodic) whose u = 1 edge is the loop
/// boundary_loop(2 pi v), together with the lagrangian tangent frame along that loop.
/// Frame vectors are given relative to the lift returned by boundary_loop.
struct DiscWithBoundary {
    ParamSurface disc;
    std::function<Vec3c(double)> boundary_loop;
    std::function<std::pair<Vec3c, Vec3c>(double)> frame;
    int chart = 2;

    /// Checks the boundary match, frame independence and chart containment on samples;
    /// throws BoundaryMismatch, DeterminantVanishes or ChartEscape.
    void validate(int samples = 64) const;
};

/// Paper-convention Maslov index: winding of det of the frame's holomorphic chart
/// components. One half of the Lagrangian-Grassmannian index, so the basic Clifford disc
/// has mu = 1.
struct MaslovResult {
    int mu = 0;
    double raw_winding = 0.0;
    double integrality_defect = 0.0;
    int samples = 0;
};

/// Determinant of the (1,0) parts of (e1, e2) in affine chart `chart` at lift z.
Complex chart_determinant(const Vec3c& z, const Vec3c& e1, const Vec3c& e2, int chart);

/// Winding of the frame determinant along the boundary in the disc's chart (or `chart`
/// when given). Sampling starts at `initial_samples` and doubles until every phase step
/// is below pi/2.
MaslovResult maslov_index(const DiscWithBoundary& d, std::optional<int> chart = std::nullopt,
                          int initial_samples = 64);

/// Checks mu(d') - mu(d) = 3 * sphere_degree; throws BoundaryMismatch when the discs do not
/// share their boundary loop.
bool disc_difference_check(const DiscWithBoundary& d, const DiscWithBoundary& d_prime,
                           int sphere_degree);

/// Anticanonical degree of the plane in the paper's half convention.
inline constexpr int kAnticanonicalDegree = 3;

/// Tolerance of the canonical-class Bohr-Sommerfeld test 3 * area in Z.
inline constexpr double kCanonicalBsTolerance = 1e-5;

/// m_S(d_i) = mu_i - 3 * area_i for the two basis discs, or nullopt when the torus is not
/// Bohr-Sommerfeld for the canonical class (the class is undefined then).
std::optional<std::array<int, 2>> universal_maslov_class(const std::array<double, 2>& disc_areas,
                                                         const std::array<MaslovResult, 2>& mus);

struct MonotonicityWitness {
    bool canonical_bs = false;
    std::optional<std::array<int, 2>> maslov_class;
    bool monotone = false;
};

MonotonicityWitness is_monotone(const std::array<double, 2>& disc_areas,
                                const std::array<MaslovResult, 2>& mus,
                                double bs_tolerance = kCanonicalBsTolerance);

/// Distance from x to the nearest integer.
double integer_distance(double x);

}  // namespace lagrtori
