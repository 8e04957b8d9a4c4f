#pragma once

#include "lagrtori/chekanov_fibration.hpp"
#include "lagrtori/clifford_fibration.hpp"
#include "lagrtori/cp2_geometry.hpp"

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace lagrtori {

/// Hermitian 3x3 matrix A with symbol f_A([z]) = <Az, z> / <z, z>.
class HermitianSymbol {
public:
    /// Throws NotHermitian unless A = A^dagger within 1e-12.
    explicit HermitianSymbol(const Mat3c& a);

    const Mat3c& matrix() const noexcept { return a_; }
    double value(const Vec3c& z) const;

    static HermitianSymbol swap_block(int i, int j);
    static HermitianSymbol diagonal(double d0, double d1, double d2);

private:
    Mat3c a_;
};

/// exp(i t A) by unitary diagonalization.
Mat3c symbol_flow(const HermitianSymbol& a, double t);

enum class CertificateMethod { MomentImageDisjoint, SampledDistance };

const char* to_string(CertificateMethod m);

struct DisplacementCertificate {
    Mat3c symbol;
    double time = 0.0;
    double separation = 0.0;
    CertificateMethod method = CertificateMethod::MomentImageDisjoint;
    int samples = 0;
    /// Human-readable flow name, e.g. "swap(0,1)".
    std::string flow;
};

/// Either a certificate or the reason none was issued.
struct DisplacementOutcome {
    std::optional<DisplacementCertificate> certificate;
    std::string reason;

    bool displaced() const noexcept { return certificate.has_value(); }
};

/// Tries the swap flows z0<->z1, z1<->z2, z0<->z2 at t = pi/2; certifies when the image fiber
/// sits over a different moment value. The exact overload compares rationals; the double
/// overload uses a 1e-12 tolerance. Returns "NotDisplacedByTheseFlows" at the centroid.
DisplacementOutcome displace_clifford(const RationalActions& b);
DisplacementOutcome displace_clifford(const ActionCoords& b);

inline constexpr double kChekanovSeparationThreshold = 1e-3;

struct ChekanovDisplacement {
    DisplacementOutcome outcome;  ///< reason "Inconclusive" when sampling cannot separate
    double pencil_gap = 0.0;  ///< distance between the pencil circles, 2 (|mu| - a)
    double sampled_separation = 0.0;
    int samples_per_torus = 0;
};

/// Rotates the pencil by exp(i (pi/2) diag(0,0,1)), which sends eps to -eps, and measures
/// the sampled chordal distance between the torus and its image on a grid x grid sample.
/// Throws PreconditionFailed unless the torus is of Chekanov type.
ChekanovDisplacement displace_chekanov(const ChekanovParams& p, int grid = 128);

/// The rotation symbol: F = |z0|^2 + |z1|^2 + 4 Re(z0 conj z1) over |z|^2.
HermitianSymbol rotation_symbol();

/// Section [sqrt(a) cos(pi u/2) : sqrt(a) sin(pi u/2) e^{2 pi i v} : sqrt(1 - a)] of the level
/// set {r0 + r1 = alpha}; its image in the reduced sphere has area alpha.
ParamSurface reduced_sphere(double alpha);

/// Height function on the reduced sphere in section coordinates.
double reduced_height(double alpha, double u, double v);

struct CriticalPoint {
    HomogeneousPoint point;
    double value = 0.0;
    int morse_index = 0;
};

struct AlphaSlice {
    double alpha = 0.0;
    Estimate reduced_area;
    Estimate normalization;  ///< integral of f_alpha omega_alpha, target alpha^2
    /// Critical points of f_alpha in section coordinates (u, v); both lie on u = 1/2.
    std::vector<std::array<double, 2>> marked_critical;
    double assembly_defect = 0.0;  ///< sup |F - f_alpha| on the sampled section
};

struct RotationReport {
    std::vector<AlphaSlice> slices;
    std::vector<CriticalPoint> critical_points;
    double periodicity_defect = 0.0;  ///< max chordal distance exp(2 pi i A) p vs p
    double swap_defect = 0.0;  ///< max moment error of (c1, c2) -> (c2, c1) at t = pi/4
    int periodicity_samples = 0;
    int swap_samples = 0;
};

inline constexpr double kRotationAreaTolerance = 1e-6;
inline constexpr double kSwapTime = std::numbers::pi / 4;

/// Builds the rotation for each alpha in (0, 1) on a grid x grid sample (grid >= 32).
/// Throws PreconditionFailed, NormalizationFailure or CriticalPointMiscount.
RotationReport build_diagonal_rotation(const std::vector<double>& alphas, int grid = 64,
                                       std::uint64_t seed = 20240601);

enum class EncVerdict { Displaceable, Monotone };

const char* to_string(EncVerdict v);

struct EncResult {
    RationalActions point;
    EncVerdict verdict = EncVerdict::Displaceable;
    DisplacementOutcome displacement;
    MonotonicityWitness witness;
};

/// Exactly one of Displaceable / Monotone; throws InternalContradiction otherwise and
/// BoundaryFiber off the open triangle.
EncResult enc_verdict(const RationalActions& b, const QuadSpec& q = {},
                      double bs_tolerance = kCanonicalBsTolerance);

/// Open lattice {(i/n, j/n)} of the triangle, plus the centroid when 3 does not divide n.
std::vector<RationalActions> enc_grid(int n);

}  // namespace lagrtori
