#include "lagrtori/displacement_flows.hpp"

#include "lagrtori/error.hpp"
#include "lagrtori/maslov_index.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace lagrtori {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;
using Embedded = bg::model::point<double, 9, bg::cs::cartesian>;

// Hermitian projector z z^dagger as a point of R^9; Euclidean distance is sqrt(2) times
// the chordal distance.
Embedded embed(const Vec3c& raw)
{
    const Vec3c z = raw.normalized();
    const double r2 = std::sqrt(2.0);
    const Complex p01 = z[0] * std::conj(z[1]), p02 = z[0] * std::conj(z[2]), p12 = z[1] * std::conj(z[2]);
    Embedded e;
    bg::set<0>(e, std::norm(z[0]));
    bg::set<1>(e, std::norm(z[1]));
    bg::set<2>(e, std::norm(z[2]));
    bg::set<3>(e, r2 * p01.real());
    bg::set<4>(e, r2 * p01.imag());
    bg::set<5>(e, r2 * p02.real());
    bg::set<6>(e, r2 * p02.imag());
    bg::set<7>(e, r2 * p12.real());
    bg::set<8>(e, r2 * p12.imag());
    return e;
}

constexpr std::array<std::array<int, 2>, 3> kSwapPairs{{{0, 1}, {1, 2}, {0, 2}}};

std::string swap_name(int i, int j) { return "swap(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

DisplacementCertificate swap_certificate(int i, int j, double gap)
{
    DisplacementCertificate c;
    c.symbol = HermitianSymbol::swap_block(i, j).matrix();
    c.time = kPi / 2;
    c.separation = std::sqrt(2.0) * gap;
    c.method = CertificateMethod::MomentImageDisjoint;
    c.flow = swap_name(i, j);
    return c;
}

// The swap flow must move the fiber over (r_i, r_j) to (r_j, r_i).
void confirm_swap(int i, int j, const std::array<double, 3>& r)
{
    const Mat3c u = symbol_flow(HermitianSymbol::swap_block(i, j), kPi / 2);
    const Vec3c z(std::sqrt(r[0]) * std::polar(1.0, 0.3), std::sqrt(r[1]) * std::polar(1.0, 1.1), std::sqrt(r[2]));
    const Vec3c w = (u * z).normalized();
    std::array<double, 3> expected = r;
    std::swap(expected[i], expected[j]);
    for (int k = 0; k < 3; ++k)
        if (std::abs(std::norm(w[k]) - expected[k]) > 1e-12)
            throw Error(ErrorCode::InternalContradiction, "swap flow failed to exchange moment values");
}

}  // namespace

HermitianSymbol::HermitianSymbol(const Mat3c& a) : a_(a)
{
    if (!a.allFinite() || (a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw Error(ErrorCode::NotHermitian, "symbol matrix is not Hermitian");
}

double HermitianSymbol::value(const Vec3c& z) const { return hermitian(a_ * z, z).real() / z.squaredNorm(); }

HermitianSymbol HermitianSymbol::swap_block(int i, int j)
{
    if (i == j || i < 0 || j < 0 || i > 2 || j > 2)
        throw Error(ErrorCode::PreconditionFailed, "swap block needs two distinct indices in 0..2");
    Mat3c a = Mat3c::Zero();
    a(i, j) = a(j, i) = 1.0;
    return HermitianSymbol(a);
}

HermitianSymbol HermitianSymbol::diagonal(double d0, double d1, double d2)
{
    Mat3c a = Mat3c::Zero();
    a(0, 0) = d0;
    a(1, 1) = d1;
    a(2, 2) = d2;
    return HermitianSymbol(a);
}

Mat3c symbol_flow(const HermitianSymbol& a, double t)
{
    Eigen::SelfAdjointEigenSolver<Mat3c> es(a.matrix());
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::NonConvergent, "Hermitian eigensolver failed");
    Eigen::Vector3cd phases;
    for (int k = 0; k < 3; ++k)
        phases[k] = std::polar(1.0, t * es.eigenvalues()[k]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

const char* to_string(CertificateMethod m)
{
    return m == CertificateMethod::MomentImageDisjoint ? "MomentImageDisjoint" : "SampledDistance";
}

DisplacementOutcome displace_clifford(const RationalActions& b)
{
    const Rational r2 = Rational(1) - b.r0 - b.r1;
    if (!(b.r0 > 0 && b.r1 > 0 && r2 > 0))
        throw Error(ErrorCode::BoundaryFiber, "displacement needs an interior fiber");
    const std::array<Rational, 3> r{b.r0, b.r1, r2};
    const std::array<double, 3> rd{boost::rational_cast<double>(b.r0), boost::rational_cast<double>(b.r1),
                                   boost::rational_cast<double>(r2)};
    for (const auto& [i, j] : kSwapPairs) {
        if (r[i] != r[j]) {
            confirm_swap(i, j, rd);
            return {swap_certificate(i, j, std::abs(rd[i] - rd[j])), ""};
        }
    }
    return {std::nullopt, "NotDisplacedByTheseFlows"};
}

DisplacementOutcome displace_clifford(const ActionCoords& b)
{
    if (!b.interior())
        throw Error(ErrorCode::BoundaryFiber, "displacement needs an interior fiber");
    const std::array<double, 3> r{b.r0, b.r1, b.r2()};
    for (const auto& [i, j] : kSwapPairs) {
        if (std::abs(r[i] - r[j]) > 1e-12) {
            confirm_swap(i, j, r);
            return {swap_certificate(i, j, std::abs(r[i] - r[j])), ""};
        }
    }
    return {std::nullopt, "NotDisplacedByTheseFlows"};
}

ChekanovDisplacement displace_chekanov(const ChekanovParams& p, int grid)
{
    p.validate();
    if (classify_type(p) != TorusType::Chekanov)
        throw Error(ErrorCode::PreconditionFailed, "displacement by pencil rotation needs a < |mu|");
    if (grid < 8)
        throw Error(ErrorCode::PreconditionFailed, "sample grid must be at least 8");

    const HermitianSymbol rotation = HermitianSymbol::diagonal(0.0, 0.0, 1.0);
    const Mat3c u = symbol_flow(rotation, kPi / 2);

    std::vector<Vec3c> source;
    source.reserve(std::size_t(grid) * grid);
    for (int i = 0; i < grid; ++i) {
        const ConicCircle circle = conic_circle(p.pencil_parameter(kTwoPi * i / grid), p.delta, p.anchor);
        for (int j = 0; j < grid; ++j)
            source.push_back(circle.lift(kTwoPi * j / grid).normalized());
    }
    bgi::rtree<std::pair<Embedded, std::size_t>, bgi::quadratic<16>> tree;
    {
        std::vector<std::pair<Embedded, std::size_t>> image;
        image.reserve(source.size());
        for (std::size_t k = 0; k < source.size(); ++k)
            image.emplace_back(embed(u * source[k]), k);
        tree = decltype(tree)(image.begin(), image.end());
    }
    double separation = std::numeric_limits<double>::infinity();
    for (const Vec3c& z : source) {
        std::vector<std::pair<Embedded, std::size_t>> hit;
        tree.query(bgi::nearest(embed(z), 1), std::back_inserter(hit));
        separation = std::min(separation, chordal_distance(HomogeneousPoint(z), HomogeneousPoint(u * source[hit[0].second])));
    }

    ChekanovDisplacement out;
    out.pencil_gap = 2.0 * (std::abs(p.mu) - p.a);
    out.sampled_separation = separation;
    out.samples_per_torus = grid * grid;
    if (separation > kChekanovSeparationThreshold) {
        DisplacementCertificate c;
        c.symbol = rotation.matrix();
        c.time = kPi / 2;
        c.separation = separation;
        c.method = CertificateMethod::SampledDistance;
        c.samples = grid * grid;
        c.flow = "diag(0,0,1)";
        out.outcome = {c, ""};
    } else {
        out.outcome = {std::nullopt, "Inconclusive"};
    }
    return out;
}

HermitianSymbol rotation_symbol()
{
    Mat3c a = Mat3c::Zero();
    a(0, 0) = a(1, 1) = 1.0;
    a(0, 1) = a(1, 0) = 2.0;
    return HermitianSymbol(a);
}

ParamSurface reduced_sphere(double alpha)
{
    ParamSurface s;
    const double ra = std::sqrt(alpha), rc = std::sqrt(1.0 - alpha);
    s.eval = [ra, rc](double u, double v) {
        return Vec3c(ra * std::cos(kPi * u / 2), ra * std::sin(kPi * u / 2) * std::polar(1.0, kTwoPi * v), rc);
    };
    s.periodic_v = true;
    return s;
}

double reduced_height(double alpha, double u, double v)
{
    return alpha + 2.0 * alpha * std::sin(kPi * u) * std::cos(kTwoPi * v);
}

namespace {

// Critical points of f(u, v) = F(section(u, v)) away from the collapsed pole u = 0 and the
// boundary circle u = 1, by Newton with central differences.
std::vector<std::array<double, 2>> section_critical_points(const HermitianSymbol& f, double alpha)
{
    const ParamSurface s = reduced_sphere(alpha);
    auto value = [&](double u, double v) { return f.value(s.eval(u, v)); };
    constexpr double h = 1e-4;
    std::vector<std::array<double, 2>> found;
    for (int a = 1; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            double u = a / 8.0, v = b / 8.0;
            bool converged = false;
            for (int it = 0; it < 60 && !converged; ++it) {
                const double fc = value(u, v);
                const double gu = (value(u + h, v) - value(u - h, v)) / (2 * h);
                const double gv = (value(u, v + h) - value(u, v - h)) / (2 * h);
                const double huu = (value(u + h, v) - 2 * fc + value(u - h, v)) / (h * h);
                const double hvv = (value(u, v + h) - 2 * fc + value(u, v - h)) / (h * h);
                const double huv = (value(u + h, v + h) - value(u + h, v - h) - value(u - h, v + h) +
                                    value(u - h, v - h)) / (4 * h * h);
                const double det = huu * hvv - huv * huv;
                if (std::hypot(gu, gv) < 1e-9) {
                    converged = true;
                    break;
                }
                if (std::abs(det) < 1e-14)
                    break;
                u -= (hvv * gu - huv * gv) / det;
                v -= (huu * gv - huv * gu) / det;
                if (!(u > 0.02 && u < 0.98))
                    break;
            }
            if (!converged)
                continue;
            v -= std::floor(v);
            if (v > 1.0 - 1e-9)
                v = 0.0;
            const bool dup = std::any_of(found.begin(), found.end(), [&](const auto& c) {
                const double dv = std::abs(c[1] - v);
                return std::abs(c[0] - u) < 1e-6 && std::min(dv, 1.0 - dv) < 1e-6;
            });
            if (!dup)
                found.push_back({u, v});
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) { return l[1] < r[1]; });
    return found;
}

Vec3c chart_point(int k, const Eigen::Vector4d& x)
{
    Vec3c z;
    int idx = 0;
    for (int m = 0; m < 3; ++m) {
        if (m == k) {
            z[m] = 1.0;
        } else {
            z[m] = Complex(x[2 * idx], x[2 * idx + 1]);
            ++idx;
        }
    }
    return z;
}

Eigen::Vector4d chart_coords(int k, const Vec3c& z)
{
    const Vec3c w = z / z[k];
    Eigen::Vector4d x;
    int idx = 0;
    for (int c = 0; c < 3; ++c) {
        if (c == k)
            continue;
        x[2 * idx] = w[c].real();
        x[2 * idx + 1] = w[c].imag();
        ++idx;
    }
    return x;
}

// Gradient of the symbol in the affine chart z_k = 1, real coordinates of the other two.
Eigen::Vector4d chart_gradient(const Mat3c& a, int k, const Eigen::Vector4d& x)
{
    const Vec3c z = chart_point(k, x);
    const double n2 = z.squaredNorm();
    const double f = hermitian(a * z, z).real() / n2;
    const Vec3c g = (a * z - f * z) / n2;
    Eigen::Vector4d out;
    int idx = 0;
    for (int m = 0; m < 3; ++m) {
        if (m == k)
            continue;
        out[2 * idx] = 2.0 * g[m].real();
        out[2 * idx + 1] = 2.0 * g[m].imag();
        ++idx;
    }
    return out;
}

std::vector<CriticalPoint> symbol_critical_points(const HermitianSymbol& f, int grid)
{
    const Mat3c& a = f.matrix();
    const int m = std::max(4, grid / 8);
    constexpr double h = 1e-6;
    std::vector<CriticalPoint> found;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
            for (int q = 0; q < 4; ++q) {
                const double r0 = double(i) / m, r1 = double(j) / m, r2 = std::max(0.0, 1.0 - r0 - r1);
                const Vec3c z0(std::sqrt(r0), std::sqrt(r1) * std::polar(1.0, q * kPi / 2), std::sqrt(r2) * std::polar(1.0, 0.4));
                int k = 0;
                z0.cwiseAbs().maxCoeff(&k);
                Eigen::Vector4d x = chart_coords(k, z0);
                bool converged = false;
                Eigen::Matrix4d hess;
                for (int it = 0; it < 60; ++it) {
                    const Eigen::Vector4d g = chart_gradient(a, k, x);
                    for (int c = 0; c < 4; ++c) {
                        Eigen::Vector4d e = Eigen::Vector4d::Zero();
                        e[c] = h;
                        hess.col(c) = (chart_gradient(a, k, x + e) - chart_gradient(a, k, x - e)) / (2 * h);
                    }
                    hess = 0.5 * (hess + hess.transpose()).eval();
                    if (g.norm() < 1e-11) {
                        converged = true;
                        break;
                    }
                    const Eigen::FullPivLU<Eigen::Matrix4d> lu(hess);
                    if (!lu.isInvertible())
                        break;
                    x -= lu.solve(g);
                    if (!x.allFinite() || x.norm() > 1e6)
                        break;
                }
                if (!converged)
                    continue;
                const HomogeneousPoint p(chart_point(k, x));
                // Far out in a chart the gradient decays without vanishing; recheck in the
                // chart of the largest coordinate.
                int best = 0;
                p.z().cwiseAbs().maxCoeff(&best);
                if (chart_gradient(a, best, chart_coords(best, p.z())).norm() > 1e-9)
                    continue;
                const bool dup = std::any_of(found.begin(), found.end(), [&](const CriticalPoint& c) {
                    return chordal_distance(c.point, p) < 1e-6;
                });
                if (dup)
                    continue;
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(hess);
                int index = 0;
                for (int c = 0; c < 4; ++c)
                    index += es.eigenvalues()[c] < 0.0;
                found.push_back({p, f.value(p.z()), index});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const CriticalPoint& l, const CriticalPoint& r) { return l.value < r.value; });
    return found;
}

}  // namespace

RotationReport build_diagonal_rotation(const std::vector<double>& alphas, int grid, std::uint64_t seed)
{
    if (grid < 32)
        throw Error(ErrorCode::PreconditionFailed, "rotation grid must be at least 32");
    if (alphas.empty())
        throw Error(ErrorCode::PreconditionFailed, "no alpha samples");
    for (double alpha : alphas)
        if (!(alpha > 0.0 && alpha < 1.0))
            throw Error(ErrorCode::PreconditionFailed, "alpha must lie in (0, 1)");

    const HermitianSymbol f = rotation_symbol();
    RotationReport report;
    for (double alpha : alphas) {
        AlphaSlice slice;
        slice.alpha = alpha;
        const ParamSurface sphere = reduced_sphere(alpha);
        slice.reduced_area = surface_symplectic_area(sphere);
        if (std::abs(slice.reduced_area.value - alpha) > kRotationAreaTolerance)
            throw Error(ErrorCode::NormalizationFailure,
                        "reduced area " + std::to_string(slice.reduced_area.value) + " differs from alpha");
        slice.normalization =
            surface_weighted_area(sphere, [&f](const HomogeneousPoint& p) { return f.value(p.z()); });
        if (std::abs(slice.normalization.value - alpha * alpha) > kRotationAreaTolerance)
            throw Error(ErrorCode::NormalizationFailure,
                        "integral of f_alpha is " + std::to_string(slice.normalization.value));
        for (int i = 0; i <= grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const double u = double(i) / grid, v = double(j) / grid;
                slice.assembly_defect =
                    std::max(slice.assembly_defect, std::abs(f.value(sphere.eval(u, v)) - reduced_height(alpha, u, v)));
            }
        slice.marked_critical = section_critical_points(f, alpha);
        if (slice.marked_critical.size() != 2)
            throw Error(ErrorCode::CriticalPointMiscount,
                        "f_alpha has " + std::to_string(slice.marked_critical.size()) + " critical points, expected 2");
        report.slices.push_back(std::move(slice));
    }

    report.critical_points = symbol_critical_points(f, grid);
    if (report.critical_points.size() != 3)
        throw Error(ErrorCode::CriticalPointMiscount,
                    "F has " + std::to_string(report.critical_points.size()) + " critical points, expected 3");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const Mat3c period = symbol_flow(f, kTwoPi);
    report.periodicity_samples = 100;
    for (int k = 0; k < report.periodicity_samples; ++k) {
        Vec3c z;
        for (int c = 0; c < 3; ++c)
            z[c] = Complex(g(rng), g(rng));
        report.periodicity_defect =
            std::max(report.periodicity_defect, chordal_distance(HomogeneousPoint(z), HomogeneousPoint(period * z)));
    }

    const Mat3c swap = symbol_flow(f, kSwapTime);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<std::array<double, 2>> fibers{{0.2, 0.3}};
    const int m = std::max(4, grid / 8);
    for (int i = 1; i < m; ++i)
        for (int j = 1; i + j < m; ++j)
            fibers.push_back({double(i) / m, double(j) / m});
    for (const auto& [c1, c2] : fibers) {
        for (int k = 0; k < 4; ++k) {
            const Vec3c z(std::sqrt(c1) * std::polar(1.0, angle(rng)), std::sqrt(c2) * std::polar(1.0, angle(rng)),
                          std::sqrt(1.0 - c1 - c2));
            const auto [m0, m1] = moment_map(HomogeneousPoint(swap * z));
            report.swap_defect = std::max({report.swap_defect, std::abs(m0 - c2), std::abs(m1 - c1)});
            ++report.swap_samples;
        }
    }
    return report;
}

const char* to_string(EncVerdict v) { return v == EncVerdict::Monotone ? "Monotone" : "Displaceable"; }

EncResult enc_verdict(const RationalActions& b, const QuadSpec& q, double bs_tolerance)
{
    EncResult out;
    out.point = b;
    out.displacement = displace_clifford(b);
    const ActionCoords bd{boost::rational_cast<double>(b.r0), boost::rational_cast<double>(b.r1)};
    const CliffordFiber fiber = clifford_fiber(bd);
    const auto areas = standard_disc_areas(bd, q);
    const std::array<MaslovResult, 2> mus{maslov_index(standard_disc(fiber, kD1)),
                                          maslov_index(standard_disc(fiber, kD2))};
    out.witness = is_monotone({areas[0].value, areas[1].value}, mus, bs_tolerance);
    if (out.displacement.displaced() == out.witness.monotone)
        throw Error(ErrorCode::InternalContradiction,
                    out.witness.monotone ? "fiber is both monotone and displaced" : "fiber is neither monotone nor displaced");
    out.verdict = out.witness.monotone ? EncVerdict::Monotone : EncVerdict::Displaceable;
    return out;
}

std::vector<RationalActions> enc_grid(int n)
{
    if (n < 2)
        throw Error(ErrorCode::PreconditionFailed, "grid denominator must be at least 2");
    std::vector<RationalActions> grid;
    for (int i = 1; i < n; ++i)
        for (int j = 1; i + j < n; ++j)
            grid.push_back({Rational(i, n), Rational(j, n)});
    if (n % 3 != 0)
        grid.push_back({Rational(1, 3), Rational(1, 3)});
    return grid;
}

}  // namespace lagrtori
