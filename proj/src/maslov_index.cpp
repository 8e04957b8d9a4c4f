#include "lagrtori/maslov_index.hpp"

#include "lagrtori/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace lagrtori {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<int, 2> other_indices(int chart)
{
    switch (chart) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
    }
}

}  // namespace

double integer_distance(double x) { return std::abs(x - std::round(x)); }

Complex chart_determinant(const Vec3c& z, const Vec3c& e1, const Vec3c& e2, int chart)
{
    const auto [a, b] = other_indices(chart);
    const Complex zj = z[chart];
    auto dw = [&](const Vec3c& u, int k) { return (u[k] * zj - z[k] * u[chart]) / (zj * zj); };
    return dw(e1, a) * dw(e2, b) - dw(e2, a) * dw(e1, b);
}

void DiscWithBoundary::validate(int samples) const
{
    if (chart < 0 || chart > 2)
        throw Error(ErrorCode::ChartEscape, "chart index must be 0, 1 or 2");
    for (int i = 0; i < samples; ++i) {
        const double v = double(i) / samples;
        const double t = kTwoPi * v;
        const HomogeneousPoint on_disc = disc.point(1.0, v);
        const Vec3c lift = boundary_loop(t);
        if (!on_disc.projectively_equal(HomogeneousPoint(lift), 1e-10))
            throw Error(ErrorCode::BoundaryMismatch,
                        "disc edge differs from boundary loop at t = " + std::to_string(t));
        const auto [e1, e2] = frame(t);
        if (std::abs(chart_determinant(lift, e1, e2, chart)) < 1e-10)
            throw Error(ErrorCode::DeterminantVanishes, "frame degenerate at t = " + std::to_string(t));
        for (int j = 0; j <= samples; ++j) {
            const HomogeneousPoint p = disc.point(double(j) / samples, v);
            if (std::abs(p[chart]) < 1e-8)
                throw Error(ErrorCode::ChartEscape, "disc leaves chart " + std::to_string(chart));
        }
    }
}

MaslovResult maslov_index(const DiscWithBoundary& d, std::optional<int> chart, int initial_samples)
{
    const int j = chart.value_or(d.chart);
    for (int i = 0; i <= 16; ++i) {
        const double u = double(i) / 16;
        for (int k = 0; k < 16; ++k)
            if (std::abs(d.disc.point(u, k / 16.0)[j]) < 1e-8)
                throw Error(ErrorCode::ChartEscape, "disc leaves chart " + std::to_string(j));
    }
    constexpr int kMaxSamples = 1 << 20;
    for (int n = std::max(8, initial_samples); n <= kMaxSamples; n *= 2) {
        std::vector<Complex> dets(n);
        for (int i = 0; i < n; ++i) {
            const double t = kTwoPi * i / n;
            const auto [e1, e2] = d.frame(t);
            dets[i] = chart_determinant(d.boundary_loop(t), e1, e2, j);
            if (std::abs(dets[i]) < 1e-10)
                throw Error(ErrorCode::DeterminantVanishes,
                            "frame determinant vanishes at t = " + std::to_string(t));
        }
        double total = 0.0;
        bool guarded = true;
        for (int i = 0; i < n; ++i) {
            const double step = std::arg(dets[(i + 1) % n] / dets[i]);
            if (std::abs(step) >= std::numbers::pi / 2) {
                guarded = false;
                break;
            }
            total += step;
        }
        if (!guarded)
            continue;
        MaslovResult r;
        r.raw_winding = total / kTwoPi;
        r.mu = static_cast<int>(std::lround(r.raw_winding));
        r.integrality_defect = std::abs(r.raw_winding - r.mu);
        r.samples = n;
        return r;
    }
    throw Error(ErrorCode::DeterminantVanishes, "phase of frame determinant could not be unwrapped");
}

bool disc_difference_check(const DiscWithBoundary& d, const DiscWithBoundary& d_prime, int sphere_degree)
{
    constexpr int kSamples = 64;
    for (int i = 0; i < kSamples; ++i) {
        const double t = kTwoPi * i / kSamples;
        const HomogeneousPoint a(d.boundary_loop(t));
        const HomogeneousPoint b(d_prime.boundary_loop(t));
        if (!a.projectively_equal(b, 1e-10))
            throw Error(ErrorCode::BoundaryMismatch, "discs have different boundary loops");
        // Frames must agree as tangent planes: compare determinants in a common chart.
        int chart = 0;
        a.z().cwiseAbs().maxCoeff(&chart);
        const auto [e1, e2] = d.frame(t);
        const auto [f1, f2] = d_prime.frame(t);
        const Complex da = chart_determinant(d.boundary_loop(t), e1, e2, chart);
        const Complex db = chart_determinant(d_prime.boundary_loop(t), f1, f2, chart);
        if (std::abs(da - db) > 1e-8 * std::max(1.0, std::abs(da)))
            throw Error(ErrorCode::BoundaryMismatch, "discs carry different boundary frames");
    }
    const int mu = maslov_index(d).mu;
    const int mu_prime = maslov_index(d_prime).mu;
    return mu_prime - mu == kAnticanonicalDegree * sphere_degree;
}

std::optional<std::array<int, 2>> universal_maslov_class(const std::array<double, 2>& disc_areas,
                                                         const std::array<MaslovResult, 2>& mus)
{
    for (double area : disc_areas)
        if (integer_distance(kAnticanonicalDegree * area) > kCanonicalBsTolerance)
            return std::nullopt;
    std::array<int, 2> m{};
    for (int i = 0; i < 2; ++i) {
        const double raw = mus[i].mu - kAnticanonicalDegree * disc_areas[i];
        if (integer_distance(raw) > 1e-4)
            return std::nullopt;
        m[i] = static_cast<int>(std::lround(raw));
    }
    return m;
}

MonotonicityWitness is_monotone(const std::array<double, 2>& disc_areas,
                                const std::array<MaslovResult, 2>& mus, double bs_tolerance)
{
    MonotonicityWitness w;
    w.canonical_bs = integer_distance(kAnticanonicalDegree * disc_areas[0]) <= bs_tolerance &&
                     integer_distance(kAnticanonicalDegree * disc_areas[1]) <= bs_tolerance;
    if (w.canonical_bs)
        w.maslov_class = universal_maslov_class(disc_areas, mus);
    w.monotone = w.maslov_class && (*w.maslov_class)[0] == 0 && (*w.maslov_class)[1] == 0;
    return w;
}

}  // namespace lagrtori
