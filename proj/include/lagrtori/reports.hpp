#pragma once

#include "lagrtori/chekanov_fibration.hpp"
#include "lagrtori/clifford_fibration.hpp"
#include "lagrtori/displacement_flows.hpp"
#include "lagrtori/maslov_index.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace lagrtori {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPointSchema = "lagrtori.point/1";
inline constexpr const char* kSurfaceSchema = "lagrtori.surface/1";

Json to_json(const Rational& r);  ///< [num, den]
Json to_json(const RationalActions& b);  ///< [[num, den], [num, den]]
Json to_json(const Estimate& e);
Json to_json(const BSFiberSet& s);
Json to_json(const HilbertComparison& h);
Json to_json(const MaslovResult& m);
Json to_json(const DisplacementCertificate& c);
Json to_json(const DisplacementOutcome& d);

/// {"schema", "coords": [[re, im] x 3]} in the canonical gauge.
Json point_to_json(const HomogeneousPoint& p);
/// Throws PreconditionFailed on a malformed document, ZeroVector on a zero point.
HomogeneousPoint point_from_json(const Json& j);
/// Row-major nu x nv sample grid of the surface over [0, 1]^2 (nu, nv >= 2).
Json surface_to_json(const ParamSurface& s, int nu, int nv);

/// Settings shared by every command; defaults are the module defaults.
struct ReportOptions {
    QuadSpec quad;
    double tol_period = kPeriodTolerance;
    double tol_bs = kCanonicalBsTolerance;
    double tol_separation = kChekanovSeparationThreshold;
    std::uint64_t seed = 20240601;
    int certificate_grid = 128;
};

Json envelope(const std::string& command, Json params, Json results, Json diagnostics);

Json bs_count_report(int level, bool closed, const ReportOptions& opt = {});
std::string bs_count_csv(int level, bool closed);

/// Throws InternalContradiction if the dichotomy fails anywhere on the grid.
Json enc_report(int n, const ReportOptions& opt = {});
std::string enc_csv(const Json& report);

struct ScanRequest {
    Complex mu{1.0, 0.0};
    double a_min = 0.1;
    double a_max = 0.9;
    double a_step = 0.1;
    double delta_min = -0.9;
    double delta_max = 0.9;
    double delta_step = 0.1;

    /// Throws PreconditionFailed with the violated constraint.
    void validate() const;
};

Json chekanov_scan_report(const ScanRequest& r, const ReportOptions& opt = {});
std::string scan_csv(const Json& report);

struct PlotSummary {
    std::string svg;
    std::size_t interior_markers = 0;
    std::size_t boundary_markers = 0;
};

/// Moment triangle with the level-k lattice; interior (open) points, boundary points of the
/// closed lattice, and the monotone point highlighted.
PlotSummary plot_svg(int level);
Json plot_report(int level, const std::string& path, const PlotSummary& summary);

}  // namespace lagrtori
