#include "lagrtori/reports.hpp"

#include "lagrtori/error.hpp"
#include "lagrtori/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lagrtori {

namespace {

Json quad_json(const QuadSpec& q)
{
    return Json{{"nodes_per_axis", q.nodes_per_axis}, {"refinement_levels", q.refinement_levels},
                {"convergence_tolerance", kConvergenceTolerance}};
}

std::string fmt(const char* spec, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Json to_json(const Rational& r) { return Json::array({r.numerator(), r.denominator()}); }

Json to_json(const RationalActions& b) { return Json::array({to_json(b.r0), to_json(b.r1)}); }

Json to_json(const Estimate& e) { return Json{{"value", e.value}, {"error", e.error}}; }

Json to_json(const BSFiberSet& s)
{
    Json fibers = Json::array();
    for (const auto& f : s.fibers)
        fibers.push_back(to_json(f));
    return Json{{"level", s.level}, {"closed", s.closed}, {"count", s.count}, {"fibers", fibers}};
}

Json to_json(const HilbertComparison& h)
{
    return Json{{"bs_count", h.bs_count},
                {"section_dimension", h.section_dimension},
                {"line_bundle_degree", h.line_bundle_degree},
                {"equal", h.equal}};
}

Json to_json(const MaslovResult& m)
{
    return Json{{"mu", m.mu},
                {"raw_winding", m.raw_winding},
                {"integrality_defect", m.integrality_defect},
                {"samples", m.samples}};
}

Json to_json(const DisplacementCertificate& c)
{
    Json symbol = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 3; ++j)
            row.push_back(complex_json(c.symbol(i, j)));
        symbol.push_back(row);
    }
    return Json{{"method", to_string(c.method)}, {"flow", c.flow},       {"symbol", symbol},
                {"time", c.time},                {"separation", c.separation}, {"samples", c.samples}};
}

Json to_json(const DisplacementOutcome& d)
{
    if (d.certificate)
        return Json{{"displaced", true}, {"certificate", to_json(*d.certificate)}};
    return Json{{"displaced", false}, {"reason", d.reason}};
}

Json point_to_json(const HomogeneousPoint& p)
{
    const Vec3c z = p.canonical();
    Json coords = Json::array();
    for (int k = 0; k < 3; ++k)
        coords.push_back(complex_json(z[k]));
    return Json{{"schema", kPointSchema}, {"coords", coords}};
}

HomogeneousPoint point_from_json(const Json& j)
{
    if (!j.is_object() || j.value("schema", std::string()) != kPointSchema)
        throw Error(ErrorCode::PreconditionFailed, std::string("expected a ") + kPointSchema + " document");
    const Json& c = j.at("coords");
    if (!c.is_array() || c.size() != 3)
        throw Error(ErrorCode::PreconditionFailed, "coords must hold three [re, im] pairs");
    Vec3c z;
    for (int k = 0; k < 3; ++k) {
        if (!c[k].is_array() || c[k].size() != 2 || !c[k][0].is_number() || !c[k][1].is_number())
            throw Error(ErrorCode::PreconditionFailed, "coords must hold three [re, im] pairs");
        z[k] = Complex(c[k][0].get<double>(), c[k][1].get<double>());
    }
    return HomogeneousPoint(z);
}

Json surface_to_json(const ParamSurface& s, int nu, int nv)
{
    if (nu < 2 || nv < 2)
        throw Error(ErrorCode::PreconditionFailed, "surface sample grid needs at least 2 x 2 points");
    Json samples = Json::array();
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j)
            samples.push_back(point_to_json(s.point(double(i) / (nu - 1), double(j) / (nv - 1)))["coords"]);
    return Json{{"schema", kSurfaceSchema}, {"nu", nu}, {"nv", nv}, {"samples", samples}};
}

Json envelope(const std::string& command, Json params, Json results, Json diagnostics)
{
    return Json{{"command", command},
                {"version", LAGRTORI_VERSION},
                {"params", std::move(params)},
                {"results", std::move(results)},
                {"diagnostics", std::move(diagnostics)}};
}

Json bs_count_report(int level, bool closed, const ReportOptions&)
{
    if (level < 1)
        throw Error(ErrorCode::PreconditionFailed, "--level must be at least 1");
    const BSFiberSet set = enumerate_bs_fibers(level, closed);
    const HilbertComparison h = hilbert_dimension(level, closed);
    Json results = to_json(set);
    results["formula_count"] = bs_count_formula(level, closed);
    results["dim"] = h.section_dimension;
    results["line_bundle_degree"] = h.line_bundle_degree;
    results["match"] = h.equal;
    return envelope("bs-count", Json{{"level", level}, {"closed", closed}}, std::move(results),
                    Json{{"arithmetic", "exact rational"}, {"tolerance", 0}});
}

std::string bs_count_csv(int level, bool closed)
{
    const BSFiberSet set = enumerate_bs_fibers(level, closed);
    std::ostringstream out;
    out << "r0_num,r0_den,r1_num,r1_den\n";
    for (const auto& f : set.fibers)
        out << f.r0.numerator() << ',' << f.r0.denominator() << ',' << f.r1.numerator() << ','
            << f.r1.denominator() << '\n';
    return out.str();
}

Json enc_report(int n, const ReportOptions& opt)
{
    if (n < 3)
        throw Error(ErrorCode::PreconditionFailed, "--grid must be at least 3");
    const auto grid = enc_grid(n);
    std::vector<EncResult> results(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) { results[k] = enc_verdict(grid[k], opt.quad, opt.tol_bs); });

    Json verdicts = Json::array();
    Json monotone = Json::array();
    std::size_t displaceable = 0;
    for (const auto& r : results) {
        Json entry{{"point", to_json(r.point)}, {"verdict", to_string(r.verdict)}};
        entry["flow"] = r.displacement.certificate ? Json(r.displacement.certificate->flow) : Json(nullptr);
        entry["canonical_bs"] = r.witness.canonical_bs;
        entry["maslov_class"] =
            r.witness.maslov_class ? Json::array({(*r.witness.maslov_class)[0], (*r.witness.maslov_class)[1]})
                                   : Json(nullptr);
        verdicts.push_back(std::move(entry));
        if (r.verdict == EncVerdict::Monotone)
            monotone.push_back(to_json(r.point));
        else
            ++displaceable;
    }
    const bool dichotomy = monotone.size() == 1 && monotone[0] == to_json(RationalActions{Rational(1, 3), Rational(1, 3)});
    if (!dichotomy)
        throw Error(ErrorCode::InternalContradiction, "monotone verdicts away from the centroid");
    Json res{{"points", grid.size()},
             {"monotone_points", monotone},
             {"displaceable", displaceable},
             {"centroid_added", n % 3 != 0},
             {"dichotomy", dichotomy},
             {"verdicts", verdicts}};
    return envelope("enc-report", Json{{"grid", n}}, std::move(res),
                    Json{{"quadrature", quad_json(opt.quad)}, {"canonical_bs_tolerance", opt.tol_bs}});
}

std::string enc_csv(const Json& report)
{
    std::ostringstream out;
    out << "r0_num,r0_den,r1_num,r1_den,verdict,flow\n";
    for (const auto& v : report.at("results").at("verdicts")) {
        const auto& p = v.at("point");
        out << p[0][0] << ',' << p[0][1] << ',' << p[1][0] << ',' << p[1][1] << ',' << v.at("verdict").get<std::string>()
            << ',' << (v.at("flow").is_null() ? "" : v.at("flow").get<std::string>()) << '\n';
    }
    return out.str();
}

void ScanRequest::validate() const
{
    const double m = std::abs(mu);
    if (!(m > 0.0))
        throw Error(ErrorCode::PreconditionFailed, "--mu must be nonzero");
    if (!(a_step > 0.0 && delta_step > 0.0))
        throw Error(ErrorCode::PreconditionFailed, "--a-step and --delta-step must be positive");
    if (!(a_min > 0.0 && a_min <= a_max && a_max < m))
        throw Error(ErrorCode::PreconditionFailed,
                    "Chekanov regime requires 0 < a-min <= a-max < |mu| = " + fmt("%.6g", m));
    if (!(delta_min > -1.0 && delta_min <= delta_max && delta_max < 1.0))
        throw Error(ErrorCode::PreconditionFailed, "delta range must satisfy -1 < delta-min <= delta-max < 1");
}

Json chekanov_scan_report(const ScanRequest& r, const ReportOptions& opt)
{
    r.validate();
    const auto a_grid = make_grid(r.a_min, r.a_max, r.a_step);
    const auto delta_grid = make_grid(r.delta_min, r.delta_max, r.delta_step);
    const ScanReport scan = canonical_bs_scan(r.mu, a_grid, delta_grid, opt.quad, opt.seed);

    std::vector<ChekanovDisplacement> certs(scan.rows.size());
    parallel_for(scan.rows.size(), [&](std::size_t k) {
        certs[k] = displace_chekanov({scan.rows[k].a, r.mu, scan.rows[k].delta}, opt.certificate_grid);
    });
    std::size_t issued = 0;
    double min_separation = std::numeric_limits<double>::infinity();
    for (const auto& c : certs) {
        issued += c.sampled_separation > opt.tol_separation;
        min_separation = std::min(min_separation, c.sampled_separation);
    }

    Json rows = Json::array();
    for (std::size_t k = 0; k < scan.rows.size(); ++k) {
        const auto& row = scan.rows[k];
        rows.push_back(Json{{"a", row.a},
                            {"delta", row.delta},
                            {"p_orbit", row.p_orbit},
                            {"p_section", row.p_section},
                            {"defect", row.defect},
                            {"defect_any_section", row.defect_any_section},
                            {"separation", certs[k].sampled_separation}});
    }
    const auto& best = scan.rows[scan.argmin];
    const double threshold = 10.0 * opt.tol_period;
    Json summary{{"rows", scan.rows.size()},
                 {"min_defect", scan.min_defect},
                 {"argmin", Json{{"a", best.a}, {"delta", best.delta}}},
                 {"min_defect_any_section", scan.min_defect_any_section},
                 {"no_canonical_bs", std::min(scan.min_defect, scan.min_defect_any_section) > threshold},
                 {"certificates",
                  Json{{"issued", issued},
                       {"inconclusive", scan.rows.size() - issued},
                       {"all", issued == scan.rows.size()},
                       {"min_separation", min_separation}}}};
    Json params{{"mu", complex_json(r.mu)}, {"a_min", r.a_min},         {"a_max", r.a_max},
                {"a_step", r.a_step},       {"delta_min", r.delta_min}, {"delta_max", r.delta_max},
                {"delta_step", r.delta_step}};
    Json diagnostics{{"quadrature", quad_json(opt.quad)},
                     {"period_tolerance", opt.tol_period},
                     {"conclusion_threshold", threshold},
                     {"separation_threshold", opt.tol_separation},
                     {"certificate_grid", opt.certificate_grid},
                     {"seed", opt.seed}};
    return envelope("chekanov-scan", std::move(params), Json{{"summary", summary}, {"rows", rows}},
                    std::move(diagnostics));
}

std::string scan_csv(const Json& report)
{
    std::ostringstream out;
    out << "a,delta,p_orbit,p_section,defect\n";
    for (const auto& row : report.at("results").at("rows")) {
        out << fmt("%.10g", row.at("a").get<double>()) << ',' << fmt("%.10g", row.at("delta").get<double>()) << ','
            << fmt("%.10f", row.at("p_orbit").get<double>()) << ',' << fmt("%.10f", row.at("p_section").get<double>())
            << ',' << fmt("%.10f", row.at("defect").get<double>()) << '\n';
    }
    return out.str();
}

PlotSummary plot_svg(int level)
{
    if (level < 1)
        throw Error(ErrorCode::PreconditionFailed, "--level must be at least 1");
    constexpr double kSize = 400.0, kMargin = 40.0, kScale = kSize - 2 * kMargin;
    auto x = [&](double r0) { return fmt("%.3f", kMargin + kScale * r0); };
    auto y = [&](double r1) { return fmt("%.3f", kSize - kMargin - kScale * r1); };

    PlotSummary out;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
        << "  <title>Moment triangle, Bohr-Sommerfeld level " << level << "</title>\n"
        << "  <polygon class=\"triangle\" points=\"" << x(0) << ',' << y(0) << ' ' << x(1) << ',' << y(0) << ' '
        << x(0) << ',' << y(1) << "\" fill=\"#f4f4f4\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";
    const BSFiberSet closed = enumerate_bs_fibers(level, true);
    for (const auto& f : closed.fibers) {
        const double r0 = boost::rational_cast<double>(f.r0), r1 = boost::rational_cast<double>(f.r1);
        const bool interior = f.r0 > 0 && f.r1 > 0 && f.r0 + f.r1 < 1;
        (interior ? out.interior_markers : out.boundary_markers) += 1;
        svg << "  <circle class=\"" << (interior ? "interior" : "boundary") << "\" cx=\"" << x(r0) << "\" cy=\""
            << y(r1) << "\" r=\"4\" fill=\"" << (interior ? "#1f5fbf" : "none") << "\" stroke=\"#1f5fbf\"/>\n";
    }
    svg << "  <circle class=\"monotone\" cx=\"" << x(1.0 / 3) << "\" cy=\"" << y(1.0 / 3)
        << "\" r=\"8\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n"
        << "  <text x=\"" << x(0) << "\" y=\"" << fmt("%.3f", kSize - kMargin + 20) << "\" font-size=\"12\">r0</text>\n"
        << "  <text x=\"" << fmt("%.3f", kMargin - 30) << "\" y=\"" << y(1) << "\" font-size=\"12\">r1</text>\n"
        << "</svg>\n";
    out.svg = svg.str();
    return out;
}

Json plot_report(int level, const std::string& path, const PlotSummary& summary)
{
    return envelope("plot", Json{{"level", level}, {"out", path}},
                    Json{{"interior_markers", summary.interior_markers},
                         {"boundary_markers", summary.boundary_markers},
                         {"monotone_point", to_json(RationalActions{Rational(1, 3), Rational(1, 3)})}},
                    Json{{"arithmetic", "exact rational"}, {"tolerance", 0}});
}

}  // namespace lagrtori
