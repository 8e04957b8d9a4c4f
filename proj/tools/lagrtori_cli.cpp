#include "lagrtori/error.hpp"
#include "lagrtori/reports.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kContradiction = 3, kScanFailure = 4, kIo = 5 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

lagrtori::Complex parse_complex(const std::string& text)
{
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != text.substr(0, comma).size())
            throw std::invalid_argument(text);
        double im = 0.0;
        if (comma != std::string::npos) {
            const std::string tail = text.substr(comma + 1);
            im = std::stod(tail, &used);
            if (used != tail.size())
                throw std::invalid_argument(text);
        }
        return {re, im};
    } catch (const std::logic_error&) {
        throw lagrtori::Error(lagrtori::ErrorCode::PreconditionFailed, "--mu expects RE,IM, got '" + text + "'");
    }
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !(out.flush()))
        throw IoError("cannot write " + path);
}

std::string dump(const lagrtori::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lagrangian tori of the projective plane: Bohr-Sommerfeld counts, dichotomy, scans"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", LAGRTORI_VERSION);

    lagrtori::ReportOptions opt;
    std::string format = "json";
    std::string output;
    app.add_option("--quad-nodes", opt.quad.nodes_per_axis, "Gauss-Legendre nodes per axis")
        ->capture_default_str()
        ->check(CLI::Range(4, 512));
    app.add_option("--quad-levels", opt.quad.refinement_levels, "Quadrature refinement levels")
        ->capture_default_str()
        ->check(CLI::Range(2, 8));
    app.add_option("--tol-period", opt.tol_period, "Period tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--tol-bs", opt.tol_bs, "Canonical Bohr-Sommerfeld tolerance on 3 * period")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-separation", opt.tol_separation, "Sampled separation threshold")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Seed for coning basepoints")->capture_default_str();
    app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
    app.add_option("-o,--output", output, "Write the report to a file instead of stdout");

    auto* bs = app.add_subcommand("bs-count", "Bohr-Sommerfeld fibers of a level vs. section dimension");
    int bs_level = 0;
    bool bs_closed = false;
    bs->add_option("--level", bs_level, "Level k")->required();
    bs->add_flag("--closed", bs_closed, "Count the closed triangle");

    auto* enc = app.add_subcommand("enc-report", "Displaceable / monotone dichotomy on the rational grid");
    int enc_n = 0;
    enc->add_option("--grid", enc_n, "Grid denominator N")->required();

    auto* scan = app.add_subcommand("chekanov-scan", "Canonical-class Bohr-Sommerfeld scan of Chekanov tori");
    lagrtori::ScanRequest req;
    std::string mu_text = "1,0";
    scan->add_option("--mu", mu_text, "Pencil centre RE,IM")->capture_default_str();
    scan->add_option("--a-min", req.a_min)->capture_default_str();
    scan->add_option("--a-max", req.a_max)->capture_default_str();
    scan->add_option("--a-step", req.a_step)->capture_default_str();
    auto* dmin = scan->add_option("--delta-min", req.delta_min, "Default -(1 - delta-step)");
    auto* dmax = scan->add_option("--delta-max", req.delta_max, "Default 1 - delta-step");
    scan->add_option("--delta-step", req.delta_step)->capture_default_str();
    scan->add_option("--cert-grid", opt.certificate_grid, "Samples per torus axis for certificates")
        ->capture_default_str()
        ->check(CLI::Range(8, 1024));

    auto* plot = app.add_subcommand("plot", "SVG of the moment triangle and the level-k lattice");
    int plot_level = 0;
    std::string plot_out;
    plot->add_option("--level", plot_level, "Level k")->required();
    plot->add_option("--out", plot_out, "SVG path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        opt.quad.validate();
        if (*bs) {
            const auto report = lagrtori::bs_count_report(bs_level, bs_closed, opt);
            emit(format == "csv" ? lagrtori::bs_count_csv(bs_level, bs_closed) : dump(report), output);
        } else if (*enc) {
            try {
                const auto report = lagrtori::enc_report(enc_n, opt);
                emit(format == "csv" ? lagrtori::enc_csv(report) : dump(report), output);
            } catch (const lagrtori::Error& e) {
                if (e.code() == lagrtori::ErrorCode::InternalContradiction) {
                    std::cerr << "enc-report: " << e.what() << "\n";
                    return kContradiction;
                }
                throw;
            }
        } else if (*scan) {
            req.mu = parse_complex(mu_text);
            if (dmin->count() == 0)
                req.delta_min = -(1.0 - req.delta_step);
            if (dmax->count() == 0)
                req.delta_max = 1.0 - req.delta_step;
            req.validate();
            try {
                const auto report = lagrtori::chekanov_scan_report(req, opt);
                emit(format == "csv" ? lagrtori::scan_csv(report) : dump(report), output);
            } catch (const lagrtori::Error& e) {
                std::cerr << "chekanov-scan: " << e.what() << "\n";
                return kScanFailure;
            }
        } else if (*plot) {
            const auto summary = lagrtori::plot_svg(plot_level);
            if (plot_out.empty()) {
                emit(summary.svg, output);
            } else {
                emit(summary.svg, plot_out);
                emit(dump(lagrtori::plot_report(plot_level, plot_out, summary)), output);
            }
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const lagrtori::Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}
