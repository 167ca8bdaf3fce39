#include "hyplen/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hyplen/io.hpp"

namespace hyplen::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;
using std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

const json& require_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing required field");
    return j.at(key);
}

double require_number(const json& j, const std::string& key, const std::string& path) {
    const json& f = require_field(j, key, path);
    if (!f.is_number()) fail(path + "." + key, "expected a number");
    return f.get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& path) {
    const json& f = require_field(j, key, path);
    if (!f.is_string()) fail(path + "." + key, "expected a string");
    return f.get<std::string>();
}

double number_or(const json& j, const std::string& key, const std::string& path,
                 double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

int int_or(const json& j, const std::string& key, const std::string& path, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
    return j.at(key).get<int>();
}

Complex parse_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(path, "expected a point [x, y]");
    }
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_json(const fs::path& path, const ordered_json& j) {
    write_file(path, j.dump(2) + "\n");
}

struct CurveSpec {
    enum class Kind { circle, segment, polyline };
    Kind kind{Kind::circle};
    double radius{0.5};
    Complex center{0.0, 0.0};
    int vertices{256};
    int panels{256};
    Complex from{0.0, 0.0}, to{0.5, 0.0};
    int pieces{64};
    std::vector<Complex> points;
    bool closed{true};
};

CurveSpec parse_curve(const json& j, const std::string& path) {
    CurveSpec spec;
    const std::string type = require_string(j, "type", path);
    if (type == "circle") {
        spec.kind = CurveSpec::Kind::circle;
        spec.radius = require_number(j, "radius", path);
        if (!(spec.radius > 0.0)) fail(path + ".radius", "must be positive");
        if (j.contains("center")) spec.center = parse_point(j.at("center"), path + ".center");
        spec.vertices = int_or(j, "vertices", path, 256);
        if (spec.vertices < 8) fail(path + ".vertices", "need at least 8 vertices");
        spec.panels = int_or(j, "panels", path, 256);
        if (spec.panels < 1) fail(path + ".panels", "need at least 1 panel");
    } else if (type == "segment") {
        spec.kind = CurveSpec::Kind::segment;
        spec.from = parse_point(require_field(j, "from", path), path + ".from");
        spec.to = parse_point(require_field(j, "to", path), path + ".to");
        if (spec.from == spec.to) fail(path, "segment endpoints coincide");
        spec.pieces = int_or(j, "pieces", path, 64);
        if (spec.pieces < 1) fail(path + ".pieces", "need at least 1 piece");
    } else if (type == "polyline") {
        spec.kind = CurveSpec::Kind::polyline;
        const json& pts = require_field(j, "points", path);
        if (!pts.is_array() || pts.size() < 2) fail(path + ".points", "need at least 2 points");
        for (size_t i = 0; i < pts.size(); ++i) {
            spec.points.push_back(
                parse_point(pts[i], path + ".points[" + std::to_string(i) + "]"));
        }
        if (j.contains("closed")) {
            if (!j.at("closed").is_boolean()) fail(path + ".closed", "expected a boolean");
            spec.closed = j.at("closed").get<bool>();
        }
    } else {
        fail(path + ".type", "unknown curve type '" + type + "'");
    }
    return spec;
}

std::function<double(double)> parse_schedule(const json& j, const std::string& path) {
    const std::string type = require_string(j, "type", path);
    if (type == "constant") {
        const double v = require_number(j, "value", path);
        if (!(v > 0.0)) fail(path + ".value", "translation length must be positive");
        return [v](double) { return v; };
    }
    if (type == "linear") {
        const double a = require_number(j, "from", path);
        const double b = require_number(j, "to", path);
        if (!(a > 0.0 && b > 0.0)) fail(path, "translation lengths must be positive");
        return [a, b](double t) { return a + (b - a) * t; };
    }
    fail(path + ".type", "unknown schedule type '" + type + "'");
}

std::vector<double> uniform_grid(int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
        g[i] = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    }
    return g;
}

ordered_json surface_json(const ModelSurface& s) {
    ordered_json j;
    j["type"] = [&] {
        switch (s.tag) {
            case SurfaceTag::disc: return "disc";
            case SurfaceTag::punctured_disc: return "punctured_disc";
            case SurfaceTag::annulus: return "annulus";
            case SurfaceTag::plane: return "plane";
            case SurfaceTag::punctured_plane: return "punctured_plane";
        }
        return "?";
    }();
    if (s.tag == SurfaceTag::annulus) j["inner"] = rounded12(s.inner);
    return j;
}

void persist_spectrum(const TruncatedLengthSpectrum& spec, const fs::path& dir,
                      const std::string& stem, const std::string& format) {
    if (format == "csv") {
        std::ostringstream csv;
        spectrum_to_csv(csv, spec);
        write_file(dir / (stem + ".csv"), csv.str());
    } else {
        write_json(dir / (stem + ".json"), spectrum_to_json(spec));
    }
}

ExitCode cmd_length(const json& config, const CliOptions& opt, std::ostream& out) {
    const ModelSurface surface =
        parse_surface(require_field(config, "surface", "config"), "config.surface");
    const CurveSpec curve =
        parse_curve(require_field(config, "curve", "config"), "config.curve");
    const int order = int_or(config, "quadrature_order", "config", 8);

    ordered_json report;
    report["command"] = "length";
    report["surface"] = surface_json(surface);
    report["quadrature_order"] = order;
    double value = 0.0;
    if (!is_hyperbolic(surface)) {
        report["value"] = 0.0;
        report["note"] = "non-hyperbolic surface: the Kobayashi-Royden metric vanishes";
        out << "length = 0 (non-hyperbolic surface)\n";
        write_json(fs::path(opt.out_dir) / "length_report.json", report);
        return ExitCode::ok;
    }
    switch (curve.kind) {
        case CurveSpec::Kind::circle: {
            const double rho = curve.radius;
            const Complex c = curve.center;
            value = parametric_curve_length(
                surface, [rho, c](double t) { return c + std::polar(rho, t); },
                [rho](double t) { return std::polar(rho, t) * Complex{0.0, 1.0}; }, 0.0,
                2.0 * pi, curve.panels, order);
            report["curve"] = {{"type", "circle"},
                               {"radius", rounded12(rho)},
                               {"panels", curve.panels}};
            break;
        }
        case CurveSpec::Kind::segment: {
            std::vector<Complex> pts(curve.pieces + 1);
            for (int i = 0; i <= curve.pieces; ++i) {
                pts[i] = curve.from +
                         (curve.to - curve.from) * (static_cast<double>(i) / curve.pieces);
            }
            value = curve_length(surface, pts, false, order);
            report["curve"] = {{"type", "segment"}, {"pieces", curve.pieces}};
            break;
        }
        case CurveSpec::Kind::polyline: {
            value = curve_length(surface, curve.points, curve.closed, order);
            report["curve"] = {{"type", "polyline"},
                               {"points", curve.points.size()},
                               {"closed", curve.closed}};
            break;
        }
    }
    report["value"] = rounded12(value);
    write_json(fs::path(opt.out_dir) / "length_report.json", report);
    out << "length = " << format_number(value) << "\n";
    return ExitCode::ok;
}

ExitCode cmd_shorten(const json& config, const CliOptions& opt, std::ostream& out) {
    const ModelSurface surface =
        parse_surface(require_field(config, "surface", "config"), "config.surface");
    const CurveSpec cspec =
        parse_curve(require_field(config, "curve", "config"), "config.curve");

    ClosedPolyline curve = [&] {
        switch (cspec.kind) {
            case CurveSpec::Kind::circle:
                return make_circle(surface, cspec.radius, cspec.vertices, cspec.center);
            case CurveSpec::Kind::polyline:
                if (!cspec.closed) fail("config.curve.closed", "shortening needs a closed curve");
                return ClosedPolyline(cspec.points, surface);
            default:
                fail("config.curve.type", "shortening needs a closed curve (circle or polyline)");
        }
    }();

    ShortenOptions sopt;
    sopt.step_tolerance = number_or(config, "step_tolerance", "config", sopt.step_tolerance);
    sopt.gradient_tolerance =
        number_or(config, "gradient_tolerance", "config", sopt.gradient_tolerance);
    sopt.max_iterations = int_or(config, "max_iterations", "config", sopt.max_iterations);
    if (!(sopt.step_tolerance > 0.0)) fail("config.step_tolerance", "must be positive");
    if (!(sopt.gradient_tolerance > 0.0)) fail("config.gradient_tolerance", "must be positive");
    if (sopt.max_iterations < 1) fail("config.max_iterations", "must be at least 1");

    const ShorteningResult res = shorten(curve, sopt);

    std::vector<std::pair<double, double>> rows;
    rows.reserve(res.length_trace.size());
    for (size_t i = 0; i < res.length_trace.size(); ++i) {
        rows.push_back({static_cast<double>(i), res.length_trace[i]});
    }
    std::ostringstream csv;
    write_trace_csv(csv, "iteration", "length", rows);
    write_file(fs::path(opt.out_dir) / "shorten_trace.csv", csv.str());

    const char* status = res.status == ShortenStatus::converged ? "converged"
                         : res.status == ShortenStatus::escaped_to_puncture
                             ? "escaped_to_puncture"
                             : "max_iterations";
    ordered_json report;
    report["command"] = "shorten";
    report["surface"] = surface_json(surface);
    report["status"] = status;
    report["final_length"] = rounded12(res.final_length);
    report["stable_length"] = {
        {"value", res.status == ShortenStatus::escaped_to_puncture ? 0.0
                                                                   : rounded12(res.final_length)},
        {"attained", res.status == ShortenStatus::converged}};
    report["iterations"] = res.iterations;
    report["final_gradient_norm"] = rounded12(res.final_gradient_norm);
    report["final_embedded"] = res.final_embedded;
    report["trace_file"] = "shorten_trace.csv";
    write_json(fs::path(opt.out_dir) / "shorten_report.json", report);

    out << "status = " << status << ", final length = " << format_number(res.final_length)
        << " after " << res.iterations << " iterations\n";
    return res.status == ShortenStatus::max_iterations ? ExitCode::non_convergence
                                                       : ExitCode::ok;
}

ExitCode cmd_spectrum(const json& config, const CliOptions& opt, std::ostream& out) {
    const SchottkyRepresentation rep =
        parse_group(require_field(config, "group", "config"), "config.group");
    const int depth = int_or(config, "max_word_length", "config", 8);
    if (depth < 1) fail("config.max_word_length", "must be at least 1");
    const TruncatedLengthSpectrum spec = truncated_spectrum(rep, depth, true, opt.seed);
    persist_spectrum(spec, opt.out_dir, "spectrum", opt.format);
    out << "spectrum: " << spec.entries.size() << " classes up to word length " << depth
        << "; shortest = " << format_number(spec.entries.front().length) << " ("
        << word_to_string(spec.entries.front().word, spec.k) << ")\n";
    return ExitCode::ok;
}

ExitCode cmd_certify(const json& config, const CliOptions& opt, std::ostream& out) {
    const SchottkyRepresentation rep =
        parse_group(require_field(config, "group", "config"), "config.group");
    const PingPongReport report = ping_pong_certificate(rep, 64, opt.seed);

    ordered_json j;
    j["command"] = "certify";
    j["certified"] = report.certified;
    j["min_separation"] = rounded12(report.min_separation);
    j["max_pairing_residual"] = rounded12(report.max_pairing_residual);
    if (report.overlapping) {
        j["witness"] = {{"disc_a", report.overlapping->first},
                        {"disc_b", report.overlapping->second}};
    } else {
        j["witness"] = nullptr;
    }
    j["detail"] = report.detail;
    write_json(fs::path(opt.out_dir) / "certify_report.json", j);

    out << (report.certified ? "certified" : "NOT certified") << ": " << report.detail << "\n";
    return report.certified ? ExitCode::ok : ExitCode::certification_failure;
}

ExitCode cmd_deform(const json& config, const CliOptions& opt, std::ostream& out) {
    const json& family = require_field(config, "family", "config");
    const std::string type = require_string(family, "type", "config.family");
    const int grid_points = int_or(config, "grid_points", "config", 101);
    if (grid_points < 2) fail("config.grid_points", "need at least 2 grid points");
    const int depth = int_or(config, "max_word_length", "config", 4);
    if (depth < 1) fail("config.max_word_length", "must be at least 1");
    const double tolerance = number_or(config, "tolerance", "config", 1e-6);
    const std::vector<double> grid = uniform_grid(grid_points);

    TruncatedLengthSpectrum s0{1, depth, 1e-10, {}}, s1{1, depth, 1e-10, {}};
    std::vector<std::pair<double, double>> lam;

    if (type == "representation_path") {
        const SchottkyRepresentation base =
            parse_group(require_field(family, "base", "config.family"), "config.family.base");
        const json& sched = require_field(family, "schedules", "config.family");
        if (!sched.is_array() || sched.size() != base.generators.size()) {
            fail("config.family.schedules", "need one schedule per generator");
        }
        std::vector<std::function<double(double)>> schedules;
        for (size_t i = 0; i < sched.size(); ++i) {
            schedules.push_back(
                parse_schedule(sched[i], "config.family.schedules[" + std::to_string(i) + "]"));
        }
        const RepresentationPath path(base, schedules);
        Word cls{{1}};
        if (family.contains("class")) {
            cls = word_from_string(require_string(family, "class", "config.family"),
                                   base.rank());
            if (cls.letters.empty()) fail("config.family.class", "empty class word");
        }
        lam = lambda_of_t(path, cls, grid, opt.seed);
        s0 = truncated_spectrum(representation_at(path, 0.0, opt.seed), depth, false);
        s1 = truncated_spectrum(representation_at(path, 1.0, opt.seed), depth, false);
    } else if (type == "annulus_family") {
        const double r0 = require_number(family, "inner_start", "config.family");
        const double r1 = require_number(family, "inner_end", "config.family");
        if (!(r0 > 0.0 && r0 < 1.0)) fail("config.family.inner_start", "must lie in (0,1)");
        if (!(r1 > 0.0 && r1 < 1.0)) fail("config.family.inner_end", "must lie in (0,1)");
        const AnnulusFamily fam = annulus_family_log_linear(r0, r1);
        lam = lambda_of_t(fam, grid);
        // group-side surrogate: the cyclic representation with the core length
        s0 = truncated_spectrum(cyclic_representation(lam.front().second), depth);
        s1 = truncated_spectrum(cyclic_representation(lam.back().second), depth);
    } else {
        fail("config.family.type", "unknown family type '" + type + "'");
    }

    std::ostringstream csv;
    write_trace_csv(csv, "t", "value", lam);
    write_file(fs::path(opt.out_dir) / "lambda_trace.csv", csv.str());
    persist_spectrum(s0, opt.out_dir, "spectrum_t0", opt.format);
    persist_spectrum(s1, opt.out_dir, "spectrum_t1", opt.format);

    const SpectrumComparison cmp = compare(s0, s1, tolerance);
    write_json(fs::path(opt.out_dir) / "comparison.json", comparison_to_json(cmp));

    ordered_json report;
    report["command"] = "deform";
    report["family"] = type;
    report["grid_points"] = grid_points;
    report["max_word_length"] = depth;
    report["lambda_start"] = rounded12(lam.front().second);
    report["lambda_end"] = rounded12(lam.back().second);
    report["verdict"] = cmp.verdict == SpectrumVerdict::distinct
                            ? "distinct"
                            : "indistinguishable_at_truncation";
    write_json(fs::path(opt.out_dir) / "deform_report.json", report);

    out << "lambda: " << format_number(lam.front().second) << " -> "
        << format_number(lam.back().second) << " over " << grid_points
        << " grid points; spectra at endpoints are " << report["verdict"].get<std::string>()
        << "\n";
    return ExitCode::ok;
}

ExitCode cmd_compare(const json& config, const CliOptions& opt, std::ostream& out) {
    const std::string path_a = require_string(config, "spectrum_a", "config");
    const std::string path_b = require_string(config, "spectrum_b", "config");
    const double tolerance = number_or(config, "tolerance", "config", 1e-6);
    auto load = [](const std::string& p) {
        std::ifstream in(p);
        if (!in) throw ConfigError("spectrum file not found: " + p);
        json j;
        in >> j;
        return spectrum_from_json(j);
    };
    const TruncatedLengthSpectrum a = load(path_a);
    const TruncatedLengthSpectrum b = load(path_b);
    const SpectrumComparison cmp = compare(a, b, tolerance);
    write_json(fs::path(opt.out_dir) / "comparison.json", comparison_to_json(cmp));
    out << "verdict: "
        << (cmp.verdict == SpectrumVerdict::distinct ? "distinct"
                                                     : "indistinguishable_at_truncation");
    if (cmp.witness) {
        out << " (index " << cmp.witness->index << ": " << format_number(cmp.witness->length_a)
            << " vs " << format_number(cmp.witness->length_b) << ")";
    }
    out << "\n";
    return ExitCode::ok;
}

}  // namespace

ModelSurface parse_surface(const json& j, const std::string& path) {
    const std::string type = require_string(j, "type", path);
    if (type == "disc") return ModelSurface::Disc();
    if (type == "punctured_disc") return ModelSurface::PuncturedDisc();
    if (type == "annulus") {
        const double inner = require_number(j, "inner", path);
        if (!(inner > 0.0 && inner < 1.0)) {
            fail(path + ".inner", "expected a real in (0,1), got " + format_number(inner));
        }
        return ModelSurface::Annulus(inner);
    }
    if (type == "plane") return ModelSurface::Plane();
    if (type == "punctured_plane") return ModelSurface::PuncturedPlane();
    fail(path + ".type", "unknown surface type '" + type + "'");
}

SchottkyRepresentation parse_group(const json& j, const std::string& path) {
    const std::string type = require_string(j, "type", path);
    if (type == "cyclic") {
        const double ell = require_number(j, "length", path);
        if (!(ell > 0.0)) fail(path + ".length", "translation length must be positive");
        return cyclic_representation(ell);
    }
    if (type == "perpendicular_pair") {
        const json& lengths = require_field(j, "lengths", path);
        if (!lengths.is_array() || lengths.size() != 2 || !lengths[0].is_number() ||
            !lengths[1].is_number()) {
            fail(path + ".lengths", "expected [l1, l2]");
        }
        const double l1 = lengths[0].get<double>(), l2 = lengths[1].get<double>();
        if (!(l1 > 0.0 && l2 > 0.0)) fail(path + ".lengths", "lengths must be positive");
        return perpendicular_pair(l1, l2);
    }
    if (type == "generators") {
        const json& mats = require_field(j, "matrices", path);
        if (!mats.is_array() || mats.empty()) fail(path + ".matrices", "expected a matrix list");
        std::vector<MoebiusTransform> gens;
        for (size_t i = 0; i < mats.size(); ++i) {
            const std::string mpath = path + ".matrices[" + std::to_string(i) + "]";
            const json& m = mats[i];
            if (!m.is_array() || m.size() != 4) fail(mpath, "expected [a, b, c, d]");
            for (const auto& e : m) {
                if (!e.is_number()) fail(mpath, "expected [a, b, c, d] of numbers");
            }
            try {
                gens.push_back(MoebiusTransform::from_entries(m[0].get<double>(),
                                                              m[1].get<double>(),
                                                              m[2].get<double>(),
                                                              m[3].get<double>()));
            } catch (const std::invalid_argument& e) {
                fail(mpath, e.what());
            }
        }
        try {
            return SchottkyRepresentation(std::move(gens));
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
    }
    fail(path + ".type", "unknown group type '" + type + "'");
}

ExitCode run_command(const std::string& command, const json& config, const CliOptions& options,
                     std::ostream& out, std::ostream& err) {
    try {
        fs::create_directories(options.out_dir);
        if (command == "length") return cmd_length(config, options, out);
        if (command == "shorten") return cmd_shorten(config, options, out);
        if (command == "spectrum") return cmd_spectrum(config, options, out);
        if (command == "deform") return cmd_deform(config, options, out);
        if (command == "certify") return cmd_certify(config, options, out);
        if (command == "compare") return cmd_compare(config, options, out);
        err << "unknown command: " << command << "\n";
        return ExitCode::config_error;
    } catch (const ConfigError& e) {
        err << "config error at " << e.what() << "\n";
        return ExitCode::config_error;
    } catch (const CertificationError& e) {
        err << "certification failure: " << e.what() << "\n";
        return ExitCode::certification_failure;
    } catch (const std::domain_error& e) {
        err << "precondition violation: " << e.what() << "\n";
        return ExitCode::precondition_error;
    } catch (const std::invalid_argument& e) {
        err << "precondition violation: " << e.what() << "\n";
        return ExitCode::precondition_error;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return ExitCode::config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::failure;
    }
}

int run_cli(const std::string& command, const std::string& config_path,
            const CliOptions& options, std::ostream& out, std::ostream& err) {
    json config;
    {
        std::ifstream in(config_path);
        if (!in) {
            err << "config error: cannot open " << config_path << "\n";
            return static_cast<int>(ExitCode::config_error);
        }
        try {
            in >> config;
        } catch (const json::exception& e) {
            err << "config error: " << e.what() << "\n";
            return static_cast<int>(ExitCode::config_error);
        }
    }
    return static_cast<int>(run_command(command, config, options, out, err));
}

}  // namespace hyplen::cli
