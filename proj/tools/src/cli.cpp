#include "equitile/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "equitile/classifier.hpp"
#include "equitile/constructors.hpp"
#include "equitile/io.hpp"
#include "equitile/rotational.hpp"
#include "equitile/tiler.hpp"
#include "equitile/type_catalog.hpp"
#include "equitile/verify.hpp"
#include "json.hpp"

namespace equitile {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
}

// Writes to `path`, or to stdout when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    } else {
        write_file(path, text);
    }
}

// EQUITILE_TOL is the classification tolerance in degrees.
TolerancePolicy tolerance_from_env() {
    TolerancePolicy tol;
    const char* raw = std::getenv("EQUITILE_TOL");
    if (raw == nullptr || *raw == '\0') return tol;
    char* end = nullptr;
    errno = 0;
    const double deg = std::strtod(raw, &end);
    if (errno != 0 || end == raw || *end != '\0' || !(deg > 0.0) || !std::isfinite(deg)) {
        throw Error(ErrorKind::InvalidInput, std::string("EQUITILE_TOL must be a positive number, got ") + raw);
    }
    tol.tol_classify = deg_to_rad(deg);
    tol.tol_angle = std::min(tol.tol_angle, tol.tol_classify);
    tol.tol_closure = std::min(tol.tol_closure, tol.tol_classify);
    tol.tol_geom = std::min(tol.tol_geom, tol.tol_classify);
    return tol;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConvergenceFailure:
        case ErrorKind::NonConvexSolution:
        case ErrorKind::ConstructionFailure:
            return kExitInternal;
        default:
            return kExitInvalidInput;
    }
}

struct Options {
    std::string input;
    std::string patch;
    std::string out;
    bool explain = false;
    std::string which;
    bool json_out = false;
    std::string svg;
    double grid_step_deg = 0.1;
    double convexity_margin = 1e-3;
    unsigned workers = 0;
    int rings = 2;
    bool no_reflections = false;
    std::size_t budget = GrowOptions{}.node_budget;
    int order = 7;
    RenderStyle style;
};

// Builds the parser; `actions` receives one callback per subcommand.
std::unique_ptr<CLI::App> build_app(Options& o, std::vector<std::pair<CLI::App*, std::function<int()>>>* actions,
                                    std::ostream& out, std::ostream& err) {
    auto app = std::make_unique<CLI::App>("Tiling decisions and patches for equilateral convex polygons", "equitile");
    app->require_subcommand(1);
    const auto bind = [&](CLI::App* sub, std::function<int()> f) {
        if (actions != nullptr) actions->emplace_back(sub, std::move(f));
    };

    auto* classify_cmd = app->add_subcommand("classify", "Decide whether a polygon tiles the plane");
    classify_cmd->add_option("--input", o.input, "Polygon JSON file")->required();
    classify_cmd->add_flag("--explain", o.explain, "Add a one-paragraph justification");
    bind(classify_cmd, [&o, &out] {
        const TolerancePolicy tol = tolerance_from_env();
        const auto p = parse_polygon_json(read_file(o.input), tol);
        const Verdict v = classify(p, tol);
        json j = {{"tiles", v.tiles}, {"reason", std::string(to_string(v.reason))}, {"n", v.vertex_count}};
        j["witness"] = json::array();
        for (std::size_t k = 0; k < v.witness_size; ++k) j["witness"].push_back(v.witness[k]);
        if (o.explain) j["explanation"] = explain(v);
        out << j.dump(2) << '\n';
        return v.tiles ? kExitOk : kExitNegative;
    });

    auto* match_cmd = app->add_subcommand("match", "List the catalog types a pentagon or hexagon satisfies");
    match_cmd->add_option("--input", o.input, "Polygon JSON file")->required();
    bind(match_cmd, [&o, &out] {
        const TolerancePolicy tol = tolerance_from_env();
        const auto poly = parse_polygon_vertices_json(read_file(o.input), tol);
        json types = json::array();
        json relabelings = json::object();
        for (const TypeMatch& m : match_types(poly, input_tolerance(tol))) {
            const std::string id(to_string(m.id));
            types.push_back(id);
            relabelings[id] = {{"shift", m.relabeling.shift}, {"reflected", m.relabeling.reflected}};
        }
        out << json{{"types", types}, {"relabelings", relabelings}}.dump(2) << '\n';
        return kExitOk;
    });

    auto* construct_cmd = app->add_subcommand("construct", "Build the special pentagon p7 or p8");
    construct_cmd->add_option("which", o.which, "p7 or p8")->required()->check(CLI::IsMember({"p7", "p8"}));
    construct_cmd->add_flag("--json", o.json_out, "Print the polygon as JSON (the default)");
    construct_cmd->add_option("--svg", o.svg, "Write a drawing of the tile to this file");
    bind(construct_cmd, [&o, &out] {
        const TolerancePolicy tol = tolerance_from_env();
        const auto p = o.which == "p7" ? construct_p7(tol) : construct_p8(tol);
        if (!o.svg.empty()) write_file(o.svg, to_svg(single_tile_patch(p), o.style));
        if (o.json_out || o.svg.empty()) out << polygon_to_json(p) << '\n';
        return kExitOk;
    });

    auto* certify_cmd = app->add_subcommand("certify-type9", "Grid scan showing no equilateral pentagon meets type 9");
    certify_cmd->add_option("--grid-step", o.grid_step_deg, "Grid step in degrees")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    certify_cmd->add_option("--margin", o.convexity_margin, "Convexity margin in radians")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    certify_cmd->add_option("--workers", o.workers, "Scan threads, 0 for one per core")->capture_default_str();
    bind(certify_cmd, [&o, &out] {
        const auto c = search_type9(deg_to_rad(o.grid_step_deg), o.convexity_margin, o.workers);
        json argmin = json::array();
        for (double a : c.argmin) argmin.push_back(rad_to_deg(a));
        const json j = {{"grid_step_deg", o.grid_step_deg},   {"convexity_margin", c.convexity_margin},
                        {"min_residual", c.min_residual},      {"argmin_deg", argmin},
                        {"points_scanned", c.points_scanned}, {"positive", c.min_residual > 0.0}};
        out << j.dump(2) << '\n';
        return c.min_residual > 0.0 ? kExitOk : kExitNegative;
    });

    auto* tile_cmd = app->add_subcommand("tile", "Grow an edge-to-edge patch around one tile");
    tile_cmd->add_option("--input", o.input, "Polygon JSON file")->required();
    tile_cmd->add_option("--rings", o.rings, "Rings of neighbours to complete")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    tile_cmd->add_flag("--no-reflections", o.no_reflections, "Use direct copies only");
    tile_cmd->add_option("--budget", o.budget, "Placements before giving up")->capture_default_str();
    tile_cmd->add_option("--out", o.out, "Patch JSON file (stdout if omitted)");
    bind(tile_cmd, [&o, &out, &err] {
        const TolerancePolicy tol = tolerance_from_env();
        const auto p = parse_polygon_json(read_file(o.input), tol);
        GrowOptions options;
        options.node_budget = o.budget;
        const GrowResult r = grow_patch(p, o.rings, !o.no_reflections, tol, options);
        if (!r.ok()) {
            err << "equitile: no patch: " << to_string(r.status) << " after " << r.placements << " placements\n";
            return kExitNegative;
        }
        emit(o.out, patch_to_json(r.patch), out);
        return kExitOk;
    });

    auto* verify_cmd = app->add_subcommand("verify", "Check a patch for overlaps, gaps and mismatched edges");
    verify_cmd->add_option("--patch", o.patch, "Patch JSON file")->required();
    bind(verify_cmd, [&o, &out] {
        const TolerancePolicy tol = tolerance_from_env();
        const Patch patch = parse_patch_json(read_file(o.patch), tol);
        const PatchReport r = verify_patch(patch, tol);
        const bool ok = passes(r);
        const json j = {{"tiles", patch.tiles.size()},
                        {"max_overlap_area", r.max_overlap_area},
                        {"worst_vertex_defect", r.worst_vertex_defect},
                        {"max_edge_mismatch", r.max_edge_mismatch},
                        {"interior_vertex_count", r.interior_vertex_count},
                        {"passes", ok}};
        out << j.dump(2) << '\n';
        return ok ? kExitOk : kExitNegative;
    });

    auto* rotational_cmd = app->add_subcommand("rotational", "Hexagon patch with n-fold rotational symmetry");
    rotational_cmd->add_option("--n", o.order, "Order of the rotation, at least 3")
        ->check(CLI::Range(3, 1000))
        ->capture_default_str();
    rotational_cmd->add_option("--rings", o.rings, "Rings around the centre")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    rotational_cmd->add_option("--out", o.out, "Patch JSON file (stdout if omitted)");
    bind(rotational_cmd, [&o, &out] {
        const Patch patch = rotational_hexagon_tiling(o.order, o.rings, tolerance_from_env());
        emit(o.out, patch_to_json(patch), out);
        return kExitOk;
    });

    auto* render_cmd = app->add_subcommand("render", "Draw a polygon or a patch as SVG");
    auto* in_opt = render_cmd->add_option("--input", o.input, "Polygon JSON file");
    auto* patch_opt = render_cmd->add_option("--patch", o.patch, "Patch JSON file");
    in_opt->excludes(patch_opt);
    render_cmd->add_option("--out", o.out, "SVG file (stdout if omitted)");
    render_cmd->add_option("--scale", o.style.scale, "Pixels per edge length")->capture_default_str();
    render_cmd->add_option("--stroke-width", o.style.stroke_width, "In edge lengths")->capture_default_str();
    render_cmd->add_option("--margin", o.style.margin, "In edge lengths")->capture_default_str();
    bind(render_cmd, [&o, &out] {
        const TolerancePolicy tol = tolerance_from_env();
        if (o.input.empty() == o.patch.empty()) throw Error(ErrorKind::InvalidInput, "give --input or --patch");
        o.style.validate();
        const Patch patch = o.patch.empty() ? single_tile_patch(parse_polygon_json(read_file(o.input), tol))
                                            : parse_patch_json(read_file(o.patch), tol);
        emit(o.out, to_svg(patch, o.style), out);
        return kExitOk;
    });

    // Set last so the subcommands do not inherit it.
    app->footer("Polygon files hold {\"n\": 5, \"angles_deg\": [...]} or {\"vertices\": [[x, y], ...]}.\n"
                "EQUITILE_TOL overrides the classification tolerance (degrees).\n"
                "Exit codes: 0 ok or tiles, 1 invalid input, 2 internal or convergence error,\n"
                "3 does not tile, search failed or patch rejected.");
    return app;
}

}  // namespace

std::string cli_help() {
    Options o;
    std::ostringstream sink;
    const auto app = build_app(o, nullptr, sink, sink);
    std::string text = app->help();
    for (const CLI::App* sub : app->get_subcommands({})) text += "\n" + sub->help();
    return text;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    std::vector<std::pair<CLI::App*, std::function<int()>>> actions;
    std::unique_ptr<CLI::App> app;
    try {
        app = build_app(o, &actions, out, err);
        app->parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        // Help on the bare command covers every subcommand.
        const auto parsed = app->get_subcommands();
        out << (parsed.empty() ? cli_help() : parsed.back()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "equitile: " << e.what() << '\n';
        if (e.get_exit_code() == 0) return kExitOk;
        return kExitInvalidInput;
    }

    try {
        for (auto& [sub, action] : actions) {
            if (sub->parsed()) return action();
        }
        err << "equitile: no subcommand\n";
        return kExitInvalidInput;
    } catch (const Error& e) {
        err << "equitile: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "equitile: internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (...) {
        err << "equitile: internal error\n";
        return kExitInternal;
    }
}

}  // namespace equitile
