#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "equitile/cli.hpp"
#include "equitile/constructors.hpp"
#include "equitile/io.hpp"
#include "equitile/verify.hpp"
#include "json.hpp"

using namespace equitile;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "equitile");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string tmp(const std::string& name) { return std::string(EQUITILE_TEST_TMP) + "/cli_" + name; }

std::string write_tmp(const std::string& name, const std::string& text) {
    const std::string path = tmp(name);
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kSquare = R"({"n": 4, "angles_deg": [90, 90, 90, 90]})";
const std::string kPentagon = R"({"n": 5, "angles_deg": [108, 108, 108, 108, 108]})";

}  // namespace

TEST_CASE("help text matches the golden file") {
    const std::string golden = slurp(std::string(EQUITILE_GOLDEN_DIR) + "/help.txt");
    REQUIRE_FALSE(golden.empty());
    const Run r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == golden);
    CHECK(cli_help() == golden);
}

TEST_CASE("help names every subcommand and flag") {
    const std::string help = cli_help();
    for (const char* word : {"classify", "match", "construct", "certify-type9", "tile", "verify", "rotational",
                             "render", "--input", "--explain", "--json", "--svg", "--grid-step", "--rings",
                             "--no-reflections", "--out", "--patch", "--n ", "EQUITILE_TOL"}) {
        CAPTURE(word);
        CHECK(help.find(word) != std::string::npos);
    }
}

TEST_CASE("classify exit codes") {
    CHECK(run({"classify", "--input", write_tmp("square.json", kSquare)}).code == kExitOk);
    const Run neg = run({"classify", "--input", write_tmp("pentagon.json", kPentagon), "--explain"});
    CHECK(neg.code == kExitNegative);
    const json j = json::parse(neg.out);
    CHECK(j["tiles"] == false);
    CHECK(j["reason"] == "NoConditionMet");
    CHECK(j.contains("explanation"));
    CHECK(run({"classify", "--input", tmp("missing.json")}).code == kExitInvalidInput);
    CHECK(run({"classify", "--input", write_tmp("broken.json", "{\"angles_deg\": [90,")}).code == kExitInvalidInput);
    const Run bad = run({"classify", "--input", write_tmp("open.json", R"({"angles_deg": [80, 80, 100, 100]})")});
    CHECK(bad.code == kExitInvalidInput);
    CHECK(bad.err.find("ClosureFailure") != std::string::npos);
}

TEST_CASE("argument errors") {
    CHECK(run({}).code == kExitInvalidInput);
    CHECK(run({"bogus"}).code == kExitInvalidInput);
    CHECK(run({"construct", "p9"}).code == kExitInvalidInput);
    CHECK(run({"tile", "--input", write_tmp("square.json", kSquare), "--rings", "0"}).code == kExitInvalidInput);
    CHECK(run({"rotational", "--n", "2"}).code == kExitInvalidInput);
    CHECK(run({"render"}).code == kExitInvalidInput);
}

TEST_CASE("construct p7 prints the known angles") {
    const Run r = run({"construct", "p7", "--json"});
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    const std::vector<double> want{89.26, 144.56, 70.88, 135.37, 99.93};
    REQUIRE(j["angles_deg"].size() == 5);
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(j["angles_deg"][k].get<double>() - want[k]) <= 0.02);
    // The printed polygon is valid input again.
    CHECK(run({"classify", "--input", write_tmp("p7.json", r.out)}).code == kExitOk);
}

TEST_CASE("construct p8 with a drawing") {
    const std::string svg = tmp("p8.svg");
    const Run r = run({"construct", "p8", "--svg", svg});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    CHECK(slurp(svg).find("<path ") != std::string::npos);
}

TEST_CASE("tile, verify and re-read a patch") {
    const std::string out = tmp("square_patch.json");
    std::remove(out.c_str());
    const Run grown = run({"tile", "--input", write_tmp("square.json", kSquare), "--rings", "1", "--out", out});
    REQUIRE(grown.code == kExitOk);
    const std::string text = slurp(out);
    const Patch patch = parse_patch_json(text);
    CHECK(patch.tiles.size() == 9);
    CHECK(patch_to_json(patch) == text);

    const Run checked = run({"verify", "--patch", out});
    CHECK(checked.code == kExitOk);
    CHECK(json::parse(checked.out)["passes"] == true);

    Patch broken = patch;
    broken.tiles[4].translation = broken.tiles[4].translation + Point2{0.3, 0.0};
    const Run rejected = run({"verify", "--patch", write_tmp("broken_patch.json", patch_to_json(broken))});
    CHECK(rejected.code == kExitNegative);
    CHECK(run({"verify", "--patch", write_tmp("junk_patch.json", "{}")}).code == kExitInvalidInput);
}

TEST_CASE("failed search exits 3") {
    const Run r = run({"tile", "--input", write_tmp("pentagon.json", kPentagon), "--rings", "1"});
    CHECK(r.code == kExitNegative);
    CHECK(r.out.empty());
    CHECK(r.err.find("exhausted") != std::string::npos);
}

TEST_CASE("rotational patch to stdout and render") {
    const Run r = run({"rotational", "--n", "7", "--rings", "1"});
    REQUIRE(r.code == kExitOk);
    const Patch patch = parse_patch_json(r.out);
    CHECK(patch.tiles.size() == 7);
    const std::string path = write_tmp("rot.json", r.out);
    const Run svg = run({"render", "--patch", path, "--scale", "40"});
    CHECK(svg.code == kExitOk);
    std::size_t paths = 0;
    for (auto pos = svg.out.find("<path "); pos != std::string::npos; pos = svg.out.find("<path ", pos + 1)) ++paths;
    CHECK(paths == 7);
    CHECK(run({"render", "--patch", path, "--scale", "0"}).code == kExitInvalidInput);
    CHECK(run({"render", "--patch", path, "--input", path}).code == kExitInvalidInput);
}

TEST_CASE("certify-type9 on a coarse grid") {
    const Run r = run({"certify-type9", "--grid-step", "0.25"});
    CHECK(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["min_residual"].get<double>() > 0.0);
    CHECK(j["positive"] == true);
    // Steps that could jump over a minimum are refused.
    CHECK(run({"certify-type9", "--grid-step", "1"}).code == kExitInvalidInput);
}

TEST_CASE("match reports types with a relabeling") {
    const Run r = run({"match", "--input", write_tmp("p8.json", polygon_to_json(construct_p8()))});
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["types"] == json::array({"P2", "P8"}));
    CHECK(j["relabelings"].contains("P8"));
    const Run wrong = run({"match", "--input", write_tmp("square.json", kSquare)});
    CHECK(wrong.code == kExitInvalidInput);
}

TEST_CASE("EQUITILE_TOL widens the classification tolerance") {
    // A pentagon whose first two angles miss 180 degrees by 0.001 degrees.
    const auto base = sample_tiling_pentagon(0, 1, 0.5).angles();
    json deg = json::array();
    for (std::size_t k = 0; k < 5; ++k) {
        double d = rad_to_deg(base[k]);
        if (k == 0) d += 0.001;
        if (k == 4) d -= 0.001;
        deg.push_back(d);
    }
    // Typed degrees close only to about 1e-5, so the file is read loosely
    // as well; the same environment variable covers both.
    const std::string path = write_tmp("near.json", json{{"angles_deg", deg}}.dump());

    ::setenv("EQUITILE_TOL", "0.01", 1);
    const Run loose = run({"classify", "--input", path});
    ::setenv("EQUITILE_TOL", "-1", 1);
    const Run bad = run({"classify", "--input", path});
    ::unsetenv("EQUITILE_TOL");

    CHECK(loose.code == kExitOk);
    CHECK(json::parse(loose.out)["witness"] == json::array({0, 1}));
    CHECK(bad.code == kExitInvalidInput);
}
