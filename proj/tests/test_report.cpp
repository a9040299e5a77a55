#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jamlab/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace jamlab;

namespace {

RunResult sample_curve() {
    RunResult r;
    r.kind = ExperimentKind::ser_vs_sjr;
    r.x_name = "sjr_db";
    r.metric_name = "ser";
    r.extra_names = {"theory"};
    CurvePoint p1;
    p1.x = -10.0;
    p1.metric = 0.25;
    p1.ci_halfwidth = 0.0125;
    p1.trials_effective = 1000;
    p1.extra = {{"theory", 0.2469135802469}};
    CurvePoint p2;
    p2.x = 0.0;
    p2.metric = 1e-4;
    p2.ci_halfwidth = 5e-5;
    p2.trials_effective = 1000;
    p2.extra = {{"theory", 9.5e-5}};
    r.points = {p1, p2};
    return r;
}

} // namespace

TEST_CASE("curve csv has the stated header and stable formatting") {
    std::ostringstream out;
    write_csv(out, sample_curve());
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "sjr_db,ser,ci_halfwidth,trials_effective,theory");
    REQUIRE(std::getline(in, line));
    CHECK(line == "-10,0.25,0.0125,1000,0.246913580247");  // %.12g
    REQUIRE(std::getline(in, line));
    CHECK(line == "0,0.0001,5e-05,1000,9.5e-05");
    CHECK_FALSE(std::getline(in, line));  // nothing after the data rows

    // Byte-identical on repeat.
    std::ostringstream again;
    write_csv(again, sample_curve());
    CHECK(again.str() == out.str());
}

TEST_CASE("spectrum csv carries bin, magnitude, and jam image columns") {
    RunResult r;
    r.kind = ExperimentKind::dft_illustration;
    r.is_spectrum = true;
    r.spectrum = {{0, 1.5, 0.25, -0.75}, {1, 2.0, -16.0, 0.0}};
    std::ostringstream out;
    write_csv(out, r);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "n,magnitude,jam_re,jam_im");
    REQUIRE(std::getline(in, line));
    CHECK(line == "0,1.5,0.25,-0.75");
    REQUIRE(std::getline(in, line));
    CHECK(line == "1,2,-16,0");
}

TEST_CASE("manifest embeds the resolved experiment and the summary") {
    const std::string doc =
        "[experiment]\nkind = dft_illustration\nsymbol = 67\n"
        "[lora]\nsf = 7\n"
        "[jammer]\nkind = tone\nv = 1\nu = 20\nsigma_j_sq = 2\n";
    const ExperimentSpec spec = parse_experiment(doc);
    RunResult r;
    r.kind = spec.kind;
    r.is_spectrum = true;
    r.summary = {{"a_max", 67.0}, {"gamma_plus", 16.0}};
    std::ostringstream out;
    write_manifest(out, spec, RunOptions{2, 1}, r);
    const std::string text = out.str();
    CHECK(text.find("[run]") != std::string::npos);
    CHECK(text.find("seed = ") != std::string::npos);
    CHECK(text.find("threads = 2") != std::string::npos);
    CHECK(text.find("kind = dft_illustration") != std::string::npos);
    CHECK(text.find("[summary]") != std::string::npos);
    CHECK(text.find("a_max = 67") != std::string::npos);
    // The embedded document must reparse to the same resolved spec.
    const auto at = text.find("[experiment]");
    REQUIRE(at != std::string::npos);
    const auto stop = text.find("[summary]");
    const ExperimentSpec back = parse_experiment(text.substr(at, stop - at));
    CHECK(dump_experiment(back) == dump_experiment(spec));
}

TEST_CASE("fields containing separators get quoted") {
    RunResult r = sample_curve();
    r.extra_names = {"a,b", "c\"d"};
    r.points[0].extra = {{"a,b", 1.0}, {"c\"d", 2.0}};
    r.points.resize(1);
    std::ostringstream out;
    write_csv(out, r);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "sjr_db,ser,ci_halfwidth,trials_effective,\"a,b\",\"c\"\"d\"");
}

TEST_CASE("write_run_files lays out kind-named files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "jamlab_report_test";
    fs::remove_all(dir);
    const ExperimentSpec spec = parse_experiment(
        "[experiment]\nkind = dft_illustration\n"
        "[lora]\nsf = 7\n"
        "[jammer]\nkind = tone\nv = 1\nu = 20\nsigma_j_sq = 2\n");
    RunResult r;
    r.kind = spec.kind;
    r.is_spectrum = true;
    r.spectrum = {{0, 1.0, 0.0, 0.0}};
    const std::string csv = write_run_files(dir.string(), spec, RunOptions{1, 1}, r);
    CHECK(fs::path(csv).filename() == "dft_illustration.csv");
    CHECK(fs::exists(dir / "dft_illustration.csv"));
    CHECK(fs::exists(dir / "dft_illustration.manifest.ini"));
    std::ifstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "n,magnitude,jam_re,jam_im");
    fs::remove_all(dir);
}
