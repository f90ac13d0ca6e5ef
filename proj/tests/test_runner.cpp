#include <filesystem>
#include <fstream>
#include <set>

#include <doctest.h>

#include "voroshot/error.hpp"
#include "voroshot/config.hpp"
#include "voroshot/runner.hpp"

using namespace voroshot;

namespace {

namespace fs = std::filesystem;

std::string scratch_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::trunc);
    REQUIRE(out.good());
    out << body;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// 2D synthetic banks small enough for render tests
std::string gen_spec_json(const std::string& out_dir, uint32_t dim, uint32_t views) {
    return std::string("{\n") + "  \"dataset\": \"unit-test\",\n" +
           "  \"output_dir\": \"" + out_dir + "\",\n" + "  \"format\": \"binary\",\n" +
           "  \"synthetic\": {\"base_classes\": 8, \"novel_classes\": 6, "
           "\"validation_classes\": 6, \"dim\": " +
           std::to_string(dim) +
           ", \"samples_per_class\": 12, \"center_dispersion\": 2.0, \"noise_scale\": 0.15, "
           "\"seed\": 99, \"views\": " +
           std::to_string(views) + ", \"view_jitter\": 0.05, \"combo_size\": 2}\n}\n";
}

} // namespace

TEST_CASE("run_gen writes loadable banks and a manifest") {
    std::string dir = scratch_dir("voroshot_gen_test");
    std::string spec_path = dir + "/spec.json";
    write_file(spec_path, gen_spec_json(dir, 6, 2));

    GenOutcome out = run_gen(spec_path, {});
    FeatureBank base = load_bank(out.base_path);
    FeatureBank novel = load_bank(out.novel_path);
    FeatureBank validation = load_bank(out.validation_path);
    CHECK(base.split == Split::Base);
    CHECK(novel.split == Split::Novel);
    CHECK(validation.split == Split::Validation);
    CHECK(novel.n_views() == 2);
    CHECK(slurp(out.manifest_path).find("unit-test") != std::string::npos);

    // regeneration is byte-identical
    std::string first = slurp(out.novel_path);
    run_gen(spec_path, {});
    CHECK(slurp(out.novel_path) == first);
}

TEST_CASE("run_eval produces a bounded report and deterministic files") {
    std::string dir = scratch_dir("voroshot_eval_test");
    write_file(dir + "/spec.json", gen_spec_json(dir, 6, 1));
    run_gen(dir + "/spec.json", {});

    std::string config = std::string("{\n") + "  \"banks\": {\"novel\": \"" + dir +
                         "/novel.bank\"},\n" +
                         "  \"episodes\": {\"way\": 3, \"shots\": 1, \"queries\": 5, "
                         "\"count\": 25, \"seed\": 5},\n" +
                         "  \"head\": {\"kind\": \"vd\", \"transform\": {\"w\": 1, \"b\": 0.02, "
                         "\"lambda\": 0.5}},\n" +
                         "  \"output_dir\": \"" + dir + "/out\"\n}\n";
    write_file(dir + "/run.json", config);

    EvalOutcome outcome = run_eval(dir + "/run.json", {});
    CHECK(outcome.report.mean_accuracy >= 1.0 / 3.0);
    CHECK(outcome.report.mean_accuracy <= 1.0);
    CHECK(fs::exists(outcome.report_path));
    CHECK(fs::exists(outcome.csv_path));

    std::string csv_first = slurp(outcome.csv_path);
    std::string json_first = report_to_json(outcome.report, false);
    EvalOutcome second = run_eval(dir + "/run.json", {});
    CHECK(slurp(second.csv_path) == csv_first);
    CHECK(report_to_json(second.report, false) == json_first);
}

TEST_CASE("run_eval override flags take effect") {
    std::string dir = scratch_dir("voroshot_override_test");
    write_file(dir + "/spec.json", gen_spec_json(dir, 5, 1));
    run_gen(dir + "/spec.json", {});
    write_file(dir + "/run.json", std::string("{\"banks\": {\"novel\": \"") + dir +
                                      "/novel.bank\"}, \"episodes\": {\"way\": 3, \"shots\": 1, "
                                      "\"queries\": 4, \"count\": 10, \"seed\": 5}, "
                                      "\"output_dir\": \"" + dir + "/out\"}");
    RunOverrides o;
    o.episodes = 4;
    o.seed = 123;
    EvalOutcome outcome = run_eval(dir + "/run.json", o);
    CHECK(outcome.report.episode_accuracy.size() == 4);
    CHECK(outcome.report.seed == 123);
}

TEST_CASE("run_eval reports missing configuration keys") {
    std::string dir = scratch_dir("voroshot_badcfg_test");
    write_file(dir + "/nobanks.json", "{\"episodes\": {\"way\": 2}}");
    CHECK_THROWS_WITH_AS(run_eval(dir + "/nobanks.json", {}),
                         doctest::Contains("banks"), ConfigError);
    write_file(dir + "/nonovel.json", "{\"banks\": {\"base\": \"x\"}}");
    CHECK_THROWS_WITH_AS(run_eval(dir + "/nonovel.json", {}),
                         doctest::Contains("banks.novel"), ConfigError);
    CHECK_THROWS_AS(run_eval(dir + "/missing.json", {}), ConfigError);
}

TEST_CASE("run_render2d draws the 2D partition") {
    std::string dir = scratch_dir("voroshot_render_test");
    write_file(dir + "/spec.json", gen_spec_json(dir, 2, 1));
    run_gen(dir + "/spec.json", {});
    write_file(dir + "/run.json", std::string("{\"banks\": {\"novel\": \"") + dir +
                                      "/novel.bank\"}, \"episodes\": {\"way\": 5, \"shots\": 1, "
                                      "\"queries\": 2, \"count\": 1, \"seed\": 3}, "
                                      "\"head\": {\"kind\": \"vd\"}, \"output_dir\": \"" +
                                      dir + "/out\"}");

    std::string svg = run_render2d(dir + "/run.json", dir + "/partition.svg", {});
    CHECK(fs::exists(dir + "/partition.svg"));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);

    // five distinct cell colors for a 5-way episode
    std::set<std::string> fills;
    size_t pos = 0;
    while ((pos = svg.find("height=\"1\" fill=\"", pos)) != std::string::npos) {
        size_t start = pos + 18;
        fills.insert(svg.substr(start, svg.find('"', start) - start));
        pos = start;
    }
    CHECK(fills.size() == 5);
}

TEST_CASE("run_render2d rejects non-2D banks") {
    std::string dir = scratch_dir("voroshot_render3d_test");
    write_file(dir + "/spec.json", gen_spec_json(dir, 6, 1));
    run_gen(dir + "/spec.json", {});
    write_file(dir + "/run.json", std::string("{\"banks\": {\"novel\": \"") + dir +
                                      "/novel.bank\"}, \"episodes\": {\"way\": 3, \"shots\": 1, "
                                      "\"queries\": 2, \"count\": 1, \"seed\": 3}, "
                                      "\"output_dir\": \"" + dir + "/out\"}");
    CHECK_THROWS_AS(run_render2d(dir + "/run.json", dir + "/x.svg", {}), DomainError);
}

TEST_CASE("run_bench reports phases and scales with pool size") {
    std::string dir = scratch_dir("voroshot_bench_test");
    write_file(dir + "/spec.json", gen_spec_json(dir, 6, 4));
    run_gen(dir + "/spec.json", {});

    auto bench_config = [&](int n_transforms) {
        std::string transforms = "[{\"w\":1,\"b\":0,\"lambda\":1}";
        if (n_transforms > 1) transforms += ",{\"w\":1,\"b\":0.02,\"lambda\":0.5}";
        if (n_transforms > 2) transforms += ",{\"w\":1,\"b\":0.04,\"lambda\":0.5}";
        if (n_transforms > 3) transforms += ",{\"w\":1,\"b\":0.08,\"lambda\":1}";
        transforms += "]";
        return std::string("{\"banks\": {\"novel\": \"") + dir +
               "/novel.bank\"}, \"episodes\": {\"way\": 3, \"shots\": 1, \"queries\": 5, "
               "\"count\": 12, \"seed\": 2}, \"head\": {\"kind\": \"ensemble\"}, "
               "\"pool\": {\"views\": " + (n_transforms == 1 ? "[0]" : "\"all\"") +
               ", \"transforms\": " + transforms +
               ", \"heads\": [{\"kind\": \"feature\"}]}, \"output_dir\": \"" + dir +
               "/out\"}";
    };
    write_file(dir + "/bench1.json", bench_config(1));
    write_file(dir + "/bench16.json", bench_config(4));

    std::string small = run_bench(dir + "/bench1.json", {});
    std::string large = run_bench(dir + "/bench16.json", {});
    CHECK(small.find("\"fit_s\"") != std::string::npos);
    CHECK(small.find("\"classify_s\"") != std::string::npos);
    CHECK(small.find("\"reduce_s\"") != std::string::npos);
    CHECK(fs::exists(dir + "/out/bench.json"));

    auto total = [](const std::string& body) {
        size_t pos = body.find("\"total_s\": ");
        return std::stod(body.substr(pos + 11));
    };
    CHECK(total(small) < total(large));
}
