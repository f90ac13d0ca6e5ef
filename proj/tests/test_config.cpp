#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "voroshot/config.hpp"
#include "voroshot/error.hpp"

using namespace voroshot;

namespace {

std::string write_temp(const char* name, const std::string& body) {
    std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::trunc);
    REQUIRE(out.good());
    out << body;
    out.close();
    return path;
}

} // namespace

TEST_CASE("default transform grid is the 2x4 lambda/b cross") {
    auto grid = default_transform_grid();
    REQUIRE(grid.size() == 8);
    for (const auto& t : grid) CHECK(t.w == 1.0);
    CHECK(grid[0].lambda == 1.0);
    CHECK(grid[0].b == 0.0);
    CHECK(grid[4].lambda == 0.5);
    CHECK(grid[7].b == doctest::Approx(0.08));
}

TEST_CASE("run config defaults and parsing") {
    // referenced bank files must exist at config load
    std::string novel = write_temp("cfg_novel.bank", "");
    std::string base = write_temp("cfg_base.bank", "");
    std::string validation = write_temp("cfg_val.bank", "");

    std::string path = write_temp("cfg_min.json",
                                  "{\"banks\": {\"novel\": \"" + novel + "\"}}");
    RunConfig cfg = load_run_config(path);
    CHECK(cfg.head_kind == "vd");
    CHECK(cfg.episodes.way == 5);
    CHECK(cfg.episodes.episodes == 2000);
    CHECK(cfg.influence.alpha == 1.0);
    CHECK(cfg.grid.r_values.size() == 10);

    std::string full = write_temp("cfg_full.json", "{"
        "\"banks\": {\"novel\": \"" + novel + "\", \"base\": \"" + base +
        "\", \"validation\": \"" + validation + "\"}," + R"(
        "episodes": {"way": 5, "shots": 1, "queries": 15, "count": 200, "seed": 42},
        "influence": {"alpha": 1.0, "metric": "squared"},
        "threads": 2,
        "head": {"kind": "ensemble"},
        "pool": {
            "views": [0, 1, 2],
            "transforms": "default_grid",
            "heads": [{"kind": "feature"}, {"kind": "surrogate", "top_r": 2, "beta": 0.5}],
            "scheme": {"kind": "random", "size": 6, "seed": 9}
        },
        "surrogate_grid": {"r": [1, 2, 3], "beta": [0.5, 1.0], "gamma": 1.0}
    })");
    RunConfig f = load_run_config(full);
    CHECK(f.head_kind == "ensemble");
    CHECK(f.pool.views == std::vector<uint32_t>{0, 1, 2});
    CHECK(f.pool.transforms.size() == 8);
    CHECK(f.pool.heads.size() == 2);
    CHECK(f.pool.heads[1].surrogate.top_r == 2);
    CHECK(f.pool.scheme.kind == SchemeSpec::Kind::Random);
    CHECK(f.pool.scheme.size == 6);
    CHECK(f.grid.r_values == std::vector<uint32_t>{1, 2, 3});
}

TEST_CASE("run config errors name the offending key") {
    std::string novel = write_temp("cfg_err_novel.bank", "");

    std::string no_banks = write_temp("cfg_nobanks.json", R"({"episodes": {}})");
    CHECK_THROWS_WITH_AS(load_run_config(no_banks), doctest::Contains("banks"), ConfigError);

    std::string no_novel = write_temp("cfg_nonovel.json", R"({"banks": {"base": "b"}})");
    CHECK_THROWS_WITH_AS(load_run_config(no_novel), doctest::Contains("banks.novel"),
                         ConfigError);

    std::string gone = write_temp("cfg_gone.json",
                                  R"({"banks": {"novel": "/nonexistent/x.bank"}})");
    CHECK_THROWS_WITH_AS(load_run_config(gone), doctest::Contains("missing file"),
                         ConfigError);

    std::string bad_head =
        write_temp("cfg_badhead.json", "{\"banks\": {\"novel\": \"" + novel +
                                           "\"}, \"head\": {\"kind\": \"wd\"}}");
    CHECK_THROWS_WITH_AS(load_run_config(bad_head), doctest::Contains("head.kind"),
                         ConfigError);

    std::string bad_scheme = write_temp(
        "cfg_badscheme.json", "{\"banks\": {\"novel\": \"" + novel +
                                  "\"}, \"head\": {\"kind\": \"ensemble\"}, "
                                  "\"pool\": {\"transforms\": [{\"w\": 1}], "
                                  "\"scheme\": {\"kind\": \"random\"}}}");
    CHECK_THROWS_AS(load_run_config(bad_scheme), ConfigError);

    std::string bad_json = write_temp("cfg_badjson.json", "{not json");
    CHECK_THROWS_AS(load_run_config(bad_json), ConfigError);

    CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("gen config parsing and validation") {
    std::string path = write_temp("gen_ok.json", R"({
        "dataset": "toy",
        "format": "text",
        "synthetic": {"base_classes": 4, "novel_classes": 3, "validation_classes": 3,
                      "dim": 8, "samples_per_class": 10, "noise_scale": 0.2, "seed": 7}
    })");
    GenConfig cfg = load_gen_config(path);
    CHECK(cfg.dataset == "toy");
    CHECK(cfg.format == BankFormat::Text);
    CHECK(cfg.synthetic.base_classes == 4);
    CHECK(cfg.synthetic.seed == 7);

    std::string bad = write_temp("gen_bad.json", R"({
        "synthetic": {"noise_scale": 0.0}
    })");
    CHECK_THROWS_AS(load_gen_config(bad), ConfigError);

    std::string bad_fmt = write_temp("gen_badfmt.json", R"({"format": "yaml"})");
    CHECK_THROWS_AS(load_gen_config(bad_fmt), ConfigError);
}
