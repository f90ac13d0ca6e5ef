// Command-line front end. Talks to the core exclusively through the C API
// in voroshot.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "voroshot.h"

namespace {

struct CommonFlags {
    std::string config;
    uint64_t seed = 0;
    bool has_seed = false;
    uint32_t episodes = 0;
    bool has_episodes = false;
    std::string out_dir;
    double train_lr = 0.0;
    bool has_train_lr = false;
    uint32_t train_epochs = 0;
    bool has_train_epochs = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "JSON configuration file")->required();
    cmd->add_option("--seed", flags.seed, "Override the configured master seed")
        ->each([&flags](const std::string&) { flags.has_seed = true; });
    cmd->add_option("--episodes", flags.episodes, "Override the configured episode count")
        ->each([&flags](const std::string&) { flags.has_episodes = true; });
    cmd->add_option("--out", flags.out_dir, "Override the configured output directory");
    cmd->add_option("--train-lr", flags.train_lr, "Override the training learning rate")
        ->each([&flags](const std::string&) { flags.has_train_lr = true; });
    cmd->add_option("--train-epochs", flags.train_epochs, "Override the training epoch count")
        ->each([&flags](const std::string&) { flags.has_train_epochs = true; });
}

vs_overrides to_overrides(const CommonFlags& flags) {
    vs_overrides o{};
    o.has_seed = flags.has_seed ? 1 : 0;
    o.seed = flags.seed;
    o.has_episodes = flags.has_episodes ? 1 : 0;
    o.episodes = flags.episodes;
    // --out wins over the VOROSHOT_OUT environment variable; both beat the
    // config value
    static std::string env_out;
    if (flags.out_dir.empty()) {
        const char* env = std::getenv("VOROSHOT_OUT");
        if (env && *env) env_out = env;
        o.output_dir = env_out.empty() ? nullptr : env_out.c_str();
    } else {
        o.output_dir = flags.out_dir.c_str();
    }
    o.has_train_lr = flags.has_train_lr ? 1 : 0;
    o.train_lr = flags.train_lr;
    o.has_train_epochs = flags.has_train_epochs ? 1 : 0;
    o.train_epochs = flags.train_epochs;
    return o;
}

const char* status_kind(vs_status s) {
    switch (s) {
        case VS_OK: return "ok";
        case VS_ERR_CONFIG: return "config";
        case VS_ERR_DATA: return "data";
        case VS_ERR_DOMAIN: return "domain";
        default: return "internal";
    }
}

int finish(vs_status status) {
    if (status == VS_OK) return 0;
    std::fprintf(stderr, "voroshot: error kind=%s reason=\"%s\"\n", status_kind(status),
                 vs_last_error());
    return static_cast<int>(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voronoi-family few-shot classification heads over feature banks"};
    app.require_subcommand(1);

    CommonFlags gen_flags, eval_flags, render_flags, bench_flags;
    std::string svg_path = "partition.svg";

    CLI::App* gen = app.add_subcommand("gen", "Generate synthetic feature banks");
    add_common(gen, gen_flags);

    CLI::App* eval = app.add_subcommand("eval", "Evaluate the configured head over episodes");
    add_common(eval, eval_flags);

    CLI::App* render = app.add_subcommand("render2d", "Render the 2D partition to SVG");
    add_common(render, render_flags);
    render->add_option("--svg", svg_path, "Output SVG path");

    CLI::App* bench = app.add_subcommand("bench", "Report per-phase wall-clock timings");
    add_common(bench, bench_flags);

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        vs_overrides o = to_overrides(gen_flags);
        return finish(vs_run_gen(gen_flags.config.c_str(), &o));
    }
    if (eval->parsed()) {
        vs_overrides o = to_overrides(eval_flags);
        vs_report* report = nullptr;
        vs_status status = vs_run_eval(eval_flags.config.c_str(), &o, &report);
        if (status == VS_OK) {
            std::printf("episodes: %u\n", vs_report_episodes(report));
            std::printf("accuracy: %.4f +/- %.4f\n", vs_report_mean_accuracy(report),
                        vs_report_ci_half_width(report));
            vs_report_free(report);
        }
        return finish(status);
    }
    if (render->parsed()) {
        vs_overrides o = to_overrides(render_flags);
        vs_status status = vs_run_render2d(render_flags.config.c_str(), svg_path.c_str(), &o);
        if (status == VS_OK) std::printf("wrote %s\n", svg_path.c_str());
        return finish(status);
    }
    if (bench->parsed()) {
        vs_overrides o = to_overrides(bench_flags);
        char* timing = nullptr;
        vs_status status = vs_run_bench(bench_flags.config.c_str(), &o, &timing);
        if (status == VS_OK && timing) {
            std::fputs(timing, stdout);
            vs_string_free(timing);
        }
        return finish(status);
    }
    return 0;
}
