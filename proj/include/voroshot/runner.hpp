#pragma once

#include <optional>
#include <string>

#include "voroshot/config.hpp"
#include "voroshot/eval.hpp"

namespace voroshot {

// Command-line overrides applied on top of a loaded configuration.
struct RunOverrides {
    std::optional<uint64_t> seed;
    std::optional<uint32_t> episodes;
    std::optional<std::string> output_dir;
    std::optional<double> train_lr;
    std::optional<uint32_t> train_epochs;
};

struct EvalOutcome {
    EvalReport report;
    std::string report_path;  // written JSON
    std::string csv_path;     // written per-episode CSV
};

// Loads banks, builds the configured head, runs the episode loop and writes
// report JSON + CSV under the output directory.
EvalOutcome run_eval(const std::string& config_path, const RunOverrides& overrides);

// Generates synthetic base/novel/validation banks plus a manifest.
struct GenOutcome {
    std::string base_path, novel_path, validation_path, manifest_path;
};
GenOutcome run_gen(const std::string& spec_path, const RunOverrides& overrides);

// Renders the configured partition of episode 0 to an SVG file; returns the
// document. Requires 2-dimensional banks.
std::string run_render2d(const std::string& config_path, const std::string& svg_path,
                         const RunOverrides& overrides);

// Instrumented single-threaded run reporting per-phase wall clock; returns
// the timing report as JSON and writes it under the output directory.
std::string run_bench(const std::string& config_path, const RunOverrides& overrides);

} // namespace voroshot
