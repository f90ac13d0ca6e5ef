#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "voroshot/bank.hpp"
#include "voroshot/episode.hpp"

namespace voroshot {

// Episode-level classifier. predict() must be safe to call concurrently on
// distinct episodes; implementations keep all per-episode state local.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual std::string name() const = 0;
    virtual std::vector<uint32_t> predict(const FeatureBank& bank,
                                          const EpisodeIndices& ep) const = 0;
};

struct EvalReport {
    std::string description;
    uint64_t seed = 0;
    uint32_t way = 0, shots = 0, queries = 0;
    std::vector<double> episode_accuracy;
    std::vector<double> episode_gv;  // NaN where shots < 2
    double mean_accuracy = 0.0;
    double ci_half_width = 0.0;
    bool degenerate_ci = false;  // single-episode report
    double wall_eval_s = 0.0;
};

// (mean, 1.96 * s / sqrt(E)) with Bessel-corrected s. Throws DomainError on
// an empty list; a singleton yields half-width 0 with the degenerate flag.
struct ConfidenceInterval {
    double mean = 0.0;
    double half_width = 0.0;
    bool degenerate = false;
};
ConfidenceInterval confidence_interval(const std::vector<double>& values);

// Mean pairwise (plain Euclidean) distance within each class's support,
// averaged over classes. Requires shots >= 2.
double geometric_variance(const Episode& episode);

// Runs spec.episodes episodes of the (bank, spec) stream through the
// predictor. Episodes are evaluated concurrently with `threads` workers
// (0 = hardware concurrency); accumulation order is fixed by episode index
// so reports are bit-stable.
EvalReport evaluate(const Predictor& predictor, const FeatureBank& bank,
                    const EpisodeSpec& spec, unsigned threads = 0);

std::string report_to_json(const EvalReport& report, bool include_wall_clock = true);
std::string report_to_csv(const EvalReport& report);

// Best beta per R over a validation bank, by mean episode accuracy of the
// surrogate head; ties prefer the smaller beta. Rows come back in R order.
struct GridChoice {
    uint32_t top_r = 0;
    double beta = 0.0;
    double accuracy = 0.0;
};
std::vector<GridChoice> sweep_surrogate_grid(const std::vector<uint32_t>& r_values,
                                             const std::vector<double>& beta_values,
                                             double gamma,
                                             const FeatureBank& validation_bank,
                                             const FeatureBank& base_bank,
                                             const EpisodeSpec& spec,
                                             const TransformParams& transform,
                                             unsigned threads = 0);

// Simple index-parallel loop used by evaluation and rendering.
void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)>& body);

} // namespace voroshot
