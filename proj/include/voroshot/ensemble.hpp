#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "voroshot/bank.hpp"
#include "voroshot/episode.hpp"
#include "voroshot/geometry.hpp"
#include "voroshot/surrogate.hpp"
#include "voroshot/transforms.hpp"

namespace voroshot {

// One member of the configuration pool: which augmentation view to read,
// which transform to apply, and which head produces per-class distances.
struct HeadSpec {
    enum class Kind { Feature, Surrogate };
    Kind kind = Kind::Feature;
    SurrogateParams surrogate;  // used when kind == Surrogate
};

struct MemberConfig {
    uint32_t view = 0;
    TransformParams transform;
    HeadSpec head;
};

using ConfigPool = std::vector<MemberConfig>;

struct PoolSpec {
    std::vector<uint32_t> views;
    std::vector<TransformParams> transforms;
    std::vector<HeadSpec> heads;
};

// Cartesian product in documented order: views outermost, then transforms,
// then heads. Validates view ids against the bank's view count.
ConfigPool build_pool(const PoolSpec& spec, uint32_t bank_views);

// Fitted state of one pool member for one episode.
struct MemberModel {
    std::vector<Point> class_points;              // K transformed prototypes
    std::vector<Point> surrogate_centers;         // surrogate heads only
    std::vector<std::vector<double>> class_repr;  // surrogate heads only: K surrogate vectors
};

// K totally ordered clusters, member i of every cluster derived from pool
// config i.
struct EnsembleModel {
    std::vector<MemberModel> members;  // pool order
    uint32_t way = 0;
};

// Immutable evaluation context for a pool over one episode bank. Base
// prototypes for surrogate members are computed once per distinct
// (view, transform) pair at construction and shared across episodes.
class EnsembleContext {
public:
    EnsembleContext(ConfigPool pool, const FeatureBank& episode_bank,
                    const FeatureBank* base_bank);

    const ConfigPool& pool() const { return pool_; }
    const FeatureBank& bank() const { return *episode_bank_; }

    EnsembleModel fit_members(const EpisodeIndices& ep) const;

    // Per-member, per-query, per-class distance pages for one episode:
    // pages[i][q][k]. Feature members contribute the point distance between
    // prototype k and the member-transformed query; surrogate members
    // contribute the combined criterion of the query under their (R, beta,
    // gamma) weights.
    std::vector<std::vector<std::vector<double>>> distance_pages(
        const EnsembleModel& model, const EpisodeIndices& ep) const;

    // Per-member class distances for a free point in raw feature space.
    // Every member applies its own transform to the same coordinates (a
    // free point carries no augmentation views).
    std::vector<std::vector<double>> point_distances(const EnsembleModel& model,
                                                     const Point& raw) const;

    // CCVD prediction for every query of an episode.
    std::vector<uint32_t> predict(const EnsembleModel& model, const EpisodeIndices& ep,
                                  const InfluenceParams& p) const;

private:
    void member_row(size_t member_index, const MemberModel& member,
                    const Point& transformed_z, std::vector<double>& out) const;

    ConfigPool pool_;
    const FeatureBank* episode_bank_;
    const FeatureBank* base_bank_;
    // base prototypes per pool member (shared for identical view/transform)
    std::vector<const BasePrototypes*> member_base_;
    std::vector<std::unique_ptr<BasePrototypes>> base_cache_;
};

// argmax_k of -sign(alpha) * sum_i dist[i][k]^alpha over equal-length
// distance rows; the positional reduction shared by predict and the
// guided scheme.
size_t reduce_influence(const std::vector<std::vector<double>>& member_class_dist,
                        const InfluenceParams& p);

// Selection schemes over a fixed pool.
ConfigPool scheme_full(const ConfigPool& pool);

// Uniform subset without replacement; original relative order preserved.
ConfigPool scheme_random(const ConfigPool& pool, uint32_t subset_size, uint64_t seed);

// Pure prefix-selection logic behind the guided scheme: ranks members by
// individual accuracy (descending, ties by index), grows the prefix in rank
// order and returns the shortest prefix attaining the maximum ensemble
// accuracy. Exposed separately so tests can drive it with stubbed accuracies.
struct GuidedSelection {
    std::vector<size_t> ranked;          // original pool indices, rank order
    std::vector<double> member_accuracy; // by original pool index
    std::vector<double> prefix_accuracy; // by prefix length - 1
    size_t selected_count = 0;
};

GuidedSelection guided_prefix(
    const std::vector<double>& member_accuracy,
    const std::function<double(const std::vector<size_t>&)>& ensemble_accuracy);

// Validation-guided member selection: ranks pool members by individual
// accuracy over the validation episode stream and keeps the prefix with
// maximal ensemble validation accuracy. Returns the selected configs in
// rank order together with the selection trace.
struct GuidedResult {
    ConfigPool selected;
    GuidedSelection trace;
};

GuidedResult scheme_guided(const ConfigPool& pool, const FeatureBank& validation_bank,
                           const FeatureBank* base_bank, const EpisodeSpec& val_spec,
                           const InfluenceParams& p);

} // namespace voroshot
