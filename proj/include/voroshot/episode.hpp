#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "voroshot/bank.hpp"
#include "voroshot/transforms.hpp"

namespace voroshot {

// One K-way N-shot task description plus the episode budget and seed that
// identify a reproducible episode stream.
struct EpisodeSpec {
    uint32_t way = 5;       // K
    uint32_t shots = 1;     // N
    uint32_t queries = 15;  // Q
    uint32_t episodes = 2000;
    uint64_t seed = 0;
};

// A sampled episode as bank indices. Holding indices (rather than points)
// lets the same draw be materialized under any view and transform.
struct EpisodeIndices {
    uint32_t way = 0;
    uint32_t shots = 0;
    uint32_t queries = 0;
    std::vector<uint32_t> classes;      // K bank class ids, draw order
    std::vector<uint32_t> support_idx;  // K*N sample indices, grouped by class
    std::vector<uint32_t> query_idx;    // K*Q sample indices, grouped by class
};

// Materialized episode: support/query points with episode-local class
// indices in [0, K). Points of episode class k occupy positions
// [k*N, (k+1)*N) and [k*Q, (k+1)*Q).
struct Episode {
    uint32_t way = 0;
    uint32_t shots = 0;
    uint32_t queries = 0;
    std::vector<Point> support;
    std::vector<Point> query;

    uint32_t support_class(size_t i) const { return static_cast<uint32_t>(i / shots); }
    uint32_t query_class(size_t i) const { return static_cast<uint32_t>(i / queries); }
};

// Deterministic draw of episode `index` from the stream defined by
// (bank, spec). The per-episode generator is SplitMix64 seeded with
// spec.seed XOR index; classes are drawn by partial Fisher-Yates over the
// bank's class ids, then N+Q distinct sample indices per class (first N
// support, next Q query).
EpisodeIndices sample_episode(const FeatureBank& bank, const EpisodeSpec& spec,
                              uint64_t index);

// Materializes an episode from one view, optionally pushing every point
// through a transform.
Episode make_episode(const FeatureBank& bank, const EpisodeIndices& idx,
                     uint32_t view, const TransformParams* transform = nullptr);

} // namespace voroshot
