#include "voroshot/episode.hpp"

#include <string>

#include "voroshot/error.hpp"
#include "voroshot/rng.hpp"

namespace voroshot {

std::vector<uint32_t> SplitMix64::sample_without_replacement(uint32_t n, uint32_t k) {
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (uint32_t i = 0; i < k; ++i) {
        uint32_t j = i + static_cast<uint32_t>(next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

EpisodeIndices sample_episode(const FeatureBank& bank, const EpisodeSpec& spec,
                              uint64_t index) {
    if (spec.way == 0 || spec.shots == 0 || spec.queries == 0) {
        throw DataError("episode spec: way, shots and queries must be positive");
    }
    if (spec.way > bank.n_classes) {
        throw DataError("episode spec: way " + std::to_string(spec.way) +
                        " exceeds bank class count " + std::to_string(bank.n_classes));
    }
    auto by_class = bank.samples_by_class();
    uint32_t need = spec.shots + spec.queries;
    for (uint32_t c = 0; c < bank.n_classes; ++c) {
        if (by_class[c].size() < need) {
            throw DataError("episode spec: class " + std::to_string(c) + " has " +
                            std::to_string(by_class[c].size()) + " samples, needs " +
                            std::to_string(need));
        }
    }

    SplitMix64 rng(spec.seed ^ index);
    EpisodeIndices ep;
    ep.way = spec.way;
    ep.shots = spec.shots;
    ep.queries = spec.queries;
    ep.classes = rng.sample_without_replacement(bank.n_classes, spec.way);
    ep.support_idx.reserve(static_cast<size_t>(spec.way) * spec.shots);
    ep.query_idx.reserve(static_cast<size_t>(spec.way) * spec.queries);
    for (uint32_t k = 0; k < spec.way; ++k) {
        const auto& members = by_class[ep.classes[k]];
        auto picks = rng.sample_without_replacement(static_cast<uint32_t>(members.size()), need);
        for (uint32_t i = 0; i < spec.shots; ++i) ep.support_idx.push_back(members[picks[i]]);
        for (uint32_t i = 0; i < spec.queries; ++i)
            ep.query_idx.push_back(members[picks[spec.shots + i]]);
    }
    return ep;
}

Episode make_episode(const FeatureBank& bank, const EpisodeIndices& idx,
                     uint32_t view, const TransformParams* transform) {
    if (view >= bank.n_views()) {
        throw DataError("episode view " + std::to_string(view) +
                        " out of range, bank has " + std::to_string(bank.n_views()));
    }
    Episode ep;
    ep.way = idx.way;
    ep.shots = idx.shots;
    ep.queries = idx.queries;
    ep.support.reserve(idx.support_idx.size());
    ep.query.reserve(idx.query_idx.size());
    for (uint32_t s : idx.support_idx) {
        Point p = bank.point(view, s);
        ep.support.push_back(transform ? apply_transform(*transform, p) : std::move(p));
    }
    for (uint32_t q : idx.query_idx) {
        Point p = bank.point(view, q);
        ep.query.push_back(transform ? apply_transform(*transform, p) : std::move(p));
    }
    return ep;
}

} // namespace voroshot
