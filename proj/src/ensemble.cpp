#include "voroshot/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "voroshot/classifiers.hpp"
#include "voroshot/error.hpp"
#include "voroshot/rng.hpp"

namespace voroshot {

ConfigPool build_pool(const PoolSpec& spec, uint32_t bank_views) {
    if (spec.views.empty() || spec.transforms.empty() || spec.heads.empty()) {
        throw ConfigError("pool spec: views, transforms and heads must all be nonempty");
    }
    for (uint32_t v : spec.views) {
        if (v >= bank_views) {
            throw ConfigError("pool spec: view " + std::to_string(v) +
                              " does not exist, bank has " + std::to_string(bank_views));
        }
    }
    ConfigPool pool;
    pool.reserve(spec.views.size() * spec.transforms.size() * spec.heads.size());
    for (uint32_t v : spec.views) {
        for (const auto& t : spec.transforms) {
            for (const auto& h : spec.heads) {
                if (h.kind == HeadSpec::Kind::Surrogate) h.surrogate.validate();
                pool.push_back(MemberConfig{v, t, h});
            }
        }
    }
    return pool;
}

EnsembleContext::EnsembleContext(ConfigPool pool, const FeatureBank& episode_bank,
                                 const FeatureBank* base_bank)
    : pool_(std::move(pool)), episode_bank_(&episode_bank), base_bank_(base_bank) {
    if (pool_.empty()) throw ConfigError("ensemble: empty configuration pool");
    member_base_.assign(pool_.size(), nullptr);

    // Deduplicate base-prototype computations across members that share a
    // (view, transform) pair.
    struct Key {
        uint32_t view;
        TransformParams t;
        bool operator==(const Key& o) const {
            return view == o.view && t.w == o.t.w && t.b == o.t.b && t.lambda == o.t.lambda;
        }
    };
    std::vector<Key> keys;
    for (size_t i = 0; i < pool_.size(); ++i) {
        if (pool_[i].head.kind != HeadSpec::Kind::Surrogate) continue;
        if (base_bank_ == nullptr) {
            throw ConfigError("ensemble: surrogate head requires a base bank");
        }
        Key key{pool_[i].view, pool_[i].transform};
        size_t slot = keys.size();
        for (size_t j = 0; j < keys.size(); ++j) {
            if (keys[j] == key) {
                slot = j;
                break;
            }
        }
        if (slot == keys.size()) {
            keys.push_back(key);
            base_cache_.push_back(std::make_unique<BasePrototypes>(
                base_prototypes(*base_bank_, key.t, key.view)));
        }
        member_base_[i] = base_cache_[slot].get();
    }
}

EnsembleModel EnsembleContext::fit_members(const EpisodeIndices& ep) const {
    EnsembleModel model;
    model.way = ep.way;
    model.members.reserve(pool_.size());
    for (size_t i = 0; i < pool_.size(); ++i) {
        const MemberConfig& cfg = pool_[i];
        Episode episode = make_episode(*episode_bank_, ep, cfg.view, &cfg.transform);
        MemberModel member;
        member.class_points = prototypes(episode);
        if (cfg.head.kind == HeadSpec::Kind::Surrogate &&
            cfg.head.surrogate.gamma > 0.0) {
            const BasePrototypes& base = *member_base_[i];
            auto ids = select_surrogates(member.class_points, base, cfg.head.surrogate.top_r);
            member.surrogate_centers.reserve(ids.size());
            for (uint32_t id : ids) member.surrogate_centers.push_back(base.centers[id]);
            member.class_repr.reserve(member.class_points.size());
            for (const Point& proto : member.class_points) {
                member.class_repr.push_back(surrogate_repr(proto, member.surrogate_centers));
            }
        }
        model.members.push_back(std::move(member));
    }
    return model;
}

void EnsembleContext::member_row(size_t member_index, const MemberModel& member,
                                 const Point& transformed_z,
                                 std::vector<double>& out) const {
    const MemberConfig& cfg = pool_[member_index];
    const size_t way = member.class_points.size();
    out.resize(way);
    if (cfg.head.kind == HeadSpec::Kind::Feature) {
        for (size_t k = 0; k < way; ++k) {
            out[k] = sq_dist(member.class_points[k], transformed_z);
        }
        return;
    }
    const SurrogateParams& sp = cfg.head.surrogate;
    std::vector<double> d(way), dpp(way, 0.0);
    for (size_t k = 0; k < way; ++k) d[k] = sq_dist(transformed_z, member.class_points[k]);
    if (sp.gamma > 0.0) {
        Point repr = surrogate_repr(transformed_z, member.surrogate_centers);
        for (size_t k = 0; k < way; ++k) {
            dpp[k] = point_dist(repr, member.class_repr[k], sp.surrogate_metric);
        }
    }
    out = combined_criterion(d, dpp, sp);
}

std::vector<std::vector<std::vector<double>>> EnsembleContext::distance_pages(
    const EnsembleModel& model, const EpisodeIndices& ep) const {
    if (model.members.size() != pool_.size()) {
        throw DomainError("ensemble: model was fitted with a different pool");
    }
    const size_t n_query = ep.query_idx.size();
    std::vector<std::vector<std::vector<double>>> pages(
        pool_.size(), std::vector<std::vector<double>>(n_query));

    for (size_t i = 0; i < pool_.size(); ++i) {
        const MemberConfig& cfg = pool_[i];
        for (size_t q = 0; q < n_query; ++q) {
            Point z = apply_transform(cfg.transform,
                                      episode_bank_->point(cfg.view, ep.query_idx[q]));
            member_row(i, model.members[i], z, pages[i][q]);
        }
    }
    return pages;
}

std::vector<std::vector<double>> EnsembleContext::point_distances(
    const EnsembleModel& model, const Point& raw) const {
    if (model.members.size() != pool_.size()) {
        throw DomainError("ensemble: model was fitted with a different pool");
    }
    std::vector<std::vector<double>> rows(pool_.size());
    for (size_t i = 0; i < pool_.size(); ++i) {
        Point z = apply_transform(pool_[i].transform, raw);
        member_row(i, model.members[i], z, rows[i]);
    }
    return rows;
}

size_t reduce_influence(const std::vector<std::vector<double>>& member_class_dist,
                        const InfluenceParams& p) {
    if (p.alpha == 0.0) throw DomainError("reduce_influence: alpha must be nonzero");
    if (member_class_dist.empty()) throw DomainError("reduce_influence: no members");
    const size_t way = member_class_dist[0].size();
    double sign = p.alpha > 0.0 ? 1.0 : -1.0;
    size_t best = 0;
    double best_score = -1e300;
    for (size_t k = 0; k < way; ++k) {
        double sum = 0.0;
        for (const auto& row : member_class_dist) {
            double dist = row[k];
            if (dist == 0.0 && p.alpha < 0.0) {
                throw DomainError("reduce_influence: zero distance with negative alpha is singular");
            }
            sum += p.alpha == 1.0 ? dist : std::pow(dist, p.alpha);
        }
        double score = -sign * sum;
        if (score > best_score) {
            best_score = score;
            best = k;
        }
    }
    return best;
}

std::vector<uint32_t> EnsembleContext::predict(const EnsembleModel& model,
                                               const EpisodeIndices& ep,
                                               const InfluenceParams& p) const {
    auto pages = distance_pages(model, ep);
    const size_t n_query = ep.query_idx.size();
    std::vector<uint32_t> out(n_query);
    std::vector<std::vector<double>> rows(pool_.size());
    for (size_t q = 0; q < n_query; ++q) {
        for (size_t i = 0; i < pool_.size(); ++i) rows[i] = pages[i][q];
        out[q] = static_cast<uint32_t>(reduce_influence(rows, p));
    }
    return out;
}

ConfigPool scheme_full(const ConfigPool& pool) { return pool; }

ConfigPool scheme_random(const ConfigPool& pool, uint32_t subset_size, uint64_t seed) {
    if (subset_size == 0 || subset_size > pool.size()) {
        throw ConfigError("scheme_random: subset size " + std::to_string(subset_size) +
                          " out of range for pool of " + std::to_string(pool.size()));
    }
    SplitMix64 rng(seed);
    auto picks = rng.sample_without_replacement(static_cast<uint32_t>(pool.size()), subset_size);
    std::sort(picks.begin(), picks.end());
    ConfigPool out;
    out.reserve(subset_size);
    for (uint32_t i : picks) out.push_back(pool[i]);
    return out;
}

GuidedSelection guided_prefix(
    const std::vector<double>& member_accuracy,
    const std::function<double(const std::vector<size_t>&)>& ensemble_accuracy) {
    if (member_accuracy.empty()) throw ConfigError("guided_prefix: empty pool");
    GuidedSelection sel;
    sel.member_accuracy = member_accuracy;
    sel.ranked.resize(member_accuracy.size());
    std::iota(sel.ranked.begin(), sel.ranked.end(), size_t{0});
    std::stable_sort(sel.ranked.begin(), sel.ranked.end(), [&](size_t a, size_t b) {
        return member_accuracy[a] > member_accuracy[b];
    });

    std::vector<size_t> prefix;
    double best = -1.0;
    for (size_t m = 0; m < sel.ranked.size(); ++m) {
        prefix.push_back(sel.ranked[m]);
        double acc = ensemble_accuracy(prefix);
        sel.prefix_accuracy.push_back(acc);
        if (acc > best) {
            best = acc;
            sel.selected_count = m + 1;
        }
    }
    return sel;
}

GuidedResult scheme_guided(const ConfigPool& pool, const FeatureBank& validation_bank,
                           const FeatureBank* base_bank, const EpisodeSpec& val_spec,
                           const InfluenceParams& p) {
    if (val_spec.episodes == 0) throw ConfigError("scheme_guided: empty validation set");
    EnsembleContext ctx(pool, validation_bank, base_bank);

    // One pass over the validation stream collects per-member distance pages
    // and per-query truth; ranking and every prefix evaluation reuse them.
    struct EpisodePages {
        std::vector<std::vector<std::vector<double>>> pages;  // [member][query][class]
        uint32_t way = 0;
        uint32_t queries_per_class = 0;
    };
    std::vector<EpisodePages> episodes(val_spec.episodes);
    for (uint32_t e = 0; e < val_spec.episodes; ++e) {
        EpisodeIndices ep = sample_episode(validation_bank, val_spec, e);
        EnsembleModel model = ctx.fit_members(ep);
        episodes[e].pages = ctx.distance_pages(model, ep);
        episodes[e].way = ep.way;
        episodes[e].queries_per_class = ep.queries;
    }

    auto episode_accuracy = [&](const EpisodePages& ep, const std::vector<size_t>& members) {
        size_t n_query = ep.pages[0].size();
        size_t correct = 0;
        std::vector<std::vector<double>> rows(members.size());
        for (size_t q = 0; q < n_query; ++q) {
            for (size_t i = 0; i < members.size(); ++i) rows[i] = ep.pages[members[i]][q];
            uint32_t truth = static_cast<uint32_t>(q / ep.queries_per_class);
            if (reduce_influence(rows, p) == truth) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(n_query);
    };
    auto mean_accuracy = [&](const std::vector<size_t>& members) {
        double acc = 0.0;
        for (const auto& ep : episodes) acc += episode_accuracy(ep, members);
        return acc / static_cast<double>(episodes.size());
    };

    std::vector<double> member_acc(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) {
        member_acc[i] = mean_accuracy({i});
    }

    GuidedResult result;
    result.trace = guided_prefix(member_acc, mean_accuracy);
    for (size_t m = 0; m < result.trace.selected_count; ++m) {
        result.selected.push_back(pool[result.trace.ranked[m]]);
    }
    return result;
}

} // namespace voroshot
