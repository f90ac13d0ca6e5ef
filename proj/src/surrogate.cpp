#include "voroshot/surrogate.hpp"

#include <algorithm>
#include <string>

#include "voroshot/classifiers.hpp"
#include "voroshot/error.hpp"

namespace voroshot {

void SurrogateParams::validate() const {
    if (top_r == 0) throw ConfigError("surrogate: top_r must be >= 1");
    if (beta < 0.0 || gamma < 0.0) throw ConfigError("surrogate: beta and gamma must be >= 0");
    if (beta + gamma <= 0.0) throw ConfigError("surrogate: beta + gamma must be positive");
}

BasePrototypes base_prototypes(const FeatureBank& bank, const TransformParams& transform,
                               uint32_t view) {
    if (bank.n_samples == 0) throw DataError("base_prototypes: empty bank");
    if (view >= bank.n_views()) {
        throw DataError("base_prototypes: view " + std::to_string(view) + " out of range");
    }
    BasePrototypes out;
    auto by_class = bank.samples_by_class();
    for (uint32_t c = 0; c < bank.n_classes; ++c) {
        if (by_class[c].empty()) continue;
        Point acc(bank.n_dims, 0.0);
        for (uint32_t s : by_class[c]) {
            Point p = apply_transform(transform, bank.point(view, s));
            for (uint32_t d = 0; d < bank.n_dims; ++d) acc[d] += p[d];
        }
        double inv = 1.0 / static_cast<double>(by_class[c].size());
        for (double& v : acc) v *= inv;
        out.centers.push_back(std::move(acc));
        out.class_ids.push_back(c);
    }
    if (out.centers.empty()) throw DataError("base_prototypes: bank has no populated class");
    return out;
}

std::vector<uint32_t> select_surrogates(const std::vector<Point>& novel_centers,
                                        const BasePrototypes& base, uint32_t top_r) {
    if (top_r == 0 || top_r > base.centers.size()) {
        throw DomainError("select_surrogates: top_r " + std::to_string(top_r) +
                          " out of range for " + std::to_string(base.centers.size()) +
                          " base classes");
    }
    std::vector<char> chosen(base.centers.size(), 0);
    std::vector<std::pair<double, uint32_t>> ranked(base.centers.size());
    for (const Point& c : novel_centers) {
        for (size_t t = 0; t < base.centers.size(); ++t) {
            ranked[t] = {sq_dist(c, base.centers[t]), static_cast<uint32_t>(t)};
        }
        std::partial_sort(ranked.begin(), ranked.begin() + top_r, ranked.end());
        for (uint32_t j = 0; j < top_r; ++j) chosen[ranked[j].second] = 1;
    }
    std::vector<uint32_t> out;
    for (uint32_t t = 0; t < chosen.size(); ++t)
        if (chosen[t]) out.push_back(t);
    return out;
}

std::vector<double> surrogate_repr(const Point& point,
                                   const std::vector<Point>& surrogate_centers) {
    if (surrogate_centers.empty()) {
        throw DomainError("surrogate_repr: empty surrogate list");
    }
    std::vector<double> out(surrogate_centers.size());
    for (size_t j = 0; j < surrogate_centers.size(); ++j) {
        out[j] = sq_dist(point, surrogate_centers[j]);
    }
    return out;
}

std::vector<double> combined_criterion(const std::vector<double>& d,
                                       const std::vector<double>& dpp,
                                       const SurrogateParams& params) {
    params.validate();
    if (d.size() != dpp.size()) {
        throw DomainError("combined_criterion: vector sizes differ");
    }
    std::vector<double> out(d.size(), 0.0);
    if (params.beta > 0.0) {
        double norm = 0.0;
        for (double v : d) norm += v;
        if (norm <= 0.0) {
            throw DomainError("combined_criterion: degenerate episode, feature distances have zero Manhattan norm");
        }
        for (size_t k = 0; k < d.size(); ++k) out[k] += params.beta * d[k] / norm;
    }
    if (params.gamma > 0.0) {
        double norm = 0.0;
        for (double v : dpp) norm += v;
        if (norm <= 0.0) {
            throw DomainError("combined_criterion: degenerate episode, surrogate distances have zero Manhattan norm");
        }
        for (size_t k = 0; k < dpp.size(); ++k) out[k] += params.gamma * dpp[k] / norm;
    }
    return out;
}

namespace {

size_t argmin(const std::vector<double>& v) {
    size_t best = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[best]) best = i;
    return best;
}

} // namespace

std::vector<uint32_t> classify_surrogate(const Episode& raw_episode,
                                         const BasePrototypes& base,
                                         const SurrogateParams& params,
                                         const TransformParams& transform) {
    params.validate();
    Episode ep;
    ep.way = raw_episode.way;
    ep.shots = raw_episode.shots;
    ep.queries = raw_episode.queries;
    ep.support.reserve(raw_episode.support.size());
    ep.query.reserve(raw_episode.query.size());
    for (const Point& p : raw_episode.support) ep.support.push_back(apply_transform(transform, p));
    for (const Point& p : raw_episode.query) ep.query.push_back(apply_transform(transform, p));

    std::vector<Point> protos = prototypes(ep);

    std::vector<Point> surrogate_centers;
    std::vector<std::vector<double>> proto_repr(protos.size());
    if (params.gamma > 0.0) {
        auto ids = select_surrogates(protos, base, params.top_r);
        surrogate_centers.reserve(ids.size());
        for (uint32_t id : ids) surrogate_centers.push_back(base.centers[id]);
        for (size_t k = 0; k < protos.size(); ++k) {
            proto_repr[k] = surrogate_repr(protos[k], surrogate_centers);
        }
    }

    std::vector<uint32_t> predictions;
    predictions.reserve(ep.query.size());
    std::vector<double> d(protos.size()), dpp(protos.size(), 0.0);
    for (const Point& z : ep.query) {
        for (size_t k = 0; k < protos.size(); ++k) d[k] = sq_dist(z, protos[k]);
        if (params.gamma > 0.0) {
            Point query_repr_point = surrogate_repr(z, surrogate_centers);
            for (size_t k = 0; k < protos.size(); ++k) {
                dpp[k] = point_dist(query_repr_point, proto_repr[k], params.surrogate_metric);
            }
        }
        predictions.push_back(static_cast<uint32_t>(argmin(combined_criterion(d, dpp, params))));
    }
    return predictions;
}

} // namespace voroshot
