#pragma once

#include <cstdint>
#include <vector>

#include "voroshot/bank.hpp"
#include "voroshot/geometry.hpp"
#include "voroshot/rng.hpp"

namespace testutil {

using voroshot::Point;

inline Point random_point(voroshot::SplitMix64& rng, size_t dim, double scale = 1.0) {
    Point p(dim);
    for (auto& v : p) v = scale * (2.0 * rng.next_double() - 1.0);
    return p;
}

inline Point random_positive_point(voroshot::SplitMix64& rng, size_t dim) {
    Point p(dim);
    for (auto& v : p) v = 0.1 + rng.next_double();
    return p;
}

// Small labeled bank: `classes` classes with `per_class` samples each,
// samples clustered around well-separated class centers. One view unless
// stated otherwise; all entries strictly positive.
inline voroshot::FeatureBank toy_bank(uint32_t classes, uint32_t per_class, uint32_t dims,
                                      uint64_t seed, uint32_t views = 1,
                                      double noise = 0.05) {
    voroshot::SplitMix64 rng(seed);
    voroshot::FeatureBank bank;
    bank.n_classes = classes;
    bank.n_samples = classes * per_class;
    bank.n_dims = dims;
    bank.split = voroshot::Split::Novel;
    std::vector<Point> centers(classes);
    for (auto& c : centers) {
        c.resize(dims);
        for (auto& v : c) v = 1.0 + 4.0 * rng.next_double();
    }
    std::vector<float> view0;
    view0.reserve(static_cast<size_t>(bank.n_samples) * dims);
    for (uint32_t c = 0; c < classes; ++c) {
        for (uint32_t s = 0; s < per_class; ++s) {
            bank.labels.push_back(c);
            for (uint32_t d = 0; d < dims; ++d) {
                view0.push_back(static_cast<float>(centers[c][d] + noise * rng.next_gaussian()));
            }
        }
    }
    bank.view_provenance.push_back("identity");
    bank.features.push_back(view0);
    for (uint32_t v = 1; v < views; ++v) {
        std::vector<float> view(view0);
        for (auto& x : view) x = static_cast<float>(x + 0.01 * rng.next_gaussian());
        bank.view_provenance.push_back("jitter" + std::to_string(v));
        bank.features.push_back(std::move(view));
    }
    bank.validate();
    return bank;
}

} // namespace testutil
