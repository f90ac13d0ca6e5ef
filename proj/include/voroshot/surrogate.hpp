#pragma once

#include <cstdint>
#include <vector>

#include "voroshot/bank.hpp"
#include "voroshot/episode.hpp"
#include "voroshot/geometry.hpp"
#include "voroshot/transforms.hpp"

namespace voroshot {

// Transformed per-class centers of a base bank, in base-class-id order.
struct BasePrototypes {
    std::vector<Point> centers;
    std::vector<uint32_t> class_ids;
};

struct SurrogateParams {
    uint32_t top_r = 1;    // base classes retained per novel class
    double beta = 1.0;     // weight of the feature-distance term
    double gamma = 1.0;    // weight of the surrogate-distance term
    // Distance between surrogate vectors; squared by default.
    Metric surrogate_metric = Metric::SquaredEuclidean;

    void validate() const;
};

// Per base class, the mean of that class's transformed features in `view`.
BasePrototypes base_prototypes(const FeatureBank& bank, const TransformParams& transform,
                               uint32_t view = 0);

// Union over novel classes of the top_r base classes nearest to each novel
// center; deduplicated and sorted ascending by base class index. Ties in
// the top-R ranking break toward the lower base index.
std::vector<uint32_t> select_surrogates(const std::vector<Point>& novel_centers,
                                        const BasePrototypes& base, uint32_t top_r);

// Squared distances from `point` to each surrogate center, in order.
std::vector<double> surrogate_repr(const Point& point,
                                   const std::vector<Point>& surrogate_centers);

// beta * d/||d||_1 + gamma * dpp/||dpp||_1. A term with zero weight is
// skipped; a zero Manhattan norm under a nonzero weight is a degenerate
// episode and throws DomainError.
std::vector<double> combined_criterion(const std::vector<double>& d,
                                       const std::vector<double>& dpp,
                                       const SurrogateParams& params);

// End-to-end surrogate classification of a raw (untransformed) episode:
// transforms support and query, computes prototypes and feature distances,
// selects surrogate classes, builds surrogate representations, and argmins
// the combined criterion per query. With gamma = 0 the surrogate machinery
// is skipped entirely and the result reduces to nearest-prototype.
std::vector<uint32_t> classify_surrogate(const Episode& raw_episode,
                                         const BasePrototypes& base,
                                         const SurrogateParams& params,
                                         const TransformParams& transform);

} // namespace voroshot
