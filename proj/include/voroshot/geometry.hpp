#pragma once

#include <cstddef>
#include <vector>

namespace voroshot {

// Unitless embedding coordinates.
using Point = std::vector<double>;

// A cell-owning cluster: an ordered list of member points (duplicates allowed).
using Cluster = std::vector<Point>;

enum class Metric {
    SquaredEuclidean, // d(z,c) = ||z-c||^2, the default everywhere
    Euclidean,
};

// Parameters of the influence function F(C, z) = -sign(alpha) * sum_i d(c_i, z)^alpha.
// alpha = 0 is rejected (sign(0) would annihilate F).
struct InfluenceParams {
    double alpha = 1.0;
    Metric metric = Metric::SquaredEuclidean;
};

double sq_dist(const Point& a, const Point& b);
double euclidean_dist(const Point& a, const Point& b);
double point_dist(const Point& a, const Point& b, Metric metric);

// Nearest-center cell assignment; ties broken by lowest index.
size_t assign_vd(const std::vector<Point>& centers, const Point& z);

// Power-diagram assignment: argmin_k [ sq_dist(z, c_k) - weight_k ].
size_t assign_pd(const std::vector<Point>& centers,
                 const std::vector<double>& weights, const Point& z);

// Joint influence of a cluster on a query point.
// Throws DomainError when alpha < 0 and some member coincides with z.
double influence(const Cluster& cluster, const Point& z, const InfluenceParams& p);

// Cluster-to-point cell assignment: argmax_k influence(C_k, z).
size_t assign_civd(const std::vector<Cluster>& clusters, const Point& z,
                   const InfluenceParams& p);

// Positional cluster-to-cluster influence: member i of the owning cluster is
// paired with member i of the query cluster. Cardinalities must match.
double influence_ccvd(const Cluster& cluster, const Cluster& query_cluster,
                      const InfluenceParams& p);

// Cluster-to-cluster cell assignment over K equal-cardinality clusters.
size_t assign_ccvd(const std::vector<Cluster>& clusters,
                   const Cluster& query_cluster, const InfluenceParams& p);

} // namespace voroshot
