#include "voroshot/geometry.hpp"

#include <cmath>
#include <string>

#include "voroshot/error.hpp"

namespace voroshot {

namespace {

void require_same_dim(const Point& a, const Point& b, const char* where) {
    if (a.size() != b.size()) {
        throw DomainError(std::string(where) + ": dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    }
}

void require_alpha(const InfluenceParams& p) {
    if (p.alpha == 0.0) {
        throw DomainError("influence: alpha must be nonzero");
    }
}

double signum(double x) { return x > 0.0 ? 1.0 : -1.0; }

// d^alpha with a fast path for the ubiquitous alpha = 1.
double dist_pow(double d, double alpha) {
    if (alpha == 1.0) return d;
    return std::pow(d, alpha);
}

} // namespace

double sq_dist(const Point& a, const Point& b) {
    require_same_dim(a, b, "sq_dist");
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

double euclidean_dist(const Point& a, const Point& b) {
    return std::sqrt(sq_dist(a, b));
}

double point_dist(const Point& a, const Point& b, Metric metric) {
    return metric == Metric::SquaredEuclidean ? sq_dist(a, b)
                                              : euclidean_dist(a, b);
}

size_t assign_vd(const std::vector<Point>& centers, const Point& z) {
    if (centers.empty()) throw DomainError("assign_vd: empty center set");
    size_t best = 0;
    double best_d = sq_dist(z, centers[0]);
    for (size_t k = 1; k < centers.size(); ++k) {
        double d = sq_dist(z, centers[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

size_t assign_pd(const std::vector<Point>& centers,
                 const std::vector<double>& weights, const Point& z) {
    if (centers.empty()) throw DomainError("assign_pd: empty center set");
    if (weights.size() != centers.size()) {
        throw DomainError("assign_pd: weight count " +
                          std::to_string(weights.size()) +
                          " does not match center count " +
                          std::to_string(centers.size()));
    }
    size_t best = 0;
    double best_s = sq_dist(z, centers[0]) - weights[0];
    for (size_t k = 1; k < centers.size(); ++k) {
        double s = sq_dist(z, centers[k]) - weights[k];
        if (s < best_s) {
            best_s = s;
            best = k;
        }
    }
    return best;
}

double influence(const Cluster& cluster, const Point& z, const InfluenceParams& p) {
    require_alpha(p);
    if (cluster.empty()) throw DomainError("influence: empty cluster");
    double sum = 0.0;
    for (const Point& c : cluster) {
        double d = point_dist(c, z, p.metric);
        if (d == 0.0 && p.alpha < 0.0) {
            throw DomainError("influence: zero distance with negative alpha is singular");
        }
        sum += dist_pow(d, p.alpha);
    }
    return -signum(p.alpha) * sum;
}

size_t assign_civd(const std::vector<Cluster>& clusters, const Point& z,
                   const InfluenceParams& p) {
    if (clusters.empty()) throw DomainError("assign_civd: empty cluster list");
    size_t best = 0;
    double best_f = influence(clusters[0], z, p);
    for (size_t k = 1; k < clusters.size(); ++k) {
        double f = influence(clusters[k], z, p);
        if (f > best_f) {
            best_f = f;
            best = k;
        }
    }
    return best;
}

double influence_ccvd(const Cluster& cluster, const Cluster& query_cluster,
                      const InfluenceParams& p) {
    require_alpha(p);
    if (cluster.size() != query_cluster.size()) {
        throw DomainError("influence_ccvd: cluster cardinality " +
                          std::to_string(cluster.size()) +
                          " does not match query cluster cardinality " +
                          std::to_string(query_cluster.size()));
    }
    if (cluster.empty()) throw DomainError("influence_ccvd: empty cluster");
    double sum = 0.0;
    for (size_t i = 0; i < cluster.size(); ++i) {
        double d = point_dist(cluster[i], query_cluster[i], p.metric);
        if (d == 0.0 && p.alpha < 0.0) {
            throw DomainError("influence_ccvd: zero distance with negative alpha is singular");
        }
        sum += dist_pow(d, p.alpha);
    }
    return -signum(p.alpha) * sum;
}

size_t assign_ccvd(const std::vector<Cluster>& clusters,
                   const Cluster& query_cluster, const InfluenceParams& p) {
    if (clusters.empty()) throw DomainError("assign_ccvd: empty cluster list");
    size_t best = 0;
    double best_f = influence_ccvd(clusters[0], query_cluster, p);
    for (size_t k = 1; k < clusters.size(); ++k) {
        double f = influence_ccvd(clusters[k], query_cluster, p);
        if (f > best_f) {
            best_f = f;
            best = k;
        }
    }
    return best;
}

} // namespace voroshot
