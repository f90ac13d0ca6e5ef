#pragma once

#include <cstdint>
#include <vector>

#include "voroshot/episode.hpp"
#include "voroshot/geometry.hpp"

namespace voroshot {

// K x n linear head. A Voronoi-constrained model additionally satisfies
// b_k = -||W_k||^2 / 4, which makes its decision regions a Voronoi diagram
// with centers W_k / 2.
struct LinearModel {
    std::vector<std::vector<double>> weights;  // K rows of n
    std::vector<double> biases;                // K
};

struct TrainOptions {
    double learning_rate = 0.01;
    uint32_t batch_size = 64;
    uint32_t epochs = 100;
    uint64_t seed = 0;
    double init_scale = 0.01;
};

// Tolerance on |b_k + ||W_k||^2/4| for a model to count as Voronoi-constrained.
inline constexpr double kVoronoiBiasTol = 1e-9;

// Per-class mean of the support points.
std::vector<Point> prototypes(const Episode& episode);

// Softmax cross-entropy on the support set, Adam updates, free biases.
LinearModel train_power_lr(const Episode& episode, const TrainOptions& opts);

// Same loss and optimizer, but the biases are projected to
// b_k = -||W_k||^2 / 4 before every forward pass and never trained.
LinearModel train_voronoi_lr(const Episode& episode, const TrainOptions& opts);

// Centers W_k / 2 of a Voronoi-constrained model. Throws DomainError when
// the constraint is violated beyond kVoronoiBiasTol.
std::vector<Point> lr_centers(const LinearModel& model);

// argmax_k (W_k . z + b_k), ties to the lowest index.
size_t classify_linear(const LinearModel& model, const Point& z);

// Per class k, merges the prototype and the linear-head center into the
// two-member cluster {c_k, c~_k} and assigns by joint influence.
size_t classify_civd_integrated(const std::vector<Point>& vd_centers,
                                const std::vector<Point>& lr_centers,
                                const Point& z, const InfluenceParams& p);

// Fraction of support points the model classifies correctly.
double support_accuracy(const LinearModel& model, const Episode& episode);

} // namespace voroshot
