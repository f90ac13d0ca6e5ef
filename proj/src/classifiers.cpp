#include "voroshot/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voroshot/error.hpp"
#include "voroshot/rng.hpp"

namespace voroshot {

namespace {

struct AdamState {
    std::vector<double> m, v;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    explicit AdamState(size_t n) : m(n, 0.0), v(n, 0.0) {}

    void step(std::vector<double>& params, const std::vector<double>& grad,
              double lr, uint64_t t) {
        double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
        double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
        for (size_t i = 0; i < params.size(); ++i) {
            m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
            v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
            params[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
        }
    }
};

void project_voronoi_bias(LinearModel& model) {
    for (size_t k = 0; k < model.weights.size(); ++k) {
        double norm_sq = 0.0;
        for (double w : model.weights[k]) norm_sq += w * w;
        model.biases[k] = -0.25 * norm_sq;
    }
}

void check_episode(const Episode& ep) {
    if (ep.way == 0 || ep.support.empty()) {
        throw DataError("classifier: empty episode");
    }
    if (ep.support.size() != static_cast<size_t>(ep.way) * ep.shots) {
        throw DataError("classifier: support size does not match way*shots");
    }
}

// Shared trainer. Flattened parameter layout: K*n weights then K biases
// (biases only when trained).
LinearModel train_linear(const Episode& ep, const TrainOptions& opts, bool voronoi) {
    check_episode(ep);
    if (opts.learning_rate < 0.0) throw ConfigError("train: negative learning rate");
    if (opts.epochs == 0) throw ConfigError("train: epochs must be >= 1");
    if (opts.batch_size == 0) throw ConfigError("train: batch size must be >= 1");

    const uint32_t K = ep.way;
    const size_t dim = ep.support[0].size();
    const size_t n_samples = ep.support.size();

    SplitMix64 rng(opts.seed);
    LinearModel model;
    model.weights.assign(K, std::vector<double>(dim));
    model.biases.assign(K, 0.0);
    for (uint32_t k = 0; k < K; ++k) {
        for (size_t d = 0; d < dim; ++d) {
            model.weights[k][d] = opts.init_scale * (2.0 * rng.next_double() - 1.0);
        }
    }
    if (voronoi) project_voronoi_bias(model);

    AdamState adam_w(static_cast<size_t>(K) * dim);
    AdamState adam_b(K);
    std::vector<double> flat_w(static_cast<size_t>(K) * dim);
    std::vector<double> grad_w(flat_w.size());
    std::vector<double> grad_b(K);
    std::vector<double> logits(K), probs(K);
    std::vector<size_t> order(n_samples);
    for (size_t i = 0; i < n_samples; ++i) order[i] = i;

    uint64_t t = 0;
    for (uint32_t epoch = 0; epoch < opts.epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t start = 0; start < n_samples; start += opts.batch_size) {
            size_t end = std::min(n_samples, start + opts.batch_size);
            if (voronoi) project_voronoi_bias(model);
            std::fill(grad_w.begin(), grad_w.end(), 0.0);
            std::fill(grad_b.begin(), grad_b.end(), 0.0);
            double batch_loss = 0.0;
            for (size_t bi = start; bi < end; ++bi) {
                const Point& z = ep.support[order[bi]];
                uint32_t y = ep.support_class(order[bi]);
                double max_logit = -1e300;
                for (uint32_t k = 0; k < K; ++k) {
                    double l = model.biases[k];
                    const auto& wk = model.weights[k];
                    for (size_t d = 0; d < dim; ++d) l += wk[d] * z[d];
                    logits[k] = l;
                    max_logit = std::max(max_logit, l);
                }
                double denom = 0.0;
                for (uint32_t k = 0; k < K; ++k) {
                    probs[k] = std::exp(logits[k] - max_logit);
                    denom += probs[k];
                }
                for (uint32_t k = 0; k < K; ++k) probs[k] /= denom;
                batch_loss += -std::log(std::max(probs[y], 1e-300));
                for (uint32_t k = 0; k < K; ++k) {
                    double g = probs[k] - (k == y ? 1.0 : 0.0);
                    double* gw = grad_w.data() + static_cast<size_t>(k) * dim;
                    for (size_t d = 0; d < dim; ++d) gw[d] += g * z[d];
                    grad_b[k] += g;
                }
            }
            double inv = 1.0 / static_cast<double>(end - start);
            for (auto& g : grad_w) g *= inv;
            for (auto& g : grad_b) g *= inv;
            if (!std::isfinite(batch_loss)) {
                throw DomainError("train: non-finite loss at epoch " + std::to_string(epoch));
            }
            ++t;
            for (uint32_t k = 0; k < K; ++k) {
                std::copy(model.weights[k].begin(), model.weights[k].end(),
                          flat_w.begin() + static_cast<size_t>(k) * dim);
            }
            adam_w.step(flat_w, grad_w, opts.learning_rate, t);
            for (uint32_t k = 0; k < K; ++k) {
                std::copy(flat_w.begin() + static_cast<size_t>(k) * dim,
                          flat_w.begin() + static_cast<size_t>(k + 1) * dim,
                          model.weights[k].begin());
            }
            if (!voronoi) {
                adam_b.step(model.biases, grad_b, opts.learning_rate, t);
            }
        }
    }
    if (voronoi) project_voronoi_bias(model);
    return model;
}

} // namespace

std::vector<Point> prototypes(const Episode& episode) {
    check_episode(episode);
    const size_t dim = episode.support[0].size();
    std::vector<Point> centers(episode.way, Point(dim, 0.0));
    for (size_t i = 0; i < episode.support.size(); ++i) {
        uint32_t k = episode.support_class(i);
        for (size_t d = 0; d < dim; ++d) centers[k][d] += episode.support[i][d];
    }
    double inv = 1.0 / static_cast<double>(episode.shots);
    for (auto& c : centers)
        for (double& v : c) v *= inv;
    return centers;
}

LinearModel train_power_lr(const Episode& episode, const TrainOptions& opts) {
    return train_linear(episode, opts, false);
}

LinearModel train_voronoi_lr(const Episode& episode, const TrainOptions& opts) {
    return train_linear(episode, opts, true);
}

std::vector<Point> lr_centers(const LinearModel& model) {
    std::vector<Point> centers;
    centers.reserve(model.weights.size());
    for (size_t k = 0; k < model.weights.size(); ++k) {
        double norm_sq = 0.0;
        for (double w : model.weights[k]) norm_sq += w * w;
        if (std::abs(model.biases[k] + 0.25 * norm_sq) > kVoronoiBiasTol) {
            throw DomainError("lr_centers: model violates the Voronoi bias constraint at class " +
                              std::to_string(k));
        }
        Point c(model.weights[k]);
        for (double& v : c) v *= 0.5;
        centers.push_back(std::move(c));
    }
    return centers;
}

size_t classify_linear(const LinearModel& model, const Point& z) {
    if (model.weights.empty()) throw DomainError("classify_linear: empty model");
    size_t best = 0;
    double best_s = -1e300;
    for (size_t k = 0; k < model.weights.size(); ++k) {
        const auto& wk = model.weights[k];
        if (wk.size() != z.size()) {
            throw DomainError("classify_linear: dimension mismatch");
        }
        double s = model.biases[k];
        for (size_t d = 0; d < z.size(); ++d) s += wk[d] * z[d];
        if (s > best_s) {
            best_s = s;
            best = k;
        }
    }
    return best;
}

size_t classify_civd_integrated(const std::vector<Point>& vd_centers,
                                const std::vector<Point>& lr_centers,
                                const Point& z, const InfluenceParams& p) {
    if (vd_centers.size() != lr_centers.size()) {
        throw DomainError("classify_civd_integrated: center set sizes differ");
    }
    std::vector<Cluster> clusters;
    clusters.reserve(vd_centers.size());
    for (size_t k = 0; k < vd_centers.size(); ++k) {
        clusters.push_back({vd_centers[k], lr_centers[k]});
    }
    return assign_civd(clusters, z, p);
}

double support_accuracy(const LinearModel& model, const Episode& episode) {
    size_t correct = 0;
    for (size_t i = 0; i < episode.support.size(); ++i) {
        if (classify_linear(model, episode.support[i]) == episode.support_class(i)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(episode.support.size());
}

} // namespace voroshot
