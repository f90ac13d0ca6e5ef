#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "voroshot/classifiers.hpp"
#include "voroshot/error.hpp"
#include "voroshot/rng.hpp"

using namespace voroshot;
using testutil::random_point;

namespace {

// The seeded separable two-class task: five samples around (-1, 0) and five
// mirrored around (1, 0).
Episode separable_task(uint64_t seed = 19) {
    SplitMix64 rng(seed);
    Episode ep;
    ep.way = 2;
    ep.shots = 5;
    ep.queries = 1;
    for (int i = 0; i < 5; ++i) {
        double jx = 0.1 * (2.0 * rng.next_double() - 1.0);
        double jy = 0.1 * (2.0 * rng.next_double() - 1.0);
        ep.support.push_back({-1.0 + jx, jy});
    }
    for (int i = 0; i < 5; ++i) {
        double jx = 0.1 * (2.0 * rng.next_double() - 1.0);
        double jy = 0.1 * (2.0 * rng.next_double() - 1.0);
        ep.support.push_back({1.0 + jx, jy});
    }
    ep.query.push_back({-1.0, 0.0});
    ep.query.push_back({1.0, 0.0});
    return ep;
}

Episode random_episode(SplitMix64& rng, uint32_t way, uint32_t shots, uint32_t queries,
                       size_t dim) {
    Episode ep;
    ep.way = way;
    ep.shots = shots;
    ep.queries = queries;
    for (uint32_t k = 0; k < way; ++k) {
        Point center = random_point(rng, dim, 3.0);
        for (uint32_t i = 0; i < shots; ++i) {
            Point p = center;
            for (auto& v : p) v += 0.3 * (2.0 * rng.next_double() - 1.0);
            ep.support.push_back(p);
        }
        for (uint32_t i = 0; i < queries; ++i) {
            Point p = center;
            for (auto& v : p) v += 0.3 * (2.0 * rng.next_double() - 1.0);
            ep.query.push_back(p);
        }
    }
    return ep;
}

double max_bias_violation(const LinearModel& model) {
    double worst = 0.0;
    for (size_t k = 0; k < model.weights.size(); ++k) {
        double norm_sq = 0.0;
        for (double w : model.weights[k]) norm_sq += w * w;
        worst = std::max(worst, std::abs(model.biases[k] + 0.25 * norm_sq));
    }
    return worst;
}

} // namespace

TEST_CASE("prototypes are per-class means") {
    Episode ep;
    ep.way = 1;
    ep.shots = 2;
    ep.queries = 0;
    ep.support = {{0, 0}, {2, 0}};
    auto centers = prototypes(ep);
    CHECK(centers[0][0] == doctest::Approx(1.0));
    CHECK(centers[0][1] == doctest::Approx(0.0));

    // one-shot prototype is the support point itself
    Episode one;
    one.way = 2;
    one.shots = 1;
    one.queries = 0;
    one.support = {{3, 1}, {-1, 5}};
    auto c1 = prototypes(one);
    CHECK(c1[0] == one.support[0]);
    CHECK(c1[1] == one.support[1]);

    // random episode against an independent elementwise mean
    SplitMix64 rng(71);
    Episode r = random_episode(rng, 5, 5, 0, 6);
    auto cs = prototypes(r);
    for (uint32_t k = 0; k < 5; ++k) {
        for (size_t d = 0; d < 6; ++d) {
            double mean = 0.0;
            for (uint32_t i = 0; i < 5; ++i) mean += r.support[k * 5 + i][d];
            mean /= 5.0;
            CHECK(cs[k][d] == doctest::Approx(mean).epsilon(1e-12));
        }
    }

    // prototype invariant under permuting a class's support points
    Episode swapped = r;
    std::swap(swapped.support[0], swapped.support[3]);
    auto cs2 = prototypes(swapped);
    for (size_t d = 0; d < 6; ++d) {
        CHECK(cs2[0][d] == doctest::Approx(cs[0][d]).epsilon(1e-12));
    }
}

TEST_CASE("training is deterministic and honors zero learning rate") {
    Episode ep = separable_task();
    TrainOptions opts;
    opts.epochs = 5;
    opts.seed = 3;

    LinearModel a = train_power_lr(ep, opts);
    LinearModel b = train_power_lr(ep, opts);
    CHECK(a.weights == b.weights);  // bit-identical
    CHECK(a.biases == b.biases);

    // lr = 0 leaves the model at its seeded initialization
    TrainOptions frozen;
    frozen.learning_rate = 0.0;
    frozen.epochs = 1;
    frozen.seed = 3;
    frozen.init_scale = 0.01;
    LinearModel init = train_power_lr(ep, frozen);
    SplitMix64 rng(3);
    for (size_t k = 0; k < 2; ++k) {
        for (size_t d = 0; d < 2; ++d) {
            double expected = 0.01 * (2.0 * rng.next_double() - 1.0);
            CHECK(init.weights[k][d] == expected);
        }
    }
    for (double bias : init.biases) CHECK(bias == 0.0);
}

TEST_CASE("power-LR separates the separable task") {
    Episode ep = separable_task();
    TrainOptions opts;
    opts.epochs = 200;
    CHECK(support_accuracy(train_power_lr(ep, opts), ep) == doctest::Approx(1.0));
}

TEST_CASE("voronoi-LR separates and satisfies the bias constraint") {
    Episode ep = separable_task();
    TrainOptions opts;
    opts.epochs = 200;
    LinearModel model = train_voronoi_lr(ep, opts);
    CHECK(support_accuracy(model, ep) == doctest::Approx(1.0));
    CHECK(max_bias_violation(model) < 1e-9);
}

TEST_CASE("lr_centers formula and constraint checking") {
    LinearModel model;
    model.weights = {{2, 0}, {0, 0}};
    model.biases = {-1.0, 0.0};
    auto centers = lr_centers(model);
    CHECK(centers[0][0] == doctest::Approx(1.0));
    CHECK(centers[0][1] == doctest::Approx(0.0));
    CHECK(centers[1][0] == 0.0);

    model.biases[0] = 0.0;  // violates b = -||W||^2/4
    CHECK_THROWS_AS(lr_centers(model), DomainError);
}

TEST_CASE("trained voronoi model predicts exactly like its VD") {
    SplitMix64 rng(29);
    Episode ep = random_episode(rng, 5, 3, 0, 8);
    TrainOptions opts;
    opts.epochs = 40;
    LinearModel model = train_voronoi_lr(ep, opts);
    auto centers = lr_centers(model);
    for (int i = 0; i < 1000; ++i) {
        Point z = random_point(rng, 8, 4.0);
        CHECK(classify_linear(model, z) == assign_vd(centers, z));
    }
}

TEST_CASE("random voronoi-constrained models match assign_vd") {
    SplitMix64 rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        LinearModel model;
        for (int k = 0; k < 5; ++k) {
            model.weights.push_back(random_point(rng, 6, 2.0));
            double norm_sq = 0.0;
            for (double w : model.weights.back()) norm_sq += w * w;
            model.biases.push_back(-0.25 * norm_sq);
        }
        auto centers = lr_centers(model);
        for (int i = 0; i < 50; ++i) {
            Point z = random_point(rng, 6, 3.0);
            CHECK(classify_linear(model, z) == assign_vd(centers, z));
        }
    }
}

TEST_CASE("classify_linear scores, ties, bias-shift invariance") {
    LinearModel model;
    model.weights = {{2, 0}, {0, 2}};
    model.biases = {-1, -1};
    CHECK(classify_linear(model, {1, 0.5}) == 0);  // scores 1 vs 0

    LinearModel zeros;
    zeros.weights = {{0, 0}, {0, 0}};
    zeros.biases = {0, 0};
    CHECK(classify_linear(zeros, {5, -3}) == 0);  // tie -> lowest index

    SplitMix64 rng(53);
    LinearModel shifted = model;
    for (double& b : shifted.biases) b += 17.25;
    for (int i = 0; i < 100; ++i) {
        Point z = random_point(rng, 2, 2.0);
        CHECK(classify_linear(model, z) == classify_linear(shifted, z));
    }
}

TEST_CASE("training rejects bad options") {
    Episode ep = separable_task();
    TrainOptions opts;
    opts.learning_rate = -0.1;
    CHECK_THROWS_AS(train_power_lr(ep, opts), ConfigError);
    opts.learning_rate = 0.01;
    opts.epochs = 0;
    CHECK_THROWS_AS(train_power_lr(ep, opts), ConfigError);
}

TEST_CASE("classify_civd_integrated merges both center sets") {
    // identical sets reduce to plain VD
    SplitMix64 rng(61);
    std::vector<Point> centers;
    for (int k = 0; k < 4; ++k) centers.push_back(random_point(rng, 3));
    for (int i = 0; i < 100; ++i) {
        Point z = random_point(rng, 3, 2.0);
        CHECK(classify_civd_integrated(centers, centers, z, {1.0}) == assign_vd(centers, z));
    }

    std::vector<Point> vd = {{0, 0}, {3, 0}};
    std::vector<Point> lr = {{0.2, 0}, {3.2, 0}};
    CHECK(classify_civd_integrated(vd, lr, {1, 0}, {1.0}) == 0);

    // brute-force two-member evaluation
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Point> a, b;
        for (int k = 0; k < 5; ++k) {
            a.push_back(random_point(rng, 4));
            b.push_back(random_point(rng, 4));
        }
        Point z = random_point(rng, 4, 2.0);
        size_t best = 0;
        double best_f = -1e300;
        for (size_t k = 0; k < a.size(); ++k) {
            double f = -(sq_dist(a[k], z) + sq_dist(b[k], z));
            if (f > best_f) {
                best_f = f;
                best = k;
            }
        }
        CHECK(classify_civd_integrated(a, b, z, {1.0}) == best);
    }

    CHECK_THROWS_AS(classify_civd_integrated(vd, {{0, 0}}, {1, 0}, {1.0}), DomainError);
}
