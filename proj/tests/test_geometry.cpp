#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "voroshot/error.hpp"
#include "voroshot/geometry.hpp"
#include "voroshot/rng.hpp"

using namespace voroshot;
using testutil::random_point;

namespace {

// Straight-loop evaluation of the influence sum, kept independent of the
// library implementation.
double brute_influence(const Cluster& cluster, const Point& z, double alpha) {
    double sum = 0.0;
    for (const Point& c : cluster) {
        double d = 0.0;
        for (size_t i = 0; i < c.size(); ++i) d += (c[i] - z[i]) * (c[i] - z[i]);
        sum += std::pow(d, alpha);
    }
    return (alpha > 0 ? -1.0 : 1.0) * sum;
}

size_t brute_civd(const std::vector<Cluster>& clusters, const Point& z, double alpha) {
    size_t best = 0;
    double best_f = brute_influence(clusters[0], z, alpha);
    for (size_t k = 1; k < clusters.size(); ++k) {
        double f = brute_influence(clusters[k], z, alpha);
        if (f > best_f) {
            best_f = f;
            best = k;
        }
    }
    return best;
}

size_t brute_ccvd(const std::vector<Cluster>& clusters, const Cluster& query, double alpha) {
    size_t best = 0;
    double best_f = 0.0;
    for (size_t k = 0; k < clusters.size(); ++k) {
        double sum = 0.0;
        for (size_t i = 0; i < query.size(); ++i) {
            double d = 0.0;
            for (size_t j = 0; j < query[i].size(); ++j) {
                d += (clusters[k][i][j] - query[i][j]) * (clusters[k][i][j] - query[i][j]);
            }
            sum += std::pow(d, alpha);
        }
        double f = (alpha > 0 ? -1.0 : 1.0) * sum;
        if (k == 0 || f > best_f) {
            best_f = f;
            best = k;
        }
    }
    return best;
}

} // namespace

TEST_CASE("sq_dist basics") {
    CHECK(sq_dist({0, 0}, {3, 4}) == doctest::Approx(25.0));
    CHECK(sq_dist({1, 1}, {1, 1}) == 0.0);
    CHECK(sq_dist({0.5, 0}, {2, 0}) == doctest::Approx(2.25));
    CHECK(sq_dist({1, 2}, {4, 6}) == sq_dist({4, 6}, {1, 2}));
    CHECK_THROWS_AS(sq_dist({1, 2}, {1, 2, 3}), DomainError);
}

TEST_CASE("assign_vd nearest center with low-index ties") {
    std::vector<Point> centers = {{0, 0}, {2, 0}};
    CHECK(assign_vd(centers, {0.9, 0}) == 0);
    CHECK(assign_vd(centers, {1.0, 0}) == 0);  // exact tie
    std::vector<Point> three = {{0, 0}, {2, 0}, {0, 2}};
    CHECK(assign_vd(three, {0.4, 1.8}) == 2);
    CHECK_THROWS_AS(assign_vd({}, {0, 0}), DomainError);
}

TEST_CASE("assign_pd power cells and collapse to VD") {
    std::vector<Point> centers = {{0, 0}, {2, 0}};
    CHECK(assign_pd(centers, {0, 3}, {0.5, 0}) == 1);  // 0.25 vs -0.75
    CHECK(assign_pd(centers, {0, 0}, {1, 0}) == 0);    // tie
    CHECK_THROWS_AS(assign_pd(centers, {0}, {1, 0}), DomainError);

    // equal weights equal VD everywhere
    SplitMix64 rng(7);
    std::vector<Point> cs;
    for (int k = 0; k < 6; ++k) cs.push_back(random_point(rng, 5));
    std::vector<double> nu(6, 1.75);
    for (int i = 0; i < 100; ++i) {
        Point z = random_point(rng, 5, 2.0);
        CHECK(assign_pd(cs, nu, z) == assign_vd(cs, z));
    }
}

TEST_CASE("influence examples and sign convention") {
    // squared distances {1, 2} from the query
    Cluster cluster = {{1, 0}, {0, std::sqrt(2.0)}};
    Point z = {0, 0};
    CHECK(influence(cluster, z, {1.0}) == doctest::Approx(-3.0));
    CHECK(influence(cluster, z, {-2.0}) == doctest::Approx(1.25));

    // singleton clusters with any positive alpha reduce CIVD to assign_vd
    SplitMix64 rng(11);
    for (double alpha : {1.0, 2.0, 0.5}) {
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<Point> centers;
            std::vector<Cluster> singletons;
            for (int k = 0; k < 4; ++k) {
                centers.push_back(random_point(rng, 3));
                singletons.push_back({centers.back()});
            }
            Point q = random_point(rng, 3, 2.0);
            CHECK(assign_civd(singletons, q, {alpha}) == assign_vd(centers, q));
        }
    }
}

TEST_CASE("influence domain errors") {
    Cluster cluster = {{1, 0}};
    CHECK_THROWS_AS(influence(cluster, {1, 0}, {-1.0}), DomainError);  // singular
    CHECK_THROWS_AS(influence(cluster, {0, 0}, {0.0}), DomainError);   // alpha = 0
    CHECK_THROWS_AS(influence({}, {0, 0}, {1.0}), DomainError);
    // zero distance with positive alpha is fine
    CHECK(influence(cluster, {1, 0}, {2.0}) == 0.0);
}

TEST_CASE("influence is strictly decreasing in any member distance") {
    for (double alpha : {1.0, 2.0, 0.5, -1.0, -2.0}) {
        Cluster near = {{1, 0}, {0, 2}};
        Cluster far = {{1, 0}, {0, 3}};  // second member moved away
        Point z = {0, 0};
        CHECK(influence(near, z, {alpha}) > influence(far, z, {alpha}));
    }
}

TEST_CASE("assign_civd examples and brute-force agreement") {
    CHECK(assign_civd({{{0, 0}}, {{4, 0}}}, {1, 0}, {1.0}) == 0);

    std::vector<Cluster> pairs = {{{0, 0}, {0.2, 0}}, {{3, 0}, {3.2, 0}}};
    CHECK(assign_civd(pairs, {1, 0}, {1.0}) == 0);
    CHECK(influence(pairs[0], {1, 0}, {1.0}) == doctest::Approx(-1.64));
    CHECK(influence(pairs[1], {1, 0}, {1.0}) == doctest::Approx(-8.84));

    SplitMix64 rng(23);
    for (double alpha : {1.0, 2.0, -1.0}) {
        std::vector<Cluster> clusters;
        for (int k = 0; k < 5; ++k) {
            clusters.push_back({random_point(rng, 2), random_point(rng, 2)});
        }
        for (int i = 0; i < 200; ++i) {
            Point z = random_point(rng, 2, 3.0);
            CHECK(assign_civd(clusters, z, {alpha}) == brute_civd(clusters, z, alpha));
        }
    }
}

TEST_CASE("influence_ccvd pairs by position") {
    Cluster c = {{0, 0}, {0, 0}};
    Cluster q = {{1, 0}, {1, 0}};
    CHECK(influence_ccvd(c, q, {1.0}) == doctest::Approx(-2.0));

    // position pairing, not nearest pairing
    Cluster c2 = {{0, 0}, {10, 0}};
    Cluster q2 = {{1, 0}, {9, 0}};
    CHECK(influence_ccvd(c2, q2, {1.0}) == doctest::Approx(-2.0));

    // L = 1 equals singleton influence
    Cluster c3 = {{2, 1}};
    Cluster q3 = {{0, 1}};
    CHECK(influence_ccvd(c3, q3, {1.0}) == influence(c3, q3[0], {1.0}));

    CHECK_THROWS_AS(influence_ccvd({{0, 0}}, q, {1.0}), DomainError);
}

TEST_CASE("assign_ccvd examples, L=1 reduction, brute force") {
    std::vector<Cluster> owners = {{{0, 0}, {0, 0}}, {{3, 0}, {3, 0}}};
    Cluster query = {{1, 0}, {1, 0}};
    CHECK(assign_ccvd(owners, query, {1.0}) == 0);

    SplitMix64 rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<Point> centers;
        std::vector<Cluster> singletons;
        for (int k = 0; k < 5; ++k) {
            centers.push_back(random_point(rng, 4));
            singletons.push_back({centers.back()});
        }
        Point z = random_point(rng, 4, 2.0);
        CHECK(assign_ccvd(singletons, {z}, {1.0}) == assign_vd(centers, z));
    }

    for (int rep = 0; rep < 100; ++rep) {
        const size_t L = 4;
        std::vector<Cluster> clusters(3);
        Cluster query_cluster;
        for (size_t i = 0; i < L; ++i) {
            for (auto& cl : clusters) cl.push_back(random_point(rng, 3));
            query_cluster.push_back(random_point(rng, 3, 2.0));
        }
        CHECK(assign_ccvd(clusters, query_cluster, {1.0}) ==
              brute_ccvd(clusters, query_cluster, 1.0));
    }
}

TEST_CASE("assignments are permutation-covariant") {
    SplitMix64 rng(43);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Point> centers;
        for (int k = 0; k < 5; ++k) centers.push_back(random_point(rng, 3));
        Point z = random_point(rng, 3, 2.0);
        size_t fwd = assign_vd(centers, z);
        std::vector<Point> reversed(centers.rbegin(), centers.rend());
        size_t rev = assign_vd(reversed, z);
        CHECK(rev == centers.size() - 1 - fwd);
    }
}

TEST_CASE("assignments are translation-invariant") {
    SplitMix64 rng(47);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Cluster> clusters;
        for (int k = 0; k < 4; ++k) {
            clusters.push_back({random_point(rng, 3), random_point(rng, 3)});
        }
        Point z = random_point(rng, 3, 2.0);
        Point shift = random_point(rng, 3, 10.0);
        auto shifted = clusters;
        for (auto& cl : shifted)
            for (auto& p : cl)
                for (size_t i = 0; i < p.size(); ++i) p[i] += shift[i];
        Point zs = z;
        for (size_t i = 0; i < zs.size(); ++i) zs[i] += shift[i];
        CHECK(assign_civd(clusters, z, {1.0}) == assign_civd(shifted, zs, {1.0}));
    }
}

TEST_CASE("euclidean metric switch") {
    Cluster cluster = {{3, 4}};
    Point z = {0, 0};
    InfluenceParams plain{1.0, Metric::Euclidean};
    CHECK(influence(cluster, z, plain) == doctest::Approx(-5.0));
    InfluenceParams squared{1.0, Metric::SquaredEuclidean};
    CHECK(influence(cluster, z, squared) == doctest::Approx(-25.0));
}

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 rng(42);
    CHECK(rng.next() == 3944363992691994261ULL);
    CHECK(rng.next() == 2303559546302820611ULL);
    CHECK(rng.next() == 116081316425080658ULL);
    CHECK(rng.next() == 11322860896418980756ULL);
}
