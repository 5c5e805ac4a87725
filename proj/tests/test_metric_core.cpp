#include <catch2/catch_amalgamated.hpp>

#include "magnihom/corpus.hpp"
#include "magnihom/metric_space.hpp"
#include "test_support.hpp"

using namespace magnihom;

namespace {

FiniteMetricSpace from_ints(std::vector<std::vector<int>> rows) {
    FiniteMetricSpace m;
    for (auto& r : rows) {
        m.dist.emplace_back();
        for (int x : r) m.dist.back().emplace_back(x);
    }
    m.labels.assign(m.dist.size(), "");
    for (std::size_t i = 0; i < m.dist.size(); ++i) m.labels[i] = "p" + std::to_string(i);
    return m;
}

}  // namespace

TEST_CASE("validate_metric accepts the smallest metric") {
    const auto m = from_ints({{0, 1}, {1, 0}});
    REQUIRE(validate_metric(m).ok);
}

TEST_CASE("validate_metric reports asymmetry with witnesses") {
    const auto m = from_ints({{0, 1}, {2, 0}});
    const auto report = validate_metric(m);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.reason == "asymmetry");
    REQUIRE(report.i == 0);
    REQUIRE(report.j == 1);
}

TEST_CASE("validate_metric reports a triangle inequality violation") {
    const auto m = from_ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    const auto report = validate_metric(m);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.reason == "triangle inequality violation");
    REQUIRE(report.i == 0);
    REQUIRE(report.j == 2);
    REQUIRE(report.k == 1);
}

TEST_CASE("validate_metric flags zero off-diagonal and nonzero diagonal") {
    REQUIRE(validate_metric(from_ints({{0, 0}, {0, 0}})).reason ==
            "nonpositive off-diagonal entry");
    REQUIRE(validate_metric(from_ints({{1, 1}, {1, 0}})).reason == "nonzero diagonal");
}

TEST_CASE("chain lengths") {
    const auto two = from_ints({{0, 1}, {1, 0}});
    REQUIRE(chain_length(two, Chain{0}) == 0);
    REQUIRE(chain_length(two, Chain{0, 1, 0}) == 2);

    const auto cube = testing::cube_metric_oracle();
    // vertices 1,2,7,8 are the graph points 0,1,6,7
    REQUIRE(chain_length(cube, Chain{0, 1, 6, 7}) == 3);
}

TEST_CASE("betweenness") {
    const auto path = from_ints({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    REQUIRE_FALSE(between(path, PointId{0}, PointId{0}, PointId{1}));
    REQUIRE(between(path, PointId{0}, PointId{1}, PointId{2}));
    REQUIRE(between(path, PointId{2}, PointId{1}, PointId{0}));  // swap invariance

    const auto cube = testing::cube_metric_oracle();
    // cube vertices (1, 7, 8): d(1,7) = 2r, d(7,8) = r, d(1,8) = 3r
    REQUIRE(cube.distance(0, 6) == 2);
    REQUIRE(between(cube, PointId{0}, PointId{6}, PointId{7}));
}

TEST_CASE("smoothness counts") {
    const auto path = from_ints({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    REQUIRE(smoothness_count(path, Chain{0, 2}) == 0);
    REQUIRE(smoothness_count(path, Chain{0, 1, 2}) == 1);
    REQUIRE_THROWS_AS(smoothness_count(path, Chain{0, 0, 1}), std::invalid_argument);
}

TEST_CASE("four cuts found by brute force have smoothness 2") {
    // scan seeded 5-point spaces for a 4-cut and check both definitions
    std::size_t found = 0;
    for (std::uint64_t seed = 0; seed < 40 && found < 5; ++seed) {
        const auto m = random_metric_space(5, 1000 + seed);
        for (PointId x0 = 0; x0 < 5; ++x0)
            for (PointId x1 = 0; x1 < 5; ++x1)
                for (PointId x2 = 0; x2 < 5; ++x2)
                    for (PointId x3 = 0; x3 < 5; ++x3) {
                        const Chain c{x0, x1, x2, x3};
                        if (!c.proper()) continue;
                        const bool brute = between(m, x0, x1, x2) && between(m, x1, x2, x3) &&
                                           chain_length(m, c) > m.distance(x0, x3);
                        REQUIRE(is_four_cut(m, c) == brute);
                        if (brute) {
                            ++found;
                            REQUIRE(smoothness_count(m, c) == 2);
                        }
                    }
    }
    REQUIRE(found >= 5);
}

TEST_CASE("four cut rejects geodesic quadruples and wrong arity") {
    const auto path = from_ints({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}});
    REQUIRE_FALSE(is_four_cut(path, Chain{0, 1, 2, 3}));  // length equals d(ends)
    REQUIRE_THROWS_AS(is_four_cut(path, Chain{0, 1, 2}), std::invalid_argument);
    // first betweenness fails
    const auto cube = testing::cube_metric_oracle();
    REQUIRE_FALSE(is_four_cut(cube, Chain{0, 1, 0, 2}));
}

TEST_CASE("cube chain <1,2,7,8> against both four-cut conditions") {
    const auto cube = testing::cube_metric_oracle();
    const Chain c{0, 1, 6, 7};
    // brute force both defining conditions from the shortest-path metric
    const bool cond = between(cube, PointId{0}, PointId{1}, PointId{6}) &&
                      between(cube, PointId{1}, PointId{6}, PointId{7}) &&
                      chain_length(cube, c) > cube.distance(0, 7);
    REQUIRE(is_four_cut(cube, c) == cond);
    REQUIRE_FALSE(cond);  // the chain is geodesic: length 3r = d(1,8)
}

TEST_CASE("random chains satisfy the length lower bound") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_metric_space(4 + trial % 4, 500 + trial);
        std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
        Chain c;
        const std::size_t len = 2 + trial % 4;
        for (std::size_t i = 0; i < len; ++i) c.points.push_back(pick(rng));
        REQUIRE(chain_length(m, c) >= m.distance(c.front(), c.back()));
        if (c.proper() && c.points.size() >= 2)
            REQUIRE(smoothness_count(m, c) <= c.degree() - 1);
    }
}

TEST_CASE("predicates are invariant under relabeling") {
    const auto m = random_metric_space(6, 99);
    const auto perm = testing::random_permutation(6, 3);
    const auto rm = relabel(m, perm);
    // point i of rm is point perm[i] of m
    std::vector<PointId> inv(6);
    for (PointId i = 0; i < 6; ++i) inv[perm[i]] = i;
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    for (int trial = 0; trial < 100; ++trial) {
        Chain c{pick(rng), pick(rng), pick(rng), pick(rng)};
        Chain rc;
        for (PointId p : c.points) rc.points.push_back(inv[p]);
        REQUIRE(chain_length(m, c) == chain_length(rm, rc));
        if (c.proper()) {
            REQUIRE(smoothness_count(m, c) == smoothness_count(rm, rc));
            REQUIRE(is_four_cut(m, c) == is_four_cut(rm, rc));
        }
    }
}

TEST_CASE("random metric spaces are valid metrics") {
    for (std::uint64_t seed = 0; seed < 30; ++seed)
        REQUIRE(validate_metric(random_metric_space(4 + seed % 4, seed)).ok);
}

TEST_CASE("exact arithmetic survives non-integer edge lengths") {
    const auto cube = vertex_metric_space(cube_graph(Rational(2, 3)));
    REQUIRE(chain_length(cube, Chain{0, 1, 6, 7}) == Rational(2));
    REQUIRE(cube.distance(0, 7) == Rational(2));
    REQUIRE(between(cube, PointId{0}, PointId{6}, PointId{7}));
    REQUIRE(validate_metric(cube).ok);
}
