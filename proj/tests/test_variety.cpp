#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdeg/variety.hpp"

#include <random>

using namespace tdeg;

namespace {

IntVec v1(long a) { return IntVec{Int(a)}; }
IntVec v2(long a, long b) { return IntVec{Int(a), Int(b)}; }

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

size_t stratum_of(const ToricVarietyModel& m, const Cone& c) {
    for (size_t i = 0; i < m.fan.cones.size(); ++i)
        if (cone_equals(m.fan.cones[i], c)) return i;
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("affine line: blow-up style descriptor at the origin") {
    Cone sigma = cone_from_rays(1, {v1(1)});
    auto m = toric_model_affine(sigma);
    auto d = kn_descriptor(m);
    CHECK(d.torus_rank == 1);
    REQUIRE(d.base_cone.has_value());
    // base region = ray R>=0
    CHECK(cone_equals(*d.base_cone, cone_from_rays(1, {v1(1)})));
    REQUIRE(d.fiber_ranks.size() == 2);   // dense orbit and the origin
    size_t origin = stratum_of(m, sigma);
    size_t dense = stratum_of(m, cone_from_rays(1, {}));
    CHECK(d.fiber_ranks[origin] == 1);    // circle fiber over the origin
    CHECK(d.fiber_ranks[dense] == 0);
    CHECK(stratum_dim(m, origin) == 0);
    CHECK(stratum_dim(m, dense) == 1);
}

TEST_CASE("projective line with both boundary points: interval times circle") {
    Polytope seg = polytope_from_points(1, {rv({0}), rv({1})});
    auto m = toric_model_projective(seg);
    auto d = kn_descriptor(m);
    CHECK(d.torus_rank == 1);
    REQUIRE(d.base_polytope.has_value());
    CHECK(d.base_polytope->vertices.size() == 2);
    REQUIRE(d.fiber_ranks.size() == 3);
    // rank 1 over each endpoint stratum, 0 over the dense orbit:
    // total space is the interval times a circle
    size_t dense = stratum_of(m, cone_from_rays(1, {}));
    CHECK(d.fiber_ranks[dense] == 0);
    int rank_one = 0;
    for (size_t i = 0; i < d.fiber_ranks.size(); ++i)
        if (i != dense) {
            CHECK(d.fiber_ranks[i] == 1);
            ++rank_one;
        }
    CHECK(rank_one == 2);
}

TEST_CASE("projective plane strata ranks") {
    Polytope tri = polytope_from_points(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
    auto m = toric_model_projective(tri);
    CHECK(stratum_count(m) == 7);   // 1 dense + 3 curves + 3 fixed points
    auto d = kn_descriptor(m);
    CHECK(d.torus_rank == 2);
    std::map<size_t, int> by_rank;
    for (size_t i = 0; i < stratum_count(m); ++i) {
        size_t r = kn_fiber_rank(m, i);
        by_rank[r]++;
        CHECK(r == m.n - stratum_dim(m, i));   // rank = codimension here
    }
    CHECK(by_rank[0] == 1);   // dense orbit only
    CHECK(by_rank[1] == 3);   // boundary curves
    CHECK(by_rank[2] == 3);   // fixed points
}

TEST_CASE("trivial structure: dense torus has rank zero everywhere") {
    auto m = toric_model_affine(cone_from_rays(3, {}));
    auto d = kn_descriptor(m);
    REQUIRE(d.fiber_ranks.size() == 1);
    CHECK(d.fiber_ranks[0] == 0);
    CHECK(d.torus_rank == 3);
}

TEST_CASE("rank vanishes exactly on the dense orbit") {
    Polytope sq = polytope_from_points(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
    for (auto m : {toric_model_projective(sq),
                   toric_model_affine(cone_from_rays(2, {v2(1, 0), v2(1, 2)}))}) {
        size_t zero_count = 0;
        for (size_t i = 0; i < stratum_count(m); ++i) {
            size_t r = kn_fiber_rank(m, i);
            if (r == 0) {
                ++zero_count;
                CHECK(cone_dim(m.fan.cones[i]) == 0);
            }
        }
        CHECK(zero_count == 1);
    }
}

TEST_CASE("affine model rejects cones with invertible directions") {
    CHECK_THROWS_AS(toric_model_affine(cone_from_halfspaces(2, {v2(1, 0)}, {})), std::invalid_argument);
}

TEST_CASE("randomized smooth strata match the codimension oracle") {
    std::mt19937 rng(20240817);
    auto rnd = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = static_cast<size_t>(rnd(2, 4));
        // random unimodular matrix via shear and swap moves
        IntMat u = IntMat::identity(n);
        for (int step = 0; step < 8; ++step) {
            size_t i = static_cast<size_t>(rnd(0, static_cast<int>(n) - 1));
            size_t j = static_cast<size_t>(rnd(0, static_cast<int>(n) - 1));
            if (i == j) continue;
            int c = rnd(-1, 1);
            for (size_t col = 0; col < n; ++col) u.at(i, col) += Int(c) * u.at(j, col);
        }
        size_t k = static_cast<size_t>(rnd(1, static_cast<int>(n)));
        std::vector<IntVec> rays;
        for (size_t j = 0; j < k; ++j) rays.push_back(u.col(j));
        Cone sigma = cone_from_rays(n, rays);   // smooth k-dimensional cone
        auto m = toric_model_affine(sigma);
        size_t idx = stratum_of(m, sigma);
        // oracle: over the smooth stratum of a k-dim cone the fiber is T^k
        CHECK(kn_fiber_rank(m, idx) == k);
        CHECK(stratum_dim(m, idx) == n - k);
        // and the sharpened chart there is free of rank k
        auto g = ghost_stalk_toric(sigma);
        CHECK(g.generators.size() == k);
        CHECK(g.relation_basis.empty());
    }
}
