#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdeg/cone.hpp"

using namespace tdeg;

static IntVec iv(std::initializer_list<long long> v) {
    IntVec x;
    for (auto a : v) x.push_back(Int(a));
    return x;
}

TEST_CASE("positive orthant") {
    Cone c = cone_from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
    CHECK(c.rays.size() == 3);
    CHECK(c.normals.size() == 3);
    CHECK(c.equations.empty());
    CHECK(cone_is_pointed(c));
    CHECK(cone_dim(c) == 3);
    CHECK(cone_contains(c, iv({2, 3, 0})));
    CHECK_FALSE(cone_contains(c, iv({-1, 0, 0})));
    CHECK(cone_contains_relint(c, RatVec{Rat(1), Rat(1, 2), Rat(3)}));
    CHECK_FALSE(cone_contains_relint(c, RatVec{Rat(1), Rat(0), Rat(3)}));

    // redundant interior generator is dropped from the extreme rays
    Cone c2 = cone_from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({1, 1, 1}),
                                 iv({2, 0, 0})});
    CHECK(cone_equals(c, c2));
    CHECK(c2.rays.size() == 3);
}

TEST_CASE("vertex cone over the quadric surface singularity") {
    // rays of the cone whose affine toric variety is the conifold xy = zw
    std::vector<IntVec> rays = {iv({0, 1, 0}), iv({-1, 0, 1}), iv({0, -1, 1}), iv({1, 0, 0})};
    Cone c = cone_from_rays(3, rays);
    CHECK(cone_dim(c) == 3);
    CHECK(cone_is_pointed(c));
    CHECK(c.rays.size() == 4);
    CHECK(c.normals.size() == 4);

    Cone d = dual_cone(c);
    REQUIRE(d.rays.size() == 4);
    CHECK(d.rays[0] == iv({0, 0, 1}));
    CHECK(d.rays[1] == iv({0, 1, 1}));
    CHECK(d.rays[2] == iv({1, 0, 1}));
    CHECK(d.rays[3] == iv({1, 1, 1}));
    CHECK(cone_is_pointed(d));

    // biduality
    CHECK(cone_equals(dual_cone(d), c));

    CHECK(sum_of_primitive_rays(c) == iv({0, 0, 2}));
}

TEST_CASE("lower-dimensional cones") {
    Cone c = cone_from_rays(3, {iv({1, 1, 0})});
    CHECK(cone_dim(c) == 1);
    CHECK(c.equations.size() == 2);
    CHECK(cone_is_pointed(c));
    CHECK(c.rays.size() == 1);
    CHECK(c.rays[0] == iv({1, 1, 0}));
    CHECK(cone_contains(c, iv({3, 3, 0})));
    CHECK_FALSE(cone_contains(c, iv({-1, -1, 0})));
    CHECK_FALSE(cone_contains(c, iv({1, 0, 0})));
    CHECK_FALSE(cone_contains(c, iv({1, 1, 1})));

    // its dual is a non-pointed full-dimensional cone
    Cone d = dual_cone(c);
    CHECK(cone_dim(d) == 3);
    CHECK_FALSE(cone_is_pointed(d));
    CHECK(d.lineality.size() == 2);
    CHECK(cone_contains(d, iv({1, 0, 0})));
    CHECK_FALSE(cone_contains(d, iv({-1, 0, 0})));
}

TEST_CASE("halfplane: lineality detected") {
    Cone c = cone_from_halfspaces(2, {iv({0, 1})}, {});
    CHECK(cone_dim(c) == 2);
    CHECK_FALSE(cone_is_pointed(c));
    CHECK(c.lineality.size() == 1);
    CHECK(c.rays.size() == 1);
    CHECK(cone_contains(c, iv({-7, 0})));
    CHECK(cone_contains(c, iv({7, 3})));
    CHECK_FALSE(cone_contains(c, iv({0, -1})));

    // generator form round trip
    std::vector<IntVec> gens = c.rays;
    for (const auto& l : c.lineality) {
        gens.push_back(l);
        gens.push_back(neg(l));
    }
    CHECK(cone_equals(c, cone_from_rays(2, gens)));
}

TEST_CASE("trivial and full cones are dual to each other") {
    Cone zero = cone_from_rays(2, {});
    CHECK(cone_dim(zero) == 0);
    CHECK(zero.equations.size() == 2);
    CHECK(cone_contains(zero, iv({0, 0})));
    CHECK_FALSE(cone_contains(zero, iv({1, 0})));

    Cone all = dual_cone(zero);
    CHECK(cone_dim(all) == 2);
    CHECK(all.normals.empty());
    CHECK(all.lineality.size() == 2);
    CHECK(cone_contains(all, iv({-5, 17})));

    CHECK(cone_equals(dual_cone(all), zero));
}

TEST_CASE("halfspace form round trip") {
    Cone c = cone_from_halfspaces(2, {iv({1, 0}), iv({0, 1})}, {});
    CHECK(c.rays.size() == 2);
    CHECK(cone_equals(c, cone_from_rays(2, {iv({1, 0}), iv({0, 1})})));

    // redundant inequality is dropped
    Cone c2 = cone_from_halfspaces(2, {iv({1, 0}), iv({0, 1}), iv({1, 1})}, {});
    CHECK(cone_equals(c, c2));
    CHECK(c2.normals.size() == 2);

    // with an equation
    Cone e = cone_from_halfspaces(3, {iv({1, 0, 0})}, {iv({0, 0, 1})});
    CHECK(cone_dim(e) == 2);
    CHECK(cone_contains(e, iv({1, 5, 0})));
    CHECK(cone_contains(e, iv({1, -5, 0})));
    CHECK_FALSE(cone_contains(e, iv({1, 0, 1})));
    CHECK_FALSE(cone_contains(e, iv({-1, 0, 0})));
}

TEST_CASE("intersection") {
    Cone orthant = cone_from_rays(2, {iv({1, 0}), iv({0, 1})});
    Cone left = cone_from_halfspaces(2, {iv({-1, 0})}, {});
    Cone i = cone_intersect(orthant, left);
    CHECK(cone_dim(i) == 1);
    REQUIRE(i.rays.size() == 1);
    CHECK(i.rays[0] == iv({0, 1}));
}

TEST_CASE("faces") {
    Cone orthant = cone_from_rays(2, {iv({1, 0}), iv({0, 1})});
    auto faces = cone_faces(orthant);
    CHECK(faces.size() == 4);   // {0}, two rays, the cone itself

    CHECK(is_face_of(orthant, cone_from_rays(2, {iv({1, 0})})));
    CHECK(is_face_of(orthant, cone_from_rays(2, {})));
    CHECK(is_face_of(orthant, orthant));
    // interior ray is a subcone but not a face
    CHECK_FALSE(is_face_of(orthant, cone_from_rays(2, {iv({1, 1})})));
    // not even a subcone
    CHECK_FALSE(is_face_of(orthant, cone_from_rays(2, {iv({-1, 0})})));

    // quadric vertex cone: 4 facets, 4 edges, apex, itself
    std::vector<IntVec> rays = {iv({0, 1, 0}), iv({-1, 0, 1}), iv({0, -1, 1}), iv({1, 0, 0})};
    Cone c = cone_from_rays(3, rays);
    CHECK(cone_faces(c).size() == 10);
    for (const auto& r : rays) CHECK(is_face_of(c, cone_from_rays(3, {r})));
}
