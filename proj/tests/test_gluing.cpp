#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdeg/gluing.hpp"
#include "tdeg/transport.hpp"

#include <random>

using namespace tdeg;

static RatVec rv(std::initializer_list<long long> v) {
    RatVec x;
    for (auto a : v) x.push_back(Rat(a));
    return x;
}

static Polytope tetrahedron() {
    return polytope_from_points(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
}

static Polytope square() {
    return polytope_from_points(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
}

// torus element exp(vec log z): component i is z^{vec_i}
static TorusElement pure_tensor(const IntVec& vec, const CStarValue& z) {
    TorusElement s(vec.size(), cstar(1));
    for (size_t i = 0; i < vec.size(); ++i) s[i] = cstar_pow(z, vec[i]);
    return s;
}

static CStarValue random_component(std::mt19937& rng) {
    switch (rng() % 4) {
        case 0: return cstar(2);
        case 1: return cstar(3);
        case 2: return cstar(Rat(1, 2), Rat(0));
        default: return cstar(0, 1);   // i
    }
}

static std::vector<TorusElement> random_cochain(const PolyCellComplex& c, std::mt19937& rng) {
    std::vector<TorusElement> t(c.cells.size());
    for (auto& s : t) {
        s.resize(c.dim);
        for (size_t i = 0; i < c.dim; ++i) s[i] = random_component(rng);
    }
    return t;
}

TEST_CASE("exact coefficient arithmetic") {
    CStarValue i = cstar(0, 1);
    CHECK(cstar_mul(i, i) == cstar(-1));
    CHECK(cstar_pow(i, 4) == cstar(1));
    CHECK(cstar_pow(i, -1) == cstar(0, -1));
    CHECK(!cstar_is_one(cstar_pow(i, 2)));

    CStarValue third = cstar(Rat(1, 3), Rat(0));
    CHECK(cstar_mul(third, cstar(3)) == cstar(1));
    CHECK(cstar_inv(third) == cstar(3));
    CHECK(cstar_pow(cstar(2), 10) == cstar(1024));
    CHECK(cstar_pow(cstar(2), -3) == cstar(Rat(1, 8), Rat(0)));

    CStarValue mix = cstar(Rat(3, 5), Rat(4, 5));   // unit modulus, not a root of unity
    CHECK(cstar_mul(mix, cstar_inv(mix)) == cstar(1));
    CHECK_THROWS_AS((void)cstar_inv(CStarValue{Rat(0), Rat(0)}), std::invalid_argument);
}

TEST_CASE("torus transport is functorial") {
    std::mt19937 rng(7);
    IntMat a(2, 2), b(2, 2);
    a.at(0, 0) = 1; a.at(0, 1) = 2; a.at(1, 0) = 0; a.at(1, 1) = 1;
    b.at(0, 0) = 3; b.at(0, 1) = -1; b.at(1, 0) = 1; b.at(1, 1) = 0;
    for (int trial = 0; trial < 20; ++trial) {
        TorusElement s{random_component(rng), random_component(rng)};
        TorusElement one_step = torus_transport(b.mul(a), s);
        TorusElement two_step = torus_transport(b, torus_transport(a, s));
        CHECK(one_step == two_step);
    }
    TorusElement s{cstar(2), cstar(3)};
    CHECK(torus_transport(IntMat::identity(2), s) == s);
    CHECK(torus_mul(s, torus_inv(s)) == torus_identity(2));
}

TEST_CASE("tuple membership in the face subtorus") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    ChartSystem cs = build_chart_system(c, ix);
    size_t edge = ix.walls.front();
    size_t sigma = reference_cell(ix, edge, c.dim);
    const std::vector<size_t>& vs = ix.vertices_of[edge];
    REQUIRE(vs.size() == 2);

    IntVec dir = ix.embed.at({edge, sigma}).linear.col(0);

    SUBCASE("trivial tuple is a member") {
        PMTuple t;
        t.tau = edge;
        t.sigma = sigma;
        for (size_t v : vs) t.values[v] = torus_identity(2);
        CHECK(pm_membership(c, ix, t).member);
    }

    SUBCASE("ratios along the edge direction are members") {
        PMTuple t;
        t.tau = edge;
        t.sigma = sigma;
        t.values[vs[0]] = pure_tensor(dir, cstar(5));
        t.values[vs[1]] = torus_identity(2);
        CHECK(pm_membership(c, ix, t).member);
    }

    SUBCASE("transverse ratios escape and are reported") {
        WallFrame fr = wall_frame(c, ix, edge, sigma);
        PMTuple t;
        t.tau = edge;
        t.sigma = sigma;
        t.values[vs[0]] = pure_tensor(fr.conormal, cstar(2));
        t.values[vs[1]] = torus_identity(2);
        PMMembershipReport rep = pm_membership(c, ix, t);
        CHECK(!rep.member);
        CHECK(rep.omega == edge);
        CHECK(((rep.v == vs[0] && rep.w == vs[1]) || (rep.v == vs[1] && rep.w == vs[0])));
    }

    SUBCASE("verdicts survive transport to the other reference cell") {
        const std::vector<size_t>& hs = ix.wall_hosts.at(edge);
        size_t other = hs[0] == sigma ? hs[1] : hs[0];
        IntMat move = inverse_unimodular(cs.to_root.at(other).linear)
                          .mul(cs.to_root.at(sigma).linear);
        for (int escaping = 0; escaping < 2; ++escaping) {
            PMTuple t;
            t.tau = edge;
            t.sigma = sigma;
            IntVec probe = escaping ? wall_frame(c, ix, edge, sigma).conormal : dir;
            t.values[vs[0]] = pure_tensor(probe, cstar(5));
            t.values[vs[1]] = torus_identity(2);
            PMTuple moved = t;
            moved.sigma = other;
            for (auto& [v, s] : moved.values) s = torus_transport(move, s);
            CHECK(pm_membership(c, ix, t).member == pm_membership(c, ix, moved).member);
        }
    }

    SUBCASE("a maximal-cell tuple is constrained by its edges") {
        size_t tri = ix.maximal.front();
        PMTuple t;
        t.tau = tri;
        t.sigma = tri;
        const std::vector<size_t>& tvs = ix.vertices_of[tri];
        REQUIRE(tvs.size() == 3);
        for (size_t v : tvs) t.values[v] = torus_identity(2);
        t.values[tvs[0]] = TorusElement{cstar(3), cstar(7)};
        PMMembershipReport rep = pm_membership(c, ix, t);
        CHECK(!rep.member);
        CHECK(ix.cell_dims[rep.omega] == 1);
    }
}

TEST_CASE("open gluing data composition") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    ChartSystem cs = build_chart_system(c, ix);
    CHECK(cs.to_root.size() == 4);
    CHECK(cs.to_root.at(cs.root).is_identity());

    SUBCASE("trivial data is valid") {
        std::vector<TorusElement> ones(c.cells.size(), torus_identity(2));
        OpenGluingData g = open_gluing_from_cell_cochain(c, ix, cs, ones);
        CHECK(g.tuples.size() == ix.embed.size());
        GluingReport rep = check_open_gluing(c, ix, cs, g);
        for (const GluingViolation& v : rep.violations) MESSAGE(v.check, ": ", v.detail);
        CHECK(rep.ok);
    }

    SUBCASE("data induced from a cochain is valid") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 10; ++trial) {
            OpenGluingData g = open_gluing_from_cell_cochain(c, ix, cs, random_cochain(c, rng));
            CHECK(check_open_gluing(c, ix, cs, g).ok);
        }
    }

    SUBCASE("a perturbed tuple breaks composition where it sits") {
        std::mt19937 rng(13);
        OpenGluingData g = open_gluing_from_cell_cochain(c, ix, cs, random_cochain(c, rng));
        // perturb the tuple of one vertex-in-triangle inclusion
        for (auto& [e, tup] : g.tuples) {
            if (ix.cell_dims[e.first] == 0 && ix.cell_dims[e.second] == 2) {
                for (auto& [v, s] : tup.values) s = torus_mul(s, TorusElement{cstar(2), cstar(1)});
                break;
            }
        }
        GluingReport rep = check_open_gluing(c, ix, cs, g);
        CHECK(!rep.ok);
        bool composition = false;
        for (const GluingViolation& v : rep.violations) composition |= v.check == "composition";
        CHECK(composition);
    }

    SUBCASE("missing tuples are reported as shape errors") {
        std::vector<TorusElement> ones(c.cells.size(), torus_identity(2));
        OpenGluingData g = open_gluing_from_cell_cochain(c, ix, cs, ones);
        g.tuples.erase(g.tuples.begin());
        GluingReport rep = check_open_gluing(c, ix, cs, g);
        CHECK(!rep.ok);
        CHECK(rep.violations.front().check == "shape");
    }
}

TEST_CASE("lifted cocycles on the tetrahedron nerve") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    ChartSystem cs = build_chart_system(c, ix);

    SUBCASE("the trivial cochain is a coboundary with constant trivialization") {
        LiftedGluingData l;
        for (const auto& kv : ix.embed) l.sections[kv.first] = torus_identity(2);
        CHECK(l.sections.size() == 36);
        CHECK(check_lifted_cocycle(c, ix, cs, l).ok);
        CoboundaryReport cb = is_coboundary(c, ix, cs, l);
        CHECK(cb.coboundary);
        for (const TorusElement& t : cb.cochain) CHECK(torus_is_identity(t));
    }

    SUBCASE("random coboundaries are cocycles and trivialize back") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<TorusElement> t = random_cochain(c, rng);
            LiftedGluingData l = coboundary_of(c, ix, cs, t);
            GluingReport rep = check_lifted_cocycle(c, ix, cs, l);
            for (const GluingViolation& v : rep.violations) MESSAGE(v.check, ": ", v.detail);
            REQUIRE(rep.ok);
            CoboundaryReport cb = is_coboundary(c, ix, cs, l);
            REQUIRE(cb.coboundary);
            // the recovered cochain induces the same coboundary
            LiftedGluingData back = coboundary_of(c, ix, cs, cb.cochain);
            REQUIRE(back.sections == l.sections);
        }
    }

    SUBCASE("single-edge perturbations are never coboundaries") {
        std::mt19937 rng(19);
        std::vector<TorusElement> t = random_cochain(c, rng);
        LiftedGluingData base = coboundary_of(c, ix, cs, t);
        size_t checked = 0;
        for (const auto& kv : base.sections) {
            LiftedGluingData l = base;
            TorusElement& s = l.sections.at(kv.first);
            s[0] = cstar_mul(s[0], cstar(2));
            CHECK(!is_coboundary(c, ix, cs, l).coboundary);
            ++checked;
        }
        CHECK(checked == 36);
    }

    SUBCASE("a perturbed triple is reported as a cocycle failure") {
        LiftedGluingData l;
        for (const auto& kv : ix.embed) l.sections[kv.first] = torus_identity(2);
        // find a chain v < edge < triangle and scale the long edge section
        for (const auto& kv : ix.embed) {
            if (ix.cell_dims[kv.first.first] == 0 && ix.cell_dims[kv.first.second] == 2) {
                l.sections.at(kv.first)[0] = cstar(2);
                break;
            }
        }
        GluingReport rep = check_lifted_cocycle(c, ix, cs, l);
        CHECK(!rep.ok);
        bool cocycle = false;
        for (const GluingViolation& v : rep.violations) cocycle |= v.check == "cocycle";
        CHECK(cocycle);
    }

    SUBCASE("coboundary verdicts are invariant under multiplying by a coboundary") {
        std::mt19937 rng(23);
        LiftedGluingData base;
        for (const auto& kv : ix.embed) base.sections[kv.first] = torus_identity(2);
        base.sections.begin()->second[0] = cstar(3);   // obstructed somewhere
        bool verdict = is_coboundary(c, ix, cs, base).coboundary;
        CHECK(!verdict);
        for (int trial = 0; trial < 5; ++trial) {
            LiftedGluingData shifted = coboundary_of(c, ix, cs, random_cochain(c, rng));
            LiftedGluingData mixed;
            for (const auto& kv : base.sections)
                mixed.sections[kv.first] = torus_mul(kv.second, shifted.sections.at(kv.first));
            CHECK(is_coboundary(c, ix, cs, mixed).coboundary == verdict);
        }
    }
}

TEST_CASE("the square-boundary nerve has an essential one-cycle") {
    PolyCellComplex c = build_boundary_complex(square());
    ComplexIndex ix = build_index(c);
    ChartSystem cs = build_chart_system(c, ix);
    CHECK(ix.embed.size() == 8);   // an octagon: no chains of length three

    LiftedGluingData l;
    for (const auto& kv : ix.embed) l.sections[kv.first] = torus_identity(1);
    l.sections.begin()->second[0] = cstar(2);

    // with no triples every cochain is a cocycle, but the loop obstructs
    GluingReport rep = check_lifted_cocycle(c, ix, cs, l);
    CHECK(rep.ok);
    CoboundaryReport cb = is_coboundary(c, ix, cs, l);
    CHECK(!cb.coboundary);
    CHECK(cb.detail.find("obstructed") != std::string::npos);
}

TEST_CASE("sections must be invariant around visible marked points") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    size_t edge = ix.walls.front();
    Rat lo = c.cells[edge].vertices.front()[0], hi = c.cells[edge].vertices.back()[0];
    if (lo > hi) std::swap(lo, hi);

    // one visible marked point on the low half of a single wall
    MarkedPoint mp;
    mp.position = lo + (hi - lo) / 8;
    mp.charge = 1;
    c.marks[edge].push_back(mp);
    ComplexIndex ix2 = build_index(c);
    ChartSystem cs = build_chart_system(c, ix2);

    size_t sr = reference_cell(ix2, edge, c.dim);
    WallFrame fr = wall_frame(c, ix2, edge, sr);
    size_t vlow = fr.low_vertex, vhigh = fr.high_vertex;

    LiftedGluingData l;
    for (const auto& kv : ix2.embed) l.sections[kv.first] = torus_identity(2);
    CHECK(check_lifted_cocycle(c, ix2, cs, l).ok);

    // a section pairing nontrivially with the conormal at the visible edge
    auto pairing_section = [&](const CStarValue& z) { return pure_tensor(fr.conormal, z); };

    SUBCASE("the low vertex sees the point") {
        l.sections.at({vlow, edge}) = pairing_section(cstar(2));
        GluingReport rep = check_lifted_cocycle(c, ix2, cs, l);
        CHECK(!rep.ok);
        bool invariance = false;
        for (const GluingViolation& v : rep.violations)
            invariance |= v.check == "monodromy-invariance";
        CHECK(invariance);
    }

    SUBCASE("the high vertex does not see the point") {
        l.sections.at({vhigh, edge}) = pairing_section(cstar(2));
        GluingReport rep = check_lifted_cocycle(c, ix2, cs, l);
        for (const GluingViolation& v : rep.violations)
            CHECK(v.check != "monodromy-invariance");
    }

    SUBCASE("roots of unity matching the charge are invariant") {
        c.marks[edge][0].charge = 4;
        ComplexIndex ix3 = build_index(c);
        LiftedGluingData l4;
        for (const auto& kv : ix3.embed) l4.sections[kv.first] = torus_identity(2);
        l4.sections.at({vlow, edge}) = pairing_section(cstar(0, 1));   // i, and i^4 = 1
        bool invariance = false;
        for (const GluingViolation& v : check_lifted_cocycle(c, ix3, cs, l4).violations)
            invariance |= v.check == "monodromy-invariance";
        CHECK(!invariance);

        c.marks[edge][0].charge = 2;   // i^2 = -1: now obstructed
        ComplexIndex ix4 = build_index(c);
        invariance = false;
        for (const GluingViolation& v : check_lifted_cocycle(c, ix4, cs, l4).violations)
            invariance |= v.check == "monodromy-invariance";
        CHECK(invariance);
    }
}
