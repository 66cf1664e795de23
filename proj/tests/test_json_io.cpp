#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdeg/digest.hpp"
#include "tdeg/json_io.hpp"

#include <string>

using namespace tdeg;

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // One message long enough to need two final blocks (56 <= len % 64 < 64).
    CHECK(sha256_hex(std::string(56, 'a')) ==
          "b35439a4ac6f0948b6d6f9e3c6af0f5f590ce20f1bde7090ef7970686ec6738a");
    CHECK(sha256_hex(std::string(1000, 'x')) ==
          "44f8354494a5ba03ba1792a8d3e9c534c47a9181980fde7a3f44b06ef2ae7c7f");
}

TEST_CASE("integers and rationals round-trip through strings") {
    for (const char* s : {"0", "1", "-1", "123456789012345678901234567890"}) {
        Int v(s);
        CHECK(int_of_json(json_of_int(v), "x") == v);
    }
    CHECK(int_of_json(Json(7), "x") == Int(7));
    CHECK_THROWS_AS(int_of_json(Json("3/4"), "x"), InputError);
    CHECK_THROWS_AS(int_of_json(Json(1.5), "x"), InputError);

    for (const char* s : {"0", "-7", "3/4", "-22/7"}) {
        Rat v = rat_from_string(s);
        CHECK(rat_of_json(json_of_rat(v), "x") == v);
    }
    CHECK(rat_of_json(Json(5), "x") == Rat(5));
    CHECK_THROWS_AS(rat_of_json(Json("1/0"), "x"), InputError);
}

TEST_CASE("matrices and affine maps round-trip") {
    IntMat m(2, 3);
    int k = 1;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 3; ++j) m.at(i, j) = Int(k++) * Int(i == j ? -1 : 1);
    IntMat m2 = mat_of_json(json_of_mat(m), "m");
    CHECK(m2.rows == m.rows);
    CHECK(m2.cols == m.cols);
    CHECK(m2.a == m.a);

    AffineMapZ f;
    f.linear = m;
    f.translation = {Int(4), Int(-5)};
    AffineMapZ f2 = affine_of_json(json_of_affine(f), "f");
    CHECK(f2.linear.a == f.linear.a);
    CHECK(f2.translation == f.translation);

    Json bad = json_of_affine(f);
    bad["translation"] = Json::array({"1"});
    CHECK_THROWS_AS(affine_of_json(bad, "f"), InputError);
}

TEST_CASE("cones round-trip from both generator and halfspace form") {
    Cone c = cone_from_rays(3, {{Int(1), Int(0), Int(0)},
                                {Int(0), Int(1), Int(0)},
                                {Int(1), Int(1), Int(2)}});
    Cone c2 = cone_of_json(json_of_cone(c), "c");
    CHECK(c2.rays == c.rays);
    CHECK(c2.normals == c.normals);

    // Parsing the same cone from its halfspace description gives the same rays.
    Json h{{"n", 3}, {"normals", json_of_cone(c)["normals"]},
           {"equations", json_of_cone(c)["equations"]}};
    Cone c3 = cone_of_json(h, "c");
    CHECK(c3.rays == c.rays);

    Cone line = cone_from_rays(2, {{Int(1), Int(2)}, {Int(-1), Int(-2)}});
    Cone line2 = cone_of_json(json_of_cone(line), "c");
    CHECK(line2.lineality == line.lineality);

    CHECK_THROWS_AS(cone_of_json(Json{{"n", 2}}, "c"), InputError);
}

TEST_CASE("polytopes and fans round-trip") {
    Polytope p = polytope_from_points(
        2, {{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(0), Rat(4)}, {Rat(1), Rat(1)}});
    Polytope p2 = polytope_of_json(json_of_polytope(p), "p");
    CHECK(p2.vertices == p.vertices);
    CHECK(p2.facets == p.facets);

    Fan f = normal_fan(p);
    Fan f2 = fan_of_json(json_of_fan(f), "f");
    REQUIRE(f2.cones.size() == f.cones.size());
    for (size_t i = 0; i < f.cones.size(); ++i) CHECK(f2.cones[i].rays == f.cones[i].rays);
}

TEST_CASE("presented monoids round-trip and reject negative exponents") {
    PresentedMonoid m;
    m.gens = 4;
    m.rels.push_back({{Int(1), Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1), Int(1)}});
    PresentedMonoid m2 = presented_monoid_of_json(json_of_presented_monoid(m), "m");
    CHECK(m2.gens == m.gens);
    CHECK(m2.rels == m.rels);

    Json bad = json_of_presented_monoid(m);
    bad["relations"][0]["lhs"][0] = "-1";
    CHECK_THROWS_AS(presented_monoid_of_json(bad, "m"), InputError);
}

TEST_CASE("complexes round-trip with marks and vertex fans") {
    PolyCellComplex c = build_wall_neighborhood_model(
        4, {{Rat(1), Int(1)}, {Rat(3), Int(1)}}, Int(2));
    PolyCellComplex c2 = complex_of_json(json_of_complex(c), "c");
    CHECK(c2.dim == c.dim);
    REQUIRE(c2.cells.size() == c.cells.size());
    for (size_t i = 0; i < c.cells.size(); ++i)
        CHECK(c2.cells[i].vertices == c.cells[i].vertices);
    REQUIRE(c2.inclusions.size() == c.inclusions.size());
    for (size_t i = 0; i < c.inclusions.size(); ++i) {
        CHECK(c2.inclusions[i].face == c.inclusions[i].face);
        CHECK(c2.inclusions[i].host == c.inclusions[i].host);
        CHECK(c2.inclusions[i].embed.linear.a == c.inclusions[i].embed.linear.a);
        CHECK(c2.inclusions[i].embed.translation == c.inclusions[i].embed.translation);
    }
    REQUIRE(c2.marks.size() == c.marks.size());
    for (size_t i = 0; i < c.marks.size(); ++i) {
        REQUIRE(c2.marks[i].size() == c.marks[i].size());
        for (size_t k = 0; k < c.marks[i].size(); ++k) {
            CHECK(c2.marks[i][k].position == c.marks[i][k].position);
            CHECK(c2.marks[i][k].charge == c.marks[i][k].charge);
        }
    }
    REQUIRE(c2.vertex_fans.size() == c.vertex_fans.size());

    // The round-tripped complex behaves identically.
    CHECK(validate_complex(c2).ok == validate_complex(c).ok);
    ComplexIndex ix = build_index(c);
    ComplexIndex ix2 = build_index(c2);
    CHECK(kinks_from_monodromy(c2, ix2) == kinks_from_monodromy(c, ix));
}

TEST_CASE("gluing data round-trips") {
    PolyCellComplex c = build_wall_neighborhood_model(2, {}, Int(1));
    ComplexIndex ix = build_index(c);
    ChartSystem cs = build_chart_system(c, ix);
    std::vector<TorusElement> t(c.cells.size(), torus_identity(c.dim));
    t[ix.maximal[0]] = {CStarValue{Rat(2), Rat(0)}, CStarValue{Rat(1), Rat(3)}};
    OpenGluingData g = open_gluing_from_cell_cochain(c, ix, cs, t);
    OpenGluingData g2 = open_gluing_of_json(json_of_open_gluing(g), "g");
    REQUIRE(g2.tuples.size() == g.tuples.size());
    for (const auto& [edge, tup] : g.tuples) {
        REQUIRE(g2.tuples.count(edge) == 1);
        const PMTuple& t2 = g2.tuples.at(edge);
        CHECK(t2.tau == tup.tau);
        CHECK(t2.sigma == tup.sigma);
        REQUIRE(t2.values.size() == tup.values.size());
        for (const auto& [v, s] : tup.values) {
            REQUIRE(t2.values.count(v) == 1);
            REQUIRE(t2.values.at(v).size() == s.size());
            for (size_t k = 0; k < s.size(); ++k) {
                CHECK(t2.values.at(v)[k].re == s[k].re);
                CHECK(t2.values.at(v)[k].im == s[k].im);
            }
        }
    }

    LiftedGluingData l = coboundary_of(c, ix, cs, t);
    LiftedGluingData l2 = lifted_gluing_of_json(json_of_lifted_gluing(l), "l");
    REQUIRE(l2.sections.size() == l.sections.size());
    for (const auto& [edge, s] : l.sections) {
        REQUIRE(l2.sections.count(edge) == 1);
        REQUIRE(l2.sections.at(edge).size() == s.size());
        for (size_t k = 0; k < s.size(); ++k) {
            CHECK(l2.sections.at(edge)[k].re == s[k].re);
            CHECK(l2.sections.at(edge)[k].im == s[k].im);
        }
    }

    Json bad = json_of_lifted_gluing(l);
    bad["sections"][0]["value"][0]["re"] = "0";
    bad["sections"][0]["value"][0]["im"] = "0";
    CHECK_THROWS_AS(lifted_gluing_of_json(bad, "l"), InputError);
}

// ---- command dispatch ---------------------------------------------------------------

static Json run_ok(const std::string& cmd, const Json& in, bool expect_pass = true) {
    CommandResult r = run_command_json(cmd, in.is_null() ? "" : in.dump(), true);
    CHECK(r.verdict_ok == expect_pass);
    Json env = Json::parse(r.report_json);
    CHECK(env["tool"] == "toricdeg");
    CHECK(env["version"] == tool_version());
    CHECK(env["command"] == cmd);
    CHECK(env["verdict"] == (expect_pass ? "pass" : "fail"));
    CHECK(env["input_digest"].get<std::string>().substr(0, 7) == "sha256:");
    CHECK(!env.contains("timing_ms"));
    return env["report"];
}

TEST_CASE("monoid classify command reports the conifold group") {
    Json in{{"gens", 4},
            {"relations", Json::array({Json{{"lhs", Json::array({"1", "1", "0", "0"})},
                                            {"rhs", Json::array({"0", "0", "1", "1"})}}})}};
    Json rep = run_ok("monoid.classify", in);
    CHECK(rep["kind"] == "presented");
    CHECK(rep["classification"]["integral"] == "yes");
    CHECK(rep["group"]["rank"] == 3);
    CHECK(rep["group"]["torsion"] == Json::array());
}

TEST_CASE("monoid hilbert command lists the dual basis of the conifold cone") {
    Json in{{"n", 3},
            {"rays", Json::array({Json::array({"0", "1", "0"}), Json::array({"-1", "0", "1"}),
                                  Json::array({"0", "-1", "1"}), Json::array({"1", "0", "0"})})}};
    Json dual = run_ok("cone.dual", in)["dual"];
    Json rep = run_ok("monoid.hilbert", dual);
    CHECK(rep["basis"].size() == 4);
    CHECK(rep["pointed"] == true);
}

TEST_CASE("cone dual command is self-dual on the first orthant") {
    Json in{{"n", 3},
            {"rays", Json::array({Json::array({"1", "0", "0"}), Json::array({"0", "1", "0"}),
                                  Json::array({"0", "0", "1"})})}};
    Json rep = run_ok("cone.dual", in);
    CHECK(rep["dual"]["rays"] == rep["cone"]["rays"]);
    CHECK(rep["dual"]["normals"] == rep["cone"]["normals"]);
}

TEST_CASE("kn describe command handles affine and projective inputs") {
    Json aff{{"cone", Json{{"n", 1}, {"rays", Json::array({Json::array({"1"})})}}}};
    Json rep = run_ok("kn.describe", aff);
    CHECK(rep["torus_rank"] == 1);
    CHECK(rep["projective"] == false);
    CHECK(rep.contains("base_cone"));
    bool saw_origin = false, saw_interior = false;
    for (const Json& s : rep["strata"]) {
        if (s["orbit_dim"] == 0) { CHECK(s["fiber_rank"] == 1); saw_origin = true; }
        if (s["orbit_dim"] == 1) { CHECK(s["fiber_rank"] == 0); saw_interior = true; }
    }
    CHECK(saw_origin);
    CHECK(saw_interior);

    Json proj{{"polytope",
               Json{{"n", 1}, {"vertices", Json::array({Json::array({"0"}), Json::array({"2"})})}}}};
    Json rep2 = run_ok("kn.describe", proj);
    CHECK(rep2["projective"] == true);
    CHECK(rep2.contains("base_polytope"));
}

static Json focus_focus_json() {
    PolyCellComplex c = build_wall_neighborhood_model(1, {{Rat(1, 2), Int(1)}}, Int(1));
    return json_of_complex(c);
}

TEST_CASE("complex commands validate, measure monodromy, and certify simplicity") {
    // A closed complex validates cleanly; the open local model around a wall
    // is honestly reported as failing the two-sided and completeness checks.
    Polytope simplex = polytope_from_points(3, {{Rat(0), Rat(0), Rat(0)},
                                                {Rat(1), Rat(0), Rat(0)},
                                                {Rat(0), Rat(1), Rat(0)},
                                                {Rat(0), Rat(0), Rat(1)}});
    Json closed = json_of_complex(build_boundary_complex(simplex));
    Json val = run_ok("complex.validate", closed);
    CHECK(val["ok"] == true);
    CHECK(val["violations"] == Json::array());

    Json ff = focus_focus_json();
    Json ffval = run_ok("complex.validate", ff, false);
    CHECK(ffval["ok"] == false);

    Json mon = run_ok("complex.monodromy", ff);
    CHECK(mon["all_decomposed"] == true);
    REQUIRE(mon["walls"].size() == 1);
    CHECK(mon["walls"][0]["kappa"] == "1");

    Json pos = run_ok("complex.positive", ff);
    CHECK(pos["positive"] == true);

    Json simp = run_ok("complex.simple-check", ff);
    CHECK(simp["simple"] == true);
    CHECK(simp["per_point_simple"] == true);

    // The closed complex balances with its latent kinks (value 4 on each of
    // the six walls); the open local model cannot balance at the wall's
    // boundary endpoints and says so.
    Json mpl = run_ok("complex.mpl-check", closed);
    CHECK(mpl["ok"] == true);
    size_t fours = 0;
    for (const Json& k : mpl["kinks"])
        if (k == "4") ++fours;
    CHECK(fours == 6);
    Json ffmpl = run_ok("complex.mpl-check", ff, false);
    CHECK(ffmpl["ok"] == false);
    CHECK(ffmpl["failing_cells"].size() == 2);
}

TEST_CASE("mpl-check accepts explicit kinks and fails on a broken assignment") {
    Polytope simplex = polytope_from_points(3, {{Rat(0), Rat(0), Rat(0)},
                                                {Rat(1), Rat(0), Rat(0)},
                                                {Rat(0), Rat(1), Rat(0)},
                                                {Rat(0), Rat(0), Rat(1)}});
    PolyCellComplex c = build_boundary_complex(simplex);
    ComplexIndex ix = build_index(c);
    Json in = json_of_complex(c);
    in["kinks"] = Json::array();
    for (size_t i = 0; i < c.cells.size(); ++i) in["kinks"].push_back("0");
    for (size_t w : ix.walls) in["kinks"][w] = "1";
    run_ok("complex.mpl-check", in);

    // Bumping one wall while its neighbors stay at one breaks the balance at
    // exactly that wall's two endpoints.
    in["kinks"][ix.walls.front()] = "2";
    Json rep = run_ok("complex.mpl-check", in, false);
    CHECK(rep["ok"] == false);
    CHECK(rep["failing_cells"].size() == 2);
}

TEST_CASE("gluing commands check cocycles and trivialize coboundaries") {
    PolyCellComplex c = build_wall_neighborhood_model(2, {}, Int(1));
    ComplexIndex ix = build_index(c);
    ChartSystem cs = build_chart_system(c, ix);
    std::vector<TorusElement> t(c.cells.size(), torus_identity(c.dim));
    t[ix.maximal[0]] = {CStarValue{Rat(0), Rat(1)}, CStarValue{Rat(-2), Rat(0)}};
    OpenGluingData g = open_gluing_from_cell_cochain(c, ix, cs, t);

    Json in{{"complex", json_of_complex(c)}, {"gluing", json_of_open_gluing(g)}};
    Json rep = run_ok("gluing.check", in);
    CHECK(rep["ok"] == true);

    LiftedGluingData l = coboundary_of(c, ix, cs, t);
    Json in2{{"complex", json_of_complex(c)}, {"gluing", json_of_lifted_gluing(l)}};
    Json rep2 = run_ok("gluing.trivialize", in2);
    CHECK(rep2["coboundary"] == true);

    // Perturb one section: detection, with the failure explained.
    auto first = l.sections.begin();
    first->second[0].re += 7;
    Json in3{{"complex", json_of_complex(c)}, {"gluing", json_of_lifted_gluing(l)}};
    Json rep3 = run_ok("gluing.trivialize", in3, false);
    CHECK(rep3["coboundary"] == false);
    CHECK(rep3["detail"] != "");
}

TEST_CASE("k3 run command emits the full pipeline report") {
    CommandResult r = run_command_json("k3.run", "", true);
    CHECK(r.verdict_ok);
    Json env = Json::parse(r.report_json);
    CHECK(env["verdict"] == "pass");
    CHECK(env["input_digest"] ==
          "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const Json& rep = env["report"];
    CHECK(rep["discriminant_count"] == 24);
    CHECK(rep["discriminant"].size() == 24);
    CHECK(rep["edges"].size() == 6);
    for (const Json& e : rep["edges"]) {
        CHECK(e["restriction"]["coefficients"] ==
              Json::array({"1", "0", "-7", "0", "1"}));
        CHECK(e["sturm_count"] == 4);
        CHECK(e["factorization"]["factors"].size() == 2);
    }
    CHECK(rep["fibration"]["euler_known"] == true);
    CHECK(rep["fibration"]["euler_total"] == "24");
    CHECK(rep["validity"]["ok"] == true);
    CHECK(rep["positivity"]["positive"] == true);
    CHECK(rep["mpl"]["ok"] == true);

    // The raw report string contains the headline count verbatim.
    CHECK(r.report_json.find("\"discriminant_count\": 24") != std::string::npos);
}

TEST_CASE("canonical runs are byte-identical and default runs carry timing") {
    Json in{{"n", 2},
            {"rays", Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})})}};
    CommandResult a = run_command_json("cone.dual", in.dump(), true);
    CommandResult b = run_command_json("cone.dual", in.dump(), true);
    CHECK(a.report_json == b.report_json);

    CommandResult t = run_command_json("cone.dual", in.dump(), false);
    Json env = Json::parse(t.report_json);
    CHECK(env.contains("timing_ms"));

    // Different input bytes change the digest even for an equivalent document.
    CommandResult c = run_command_json("cone.dual", in.dump() + " ", true);
    Json ea = Json::parse(a.report_json);
    Json ec = Json::parse(c.report_json);
    CHECK(ea["input_digest"] != ec["input_digest"]);
    CHECK(ea["report"] == ec["report"]);
}

TEST_CASE("malformed input raises a located InputError") {
    CHECK_THROWS_AS(run_command_json("cone.dual", "{not json", true), InputError);
    CHECK_THROWS_AS(run_command_json("cone.dual", "", true), InputError);
    CHECK_THROWS_AS(run_command_json("nope.cmd", "{}", true), InputError);
    try {
        run_command_json("monoid.hilbert", "{\"n\": 2}", true);
        CHECK(false);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("cone") != std::string::npos);
    }
    // A structurally valid document with out-of-range indices is an input error too.
    Json bad{{"dim", 1},
             {"cells", Json::array({Json{{"n", 0}, {"vertices", Json::array({Json::array()})}}})},
             {"inclusions", Json::array({Json{{"face", 0}, {"host", 5},
                                              {"map", Json{{"linear", Json{{"rows", 0}, {"cols", 0},
                                                                           {"entries", Json::array()}}},
                                                           {"translation", Json::array()}}}}})}};
    CHECK_THROWS_AS(run_command_json("complex.validate", bad.dump(), true), InputError);
}

TEST_CASE("csv export lists one discriminant point per row") {
    std::string csv = run_k3_csv();
    CHECK(csv.substr(0, csv.find("\r\n")) == "edge,root,momentum,charge,fiber_class");
    size_t rows = 0;
    for (size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2) ++rows;
    CHECK(rows == 25); // header + 24 points
    CHECK(csv.find("nodal-elliptic") != std::string::npos);
    CHECK(csv.find("(3 + sqrt(5))/2") != std::string::npos);

    std::string csv2 = run_k3_csv();
    CHECK(csv == csv2);
}
