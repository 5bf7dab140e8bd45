#include <doctest.h>

#include <string>

#include "subdeg/errors.hpp"
#include "subdeg/expr.hpp"
#include "subdeg/isomorphism.hpp"

using namespace subdeg;

TEST_CASE("atoms parse and print back") {
    for (const char* text : {"Z12", "D8", "S4", "A5", "ZM(3,2,2)", "Z2xZ2xZ2", "S3xZ5",
                             "perm(3):(1 2),(1 3)", "perm(10):(1 10)"}) {
        GroupExpr e = parse_group_expr(text);
        CHECK(e.str() == text);
        CHECK(parse_group_expr(e.str()) == e);
    }

    GroupExpr e = parse_group_expr("  s3 X z5 ");
    REQUIRE(e.kind == GroupExpr::Kind::product);
    REQUIRE(e.factors.size() == 2);
    CHECK(e.factors[0].kind == GroupExpr::Kind::symmetric);
    CHECK(e.factors[1].kind == GroupExpr::Kind::cyclic);
    CHECK(e.str() == "S3xZ5");

    GroupExpr zm = parse_group_expr("zm(5,4,2)");
    CHECK(zm.kind == GroupExpr::Kind::zm);
    CHECK(zm.a == 5);
}

TEST_CASE("malformed expressions fail with a position") {
    for (const char* text :
         {"", "Q5", "Z", "D7", "D2", "S7", "S0", "A1", "A9", "ZM(4,2,3)", "ZM(3,2)", "S3x",
          "S3 Z5", "Z1234567890123", "perm(3):(1 2", "perm(3):(1 7)", "perm(3):(1 1)",
          "perm(0):(1)", "perm(17):(1 2)", "perm(3):", "x", "3"}) {
        try {
            parse_group_expr(text);
            FAIL_CHECK("no error for: " << text);
        } catch (const usage_error& err) {
            CHECK(std::string(err.what()).rfind("position ", 0) == 0);
        }
    }
}

TEST_CASE("realization") {
    CHECK(realize_expr(parse_group_expr("Z6"), 720).order == 6);
    CHECK(realize_expr(parse_group_expr("S3xZ5"), 720).order == 30);
    CHECK(are_isomorphic(realize_expr(parse_group_expr("perm(3):(1 2),(1 3)"), 720),
                         realize_expr(parse_group_expr("S3"), 720)));
    CHECK(realize_expr(parse_group_expr("perm(4):(1 2 3 4)"), 720).order == 4);
    CHECK(realize_expr(parse_group_expr("S6"), 720).order == 720);

    CHECK_THROWS_AS(realize_expr(parse_group_expr("S6"), 719), cap_error);
    CHECK_THROWS_AS(realize_expr(parse_group_expr("Z1000"), 720), cap_error);
    CHECK_THROWS_AS(realize_expr(parse_group_expr("Z24xZ24xZ24"), 720), cap_error);
}

TEST_CASE("selectors resolve against the lattice") {
    GroupExpr e = parse_group_expr("S4");
    GroupTable g = realize_expr(e, 720);
    Lattice lat = enumerate_subgroups(g);

    CHECK(resolve_selector("0", e, g, lat) == 0);
    CHECK(resolve_selector("29", e, g, lat) == 29);
    CHECK(resolve_selector("trivial", e, g, lat) == lat.trivial_index);
    CHECK(resolve_selector("whole", e, g, lat) == lat.whole_index);

    int alt = resolve_selector("alternating", e, g, lat);
    CHECK(lat.sizes[alt] == 12);

    int cls = resolve_selector("class:1.0", e, g, lat);
    CHECK(lat.class_of[cls] == 1);
    CHECK(resolve_selector("class:0.0", e, g, lat) == lat.trivial_index);

    int klein = resolve_selector("gens:(1 2),(3 4)", e, g, lat);
    CHECK(lat.sizes[klein] == 4);

    int again = resolve_selector("elems:" + std::to_string(lat.elems[klein][1]) + "," +
                                     std::to_string(lat.elems[klein][2]),
                                 e, g, lat);
    CHECK(again == klein);

    CHECK_THROWS_AS(resolve_selector("99", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("class:99.0", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("class:1.99", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("x", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("a", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("gens:(9 9)", e, g, lat), usage_error);
    CHECK_THROWS_AS(resolve_selector("bogus", e, g, lat), usage_error);
}

TEST_CASE("generator selectors on dihedral and metacyclic atoms") {
    GroupExpr de = parse_group_expr("D8");
    GroupTable d8 = realize_expr(de, 720);
    Lattice dl = enumerate_subgroups(d8);
    int x = resolve_selector("x", de, d8, dl);
    int y = resolve_selector("y", de, d8, dl);
    int xy = resolve_selector("xy", de, d8, dl);
    CHECK(dl.sizes[x] == 4);
    CHECK(dl.sizes[y] == 2);
    CHECK(dl.sizes[xy] == 2);
    CHECK(y != xy);

    GroupExpr ze = parse_group_expr("ZM(3,2,2)");
    GroupTable zg = realize_expr(ze, 720);
    Lattice zl = enumerate_subgroups(zg);
    CHECK(zl.sizes[resolve_selector("a", ze, zg, zl)] == 3);
    CHECK(zl.sizes[resolve_selector("b", ze, zg, zl)] == 2);
    CHECK_THROWS_AS(resolve_selector("alternating", ze, zg, zl), usage_error);
}
