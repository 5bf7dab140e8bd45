#include <doctest.h>

#include "subdeg/errors.hpp"
#include "subdeg/group.hpp"
#include "subdeg/isomorphism.hpp"
#include "subdeg/zm.hpp"

using namespace subdeg;

TEST_CASE("isomorphic pairs") {
    CHECK(are_isomorphic(make_dihedral(6), make_symmetric(3)));
    CHECK(are_isomorphic(make_cyclic(6), direct_product({make_cyclic(2), make_cyclic(3)})));
    CHECK(are_isomorphic(make_symmetric(4), make_symmetric(4)));
    CHECK(are_isomorphic(build_zm(validate_zm(3, 2, 2)), make_symmetric(3)));
    CHECK(are_isomorphic(build_zm(validate_zm(1, 8, 1)), make_cyclic(8)));
}

TEST_CASE("non-isomorphic pairs") {
    CHECK_FALSE(are_isomorphic(make_cyclic(4), direct_product({make_cyclic(2), make_cyclic(2)})));
    CHECK_FALSE(are_isomorphic(make_dihedral(8), make_cyclic(8)));
    CHECK_FALSE(are_isomorphic(make_dihedral(12), make_alternating(4)));
    CHECK_FALSE(are_isomorphic(make_cyclic(6), make_cyclic(7)));
    // same order, same abelian exponent profile split
    CHECK_FALSE(are_isomorphic(direct_product({make_cyclic(2), make_cyclic(4)}),
                               direct_product({make_cyclic(2), make_cyclic(2), make_cyclic(2)})));
}

TEST_CASE("order cap") {
    CHECK_THROWS_AS(are_isomorphic(make_cyclic(70), make_cyclic(70)), usage_error);
}

TEST_CASE("type labels") {
    CHECK(iso_type_label(make_cyclic(1)) == "Z1");
    CHECK(iso_type_label(make_cyclic(12)) == "Z12");
    CHECK(iso_type_label(direct_product({make_cyclic(2), make_cyclic(2)})) == "Z2xZ2");
    CHECK(iso_type_label(make_symmetric(3)) == "S3");
    CHECK(iso_type_label(make_dihedral(6)) == "S3");
    CHECK(iso_type_label(make_dihedral(8)) == "D8");
    CHECK(iso_type_label(make_dihedral(10)) == "D10");
    CHECK(iso_type_label(make_alternating(4)) == "A4");
    CHECK(iso_type_label(make_symmetric(4)) == "S4");
    CHECK(iso_type_label(make_alternating(5)) == "A5");
    CHECK(iso_type_label(direct_product({make_cyclic(2), make_cyclic(4)})) == "Z2xZ4");
    CHECK(iso_type_label(direct_product({make_cyclic(2), make_cyclic(2), make_cyclic(2)})) ==
          "Z2xZ2xZ2");
    CHECK(iso_type_label(direct_product({make_cyclic(3), make_cyclic(3)})) == "Z3xZ3");
    CHECK(iso_type_label(direct_product({make_cyclic(2), make_cyclic(6)})) == "Z2xZ6");
    // nonabelian order 21 has no short name
    CHECK(iso_type_label(build_zm(validate_zm(7, 3, 2))) == "order21");
}
