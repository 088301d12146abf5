#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cohfluct;

TEST_CASE("dense G is bistochastic for the identity coupling") {
    auto rep = full_label_oracle(fixtures::identity_coupling(max_coherent(2)), 2, 4);
    CHECK(rep.row_sum_err < 1e-12);
    CHECK(rep.col_sum_err < 1e-12);
    CHECK(rep.transport_err < 1e-12);
}

TEST_CASE("dense vs collapsed forward distribution") {
    auto rep = full_label_oracle(fixtures::canonical_2to1(), 2, 6);
    CHECK(rep.row_sum_err < 1e-12);
    CHECK(rep.col_sum_err < 1e-12);
    CHECK(rep.forward_err < 1e-12);
    CHECK(rep.transport_err < 1e-12);
}

TEST_CASE("dense vs collapsed reverse distribution") {
    auto rep = full_label_oracle(fixtures::breathing(), 2, 6);
    CHECK(rep.reverse_err < 1e-12);
    CHECK(rep.max_err() < 1e-12);
}

TEST_CASE("d = 3 dyadic fixture agrees everywhere") {
    auto rep = full_label_oracle(fixtures::canonical_d3(), 2, 8);
    CHECK(rep.row_sum_err < 1e-12);
    CHECK(rep.col_sum_err < 1e-12);
    CHECK(rep.transport_err < 1e-12);
    CHECK(rep.forward_err < 1e-12);
    CHECK(rep.reverse_err < 1e-12);
}

TEST_CASE("size caps") {
    CHECK_THROWS_AS(full_label_oracle(fixtures::canonical_2to1(), 2, 9), SizeCapError);
    CHECK_THROWS_AS(full_label_oracle(fixtures::canonical_d4(), 2, 6), SizeCapError);
    auto u3 = canonical_coupling(max_coherent(3), max_coherent(3), 3,
                                 GridMode::floor_discretised);
    CHECK_THROWS_AS(full_label_oracle(u3, 3, 6), SizeCapError);
}
