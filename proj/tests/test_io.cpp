#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "corpus.hpp"

#include "cdloop/io.hpp"

using namespace cdloop;

TEST_CASE("writer emits the canonical field order, one row per line") {
    LoopTable z2 = cyclic_group(2);
    Involution id = identity_involution(z2);
    std::string doc = write_loop(z2, &id);
    CHECK(doc ==
          "{\n"
          "  \"order\": 2,\n"
          "  \"names\": [\"1\",\"g\"],\n"
          "  \"table\": [\n"
          "    [0, 1],\n"
          "    [1, 0]\n"
          "  ],\n"
          "  \"involution\": [0, 1]\n"
          "}\n");
}

TEST_CASE("round trip preserves table, names and involution") {
    auto [q3, q3s] = qn_pair(3);
    LoopDocument doc = read_loop_text(write_loop(q3, &q3s));
    CHECK(doc.loop.table_equals(q3));
    CHECK(doc.loop.names() == q3.names());
    REQUIRE(doc.star.has_value());
    for (Elem x = 0; x < q3.order(); x++) CHECK((*doc.star)(x) == q3s(x));

    LoopTable l6 = order6_nonassociative();
    LoopDocument plain = read_loop_text(write_loop(l6));
    CHECK(plain.loop.table_equals(l6));
    CHECK_FALSE(plain.star.has_value());
}

TEST_CASE("reader validates") {
    CHECK_THROWS_AS(read_loop_text("not json"), LoopError);
    CHECK_THROWS_AS(read_loop_text("{\"order\": 2}"), LoopError);
    // identity must sit at index 0
    CHECK_THROWS_AS(
        read_loop_text(R"({"order": 2, "names": ["a","b"], "table": [[1,0],[0,1]]})"),
        LoopError);
    // involution must certify
    CHECK_THROWS_AS(
        read_loop_text(
            R"({"order": 3, "names": ["1","g","h"], "table": [[0,1,2],[1,2,0],[2,0,1]], "involution": [0,1,1]})"),
        LoopError);
    // a certified one passes: inverse map on Z3
    LoopDocument ok = read_loop_text(
        R"({"order": 3, "names": ["1","g","h"], "table": [[0,1,2],[1,2,0],[2,0,1]], "involution": [0,2,1]})");
    CHECK(ok.star.has_value());
}

TEST_CASE("output is byte-stable across writes") {
    auto [q4, q4s] = qn_pair(4);
    CHECK(write_loop(q4, &q4s) == write_loop(q4, &q4s));
    LoopDocument doc = read_loop_text(write_loop(q4, &q4s));
    CHECK(write_loop(doc.loop, &*doc.star) == write_loop(q4, &q4s));
}

TEST_CASE("a corrupted table cell is rejected with a witness") {
    auto [q3, q3s] = qn_pair(3);
    std::vector<std::vector<int>> raw(16, std::vector<int>(16));
    for (int i = 0; i < 16; i++)
        for (int j = 0; j < 16; j++)
            raw[i][j] = q3.mul(static_cast<Elem>(i), static_cast<Elem>(j));
    raw[5][7] = raw[5][6]; // duplicate inside a row
    try {
        LoopTable::validate(raw);
        CHECK(false);
    } catch (const LoopError& e) {
        CHECK(e.code() == ErrorCode::NotAPermutationRow);
        CHECK_FALSE(e.witness().empty());
    }
}

TEST_CASE("golden document for the quaternion stage") {
    auto [q2, q2s] = qn_pair(2);
    CHECK(write_loop(q2, &q2s) ==
          "{\n"
          "  \"order\": 8,\n"
          "  \"names\": [\"1\",\"-1\",\"j1\",\"-j1\",\"j2\",\"-j2\",\"j1*j2\",\"-j1*j2\"],\n"
          "  \"table\": [\n"
          "    [0, 1, 2, 3, 4, 5, 6, 7],\n"
          "    [1, 0, 3, 2, 5, 4, 7, 6],\n"
          "    [2, 3, 1, 0, 6, 7, 5, 4],\n"
          "    [3, 2, 0, 1, 7, 6, 4, 5],\n"
          "    [4, 5, 7, 6, 1, 0, 2, 3],\n"
          "    [5, 4, 6, 7, 0, 1, 3, 2],\n"
          "    [6, 7, 4, 5, 3, 2, 1, 0],\n"
          "    [7, 6, 5, 4, 2, 3, 0, 1]\n"
          "  ],\n"
          "  \"involution\": [0, 1, 3, 2, 5, 4, 7, 6]\n"
          "}\n");
}
