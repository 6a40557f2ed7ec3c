#include <doctest.h>

#include <random>

#include "kts/problems.hpp"

using namespace kts;

namespace {

BitString bits(const std::string& s) { return *BitString::parse(s); }

Graph triangle() {
    Graph g;
    g.n = 3;
    g.edges = {{0, 1}, {0, 2}, {1, 2}};
    return g;
}

Graph complete4() {
    Graph g;
    g.n = 4;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return g;
}

}  // namespace

TEST_CASE("[problems] identity verifier") {
    CHECK(verify_identity(bits(""), bits("")).accepted);
    CHECK(verify_identity(bits(""), bits("")).steps == 1);
    CHECK(verify_identity(bits("01"), bits("01")).accepted);
    CHECK(verify_identity(bits("01"), bits("01")).steps == 3);
    CHECK(!verify_identity(bits("01"), bits("00")).accepted);
    CHECK(verify_identity(bits("01"), bits("00")).steps == 3);
    CHECK(!verify_identity(bits("01"), bits("0")).accepted);
    CHECK(verify_identity(bits("01"), bits("0")).steps == 2);
}

TEST_CASE("[problems] three-coloring verifier on the triangle") {
    Graph g = triangle();
    VerifyResult ok = verify_3col(g, encode_coloring({0, 1, 2}));
    CHECK(ok.accepted);
    CHECK(ok.steps == 7);  // 3 decode + 3 edges + 1
    VerifyResult mono = verify_3col(g, encode_coloring({0, 0, 2}));
    CHECK(!mono.accepted);
    CHECK(mono.steps == 7);
    // Color value 3 rejects at decode cost.
    VerifyResult bad = verify_3col(g, bits("110000"));
    CHECK(!bad.accepted);
    CHECK(bad.steps == 4);  // 3 decode + 1
    // Wrong length rejects.
    CHECK(!verify_3col(g, bits("0001")).accepted);
}

TEST_CASE("[problems] no witness colors a complete four-vertex graph") {
    Graph g = complete4();
    for (uint32_t v = 0; v < (1u << 8); ++v) {
        BitString w;
        for (int i = 7; i >= 0; --i) w.push_back((v >> i) & 1);
        CHECK(!verify_3col(g, w).accepted);
    }
}

TEST_CASE("[problems] sat verifier") {
    CnfFormula f;
    f.num_vars = 2;
    f.clauses = {{1, 2}};
    CHECK(verify_sat(f, bits("10")).accepted);
    CHECK(verify_sat(f, bits("10")).steps == 2 + 2 + 1);
    CHECK(!verify_sat(f, bits("00")).accepted);

    CnfFormula unsat;
    unsat.num_vars = 1;
    unsat.clauses = {{1}, {-1}};
    CHECK(!verify_sat(unsat, bits("0")).accepted);
    CHECK(!verify_sat(unsat, bits("1")).accepted);
}

TEST_CASE("[problems] sat verifier agrees with truth-table enumeration") {
    CnfFormula f;
    f.num_vars = 3;
    f.clauses = {{1, -2}, {2, 3}, {-1, -3}, {-2, 1, 3}};
    for (uint32_t v = 0; v < 8; ++v) {
        std::vector<uint8_t> assignment{uint8_t(v >> 2 & 1), uint8_t(v >> 1 & 1), uint8_t(v & 1)};
        bool expected = true;
        for (const auto& clause : f.clauses) {
            bool clause_true = false;
            for (int lit : clause) {
                bool value = assignment[size_t(std::abs(lit) - 1)] != 0;
                if ((lit > 0) == value) clause_true = true;
            }
            expected = expected && clause_true;
        }
        CHECK(verify_sat(f, encode_assignment(assignment)).accepted == expected);
    }
}

TEST_CASE("[problems] tiling verifier basics") {
    TilingInstance t;
    t.n = 1;
    t.num_colors = 1;
    t.border_color = 0;
    t.tiles = {Tile{0, 0, 0, 0}};
    VerifyResult ok = verify_tiling(t, encode_placement({0}, 1));
    CHECK(ok.accepted);
    CHECK(ok.steps == 1 + 0 + 4 + 0 + 1);

    t.pinned = {{0, 0, 0}};
    CHECK(verify_tiling(t, encode_placement({0}, 1)).accepted);

    TilingInstance two;
    two.n = 1;
    two.num_colors = 2;
    two.border_color = 0;
    two.tiles = {Tile{0, 0, 0, 0}, Tile{0, 0, 0, 0}};
    two.pinned = {{0, 0, 1}};
    CHECK(!verify_tiling(two, encode_placement({0}, 2)).accepted);  // pin mismatch
    CHECK(verify_tiling(two, encode_placement({1}, 2)).accepted);
}

TEST_CASE("[problems] tiling verifier rejects every placement when nothing matches") {
    // Two tiles whose east/west colors can never agree horizontally.
    TilingInstance t;
    t.n = 2;
    t.num_colors = 3;
    t.border_color = 0;
    t.tiles = {Tile{0, 1, 0, 2}, Tile{0, 1, 0, 2}};
    for (uint32_t v = 0; v < 16; ++v) {
        std::vector<int> placement{int(v >> 3 & 1), int(v >> 2 & 1), int(v >> 1 & 1), int(v & 1)};
        CHECK(!verify_tiling(t, encode_placement(placement, 2)).accepted);
    }
}

TEST_CASE("[problems] codecs round-trip and reject malformed strings") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng() % 5);
        std::vector<int> colors;
        for (int i = 0; i < n; ++i) colors.push_back(int(rng() % 3));
        auto decoded = decode_coloring(encode_coloring(colors), n);
        REQUIRE(decoded.has_value());
        CHECK(*decoded == colors);
    }
    CHECK(!decode_coloring(bits("000"), 2).has_value());   // wrong length
    CHECK(!decode_coloring(bits("0011"), 2).has_value());  // color 3
    CHECK(!decode_assignment(bits("01"), 3).has_value());
    CHECK(!decode_placement(bits("01"), 1, 1).has_value());
    CHECK(decode_placement(bits("1"), 1, 2).has_value());
    CHECK(!decode_placement(bits("11"), 1, 3).has_value());  // index 3 out of range
}

TEST_CASE("[problems] verifier step counts are pure functions") {
    Graph g = triangle();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        BitString w;
        int len = int(rng() % 9);
        for (int i = 0; i < len; ++i) w.push_back(rng() % 2);
        VerifyResult a = verify_3col(g, w);
        VerifyResult b = verify_3col(g, w);
        CHECK(a.accepted == b.accepted);
        CHECK(a.steps == b.steps);
    }
}

TEST_CASE("[problems] graph encoding is deterministic and length-prefixed") {
    BitString x = encode_graph(triangle());
    // gamma(3)="011", gamma(4)="00100" (edge count + 1), three edges at 2+2 bits.
    CHECK(x.to_string() == "011" "00100" "0001" "0010" "0110");
    CHECK(encode_graph(triangle()) == x);
}

TEST_CASE("[problems] dimacs graph parsing") {
    Graph g = parse_graph_dimacs("c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    CHECK(g.n == 3);
    REQUIRE(g.edges.size() == 3);
    CHECK(g.edges[0] == std::pair<int, int>{0, 1});

    CHECK_THROWS_AS(parse_graph_dimacs("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_dimacs("p edge 2 1\ne 1 5\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_dimacs("p edge 2 2\ne 1 2\n"), ParseError);
    try {
        parse_graph_dimacs("p edge 2 1\nzz\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 1);
    }
}

TEST_CASE("[problems] dimacs cnf parsing") {
    CnfFormula f = parse_cnf_dimacs("c tiny\np cnf 2 2\n1 2 0\n-1 0\n");
    CHECK(f.num_vars == 2);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1] == std::vector<int>{-1});

    CHECK_THROWS_AS(parse_cnf_dimacs("p cnf 1 1\n3 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf_dimacs("p cnf 1 1\n1\n"), ParseError);
}

TEST_CASE("[problems] tiling file format round trip") {
    TilingInstance t;
    t.n = 2;
    t.num_colors = 3;
    t.border_color = 1;
    t.tiles = {Tile{1, 0, 2, 1}, Tile{2, 0, 1, 0}};
    t.pinned = {{0, 1, 1}};
    TilingInstance back = parse_tiling(format_tiling(t));
    CHECK(back.n == t.n);
    CHECK(back.num_colors == t.num_colors);
    CHECK(back.border_color == t.border_color);
    REQUIRE(back.tiles.size() == 2);
    CHECK(back.tiles[1].north == 2);
    REQUIRE(back.pinned.size() == 1);
    CHECK(std::get<2>(back.pinned[0]) == 1);

    CHECK_THROWS_AS(parse_tiling("n 1 tiles 1 colors 1\n"), ParseError);
    CHECK_THROWS_AS(parse_tiling("nonsense\n"), ParseError);
}

TEST_CASE("[problems] validation rejects malformed instances") {
    Graph loop;
    loop.n = 2;
    loop.edges = {{1, 1}};
    CHECK_THROWS_AS(validate(loop), std::invalid_argument);

    CnfFormula f;
    f.num_vars = 1;
    f.clauses = {{}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);

    TilingInstance t;
    t.n = 0;
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
}
