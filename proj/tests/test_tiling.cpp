#include <doctest.h>

#include "kts/problems.hpp"
#include "kts/tiling_solver.hpp"

using namespace kts;

namespace {

// Exhaustive solvability check straight from the verifier, for tiny spaces.
bool any_placement_verifies(const TilingInstance& t) {
    int cells = t.n * t.n;
    uint64_t total = 1;
    for (int i = 0; i < cells; ++i) total *= t.tiles.size();
    REQUIRE(total <= (1u << 20));
    std::vector<int> placement(cells, 0);
    for (uint64_t v = 0; v < total; ++v) {
        uint64_t rest = v;
        for (int i = 0; i < cells; ++i) {
            placement[i] = int(rest % t.tiles.size());
            rest /= t.tiles.size();
        }
        if (verify_tiling(t, encode_placement(placement, int(t.tiles.size()))).accepted)
            return true;
    }
    return false;
}

}  // namespace

TEST_CASE("[tiling] single matching tile solves the unit grid") {
    TilingInstance t;
    t.n = 1;
    t.num_colors = 1;
    t.border_color = 0;
    t.tiles = {Tile{0, 0, 0, 0}};
    SolveResult r = solve_tiling_bruteforce(t);
    REQUIRE(r.status == SolveResult::Status::Solved);
    CHECK(r.placement == std::vector<int>{0});
}

TEST_CASE("[tiling] solver returns the lexicographically first placement") {
    TilingInstance t;
    t.n = 1;
    t.num_colors = 1;
    t.border_color = 0;
    t.tiles = {Tile{0, 0, 0, 0}, Tile{0, 0, 0, 0}};
    SolveResult r = solve_tiling_bruteforce(t);
    REQUIRE(r.status == SolveResult::Status::Solved);
    CHECK(r.placement == std::vector<int>{0});
}

TEST_CASE("[tiling] horizontally incompatible tiles are unsolvable") {
    TilingInstance t;
    t.n = 2;
    t.num_colors = 3;
    t.border_color = 0;
    t.tiles = {Tile{0, 1, 0, 2}, Tile{0, 1, 0, 2}};
    SolveResult r = solve_tiling_bruteforce(t);
    CHECK(r.status == SolveResult::Status::Unsolvable);
    CHECK(!any_placement_verifies(t));
}

TEST_CASE("[tiling] solver agrees with exhaustive verification on small instances") {
    // A 2x2 instance with interior colors: solvable with the right pair.
    TilingInstance t;
    t.n = 2;
    t.num_colors = 2;
    t.border_color = 0;
    t.tiles = {
        Tile{0, 1, 0, 0},  // top-left
        Tile{0, 0, 0, 1},  // top-right
        Tile{0, 1, 0, 0},  // bottom-left (same shape)
        Tile{0, 0, 0, 1},
    };
    SolveResult r = solve_tiling_bruteforce(t);
    CHECK((r.status == SolveResult::Status::Solved) == any_placement_verifies(t));
    if (r.status == SolveResult::Status::Solved) {
        CHECK(verify_tiling(t, encode_placement(r.placement, int(t.tiles.size()))).accepted);
    }
}

TEST_CASE("[tiling] pinned cells constrain the solver") {
    TilingInstance t;
    t.n = 1;
    t.num_colors = 1;
    t.border_color = 0;
    t.tiles = {Tile{0, 0, 0, 0}, Tile{0, 0, 0, 0}};
    t.pinned = {{0, 0, 1}};
    SolveResult r = solve_tiling_bruteforce(t);
    REQUIRE(r.status == SolveResult::Status::Solved);
    CHECK(r.placement == std::vector<int>{1});
}

TEST_CASE("[tiling] attempt cap raises the overflow signal") {
    // Solvable, but the cap is below the number of placements needed.
    TilingInstance t;
    t.n = 2;
    t.num_colors = 1;
    t.border_color = 0;
    t.tiles = {Tile{0, 0, 0, 0}};
    REQUIRE(solve_tiling_bruteforce(t).status == SolveResult::Status::Solved);
    SolveResult r = solve_tiling_bruteforce(t, 1);
    CHECK(r.status == SolveResult::Status::Overflow);
    CHECK(r.attempts > 1);
}
