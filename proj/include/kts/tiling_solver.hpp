#pragma once

#include <cstdint>
#include <vector>

#include "kts/problems.hpp"

namespace kts {

// Plain backtracking over grid cells in row-major order, trying tile indices
// ascending, so a solved instance yields the lexicographically first placement.
// This is deliberately naive: it is the independent check for the tableau
// reduction, not a competitive solver.
struct SolveResult {
    enum class Status { Solved, Unsolvable, Overflow };
    Status status = Status::Unsolvable;
    std::vector<int> placement;  // row-major tile indices when solved
    uint64_t attempts = 0;       // tile placements tried
};

SolveResult solve_tiling_bruteforce(const TilingInstance& t,
                                    uint64_t max_attempts = 20'000'000);

}  // namespace kts
