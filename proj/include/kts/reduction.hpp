#pragma once

#include <unordered_map>
#include <vector>

#include "kts/bitstring.hpp"
#include "kts/problems.hpp"

namespace kts {

inline constexpr int kMaxTableauSide = 64;

// Recovers the witness from row 0 of a valid placement: the first m columns
// of the initial row are free-choice tiles carrying one witness bit each.
struct WitnessMap {
    int m = 0;
    std::unordered_map<int, uint8_t> bit_of_tile;

    BitString extract(const std::vector<int>& placement, int grid_side) const;
};

struct TableauReduction {
    TilingInstance instance;
    WitnessMap witness_map;
    uint64_t step_bound = 0;  // S
};

// Encodes the bounded run of the task's verifier program as a tiling: the grid
// has side S+2 (top row seeds the start configuration and the witness bits,
// row i+1 applies step i, bottom row demands a halted accepting machine).
// Solvable iff some witness of m bits is accepted within S steps.
//
// Throws std::invalid_argument when S or m exceeds the grid cap (S+2 <= 64,
// m <= S) or the task carries no verifier program.
TableauReduction reduce_to_tiling(const InversionTask& task, uint64_t S, int m);

}  // namespace kts
