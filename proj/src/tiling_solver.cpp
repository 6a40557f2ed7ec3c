#include "kts/tiling_solver.hpp"

#include <map>
#include <utility>

namespace kts {

SolveResult solve_tiling_bruteforce(const TilingInstance& t, uint64_t max_attempts) {
    validate(t);
    const int n = t.n;
    const int cells = n * n;

    // Candidate lists keyed by the two already-constrained edges.
    std::map<std::pair<int, int>, std::vector<int>> by_north_west;
    for (int i = 0; i < int(t.tiles.size()); ++i) {
        by_north_west[{t.tiles[i].north, t.tiles[i].west}].push_back(i);
    }
    std::vector<int> pin(cells, -1);
    for (const auto& [r, c, idx] : t.pinned) pin[r * n + c] = idx;

    SolveResult result;
    std::vector<int> placement(cells, -1);
    static const std::vector<int> kEmpty;

    // Iterative DFS; frame i holds the candidate cursor for cell i.
    std::vector<size_t> cursor(cells, 0);
    std::vector<const std::vector<int>*> options(cells, nullptr);

    auto candidates_for = [&](int cell) -> const std::vector<int>& {
        int r = cell / n, c = cell % n;
        int north = r == 0 ? t.border_color : t.tiles[placement[cell - n]].south;
        int west = c == 0 ? t.border_color : t.tiles[placement[cell - 1]].east;
        auto it = by_north_west.find({north, west});
        return it == by_north_west.end() ? kEmpty : it->second;
    };
    auto admissible = [&](int cell, int tile_idx) {
        int r = cell / n, c = cell % n;
        const Tile& tile = t.tiles[tile_idx];
        if (pin[cell] >= 0 && pin[cell] != tile_idx) return false;
        if (c == n - 1 && tile.east != t.border_color) return false;
        if (r == n - 1 && tile.south != t.border_color) return false;
        return true;
    };

    int cell = 0;
    options[0] = &candidates_for(0);
    while (true) {
        bool placed = false;
        const std::vector<int>& opts = *options[cell];
        while (cursor[cell] < opts.size()) {
            int tile_idx = opts[cursor[cell]++];
            if (!admissible(cell, tile_idx)) continue;
            if (++result.attempts > max_attempts) {
                result.status = SolveResult::Status::Overflow;
                return result;
            }
            placement[cell] = tile_idx;
            placed = true;
            break;
        }
        if (placed) {
            if (cell + 1 == cells) {
                result.status = SolveResult::Status::Solved;
                result.placement = placement;
                return result;
            }
            ++cell;
            cursor[cell] = 0;
            options[cell] = &candidates_for(cell);
        } else {
            placement[cell] = -1;
            if (cell == 0) {
                result.status = SolveResult::Status::Unsolvable;
                return result;
            }
            --cell;
        }
    }
}

}  // namespace kts
