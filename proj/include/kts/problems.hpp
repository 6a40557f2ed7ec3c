#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "kts/bitstring.hpp"
#include "kts/machine.hpp"

namespace kts {

struct VerifyResult {
    bool accepted = false;
    uint64_t steps = 0;
};

// A verifier must be total and pure; its step count is a deterministic
// function of (instance, witness).
using Verifier = std::function<VerifyResult(const BitString& w)>;

// An inversion task: find any w the verifier accepts for the embedded x.
struct InversionTask {
    std::string name;
    BitString x;  // instance encoding; also the machine input during search
    Verifier verifier;
    // The same check realized as a machine program (input = witness, accept =
    // halt with the current work cell set to 1). Present for tasks that the
    // tableau reduction supports.
    std::optional<ProgramCode> verifier_program;
    uint32_t witness_bits = 0;  // machine-witness length m for the reduction
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // unordered pairs, no self-loops
};

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // signed 1-based literals
};

struct Tile {
    int north = 0, east = 0, south = 0, west = 0;
};

struct TilingInstance {
    int n = 0;  // grid side
    std::vector<Tile> tiles;
    int num_colors = 0;
    int border_color = 0;
    std::vector<std::tuple<int, int, int>> pinned;  // (row, col, tile index)
};

// --- Verifiers ----------------------------------------------------------------
// Step counts are fixed formulas of (instance, witness): decode work is always
// charged in full, so malformed witnesses cannot buy a discount.

// accept iff w == x; steps = min(|w|,|x|) + 1.
VerifyResult verify_identity(const BitString& x, const BitString& w);

// w is 2 bits per vertex (color 3 rejects). steps = n + |edges| + 1 when the
// decode succeeds, n + 1 otherwise.
VerifyResult verify_3col(const Graph& g, const BitString& w);

// w is one bit per variable. steps = num_vars + total literals + 1 when the
// decode succeeds, num_vars + 1 otherwise.
VerifyResult verify_sat(const CnfFormula& f, const BitString& w);

// w is n*n fixed-width tile indices. steps = n^2 + 2n(n-1) + 4n + |pinned| + 1
// when the decode succeeds, n^2 + 1 otherwise.
VerifyResult verify_tiling(const TilingInstance& t, const BitString& w);

// --- Witness codecs -----------------------------------------------------------

BitString encode_coloring(const std::vector<int>& colors);
std::optional<std::vector<int>> decode_coloring(const BitString& w, int n);

BitString encode_assignment(const std::vector<uint8_t>& values);
std::optional<std::vector<uint8_t>> decode_assignment(const BitString& w, int num_vars);

// Fixed-width index field: enough bits for values 0..range-1 (min 1 bit).
int index_width(int range);
BitString encode_placement(const std::vector<int>& tile_indices, int tile_count);
std::optional<std::vector<int>> decode_placement(const BitString& w, int cells, int tile_count);

// --- Instance encodings (the x fed to the machine) ----------------------------
// Length-prefixed, fixed-width fields: gamma-coded counts, then fixed-width
// vertex/variable indices.

BitString encode_graph(const Graph& g);
BitString encode_cnf(const CnfFormula& f);
BitString encode_tiling(const TilingInstance& t);

// --- Task factories ------------------------------------------------------------

InversionTask make_identity_task(const BitString& x);
InversionTask make_3col_task(const Graph& g);
InversionTask make_sat_task(const CnfFormula& f);
InversionTask make_tiling_task(const TilingInstance& t);

// --- Validation ----------------------------------------------------------------

void validate(const Graph& g);          // throws std::invalid_argument
void validate(const CnfFormula& f);     // throws std::invalid_argument
void validate(const TilingInstance& t); // throws std::invalid_argument

// --- Instance file IO ----------------------------------------------------------

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error(msg), line(line_), column(col_) {}
};

// DIMACS-like edge list: "p edge <n> <m>" then "e <u> <v>" lines (1-based).
Graph load_graph_dimacs(const std::string& path);
Graph parse_graph_dimacs(const std::string& text);

// DIMACS cnf: "p cnf <vars> <clauses>" then 0-terminated clause lines.
CnfFormula load_cnf_dimacs(const std::string& path);
CnfFormula parse_cnf_dimacs(const std::string& text);

// Line-oriented tiling format:
//   n <grid side> tiles <count> colors <count>
//   one tile per line: four color indices (north east south west)
//   optional: "border <color>" and "pin <row> <col> <tile>" lines
TilingInstance load_tiling(const std::string& path);
TilingInstance parse_tiling(const std::string& text);
std::string format_tiling(const TilingInstance& t);

}  // namespace kts
