#include "kts/machine_programs.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "kts/problems.hpp"

namespace kts {

namespace {

// Tiny assembler with static head-position tracking. Every control gadget
// below converges: both branches leave the head on the same cell, so the
// tracked position stays exact.
struct Asm {
    std::vector<Op> ops;
    int head = 0;

    void emit(Op op) { ops.push_back(op); }

    void walk_to(int cell) {
        while (head < cell) { emit(Op::Right); ++head; }
        while (head > cell) { emit(Op::Left); --head; }
    }

    // Parks the machine forever when the current cell is 1.
    void hang_if_set() {
        emit(Op::LoopStart);
        emit(Op::LoopEnd);
    }

    // Sets the current cell to 1 regardless of its prior value.
    void set_cell() {
        emit(Op::LoopStart);
        emit(Op::Flip);
        emit(Op::LoopEnd);
        emit(Op::Flip);
    }

    // Zeroes the current cell.
    void clear_cell() {
        emit(Op::LoopStart);
        emit(Op::Flip);
        emit(Op::LoopEnd);
    }

    // if (current cell) { body }; consumes the tested cell. The body runs
    // with the cell already zeroed and must return the head to it.
    void if_set_consume(const std::function<void(Asm&)>& body) {
        int cell = head;
        emit(Op::LoopStart);
        emit(Op::Flip);
        body(*this);
        walk_to(cell);
        emit(Op::LoopEnd);
    }

    ProgramCode assemble() const {
        BitString raw = gamma_encode(uint32_t(ops.size()));
        for (Op op : ops) {
            uint8_t v = uint8_t(op);
            raw.push_back((v >> 2) & 1);
            raw.push_back((v >> 1) & 1);
            raw.push_back(v & 1);
        }
        DecodeResult decoded = decode_program(raw);
        if (!std::holds_alternative<ProgramCode>(decoded))
            throw std::logic_error("assembler produced an invalid program");
        return std::get<ProgramCode>(decoded);
    }
};

}  // namespace

ProgramCode compile_identity_checker(const BitString& x) {
    Asm a;
    for (size_t i = 0; i < x.size(); ++i) {
        a.emit(Op::Read);
        if (x[i]) a.emit(Op::Flip);  // cell becomes 0 exactly on a match
        a.hang_if_set();
    }
    a.emit(Op::Flip);  // cell is 0 after the last check
    a.emit(Op::Halt);
    return a.assemble();
}

ProgramCode compile_sat_checker(const CnfFormula& f) {
    validate(f);
    // Cell layout: 0 = read buffer; one private copy per literal occurrence;
    // one flag per clause; one fresh cell for the final accept mark.
    int next_cell = 1;
    std::vector<std::vector<int>> occ(f.clauses.size());
    std::vector<std::vector<int>> targets(f.num_vars);
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        occ[c].resize(f.clauses[c].size());
        for (size_t i = 0; i < f.clauses[c].size(); ++i) {
            int var = std::abs(f.clauses[c][i]) - 1;
            occ[c][i] = next_cell++;
            targets[var].push_back(occ[c][i]);
        }
    }
    std::vector<int> flag(f.clauses.size());
    for (size_t c = 0; c < f.clauses.size(); ++c) flag[c] = next_cell++;
    int done = next_cell++;

    Asm a;
    // Read phase: fan each variable bit out to its occurrence copies.
    for (int v = 0; v < f.num_vars; ++v) {
        a.walk_to(0);
        a.emit(Op::Read);
        if (!targets[v].empty()) {
            a.if_set_consume([&](Asm& s) {
                for (int cell : targets[v]) {
                    s.walk_to(cell);
                    s.emit(Op::Flip);
                }
            });
        }
    }
    // Clause phase: each clause must see at least one true literal.
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        for (size_t i = 0; i < f.clauses[c].size(); ++i) {
            a.walk_to(occ[c][i]);
            if (f.clauses[c][i] < 0) a.emit(Op::Flip);
            a.if_set_consume([&](Asm& s) {
                s.walk_to(flag[c]);
                s.set_cell();
            });
        }
        a.walk_to(flag[c]);
        a.emit(Op::Flip);
        a.hang_if_set();  // unsatisfied clause never accepts
    }
    a.walk_to(done);
    a.emit(Op::Flip);
    a.emit(Op::Halt);
    return a.assemble();
}

namespace {

bool is_triangle(const Graph& g) {
    if (g.n != 3 || g.edges.size() != 3) return false;
    bool seen[3][3] = {};
    for (auto [u, v] : g.edges) {
        seen[u][v] = seen[v][u] = true;
    }
    return seen[0][1] && seen[0][2] && seen[1][2];
}

bool is_single_edge(const Graph& g) { return g.n == 2 && g.edges.size() == 1; }

// Parity machine for complete tiny graphs. Accumulates XOR of the high and low
// color bits across vertices, hangs on color 3, and accepts when the parity
// pattern certifies pairwise-distinct (triangle) or distinct (edge) colors.
// Cell layout: 0 = xh, 1 = xl, 2 = seen-high flag, 3 = read buffer.
ProgramCode compile_parity_3col(int vertices, bool require_all_distinct) {
    Asm a;
    a.walk_to(3);
    for (int v = 0; v < vertices; ++v) {
        a.emit(Op::Read);  // high bit
        a.if_set_consume([&](Asm& s) {
            s.walk_to(0);
            s.emit(Op::Flip);  // xh ^= 1
            s.walk_to(2);
            s.emit(Op::Flip);  // remember the high bit for the 11 check
        });
        a.emit(Op::Read);  // low bit
        a.if_set_consume([&](Asm& s) {
            s.walk_to(1);
            s.emit(Op::Flip);  // xl ^= 1
            s.walk_to(2);
            s.hang_if_set();  // color 11 is invalid
        });
        a.walk_to(2);
        a.clear_cell();
        a.walk_to(3);
    }
    a.walk_to(0);
    if (require_all_distinct) {
        // Triangle: the three colors are a permutation of {00,01,10} iff both
        // parities are 1 (given no color 11 survived).
        a.emit(Op::LoopStart);
        a.emit(Op::Right);
        a.emit(Op::Halt);  // accept iff xl == 1
        a.emit(Op::LoopEnd);
        a.emit(Op::Halt);  // xh == 0: rejects (cell is 0)
    } else {
        // Single edge: the two colors differ iff some parity is 1.
        a.emit(Op::LoopStart);
        a.emit(Op::Halt);  // xh == 1: accept
        a.emit(Op::LoopEnd);
        a.emit(Op::Right);
        a.emit(Op::Halt);  // accept iff xl == 1
    }
    return a.assemble();
}

// General compilation: private copies per use, a parity check per edge.
ProgramCode compile_3col_general(const Graph& g) {
    int next_cell = 1;  // 0 = read buffer
    std::vector<int> hi_validity(g.n), lo_validity(g.n);
    for (int v = 0; v < g.n; ++v) {
        hi_validity[v] = next_cell++;
        lo_validity[v] = next_cell++;
    }
    size_t m = g.edges.size();
    std::vector<std::array<int, 2>> hi_copy(m), lo_copy(m);
    std::vector<int> edge_flag(m);
    std::vector<std::vector<int>> hi_targets(g.n), lo_targets(g.n);
    for (int v = 0; v < g.n; ++v) {
        hi_targets[v].push_back(hi_validity[v]);
        lo_targets[v].push_back(lo_validity[v]);
    }
    for (size_t e = 0; e < m; ++e) {
        for (int side = 0; side < 2; ++side) {
            hi_copy[e][side] = next_cell++;
            lo_copy[e][side] = next_cell++;
            int v = side == 0 ? g.edges[e].first : g.edges[e].second;
            hi_targets[v].push_back(hi_copy[e][side]);
            lo_targets[v].push_back(lo_copy[e][side]);
        }
        edge_flag[e] = next_cell++;
    }
    int done = next_cell++;

    Asm a;
    for (int v = 0; v < g.n; ++v) {
        a.walk_to(0);
        a.emit(Op::Read);  // high bit
        a.if_set_consume([&](Asm& s) {
            for (int cell : hi_targets[v]) {
                s.walk_to(cell);
                s.emit(Op::Flip);
            }
        });
        a.walk_to(0);
        a.emit(Op::Read);  // low bit
        a.if_set_consume([&](Asm& s) {
            for (int cell : lo_targets[v]) {
                s.walk_to(cell);
                s.emit(Op::Flip);
            }
        });
    }
    // Validity: color 11 hangs.
    for (int v = 0; v < g.n; ++v) {
        a.walk_to(hi_validity[v]);
        a.if_set_consume([&](Asm& s) {
            s.walk_to(lo_validity[v]);
            s.hang_if_set();
        });
    }
    // Edges: colors must differ in the high or low bit.
    for (size_t e = 0; e < m; ++e) {
        a.walk_to(hi_copy[e][1]);
        a.if_set_consume([&](Asm& s) {
            s.walk_to(hi_copy[e][0]);
            s.emit(Op::Flip);  // hi_u ^= hi_v
        });
        a.walk_to(lo_copy[e][1]);
        a.if_set_consume([&](Asm& s) {
            s.walk_to(lo_copy[e][0]);
            s.emit(Op::Flip);
        });
        a.walk_to(hi_copy[e][0]);
        a.if_set_consume([&](Asm& s) {
            s.walk_to(edge_flag[e]);
            s.set_cell();
        });
        a.walk_to(lo_copy[e][0]);
        a.if_set_consume([&](Asm& s) {
            s.walk_to(edge_flag[e]);
            s.set_cell();
        });
        a.walk_to(edge_flag[e]);
        a.emit(Op::Flip);
        a.hang_if_set();  // identical endpoint colors never accept
    }
    a.walk_to(done);
    a.emit(Op::Flip);
    a.emit(Op::Halt);
    return a.assemble();
}

}  // namespace

ProgramCode compile_3col_checker(const Graph& g) {
    validate(g);
    if (is_triangle(g)) return compile_parity_3col(3, true);
    if (is_single_edge(g)) return compile_parity_3col(2, false);
    return compile_3col_general(g);
}

bool machine_accepts(const ProgramCode& program, const BitString& w, uint64_t fuel) {
    MachineConfig config;
    config.fuel = fuel;
    RunTrace trace = run_traced(program, w, config);
    return trace.outcome.halted() && trace.final_cell == 1;
}

std::optional<uint64_t> accepting_steps(const ProgramCode& program, const BitString& w,
                                        uint64_t fuel) {
    MachineConfig config;
    config.fuel = fuel;
    RunTrace trace = run_traced(program, w, config);
    if (trace.outcome.halted() && trace.final_cell == 1) return trace.outcome.steps;
    return std::nullopt;
}

std::optional<uint64_t> max_accepting_steps(const ProgramCode& program, int m, uint64_t fuel) {
    if (m < 0 || m > 20) throw std::invalid_argument("max_accepting_steps: m out of range");
    std::optional<uint64_t> best;
    for (uint64_t bits = 0; bits < (uint64_t(1) << m); ++bits) {
        BitString w;
        for (int i = 0; i < m; ++i) w.push_back((bits >> (m - 1 - i)) & 1);
        auto steps = accepting_steps(program, w, fuel);
        if (steps && (!best || *steps > *best)) best = steps;
    }
    return best;
}

}  // namespace kts
