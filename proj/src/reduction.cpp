#include "kts/reduction.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace kts {

BitString WitnessMap::extract(const std::vector<int>& placement, int grid_side) const {
    if (int(placement.size()) < grid_side || grid_side < m)
        throw std::invalid_argument("witness extraction: placement too small");
    BitString w;
    for (int j = 0; j < m; ++j) {
        auto it = bit_of_tile.find(placement[j]);
        if (it == bit_of_tile.end())
            throw std::invalid_argument("witness extraction: non-witness tile in row 0");
        w.push_back(it->second);
    }
    return w;
}

namespace {

// The tableau encodes one machine configuration per row. A cell tracks its
// work-tape bit, its (immutable) input-tape bit, and an optional head mark;
// the work-head mark carries the machine state. States 0..L-1 are program
// counters, L means the machine ran off the end of the program (it can never
// halt), L+1 means halted.
struct Builder {
    const ProgramCode& prog;
    int L;
    uint64_t S;
    int m;
    int n;

    std::map<uint64_t, int> color_of_key;
    std::map<std::array<int, 4>, int> tile_of_edges;
    TilingInstance inst;
    WitnessMap wmap;

    static constexpr int kMarkNone = 0;
    static constexpr int kMarkIn = 1;
    static int mark_w(int state) { return 2 + 2 * state; }
    static int mark_wi(int state) { return 3 + 2 * state; }

    Builder(const ProgramCode& p, uint64_t steps, int witness_bits)
        : prog(p), L(int(p.ops.size())), S(steps), m(witness_bits), n(int(steps) + 2) {
        inst.n = n;
        inst.border_color = color(0);  // key 0 reserved for the border
    }

    int stuck() const { return L; }
    int halted() const { return L + 1; }

    int color(uint64_t key) {
        auto [it, inserted] = color_of_key.try_emplace(key, int(color_of_key.size()));
        (void)inserted;
        return it->second;
    }

    // Vertical colors: cell states.
    int cell(int wb, int ib, int mark) {
        return color(1000 + uint64_t(mark) * 4 + uint64_t(wb) * 2 + uint64_t(ib));
    }
    int rail() { return color(2); }

    // Horizontal colors.
    int hnone() { return color(3); }
    int hfinal() { return color(4); }  // seam of the bottom row: all-final or nothing
    int hinit(int j) { return color(10'000 + uint64_t(j)); }
    int wl(int state) { return color(20'000 + uint64_t(state)); }
    int wr(int state) { return color(30'000 + uint64_t(state)); }
    int rc_right(int b) { return color(40'000 + uint64_t(b)); }
    int rc_left(int b) { return color(41'000 + uint64_t(b)); }
    int rc_right_dep(int b) { return color(42'000 + uint64_t(b)); }
    int dep() { return color(43'000); }

    int add_tile(int north, int east, int south, int west) {
        std::array<int, 4> key{north, east, south, west};
        auto it = tile_of_edges.find(key);
        if (it != tile_of_edges.end()) return it->second;
        int id = int(inst.tiles.size());
        inst.tiles.push_back(Tile{north, east, south, west});
        tile_of_edges.emplace(key, id);
        return id;
    }

    void build() {
        build_init_row();
        build_step_tiles();
        build_final_row();
        inst.num_colors = int(color_of_key.size());
    }

    void build_init_row() {
        const int B = inst.border_color;
        // Column 0 carries both heads at state 0 (plus witness bit 0 if any).
        if (m > 0) {
            for (int b = 0; b < 2; ++b) {
                int id = add_tile(B, hinit(1), cell(0, b, mark_wi(0)), B);
                wmap.bit_of_tile[id] = uint8_t(b);
            }
        } else {
            add_tile(B, hinit(1), cell(0, 0, mark_wi(0)), B);
        }
        // Witness zone: free input bits.
        for (int j = 1; j < m; ++j) {
            for (int b = 0; b < 2; ++b) {
                int id = add_tile(B, hinit(j + 1), cell(0, b, kMarkNone), hinit(j));
                wmap.bit_of_tile[id] = uint8_t(b);
            }
        }
        // Exhausted input region: zeros. Columns max(m,1) .. S.
        for (int j = std::max(m, 1); j <= int(S); ++j) {
            add_tile(B, hinit(j + 1), cell(0, 0, kMarkNone), hinit(j));
        }
        // Rail seed in the last column; the rail owns the grid's east border.
        add_tile(B, B, rail(), hinit(int(S) + 1));
        wmap.m = m;
    }

    void build_step_tiles() {
        const int B = inst.border_color;
        const int NH = hnone();

        // Rail propagation.
        add_tile(rail(), B, rail(), NH);

        for (int wb = 0; wb < 2; ++wb) {
            for (int ib = 0; ib < 2; ++ib) {
                // Quiet copies: no head, or a frozen machine.
                for (int mark : {kMarkNone, kMarkIn, mark_w(stuck()), mark_wi(stuck()),
                                 mark_w(halted()), mark_wi(halted())}) {
                    int c = cell(wb, ib, mark);
                    add_tile(c, NH, c, NH);
                    add_tile(c, NH, c, B);
                }
                int plain = cell(wb, ib, kMarkNone);
                int with_in = cell(wb, ib, kMarkIn);
                for (int b = 0; b < 2; ++b) {
                    // Read bit in transit.
                    add_tile(plain, rc_right(b), plain, rc_right(b));
                    add_tile(plain, rc_left(b), plain, rc_left(b));
                    // Input head deposited here while the bit travels on.
                    add_tile(plain, rc_right(b), with_in, rc_right_dep(b));
                }
                // Input head deposited here, bit already absorbed.
                add_tile(plain, NH, with_in, dep());
                // Input head emits its bit toward the reading work head.
                add_tile(with_in, rc_right_dep(ib), plain, NH);
                add_tile(with_in, rc_right_dep(ib), plain, B);
                add_tile(with_in, dep(), plain, rc_left(ib));
                // Work head arriving from an adjacent cell. A leftward move
                // crosses the receiver's east edge, a rightward move its west.
                // Only states an actual move can reach get receivers.
                for (int q = 0; q < L; ++q) {
                    int state = q + 1;
                    if (prog.ops[q] == Op::Left) {
                        add_tile(plain, wl(state), cell(wb, ib, mark_w(state)), NH);
                        add_tile(plain, wl(state), cell(wb, ib, mark_w(state)), B);
                        add_tile(with_in, wl(state), cell(wb, ib, mark_wi(state)), NH);
                        add_tile(with_in, wl(state), cell(wb, ib, mark_wi(state)), B);
                    } else if (prog.ops[q] == Op::Right) {
                        add_tile(plain, NH, cell(wb, ib, mark_w(state)), wr(state));
                        add_tile(with_in, NH, cell(wb, ib, mark_wi(state)), wr(state));
                    }
                }
            }
        }

        // One tile family per program position.
        for (int q = 0; q < L; ++q) {
            Op op = prog.ops[q];
            for (int wb = 0; wb < 2; ++wb) {
                for (int ib = 0; ib < 2; ++ib) {
                    emit_op_tiles(q, op, wb, ib);
                }
            }
        }
    }

    void emit_op_tiles(int q, Op op, int wb, int ib) {
        const int B = inst.border_color;
        const int NH = hnone();
        int n_w = cell(wb, ib, mark_w(q));
        int n_wi = cell(wb, ib, mark_wi(q));

        auto local = [&](int new_wb, int state) {
            add_tile(n_w, NH, cell(new_wb, ib, mark_w(state)), NH);
            add_tile(n_w, NH, cell(new_wb, ib, mark_w(state)), B);
            add_tile(n_wi, NH, cell(new_wb, ib, mark_wi(state)), NH);
            add_tile(n_wi, NH, cell(new_wb, ib, mark_wi(state)), B);
        };

        switch (op) {
            case Op::Halt:
                local(wb, halted());
                break;
            case Op::Flip:
                local(wb ^ 1, q + 1);
                break;
            case Op::Emit:
                local(wb, q + 1);  // output is not part of the acceptance condition
                break;
            case Op::LoopStart:
                local(wb, wb ? q + 1 : prog.loop_match[q] + 1);
                break;
            case Op::LoopEnd:
                local(wb, prog.loop_match[q]);
                break;
            case Op::Left: {
                int next = q + 1;
                // Interior: the state walks across the west edge.
                add_tile(n_w, NH, cell(wb, ib, kMarkNone), wl(next));
                add_tile(n_wi, NH, cell(wb, ib, kMarkIn), wl(next));
                // At column 0 the move is a no-op.
                add_tile(n_w, NH, cell(wb, ib, mark_w(next)), B);
                add_tile(n_wi, NH, cell(wb, ib, mark_wi(next)), B);
                break;
            }
            case Op::Right: {
                int next = q + 1;
                add_tile(n_w, wr(next), cell(wb, ib, kMarkNone), NH);
                add_tile(n_w, wr(next), cell(wb, ib, kMarkNone), B);
                add_tile(n_wi, wr(next), cell(wb, ib, kMarkIn), NH);
                add_tile(n_wi, wr(next), cell(wb, ib, kMarkIn), B);
                // No tile for a move onto the rail; bounded runs never need it.
                break;
            }
            case Op::Read: {
                int next = q + 1;
                // Input head on the same cell: local read, head deposits east.
                add_tile(n_wi, dep(), cell(ib, ib, mark_w(next)), NH);
                add_tile(n_wi, dep(), cell(ib, ib, mark_w(next)), B);
                for (int b = 0; b < 2; ++b) {
                    // Bit arrives from the west.
                    add_tile(n_w, NH, cell(b, ib, mark_w(next)), rc_right(b));
                    // Bit arrives from the west with the input head landing here.
                    add_tile(n_w, NH, cell(b, ib, mark_wi(next)), rc_right_dep(b));
                    // Bit arrives from the east.
                    add_tile(n_w, rc_left(b), cell(b, ib, mark_w(next)), NH);
                    add_tile(n_w, rc_left(b), cell(b, ib, mark_w(next)), B);
                }
                break;
            }
        }
    }

    void build_final_row() {
        const int B = inst.border_color;
        const int FIN = hfinal();
        for (int wb = 0; wb < 2; ++wb) {
            for (int ib = 0; ib < 2; ++ib) {
                for (int mark : {kMarkNone, kMarkIn}) {
                    add_tile(cell(wb, ib, mark), FIN, B, FIN);
                    add_tile(cell(wb, ib, mark), FIN, B, B);
                }
            }
        }
        // Only a halted machine reading 1 may close the tableau.
        for (int ib = 0; ib < 2; ++ib) {
            add_tile(cell(1, ib, mark_w(halted())), FIN, B, FIN);
            add_tile(cell(1, ib, mark_w(halted())), FIN, B, B);
            add_tile(cell(1, ib, mark_wi(halted())), FIN, B, FIN);
            add_tile(cell(1, ib, mark_wi(halted())), FIN, B, B);
        }
        add_tile(rail(), B, B, FIN);
    }
};

}  // namespace

TableauReduction reduce_to_tiling(const InversionTask& task, uint64_t S, int m) {
    if (!task.verifier_program)
        throw std::invalid_argument("reduce_to_tiling: task has no verifier program");
    if (S + 2 > kMaxTableauSide)
        throw std::invalid_argument("reduce_to_tiling: step bound exceeds the grid cap");
    if (m < 0 || uint64_t(m) > S)
        throw std::invalid_argument("reduce_to_tiling: witness bits must satisfy 0 <= m <= S");

    Builder builder(*task.verifier_program, S, m);
    builder.build();

    TableauReduction out;
    out.instance = std::move(builder.inst);
    out.witness_map = std::move(builder.wmap);
    out.step_bound = S;
    validate(out.instance);
    return out;
}

}  // namespace kts
