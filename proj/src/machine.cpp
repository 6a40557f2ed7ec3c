#include "kts/machine.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace kts {

const char* op_name(Op op) {
    switch (op) {
        case Op::Halt: return "HALT";
        case Op::Left: return "LEFT";
        case Op::Right: return "RIGHT";
        case Op::Flip: return "FLIP";
        case Op::LoopStart: return "LOOP-START";
        case Op::LoopEnd: return "LOOP-END";
        case Op::Read: return "READ";
        case Op::Emit: return "EMIT";
    }
    return "?";
}

const char* fault_name(FaultReason r) {
    switch (r) {
        case FaultReason::BadHeader: return "bad-header";
        case FaultReason::UnmatchedLoop: return "unmatched-loop";
        case FaultReason::ZeroLengthBody: return "zero-length-body";
    }
    return "?";
}

BitString gamma_encode(uint32_t n) {
    assert(n >= 1);
    int w = std::bit_width(n);  // number of binary digits
    BitString out;
    out.reserve(2 * w - 1);
    for (int i = 0; i < w - 1; ++i) out.push_back(0);
    for (int i = w - 1; i >= 0; --i) out.push_back((n >> i) & 1);
    return out;
}

int gamma_length(uint32_t n) {
    return 2 * std::bit_width(n) - 1;
}

std::optional<std::pair<uint32_t, size_t>> gamma_decode(const BitString& bits, size_t pos) {
    size_t zeros = 0;
    while (pos + zeros < bits.size() && bits[pos + zeros] == 0) ++zeros;
    if (zeros > 31) return std::nullopt;
    size_t first_one = pos + zeros;
    if (first_one >= bits.size()) return std::nullopt;
    // value = 1 followed by `zeros` more bits
    if (first_one + zeros >= bits.size()) return std::nullopt;
    uint32_t value = 1;
    for (size_t i = 0; i < zeros; ++i) value = (value << 1) | bits[first_one + 1 + i];
    return std::make_pair(value, first_one + 1 + zeros);
}

int program_bits_for_opcode_count(int opcode_count) {
    return gamma_length(uint32_t(opcode_count)) + 3 * opcode_count;
}

std::optional<int> opcode_count_for_program_bits(int bits) {
    // program_bits_for_opcode_count is strictly increasing, so scan.
    for (int count = 1; program_bits_for_opcode_count(count) <= bits; ++count) {
        if (program_bits_for_opcode_count(count) == bits) return count;
    }
    return std::nullopt;
}

namespace {

// Builds the loop match table; empty result means bracket mismatch.
bool build_loop_match(const std::vector<Op>& ops, std::vector<uint16_t>& match) {
    match.assign(ops.size(), 0);
    std::vector<uint16_t> stack;
    for (size_t i = 0; i < ops.size(); ++i) {
        match[i] = uint16_t(i);
        if (ops[i] == Op::LoopStart) {
            stack.push_back(uint16_t(i));
        } else if (ops[i] == Op::LoopEnd) {
            if (stack.empty()) return false;
            uint16_t open = stack.back();
            stack.pop_back();
            match[open] = uint16_t(i);
            match[i] = open;
        }
    }
    return stack.empty();
}

}  // namespace

DecodeResult decode_program(const BitString& raw) {
    auto header = gamma_decode(raw, 0);
    if (!header) return DecodeFault{FaultReason::BadHeader};
    auto [count, body_start] = *header;
    if (count == 0) return DecodeFault{FaultReason::ZeroLengthBody};
    if (raw.size() != body_start + 3 * size_t(count)) return DecodeFault{FaultReason::BadHeader};

    ProgramCode code;
    code.ops.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        size_t base = body_start + 3 * i;
        uint8_t v = uint8_t((raw[base] << 2) | (raw[base + 1] << 1) | raw[base + 2]);
        code.ops.push_back(Op(v));
    }
    if (!build_loop_match(code.ops, code.loop_match)) return DecodeFault{FaultReason::UnmatchedLoop};
    code.raw = raw;
    code.bit_length = int(raw.size());
    return code;
}

namespace {

struct TapeView {
    std::vector<uint8_t>& cells;
    uint32_t limit;
    uint32_t head = 0;
    uint32_t high_water = 0;

    uint8_t get() const { return cells[head]; }
    void set(uint8_t v) { cells[head] = v; }
};

template <typename OpsAt, typename MatchAt, typename EmitBit>
uint64_t run_core(size_t op_count, OpsAt ops_at, MatchAt match_at, const BitString& input,
                  uint64_t fuel, TapeView& tape, EmitBit emit, bool& halted) {
    uint64_t steps = 0;
    size_t pc = 0;
    size_t in_pos = 0;
    halted = false;
    while (steps < fuel) {
        if (pc >= op_count) break;  // ran off the end; Halt is unreachable
        ++steps;
        switch (ops_at(pc)) {
            case Op::Halt:
                halted = true;
                return steps;
            case Op::Left:
                if (tape.head > 0) --tape.head;
                break;
            case Op::Right:
                if (tape.head + 1 < tape.limit) {
                    ++tape.head;
                    if (tape.head > tape.high_water) tape.high_water = tape.head;
                }
                break;
            case Op::Flip:
                tape.set(tape.get() ^ 1);
                break;
            case Op::LoopStart:
                if (tape.get() == 0) pc = match_at(pc);  // land on LoopEnd; ++pc skips past
                break;
            case Op::LoopEnd:
                pc = match_at(pc);
                continue;  // re-execute the LoopStart test next iteration
            case Op::Read:
                tape.set(in_pos < input.size() ? input[in_pos] : 0);
                ++in_pos;
                break;
            case Op::Emit:
                emit(tape.get());
                break;
        }
        ++pc;
    }
    return steps;
}

thread_local Workspace tl_workspace;

void prepare_tape(Workspace& ws, uint32_t limit) {
    if (ws.tape.size() < limit) ws.tape.resize(limit, 0);
    // Only the dirtied prefix needs clearing.
    std::fill(ws.tape.begin(), ws.tape.begin() + ws.high_water + 1, 0);
    ws.high_water = 0;
}

}  // namespace

ExecOutcome run(const ProgramCode& program, const BitString& input, const MachineConfig& config) {
    return run_traced(program, input, config).outcome;
}

RunTrace run_traced(const ProgramCode& program, const BitString& input, const MachineConfig& config) {
    Workspace& ws = tl_workspace;
    uint32_t limit = config.work_tape_limit ? config.work_tape_limit : 1;
    prepare_tape(ws, limit);
    ws.output.clear();

    TapeView tape{ws.tape, limit};
    bool halted = false;
    uint64_t steps = run_core(
        program.ops.size(), [&](size_t i) { return program.ops[i]; },
        [&](size_t i) { return program.loop_match[i]; }, input, config.fuel, tape,
        [&](uint8_t b) { ws.output.push_back(b); }, halted);
    ws.high_water = tape.high_water;

    RunTrace trace;
    trace.final_cell = tape.get();
    trace.final_head = tape.head;
    trace.outcome.steps = steps;
    if (halted) {
        trace.outcome.kind = ExecOutcome::Kind::Halted;
        trace.outcome.output = BitString(ws.output);
    } else {
        trace.outcome.kind = ExecOutcome::Kind::OutOfFuel;
    }
    return trace;
}

ExecOutcome run_raw(const BitString& raw, const BitString& input, const MachineConfig& config) {
    DecodeResult decoded = decode_program(raw);
    if (std::holds_alternative<DecodeFault>(decoded)) {
        ExecOutcome out;
        out.kind = ExecOutcome::Kind::Fault;
        out.fault_reason = std::get<DecodeFault>(decoded).reason;
        return out;
    }
    return run(std::get<ProgramCode>(decoded), input, config);
}

CompactRun run_compact(const CompactProgram& p, const BitString& input, uint64_t fuel,
                       uint32_t tape_limit, Workspace& ws) {
    prepare_tape(ws, tape_limit ? tape_limit : 1);
    ws.output.clear();
    TapeView tape{ws.tape, tape_limit ? tape_limit : 1};
    bool halted = false;
    uint64_t steps = run_core(
        p.count, [&](size_t i) { return p.op(int(i)); }, [&](size_t i) { return p.match[i]; },
        input, fuel, tape, [&](uint8_t b) { ws.output.push_back(b); }, halted);
    ws.high_water = tape.high_water;
    return CompactRun{halted, steps};
}

namespace {

// Depth-first generation of loop-balanced opcode sequences in lexicographic
// order. `balance` counts open LoopStarts.
void gen_sequences(int remaining, int balance, CompactProgram& cur,
                   const std::function<void(const CompactProgram&)>& yield) {
    if (remaining == 0) {
        if (balance == 0) yield(cur);
        return;
    }
    for (uint8_t opv = 0; opv < 8; ++opv) {
        Op op = Op(opv);
        int nb = balance;
        if (op == Op::LoopStart) {
            nb = balance + 1;
            if (nb > remaining - 1) continue;  // no room to close
        } else if (op == Op::LoopEnd) {
            if (balance == 0) continue;
            nb = balance - 1;
        } else if (nb > remaining - 1) {
            continue;  // open brackets cannot all close
        }
        int idx = cur.count;
        cur.packed |= uint32_t(opv) << (3 * idx);
        cur.count = uint8_t(idx + 1);
        gen_sequences(remaining - 1, nb, cur, yield);
        cur.count = uint8_t(idx);
        cur.packed &= ~(uint32_t(7) << (3 * idx));
    }
}

void fill_match(CompactProgram& p) {
    std::array<uint8_t, 8> stack{};
    int sp = 0;
    for (int i = 0; i < p.count; ++i) {
        p.match[i] = uint8_t(i);
        Op op = p.op(i);
        if (op == Op::LoopStart) {
            stack[sp++] = uint8_t(i);
        } else if (op == Op::LoopEnd) {
            uint8_t open = stack[--sp];
            p.match[open] = uint8_t(i);
            p.match[i] = open;
        }
    }
}

}  // namespace

std::vector<CompactProgram> compact_programs_of_opcode_count(int opcode_count) {
    if (opcode_count < 1 || opcode_count > 8)
        throw std::invalid_argument("compact programs support 1..8 opcodes");
    std::vector<CompactProgram> out;
    CompactProgram cur;
    cur.bit_length = uint8_t(program_bits_for_opcode_count(opcode_count));
    gen_sequences(opcode_count, 0, cur, [&](const CompactProgram& p) {
        CompactProgram complete = p;
        complete.bit_length = uint8_t(program_bits_for_opcode_count(opcode_count));
        fill_match(complete);
        out.push_back(complete);
    });
    return out;
}

ProgramCode expand(const CompactProgram& cp) {
    ProgramCode code;
    code.raw = gamma_encode(cp.count);
    for (int i = 0; i < cp.count; ++i) {
        uint8_t v = uint8_t(cp.op(i));
        code.raw.push_back((v >> 2) & 1);
        code.raw.push_back((v >> 1) & 1);
        code.raw.push_back(v & 1);
        code.ops.push_back(cp.op(i));
    }
    code.bit_length = int(code.raw.size());
    bool ok = build_loop_match(code.ops, code.loop_match);
    assert(ok);
    (void)ok;
    return code;
}

void enumerate_programs(int max_bits, const std::function<void(const ProgramCode&)>& yield) {
    for (int count = 1; program_bits_for_opcode_count(count) <= max_bits; ++count) {
        if (count > 8) break;  // bit length 31+; beyond every supported phase
        for (const CompactProgram& cp : compact_programs_of_opcode_count(count)) {
            yield(expand(cp));
        }
    }
}

std::vector<ProgramCode> enumerate_programs(int max_bits) {
    std::vector<ProgramCode> out;
    enumerate_programs(max_bits, [&](const ProgramCode& p) { out.push_back(p); });
    return out;
}

std::string disassemble(const ProgramCode& program) {
    std::string out;
    for (Op op : program.ops) {
        out += op_name(op);
        out += '\n';
    }
    return out;
}

std::string to_bit_line(const ProgramCode& program) {
    return program.raw.to_string();
}

}  // namespace kts
