#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kts/bitstring.hpp"

namespace kts {

// The universal machine is a binary "bit-BF": an unbounded (capped) binary
// work tape, a read-once left-to-right input head, and an append-only binary
// output tape. Every opcode is 3 bits and costs exactly one step.
enum class Op : uint8_t {
    Halt = 0,       // stop; the program has produced its output
    Left = 1,       // move work head left (no-op at cell 0)
    Right = 2,      // move work head right (no-op at the tape limit)
    Flip = 3,       // toggle current work cell
    LoopStart = 4,  // skip past matching LoopEnd if current cell is 0
    LoopEnd = 5,    // jump back to matching LoopStart
    Read = 6,       // copy next input bit into current cell (exhausted input reads 0)
    Emit = 7,       // append current cell to the output
};

const char* op_name(Op op);

// A decoded self-delimiting program: gamma(L) header followed by exactly
// 3*L opcode bits. The header makes the program set prefix-free.
struct ProgramCode {
    BitString raw;                     // header + body, exactly the consumed bits
    std::vector<Op> ops;               // decoded opcodes, ops.size() == L
    std::vector<uint16_t> loop_match;  // per opcode: index of matching bracket (self for non-brackets)
    int bit_length = 0;                // |p| in bits == raw.size()
};

enum class FaultReason { BadHeader, UnmatchedLoop, ZeroLengthBody };

struct DecodeFault {
    FaultReason reason;
};

const char* fault_name(FaultReason r);

using DecodeResult = std::variant<ProgramCode, DecodeFault>;

// Total, deterministic decoder. The whole of `raw` must be consumed:
// a declared opcode count L takes gamma_len(L) + 3*L bits exactly.
DecodeResult decode_program(const BitString& raw);

struct MachineConfig {
    uint32_t work_tape_limit = uint32_t(1) << 16;  // cells; Right beyond is a no-op
    uint64_t fuel = 0;                             // max steps
};

struct ExecOutcome {
    enum class Kind { Halted, OutOfFuel, Fault };
    Kind kind = Kind::Fault;
    BitString output;                          // when Halted
    uint64_t steps = 0;                        // opcodes executed (exact for Halted;
                                               // consumed-so-far for OutOfFuel)
    FaultReason fault_reason = FaultReason::BadHeader;  // when Fault

    bool halted() const { return kind == Kind::Halted; }
};

// Runs a decoded program. Deterministic; each executed opcode costs one step.
// Running off the end of the program can never reach Halt, so it reports
// OutOfFuel immediately with the steps consumed up to that point.
ExecOutcome run(const ProgramCode& program, const BitString& input, const MachineConfig& config);

// decode + run in one call; decode faults surface as ExecOutcome::Kind::Fault.
ExecOutcome run_raw(const BitString& raw, const BitString& input, const MachineConfig& config);

// Extended result for callers that need the final machine configuration
// (the tableau reduction's acceptance convention inspects the final cell).
struct RunTrace {
    ExecOutcome outcome;
    uint8_t final_cell = 0;   // work cell under the head when the run ended
    uint32_t final_head = 0;  // final work head position
};

RunTrace run_traced(const ProgramCode& program, const BitString& input, const MachineConfig& config);

// --- Self-delimiting header -------------------------------------------------

// Elias-gamma code of n >= 1: floor(log2 n) zeros, then n in binary.
BitString gamma_encode(uint32_t n);
// Decodes gamma starting at bit `pos`; returns (value, next position).
std::optional<std::pair<uint32_t, size_t>> gamma_decode(const BitString& bits, size_t pos);

int gamma_length(uint32_t n);

// Total encoded bit length of a program with L opcodes, gamma_len(L) + 3L.
int program_bits_for_opcode_count(int opcode_count);
// Inverse of the above; empty when no opcode count yields `bits`.
std::optional<int> opcode_count_for_program_bits(int bits);

// --- Enumeration -------------------------------------------------------------

// Internal compact form for the search engine: opcodes packed 3 bits each.
// Only programs with at most 8 opcodes (bit length <= 31) are representable,
// which covers every phase up to the engine's hard cap.
struct CompactProgram {
    uint32_t packed = 0;   // opcode i at bits [3i, 3i+3)
    uint8_t count = 0;     // opcode count L
    uint8_t bit_length = 0;
    std::array<uint8_t, 8> match{};  // loop match table

    Op op(int i) const { return Op((packed >> (3 * i)) & 7u); }
};

// All valid programs with exactly `opcode_count` opcodes, in lexicographic
// raw-bit order (equivalently, opcode-sequence order).
std::vector<CompactProgram> compact_programs_of_opcode_count(int opcode_count);

// Streams every valid program with bit_length <= max_bits exactly once, in
// (bit_length, lexicographic raw) order.
void enumerate_programs(int max_bits, const std::function<void(const ProgramCode&)>& yield);
std::vector<ProgramCode> enumerate_programs(int max_bits);

ProgramCode expand(const CompactProgram& cp);

// Lean runner for the engine hot path. Reuses caller-provided scratch space.
struct Workspace {
    std::vector<uint8_t> tape;
    uint32_t high_water = 0;  // cells [0, high_water] may be dirty
    std::vector<uint8_t> output;
};

struct CompactRun {
    bool halted = false;
    uint64_t steps = 0;
    // Output bits live in ws.output when halted.
};

CompactRun run_compact(const CompactProgram& p, const BitString& input, uint64_t fuel,
                       uint32_t tape_limit, Workspace& ws);

// --- Text formats ------------------------------------------------------------

// One opcode name per line.
std::string disassemble(const ProgramCode& program);

// '0'/'1' serialization of the raw program bits.
std::string to_bit_line(const ProgramCode& program);

}  // namespace kts
