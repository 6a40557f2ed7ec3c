#pragma once

// Independent reference implementations used as test oracles. These
// deliberately share no code with the library: the decoder parses headers its
// own way, the interpreter keeps a sparse tape and rescans for bracket
// matches at run time, and the searcher is a plain double loop over
// (phase, program) pairs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kts/problems.hpp"

namespace oracle {

// Decodes a '0'/'1' string as a self-delimiting program; empty when invalid.
std::optional<std::string> ref_decode(const std::string& bits);

// All valid rawstrings with length <= max_bits, by decoding every bit string,
// in (length, lex) order. Returns the raw encodings.
std::vector<std::string> ref_enumerate(int max_bits);

struct RefRun {
    bool halted = false;
    uint64_t steps = 0;
    std::string output;  // '0'/'1'
};

// Fuel-bounded reference interpreter over the decoded opcode string.
RefRun ref_run(const std::string& raw_bits, const std::string& input, uint64_t fuel,
               uint32_t tape_limit = uint32_t(1) << 16);

struct RefFound {
    int k = 0;
    std::string program_bits;
    std::string witness;
    uint64_t gen_steps = 0;
    uint64_t verify_steps = 0;
    int kt = 0;
};

// Brute force over phases 1..max_k and every valid program of length <= k,
// running each with fuel 2^(k-len) shared between generation and the verifier.
std::optional<RefFound> ref_invert(const kts::InversionTask& task, int max_k);

}  // namespace oracle
