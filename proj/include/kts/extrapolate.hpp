#pragma once

#include <optional>
#include <vector>

#include "kts/machine.hpp"
#include "kts/phase.hpp"
#include "kts/rational.hpp"

namespace kts {

// A program that reproduces the observed data and keeps going: run on empty
// input within the phase budget, it halts with an output that extends the
// data by at least one bit.
struct Hypothesis {
    ProgramCode program;
    BitString output;
    uint64_t gen_steps = 0;
    Dyadic weight;
};

enum class WeightScheme {
    ProgramLength,  // 2^-|p| (default)
    KtValue,        // 2^-(|p| + ceil_log2(gen_steps))
};

struct ExtrapolateConfig {
    int max_k = 18;
    uint32_t work_tape_limit = uint32_t(1) << 16;
    WeightScheme scheme = WeightScheme::ProgramLength;
    ExecPolicy policy;
};

struct Prediction {
    BitString data;
    int max_k = 0;
    WeightScheme scheme = WeightScheme::ProgramLength;
    std::optional<Rational> p1;  // empty when no hypotheses were found
    Dyadic total_weight;
    Dyadic weight_next_one;
    std::vector<Hypothesis> hypotheses;

    bool no_hypotheses() const { return total_weight.is_zero(); }
    std::string to_json(bool with_timestamp) const;
};

// Every program of length <= max_k that, on empty input and fuel
// phase_budget(max_k, |p|), halts with an output extending `data`.
// Deterministic (length, lex) order.
std::vector<Hypothesis> find_hypotheses(const BitString& data, const ExtrapolateConfig& config);

// Weight fraction of hypotheses whose next bit is 1.
Prediction predict_next(const BitString& data, const ExtrapolateConfig& config);

}  // namespace kts
