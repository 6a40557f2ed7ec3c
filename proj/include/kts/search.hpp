#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kts/machine.hpp"
#include "kts/phase.hpp"
#include "kts/problems.hpp"

namespace kts {

// Phases beyond this are refused: phase k hands 2^(k-4) steps to the shortest
// programs, so 28 keeps worst-case runs in the hundreds of millions of steps.
inline constexpr int kHardPhaseCap = 28;

// ceil(log2 t) with t >= 1; ceil(log2 1) == 0.
int ceil_log2(uint64_t t);

// Witnessed upper bound on the time-refined description complexity of an
// output: program length plus ceil(log2) of the steps to generate and check it.
struct KtBound {
    ProgramCode program;
    uint64_t gen_steps = 0;
    uint64_t verify_steps = 0;
    uint64_t total_steps = 0;  // gen + verify
    int kt = 0;                // bit_length + ceil_log2(total_steps)
};

struct SearchConfig {
    int max_k = 18;                              // phases 1..max_k; <= kHardPhaseCap
    uint32_t work_tape_limit = uint32_t(1) << 16;
    uint64_t fuel_cap = 0;                       // extra per-run cap; 0 = none
    ExecPolicy policy;
};

enum class Verdict { Found, BudgetExhausted };

struct SearchReport {
    std::string task_name;
    BitString x;
    Verdict verdict = Verdict::BudgetExhausted;
    std::optional<BitString> witness;
    std::optional<KtBound> bound;
    std::vector<PhaseStats> phases;  // one entry per phase run, k ascending
    int terminal_k = 0;              // last phase run
    int max_k = 0;
    uint64_t total_steps = 0;        // sum of per-phase steps_spent
    std::string policy_name;         // executor used; run metadata, not serialized

    std::string to_json(bool with_timestamp) const;
    std::string phase_csv() const;
};

// The inverter: explores candidate programs in phases. Phase k runs every
// program of length l <= k for 2^(k-l) steps, verification included; the first
// verifying output in (phase, length, lex) order wins. A BudgetExhausted
// verdict cannot distinguish "no witness" from "not enough budget".
SearchReport invert(const InversionTask& task, const SearchConfig& config);

// Minimal witnessed kt over all (program, fuel) pairs explored through phase
// max_k such that the machine maps x to exactly w. The equality check is
// charged like verify_identity, |w|+1 steps on acceptance, from the same fuel.
std::optional<KtBound> kt_upper_bound(const BitString& w, const BitString& x,
                                      const SearchConfig& config);

struct RankedCandidate {
    BitString w;
    BitString x;
    std::optional<KtBound> bound;
};

// Stable sort by kt ascending; candidates without a bound keep input order at
// the back.
std::vector<RankedCandidate> kt_rank(const std::vector<std::pair<BitString, BitString>>& candidates,
                                     const SearchConfig& config);

}  // namespace kts
