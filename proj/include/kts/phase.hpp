#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace kts {

// Fuel granted to a program of p_len bits in phase k: 2^(k - p_len), or 0 when
// the program is longer than the phase. Each extra program bit halves the
// budget, so a wasted bit doubles the phase at which the same run fits.
uint64_t phase_budget(int k, int p_len);

struct PhaseStats {
    int k = 0;
    uint64_t programs_tried = 0;
    uint64_t steps_spent = 0;
    bool found = false;
};

struct ExecPolicy {
    enum class Mode { Serial, Parallel };
    Mode mode = Mode::Serial;
    int threads = 0;  // 0 = library default

    static ExecPolicy serial() { return {Mode::Serial, 0}; }
    static ExecPolicy parallel(int threads = 0) { return {Mode::Parallel, threads}; }
};

bool parallel_executor_available();

// Per-candidate evaluation result inside one phase.
struct CandidateEval {
    uint64_t steps = 0;  // steps actually charged against the phase budget
    bool accepted = false;
};

// Outcome of scanning an ordered candidate range: the first accepting index
// (if any), and how many candidates / steps count toward the phase. Steps and
// counts only include candidates at or before the winner, so the result is a
// pure function of the candidate sequence, identical for serial and parallel
// execution.
struct ScanOutcome {
    std::optional<size_t> winner;
    uint64_t candidates_counted = 0;
    uint64_t steps_counted = 0;
};

// Evaluates candidates 0..n-1 with `eval` (which must be pure) and folds the
// results deterministically. The serial path is the reference implementation;
// the parallel path evaluates fixed-size blocks with OpenMP and merges to the
// same outcome bit for bit.
ScanOutcome scan_candidates(size_t n, const std::function<CandidateEval(size_t)>& eval,
                            const ExecPolicy& policy);

}  // namespace kts
