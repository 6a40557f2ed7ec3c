#include "kts/phase.hpp"

#include <stdexcept>

#ifdef KTS_HAVE_OPENMP
#include <omp.h>
#endif

namespace kts {

uint64_t phase_budget(int k, int p_len) {
    if (k < 0 || p_len < 1) throw std::invalid_argument("phase_budget: k >= 0, p_len >= 1");
    if (p_len > k) return 0;
    return uint64_t(1) << (k - p_len);
}

bool parallel_executor_available() {
#ifdef KTS_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

namespace {

constexpr size_t kBlock = 32768;

ScanOutcome scan_serial(size_t n, const std::function<CandidateEval(size_t)>& eval) {
    ScanOutcome out;
    for (size_t i = 0; i < n; ++i) {
        CandidateEval e = eval(i);
        out.steps_counted += e.steps;
        ++out.candidates_counted;
        if (e.accepted) {
            out.winner = i;
            break;
        }
    }
    return out;
}

#ifdef KTS_HAVE_OPENMP
ScanOutcome scan_parallel(size_t n, const std::function<CandidateEval(size_t)>& eval,
                          int threads) {
    ScanOutcome out;
    std::vector<CandidateEval> results(kBlock);
    for (size_t base = 0; base < n && !out.winner; base += kBlock) {
        size_t count = std::min(kBlock, n - base);
#pragma omp parallel for schedule(dynamic, 512) num_threads(threads > 0 ? threads : omp_get_max_threads())
        for (long i = 0; i < long(count); ++i) {
            results[size_t(i)] = eval(base + size_t(i));
        }
        // Deterministic fold: only candidates up to the first acceptance count.
        for (size_t i = 0; i < count; ++i) {
            out.steps_counted += results[i].steps;
            ++out.candidates_counted;
            if (results[i].accepted) {
                out.winner = base + i;
                break;
            }
        }
    }
    return out;
}
#endif

}  // namespace

ScanOutcome scan_candidates(size_t n, const std::function<CandidateEval(size_t)>& eval,
                            const ExecPolicy& policy) {
#ifdef KTS_HAVE_OPENMP
    if (policy.mode == ExecPolicy::Mode::Parallel) return scan_parallel(n, eval, policy.threads);
#endif
    (void)policy;
    return scan_serial(n, eval);
}

}  // namespace kts
