// Compares the serial reference executor against the OpenMP executor on a
// fixed phase-search workload and checks they produce identical reports.

#include <chrono>
#include <cstdio>

#include "kts/problems.hpp"
#include "kts/search.hpp"

using namespace kts;
using Clock = std::chrono::steady_clock;

namespace {

double run_once(const InversionTask& task, int max_k, const ExecPolicy& policy,
                SearchReport* out) {
    SearchConfig cfg;
    cfg.max_k = max_k;
    cfg.policy = policy;
    auto start = Clock::now();
    SearchReport report = invert(task, cfg);
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (out) *out = report;
    return secs;
}

}  // namespace

int main(int argc, char** argv) {
    int max_k = argc > 1 ? std::atoi(argv[1]) : 26;
    if (max_k < 1 || max_k > kHardPhaseCap) {
        std::fprintf(stderr, "usage: phase_bench [max_k <= 28]\n");
        return 2;
    }

    // An exhausting workload: no witness exists, so every phase runs fully.
    CnfFormula unsat;
    unsat.num_vars = 1;
    unsat.clauses = {{1}, {-1}};
    InversionTask task = make_sat_task(unsat);

    std::printf("phase search to k=%d on an unsatisfiable task\n", max_k);
    std::printf("%-10s %10s %14s\n", "executor", "seconds", "steps/sec");

    SearchReport serial_report;
    double serial_secs = run_once(task, max_k, ExecPolicy::serial(), &serial_report);
    std::printf("%-10s %10.3f %14.3e\n", "serial", serial_secs,
                double(serial_report.total_steps) / serial_secs);

    if (!parallel_executor_available()) {
        std::printf("parallel executor not built (no OpenMP)\n");
        return 0;
    }

    SearchReport parallel_report;
    double parallel_secs = run_once(task, max_k, ExecPolicy::parallel(), &parallel_report);
    std::printf("%-10s %10.3f %14.3e\n", "parallel", parallel_secs,
                double(parallel_report.total_steps) / parallel_secs);

    bool identical = serial_report.to_json(false) == parallel_report.to_json(false);
    std::printf("reports identical: %s\n", identical ? "yes" : "NO");
    std::printf("speedup: %.2fx\n", serial_secs / parallel_secs);
    return identical ? 0 : 1;
}
