#include "kts/search.hpp"

#include <bit>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

#include "kts/report_util.hpp"

namespace kts {

std::string iso8601_now() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

int ceil_log2(uint64_t t) {
    if (t <= 1) return 0;
    return std::bit_width(t - 1);
}

namespace {

thread_local Workspace tl_ws;

struct ProgramPool {
    std::vector<CompactProgram> all;      // (bit_length, lex) order
    std::vector<size_t> count_through_k;  // programs with bit_length <= k, index by k

    explicit ProgramPool(int max_k) {
        for (int count = 1; count <= 8; ++count) {
            if (program_bits_for_opcode_count(count) > max_k) break;
            auto batch = compact_programs_of_opcode_count(count);
            all.insert(all.end(), batch.begin(), batch.end());
        }
        count_through_k.assign(size_t(max_k) + 1, 0);
        for (int k = 0; k <= max_k; ++k) {
            size_t n = 0;
            while (n < all.size() && all[n].bit_length <= k) ++n;
            count_through_k[size_t(k)] = n;
        }
    }
};

struct WinnerDetail {
    BitString witness;
    uint64_t gen_steps = 0;
    uint64_t verify_steps = 0;
};

}  // namespace

SearchReport invert(const InversionTask& task, const SearchConfig& config) {
    if (config.max_k < 0 || config.max_k > kHardPhaseCap)
        throw std::invalid_argument("invert: max_k must lie in [0, 28]");

    ProgramPool pool(config.max_k);

    SearchReport report;
    report.task_name = task.name;
    report.x = task.x;
    report.max_k = config.max_k;
    report.policy_name =
        config.policy.mode == ExecPolicy::Mode::Parallel ? "parallel" : "serial";

    // Evaluates one program at one phase budget; pure in (index, fuel).
    auto evaluate = [&](const CompactProgram& p, uint64_t fuel) -> CandidateEval {
        CompactRun run = run_compact(p, task.x, fuel, config.work_tape_limit, tl_ws);
        if (!run.halted) return {run.steps, false};
        BitString w(tl_ws.output);
        uint64_t remaining = fuel - run.steps;
        VerifyResult vr = task.verifier(w);
        if (vr.steps > remaining) return {fuel, false};  // check ran out of budget
        return {run.steps + vr.steps, vr.accepted};
    };

    for (int k = 1; k <= config.max_k; ++k) {
        size_t candidates = pool.count_through_k[size_t(k)];
        auto eval_at = [&](size_t i) -> CandidateEval {
            const CompactProgram& p = pool.all[i];
            uint64_t fuel = phase_budget(k, p.bit_length);
            if (config.fuel_cap && fuel > config.fuel_cap) fuel = config.fuel_cap;
            return evaluate(p, fuel);
        };
        ScanOutcome outcome = scan_candidates(candidates, eval_at, config.policy);

        PhaseStats stats;
        stats.k = k;
        stats.programs_tried = outcome.candidates_counted;
        stats.steps_spent = outcome.steps_counted;
        stats.found = outcome.winner.has_value();
        report.phases.push_back(stats);
        report.total_steps += stats.steps_spent;
        report.terminal_k = k;

        if (outcome.winner) {
            const CompactProgram& p = pool.all[*outcome.winner];
            uint64_t fuel = phase_budget(k, p.bit_length);
            if (config.fuel_cap && fuel > config.fuel_cap) fuel = config.fuel_cap;
            CompactRun run = run_compact(p, task.x, fuel, config.work_tape_limit, tl_ws);
            BitString w(tl_ws.output);
            VerifyResult vr = task.verifier(w);

            KtBound bound;
            bound.program = expand(p);
            bound.gen_steps = run.steps;
            bound.verify_steps = vr.steps;
            bound.total_steps = run.steps + vr.steps;
            bound.kt = p.bit_length + ceil_log2(bound.total_steps);
            report.bound = bound;
            report.witness = w;
            report.verdict = Verdict::Found;
            return report;
        }
    }
    report.verdict = Verdict::BudgetExhausted;
    return report;
}

std::optional<KtBound> kt_upper_bound(const BitString& w, const BitString& x,
                                      const SearchConfig& config) {
    InversionTask task;
    task.name = "kt";
    task.x = x;
    task.verifier = [w](const BitString& candidate) { return verify_identity(w, candidate); };
    SearchReport report = invert(task, config);
    return report.bound;
}

std::vector<RankedCandidate> kt_rank(const std::vector<std::pair<BitString, BitString>>& candidates,
                                     const SearchConfig& config) {
    std::vector<RankedCandidate> ranked;
    ranked.reserve(candidates.size());
    for (const auto& [w, x] : candidates) {
        ranked.push_back({w, x, kt_upper_bound(w, x, config)});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedCandidate& a, const RankedCandidate& b) {
                         if (a.bound && b.bound) return a.bound->kt < b.bound->kt;
                         return a.bound.has_value() && !b.bound.has_value();
                     });
    return ranked;
}

std::string SearchReport::to_json(bool with_timestamp) const {
    nlohmann::ordered_json j;
    j["task"] = task_name;
    j["x"] = x.to_string();
    j["verdict"] = verdict == Verdict::Found ? "found" : "budget-exhausted";
    j["witness"] = witness ? nlohmann::ordered_json(witness->to_string()) : nullptr;
    if (bound) {
        nlohmann::ordered_json b;
        b["program"] = bound->program.raw.to_string();
        b["program_bits"] = bound->program.bit_length;
        b["gen_steps"] = bound->gen_steps;
        b["verify_steps"] = bound->verify_steps;
        b["total_steps"] = bound->total_steps;
        b["kt"] = bound->kt;
        j["bound"] = b;
    } else {
        j["bound"] = nullptr;
    }
    j["max_k"] = max_k;
    j["terminal_k"] = terminal_k;
    j["total_steps"] = total_steps;
    nlohmann::ordered_json phase_array = nlohmann::ordered_json::array();
    for (const PhaseStats& p : phases) {
        nlohmann::ordered_json e;
        e["k"] = p.k;
        e["programs_tried"] = p.programs_tried;
        e["steps_spent"] = p.steps_spent;
        e["found"] = p.found;
        phase_array.push_back(e);
    }
    j["phases"] = phase_array;
    if (with_timestamp) j["generated_at"] = iso8601_now();
    return j.dump(2) + "\n";
}

std::string SearchReport::phase_csv() const {
    std::string out = "k,programs_tried,steps_spent,found\n";
    for (const PhaseStats& p : phases) {
        out += std::to_string(p.k) + "," + std::to_string(p.programs_tried) + "," +
               std::to_string(p.steps_spent) + "," + (p.found ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace kts
