#include "kts/extrapolate.hpp"

#include <stdexcept>

#include <json.hpp>

#include "kts/report_util.hpp"
#include "kts/search.hpp"

namespace kts {

namespace {

thread_local Workspace tl_ws;

}  // namespace

std::vector<Hypothesis> find_hypotheses(const BitString& data, const ExtrapolateConfig& config) {
    if (config.max_k < 0 || config.max_k > kHardPhaseCap)
        throw std::invalid_argument("find_hypotheses: max_k must lie in [0, 28]");

    std::vector<CompactProgram> all;
    for (int count = 1; count <= 8; ++count) {
        if (program_bits_for_opcode_count(count) > config.max_k) break;
        auto batch = compact_programs_of_opcode_count(count);
        all.insert(all.end(), batch.begin(), batch.end());
    }

    const BitString empty_input;
    auto consistent = [&](size_t i) -> bool {
        const CompactProgram& p = all[i];
        uint64_t fuel = phase_budget(config.max_k, p.bit_length);
        CompactRun run = run_compact(p, empty_input, fuel, config.work_tape_limit, tl_ws);
        if (!run.halted) return false;
        if (tl_ws.output.size() <= data.size()) return false;
        for (size_t j = 0; j < data.size(); ++j)
            if (tl_ws.output[j] != data[j]) return false;
        return true;
    };

    // Parallel pre-filter; the kept set is rebuilt serially in order.
    std::vector<uint8_t> keep(all.size(), 0);
    auto eval = [&](size_t i) -> CandidateEval {
        keep[i] = consistent(i) ? 1 : 0;
        return {0, false};  // never "accepts": scan the whole range
    };
    scan_candidates(all.size(), eval, config.policy);

    std::vector<Hypothesis> out;
    for (size_t i = 0; i < all.size(); ++i) {
        if (!keep[i]) continue;
        const CompactProgram& p = all[i];
        uint64_t fuel = phase_budget(config.max_k, p.bit_length);
        CompactRun run = run_compact(p, empty_input, fuel, config.work_tape_limit, tl_ws);
        Hypothesis h;
        h.program = expand(p);
        h.output = BitString(tl_ws.output);
        h.gen_steps = run.steps;
        int exponent = p.bit_length;
        if (config.scheme == WeightScheme::KtValue) exponent += ceil_log2(run.steps);
        h.weight = Dyadic::pow2_neg(exponent);
        out.push_back(std::move(h));
    }
    return out;
}

Prediction predict_next(const BitString& data, const ExtrapolateConfig& config) {
    Prediction pred;
    pred.data = data;
    pred.max_k = config.max_k;
    pred.scheme = config.scheme;
    pred.hypotheses = find_hypotheses(data, config);
    for (const Hypothesis& h : pred.hypotheses) {
        pred.total_weight += h.weight;
        if (h.output[data.size()] == 1) pred.weight_next_one += h.weight;
    }
    if (!pred.total_weight.is_zero()) {
        pred.p1 = dyadic_ratio(pred.weight_next_one, pred.total_weight);
    }
    return pred;
}

std::string Prediction::to_json(bool with_timestamp) const {
    nlohmann::ordered_json j;
    j["data"] = data.to_string();
    j["max_k"] = max_k;
    j["weighting"] = scheme == WeightScheme::KtValue ? "kt" : "program-length";
    if (p1) {
        j["p1"] = {{"num", p1->num}, {"den", p1->den}};
    } else {
        j["p1"] = nullptr;
    }
    j["no_hypotheses"] = no_hypotheses();
    Rational total = total_weight.is_zero() ? Rational(0, 1) : total_weight.to_rational();
    j["total_weight"] = {{"num", total.num}, {"den", total.den}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Hypothesis& h : hypotheses) {
        nlohmann::ordered_json row;
        row["program"] = h.program.raw.to_string();
        row["program_bits"] = h.program.bit_length;
        row["output"] = h.output.to_string();
        row["gen_steps"] = h.gen_steps;
        Rational w = h.weight.to_rational();
        row["weight"] = {{"num", w.num}, {"den", w.den}};
        rows.push_back(row);
    }
    j["hypotheses"] = rows;
    if (with_timestamp) j["generated_at"] = iso8601_now();
    return j.dump(2) + "\n";
}

}  // namespace kts
