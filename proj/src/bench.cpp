#include "kts/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kts/report_util.hpp"

namespace kts {

namespace {

const char* kScopeNote =
    "finite sample only: ratios over a finite instance prefix are evidence, not an answer "
    "to any question about infinite instance subsets";

BitString nth_bitstring(uint64_t value, int bits) {
    BitString w;
    for (int i = bits - 1; i >= 0; --i) w.push_back((value >> i) & 1);
    return w;
}

// Native brute force: candidates in a fixed order, each charged its full
// verifier cost (decode + checks), stopping at the first accept.
InverterRun native_invert(const ProblemInstance& instance, const InversionTask& task,
                          uint64_t candidate_cap) {
    InverterRun run;
    uint64_t tried = 0;
    auto attempt = [&](const BitString& w) -> bool {
        VerifyResult vr = task.verifier(w);
        run.steps += vr.steps;
        ++tried;
        if (vr.accepted) {
            run.found = true;
            return true;
        }
        return tried >= candidate_cap;
    };
    if (instance.kind == ProblemInstance::Kind::Identity) {
        // (length, lex) order over all bit strings.
        for (int len = 0;; ++len) {
            for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
                if (attempt(nth_bitstring(v, len))) return run;
            }
            if (len > 62) return run;
        }
    }
    int bits = 0;
    switch (instance.kind) {
        case ProblemInstance::Kind::Sat:
            bits = std::get<CnfFormula>(instance.payload).num_vars;
            break;
        case ProblemInstance::Kind::ThreeCol:
            bits = 2 * std::get<Graph>(instance.payload).n;
            break;
        case ProblemInstance::Kind::Tiling: {
            const TilingInstance& t = std::get<TilingInstance>(instance.payload);
            bits = t.n * t.n * index_width(int(t.tiles.size()));
            break;
        }
        default:
            break;
    }
    if (bits > 62) throw std::invalid_argument("native_invert: witness space too large");
    for (uint64_t v = 0; v < (uint64_t(1) << bits); ++v) {
        if (attempt(nth_bitstring(v, bits))) return run;
    }
    return run;
}

}  // namespace

InversionTask ProblemInstance::to_task() const {
    switch (kind) {
        case Kind::Identity: return make_identity_task(std::get<BitString>(payload));
        case Kind::Sat: return make_sat_task(std::get<CnfFormula>(payload));
        case Kind::ThreeCol: return make_3col_task(std::get<Graph>(payload));
        case Kind::Tiling: return make_tiling_task(std::get<TilingInstance>(payload));
    }
    throw std::logic_error("unreachable");
}

InverterRun run_inverter(const InverterSpec& spec, const ProblemInstance& instance) {
    InversionTask task = instance.to_task();
    if (spec.kind == InverterKind::NativeBruteForce) {
        return native_invert(instance, task, spec.native_candidate_cap);
    }
    SearchReport report = invert(task, spec.search);
    InverterRun run;
    run.found = report.verdict == Verdict::Found;
    run.steps = report.total_steps;
    if (report.bound) run.kt = report.bound->kt;
    return run;
}

std::vector<ProblemInstance> FamilySpec::generate() const {
    std::vector<ProblemInstance> out;
    auto pad = [](int v) {
        std::string s = std::to_string(v);
        while (s.size() < 3) s.insert(s.begin(), '0');
        return s;
    };
    switch (kind) {
        case Kind::ThreeColAll: {
            // Every labeled graph on 1..nmax vertices, edge sets in binary order.
            int idx = 0;
            for (int n = 1; n <= nmax; ++n) {
                std::vector<std::pair<int, int>> all_edges;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
                for (uint64_t mask = 0; mask < (uint64_t(1) << all_edges.size()); ++mask) {
                    Graph g;
                    g.n = n;
                    for (size_t e = 0; e < all_edges.size(); ++e)
                        if (mask & (uint64_t(1) << e)) g.edges.push_back(all_edges[e]);
                    ProblemInstance inst;
                    inst.kind = ProblemInstance::Kind::ThreeCol;
                    inst.id = "3col-" + pad(idx++);
                    inst.payload = g;
                    out.push_back(std::move(inst));
                }
            }
            break;
        }
        case Kind::IdentityAll: {
            int idx = 0;
            for (int len = 0; len <= nmax; ++len) {
                for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
                    ProblemInstance inst;
                    inst.kind = ProblemInstance::Kind::Identity;
                    inst.id = "identity-" + pad(idx++);
                    inst.payload = nth_bitstring(v, len);
                    out.push_back(std::move(inst));
                }
            }
            break;
        }
        case Kind::SatRandom: {
            std::mt19937_64 rng(seed);
            for (int i = 0; i < count; ++i) {
                CnfFormula f;
                f.num_vars = vars;
                for (int c = 0; c < clauses; ++c) {
                    std::vector<int> clause;
                    int width = 1 + int(rng() % 3);
                    for (int l = 0; l < width; ++l) {
                        int var = 1 + int(rng() % uint64_t(vars));
                        clause.push_back(rng() % 2 ? var : -var);
                    }
                    f.clauses.push_back(clause);
                }
                ProblemInstance inst;
                inst.kind = ProblemInstance::Kind::Sat;
                inst.id = "sat-" + pad(i);
                inst.payload = f;
                out.push_back(std::move(inst));
            }
            break;
        }
    }
    return out;
}

std::string FamilySpec::describe() const {
    switch (kind) {
        case Kind::ThreeColAll: return "3col-n" + std::to_string(nmax);
        case Kind::IdentityAll: return "identity-len" + std::to_string(nmax);
        case Kind::SatRandom:
            return "sat-v" + std::to_string(vars) + "-c" + std::to_string(clauses) + "-n" +
                   std::to_string(count) + "-s" + std::to_string(seed);
    }
    return "?";
}

FamilySpec parse_family_name(const std::string& name) {
    FamilySpec spec;
    auto parse_int = [&](const std::string& s, const char* what) {
        try {
            return std::stoi(s);
        } catch (...) {
            throw std::invalid_argument(std::string("family: bad ") + what + " in '" + name + "'");
        }
    };
    if (name.rfind("3col-n", 0) == 0) {
        spec.kind = FamilySpec::Kind::ThreeColAll;
        spec.nmax = parse_int(name.substr(6), "vertex count");
        return spec;
    }
    if (name.rfind("identity-len", 0) == 0) {
        spec.kind = FamilySpec::Kind::IdentityAll;
        spec.nmax = parse_int(name.substr(12), "length");
        return spec;
    }
    if (name.rfind("sat-", 0) == 0) {
        spec.kind = FamilySpec::Kind::SatRandom;
        std::stringstream ss(name.substr(4));
        std::string part;
        while (std::getline(ss, part, '-')) {
            if (part.empty()) continue;
            char tag = part[0];
            int value = parse_int(part.substr(1), "parameter");
            if (tag == 'v') spec.vars = value;
            else if (tag == 'c') spec.clauses = value;
            else if (tag == 'n') spec.count = value;
            else if (tag == 's') spec.seed = uint64_t(value);
            else throw std::invalid_argument("family: unknown sat parameter '" + part + "'");
        }
        return spec;
    }
    throw std::invalid_argument("unknown family name: " + name);
}

FamilySpec parse_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open family file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::stringstream ss(line);
        std::string kind;
        if (!(ss >> kind) || kind == "#") continue;
        FamilySpec spec;
        if (kind == "3col") spec.kind = FamilySpec::Kind::ThreeColAll;
        else if (kind == "identity") spec.kind = FamilySpec::Kind::IdentityAll;
        else if (kind == "sat") spec.kind = FamilySpec::Kind::SatRandom;
        else
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": unknown family kind '" + kind + "'");
        std::string kv;
        while (ss >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": expected key=value, got '" + kv + "'");
            std::string key = kv.substr(0, eq);
            int value = std::stoi(kv.substr(eq + 1));
            if (key == "nmax" || key == "maxlen") spec.nmax = value;
            else if (key == "vars") spec.vars = value;
            else if (key == "clauses") spec.clauses = value;
            else if (key == "count") spec.count = value;
            else if (key == "seed") spec.seed = uint64_t(value);
            else
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": unknown key '" + key + "'");
        }
        return spec;
    }
    throw std::invalid_argument(path + ": no family line found");
}

SpeedupReport run_bench(const FamilySpec& family,
                        const std::pair<InverterSpec, InverterSpec>& inverters, uint64_t c,
                        const BenchLimits& limits) {
    if (c <= 1) throw std::invalid_argument("run_bench: c must exceed 1");
    SpeedupReport report;
    report.c = c;
    report.family = family.describe();
    report.scope_note = kScopeNote;

    std::vector<ProblemInstance> instances = family.generate();
    if (instances.size() > limits.max_instances) instances.resize(limits.max_instances);

    std::vector<Rational> ratios;
    for (const ProblemInstance& inst : instances) {
        BenchRecord rec;
        rec.instance_id = inst.id;
        auto started = std::chrono::steady_clock::now();
        rec.first = run_inverter(inverters.first, inst);
        rec.second = run_inverter(inverters.second, inst);
        rec.wall_micros = uint64_t(std::chrono::duration_cast<std::chrono::microseconds>(
                                       std::chrono::steady_clock::now() - started)
                                       .count());
        report.wall_micros_total += rec.wall_micros;
        if (!rec.first.found) ++report.not_found_first;
        if (!rec.second.found) ++report.not_found_second;
        if (rec.first.found && rec.second.found) {
            rec.ratio = Rational(rec.first.steps, rec.second.steps);
            ratios.push_back(*rec.ratio);
            ++report.compared;
            if (Rational(c, 1) <= *rec.ratio) report.subset.push_back(rec.instance_id);
        }
        report.records.push_back(std::move(rec));
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        report.ratio_min = ratios.front();
        report.ratio_max = ratios.back();
        report.ratio_median = ratios[(ratios.size() - 1) / 2];  // lower median
    }
    return report;
}

std::optional<Rational> overhead_factor(const ProblemInstance& instance, const InverterSpec& first,
                                        const InverterSpec& second) {
    InverterRun a = run_inverter(first, instance);
    InverterRun b = run_inverter(second, instance);
    if (!a.found || !b.found) return std::nullopt;
    return Rational(a.steps, b.steps);
}

std::string SpeedupReport::to_csv() const {
    std::string out = "instance_id,steps_optimal,steps_native,ratio_num,ratio_den,found_optimal,found_native,kt\n";
    for (const BenchRecord& r : records) {
        out += r.instance_id + "," + std::to_string(r.first.steps) + "," +
               std::to_string(r.second.steps) + ",";
        if (r.ratio) {
            out += std::to_string(r.ratio->num) + "," + std::to_string(r.ratio->den);
        } else {
            out += ",";
        }
        out += std::string(",") + (r.first.found ? "1" : "0") + "," + (r.second.found ? "1" : "0") + ",";
        if (r.first.kt) out += std::to_string(*r.first.kt);
        out += "\n";
    }
    return out;
}

std::string SpeedupReport::to_json(bool with_timestamp) const {
    nlohmann::ordered_json j;
    j["family"] = family;
    j["c"] = c;
    j["note"] = scope_note;
    j["instances"] = records.size();
    j["compared"] = compared;
    j["not_found_optimal"] = not_found_first;
    j["not_found_native"] = not_found_second;
    auto rational_or_null = [](const std::optional<Rational>& r) -> nlohmann::ordered_json {
        if (!r) return nullptr;
        return {{"num", r->num}, {"den", r->den}};
    };
    j["ratio_min"] = rational_or_null(ratio_min);
    j["ratio_median"] = rational_or_null(ratio_median);
    j["ratio_max"] = rational_or_null(ratio_max);
    j["speedup_subset"] = subset;
    if (with_timestamp) {
        j["wall_micros_total"] = wall_micros_total;  // secondary metric only
        j["generated_at"] = iso8601_now();
    }
    return j.dump(2) + "\n";
}

}  // namespace kts
