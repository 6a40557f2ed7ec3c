// ktsearch: universal phase search over a tiny self-delimiting machine.
//
// Subcommands: invert, kt, predict, reduce, bench, disasm.
// Exit codes: 0 success/found, 1 nothing found within budget, 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kts/bench.hpp"
#include "kts/extrapolate.hpp"
#include "kts/machine_programs.hpp"
#include "kts/problems.hpp"
#include "kts/reduction.hpp"
#include "kts/report_util.hpp"
#include "kts/search.hpp"
#include "kts/tiling_solver.hpp"

using namespace kts;

namespace {

struct GlobalOpts {
    int max_k = 18;
    uint64_t fuel_cap = 0;
    uint32_t tape_limit = uint32_t(1) << 16;
    std::string format = "json";
    std::string out_path;
    bool no_timestamp = false;
    bool serial = false;
    int jobs = 0;
};

SearchConfig search_config(const GlobalOpts& g) {
    SearchConfig cfg;
    cfg.max_k = g.max_k;
    cfg.fuel_cap = g.fuel_cap;
    cfg.work_tape_limit = g.tape_limit;
    cfg.policy = g.serial ? ExecPolicy::serial() : ExecPolicy::parallel(g.jobs);
    return cfg;
}

void write_out(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + g.out_path);
    out << text;
}

BitString parse_bits_arg(const std::string& s, const char* what) {
    auto b = BitString::parse(s);
    if (!b) throw std::runtime_error(std::string(what) + " must be a string of 0s and 1s");
    return *b;
}

// Per-problem task construction shared by invert and reduce.
struct TaskOpts {
    std::string problem;
    std::string graph_path;
    std::string cnf_path;
    std::string tiling_path;
    std::string x_bits;

    void attach(CLI::App* cmd) {
        cmd->add_option("--problem", problem, "identity | 3col | sat | tiling")->required();
        cmd->add_option("--graph", graph_path, "DIMACS-like edge list (3col)");
        cmd->add_option("--cnf", cnf_path, "DIMACS cnf file (sat)");
        cmd->add_option("--tiling", tiling_path, "tiling instance file");
        cmd->add_option("--x", x_bits, "target bit string (identity)");
    }

    InversionTask build() const {
        if (problem == "identity") return make_identity_task(parse_bits_arg(x_bits, "--x"));
        if (problem == "3col") {
            if (graph_path.empty()) throw std::runtime_error("3col needs --graph");
            return make_3col_task(load_graph_dimacs(graph_path));
        }
        if (problem == "sat") {
            if (cnf_path.empty()) throw std::runtime_error("sat needs --cnf");
            return make_sat_task(load_cnf_dimacs(cnf_path));
        }
        if (problem == "tiling") {
            if (tiling_path.empty()) throw std::runtime_error("tiling needs --tiling");
            return make_tiling_task(load_tiling(tiling_path));
        }
        throw std::runtime_error("unknown problem kind: " + problem);
    }
};

std::string report_text(const SearchReport& report, const GlobalOpts& g) {
    if (g.format == "csv") return report.phase_csv();
    if (g.format == "text") {
        std::string out;
        out += "task: " + report.task_name + "\n";
        out += "verdict: " +
               std::string(report.verdict == Verdict::Found ? "found" : "budget-exhausted") + "\n";
        if (report.witness) out += "witness: " + report.witness->to_string() + "\n";
        if (report.bound) {
            out += "program: " + report.bound->program.raw.to_string() + "\n";
            out += "kt: " + std::to_string(report.bound->kt) + "\n";
        }
        out += "terminal_k: " + std::to_string(report.terminal_k) + "\n";
        out += "total_steps: " + std::to_string(report.total_steps) + "\n";
        return out;
    }
    return report.to_json(!g.no_timestamp);
}

int cmd_invert(const GlobalOpts& g, const TaskOpts& topts, const std::string& witness_out) {
    InversionTask task = topts.build();
    SearchReport report = invert(task, search_config(g));
    write_out(g, report_text(report, g));
    if (!witness_out.empty() && report.witness) {
        std::ofstream out(witness_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + witness_out);
        out << report.witness->to_string() << "\n";
    }
    return report.verdict == Verdict::Found ? 0 : 1;
}

int cmd_kt(const GlobalOpts& g, const std::string& w_bits, const std::string& x_bits,
           const std::string& rank_path) {
    SearchConfig cfg = search_config(g);
    if (!rank_path.empty()) {
        std::ifstream in(rank_path);
        if (!in) throw std::runtime_error("cannot open " + rank_path);
        std::vector<std::pair<BitString, BitString>> candidates;
        std::string w, x;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            ss >> w;
            if (!(ss >> x)) x = "";
            auto wb = BitString::parse(w == "-" ? "" : w);
            auto xb = BitString::parse(x == "-" ? "" : x);
            if (!wb || !xb)
                throw std::runtime_error(rank_path + ":" + std::to_string(line_no) +
                                         ": expected '<w> <x>' bit strings");
            candidates.emplace_back(*wb, *xb);
        }
        if (candidates.empty()) throw std::runtime_error(rank_path + ": no candidates");
        auto ranked = kt_rank(candidates, cfg);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        bool any = false;
        for (const auto& r : ranked) {
            nlohmann::ordered_json row;
            row["w"] = r.w.to_string();
            row["x"] = r.x.to_string();
            if (r.bound) {
                row["kt"] = r.bound->kt;
                any = true;
            } else {
                row["kt"] = nullptr;
            }
            rows.push_back(row);
        }
        nlohmann::ordered_json j;
        j["max_k"] = cfg.max_k;
        j["ranked"] = rows;
        if (!g.no_timestamp) j["generated_at"] = iso8601_now();
        write_out(g, j.dump(2) + "\n");
        return any ? 0 : 1;
    }

    BitString w = parse_bits_arg(w_bits, "--w");
    BitString x = parse_bits_arg(x_bits, "--x");
    auto bound = kt_upper_bound(w, x, cfg);
    nlohmann::ordered_json j;
    j["w"] = w.to_string();
    j["x"] = x.to_string();
    j["max_k"] = cfg.max_k;
    j["found"] = bound.has_value();
    if (bound) {
        j["program"] = bound->program.raw.to_string();
        j["program_bits"] = bound->program.bit_length;
        j["gen_steps"] = bound->gen_steps;
        j["verify_steps"] = bound->verify_steps;
        j["total_steps"] = bound->total_steps;
        j["kt"] = bound->kt;
    } else {
        j["kt"] = nullptr;
    }
    if (!g.no_timestamp) j["generated_at"] = iso8601_now();
    write_out(g, j.dump(2) + "\n");
    return bound ? 0 : 1;
}

int cmd_predict(const GlobalOpts& g, const std::string& data_bits, const std::string& weighting) {
    ExtrapolateConfig cfg;
    cfg.max_k = g.max_k;
    cfg.work_tape_limit = g.tape_limit;
    cfg.policy = g.serial ? ExecPolicy::serial() : ExecPolicy::parallel(g.jobs);
    if (weighting == "kt") cfg.scheme = WeightScheme::KtValue;
    else if (weighting != "length")
        throw std::runtime_error("--weight must be 'length' or 'kt'");
    Prediction pred = predict_next(parse_bits_arg(data_bits, "--data"), cfg);
    write_out(g, pred.to_json(!g.no_timestamp));
    return pred.no_hypotheses() ? 1 : 0;
}

int cmd_reduce(const GlobalOpts& g, const TaskOpts& topts, uint64_t steps, int witness_bits,
               bool auto_steps, const std::string& map_out, bool solve) {
    InversionTask task = topts.build();
    if (!task.verifier_program)
        throw std::runtime_error("this problem kind has no verifier program for the reduction");
    int m = witness_bits >= 0 ? witness_bits : int(task.witness_bits);
    uint64_t S = steps;
    if (auto_steps) {
        if (m > 20) throw std::runtime_error("--auto-steps supports at most 20 witness bits");
        auto needed = max_accepting_steps(*task.verifier_program, m, 1 << 14);
        if (!needed)
            throw std::runtime_error(
                "--auto-steps: no witness is accepted; pass --steps explicitly");
        S = *needed;
    }
    TableauReduction red = reduce_to_tiling(task, S, m);
    write_out(g, format_tiling(red.instance));
    if (!map_out.empty()) {
        nlohmann::ordered_json j;
        j["witness_bits"] = red.witness_map.m;
        j["step_bound"] = red.step_bound;
        nlohmann::ordered_json tiles = nlohmann::ordered_json::object();
        for (const auto& [tile, bit] : red.witness_map.bit_of_tile)
            tiles[std::to_string(tile)] = int(bit);
        j["bit_of_tile"] = tiles;
        std::ofstream out(map_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + map_out);
        out << j.dump(2) << "\n";
    }
    if (solve) {
        SolveResult solved = solve_tiling_bruteforce(red.instance);
        if (solved.status == SolveResult::Status::Overflow)
            throw std::runtime_error("tiling solver hit its attempt cap");
        if (solved.status == SolveResult::Status::Unsolvable) {
            std::cerr << "unsolvable within " << S << " steps\n";
            return 1;
        }
        BitString w = red.witness_map.extract(solved.placement, red.instance.n);
        std::cerr << "witness: " << w.to_string() << " verified: "
                  << (task.verifier(w).accepted ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_bench(const GlobalOpts& g, const std::string& family_name,
              const std::string& family_file, uint64_t c, const std::string& out_prefix,
              size_t max_instances) {
    FamilySpec family =
        family_file.empty() ? parse_family_name(family_name) : parse_family_file(family_file);
    InverterSpec optimal;
    optimal.kind = InverterKind::OptimalKt;
    optimal.search = search_config(g);
    InverterSpec native;
    native.kind = InverterKind::NativeBruteForce;
    BenchLimits limits;
    limits.max_instances = max_instances;
    SpeedupReport report = run_bench(family, {optimal, native}, c, limits);
    if (out_prefix.empty()) {
        write_out(g, g.format == "csv" ? report.to_csv() : report.to_json(!g.no_timestamp));
    } else {
        std::ofstream csv(out_prefix + ".csv", std::ios::binary);
        std::ofstream json(out_prefix + ".json", std::ios::binary);
        if (!csv || !json) throw std::runtime_error("cannot write " + out_prefix + ".{csv,json}");
        csv << report.to_csv();
        json << report.to_json(!g.no_timestamp);
    }
    return 0;
}

int cmd_disasm(const GlobalOpts& g, const std::string& bits_arg, const std::string& in_path) {
    std::vector<std::string> lines;
    if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw std::runtime_error("cannot open " + in_path);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) lines.push_back(line);
        }
    } else {
        lines.push_back(bits_arg);
    }
    std::string out;
    for (const std::string& line : lines) {
        BitString raw = parse_bits_arg(line, "program");
        DecodeResult decoded = decode_program(raw);
        if (std::holds_alternative<DecodeFault>(decoded)) {
            throw std::runtime_error(std::string("decode fault: ") +
                                     fault_name(std::get<DecodeFault>(decoded).reason));
        }
        if (lines.size() > 1) out += "# " + line + "\n";
        out += disassemble(std::get<ProgramCode>(decoded));
    }
    write_out(g, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal phase search, time-refined complexity bounds, and reductions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--max-k", g.max_k, "phase cap (<= 28)")->capture_default_str();
    app.add_option("--fuel-cap", g.fuel_cap, "extra per-run fuel cap (0 = none)");
    app.add_option("--tape-limit", g.tape_limit, "work tape cells")->capture_default_str();
    app.add_option("--format", g.format, "json | csv | text")->capture_default_str();
    app.add_option("--out", g.out_path, "write the report here instead of stdout");
    app.add_flag("--no-timestamp", g.no_timestamp, "omit generated_at for byte-stable output");
    app.add_flag("--serial", g.serial, "force the serial phase executor");
    app.add_option("--jobs", g.jobs, "parallel worker count (0 = default)");

    auto* invert_cmd = app.add_subcommand("invert", "search for a verifying witness");
    TaskOpts invert_task;
    invert_task.attach(invert_cmd);
    std::string witness_out;
    invert_cmd->add_option("--witness-out", witness_out, "also write the witness bits here");

    auto* kt_cmd = app.add_subcommand("kt", "witnessed complexity upper bound");
    std::string kt_w, kt_x, kt_rank_path;
    kt_cmd->add_option("--w", kt_w, "output bit string");
    kt_cmd->add_option("--x", kt_x, "input bit string")->default_str("");
    kt_cmd->add_option("--rank", kt_rank_path, "file of '<w> <x>' pairs to rank ('-' = empty)");

    auto* predict_cmd = app.add_subcommand("predict", "extrapolate the next bit");
    std::string data_bits, weighting = "length";
    predict_cmd->add_option("--data", data_bits, "observed bit string")->required();
    predict_cmd->add_option("--weight", weighting, "length | kt")->capture_default_str();

    auto* reduce_cmd = app.add_subcommand("reduce", "emit the run-acceptance tiling");
    TaskOpts reduce_task;
    reduce_task.attach(reduce_cmd);
    uint64_t reduce_steps = 0;
    int reduce_m = -1;
    bool auto_steps = false, reduce_solve = false;
    std::string map_out;
    reduce_cmd->add_option("--steps", reduce_steps, "step bound S (grid side is S+2)");
    reduce_cmd->add_option("--witness-bits", reduce_m, "witness length m (default: task's)");
    reduce_cmd->add_flag("--auto-steps", auto_steps, "set S to the worst accepting run");
    reduce_cmd->add_option("--map-out", map_out, "write the witness extraction map (json)");
    reduce_cmd->add_flag("--solve", reduce_solve, "solve the tiling and extract the witness");

    auto* bench_cmd = app.add_subcommand("bench", "phase search vs native brute force");
    std::string family_name, family_file, out_prefix;
    uint64_t bench_c = 10;
    size_t bench_max_instances = size_t(-1);
    bench_cmd->add_option("--family", family_name, "builtin family, e.g. 3col-n4");
    bench_cmd->add_option("--family-file", family_file, "family spec file");
    bench_cmd->add_option("--c", bench_c, "speed-up threshold")->capture_default_str();
    bench_cmd->add_option("--out-prefix", out_prefix, "write PREFIX.csv and PREFIX.json");
    bench_cmd->add_option("--max-instances", bench_max_instances, "truncate the family");

    auto* disasm_cmd = app.add_subcommand("disasm", "decode a program to opcode names");
    std::string disasm_bits, disasm_in;
    disasm_cmd->add_option("--bits", disasm_bits, "program bits on the command line");
    disasm_cmd->add_option("--in", disasm_in, "file with one program per line");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.max_k < 0 || g.max_k > kHardPhaseCap) throw std::runtime_error("--max-k must be in [0, 28]");
        if (invert_cmd->parsed()) return cmd_invert(g, invert_task, witness_out);
        if (kt_cmd->parsed()) return cmd_kt(g, kt_w, kt_x, kt_rank_path);
        if (predict_cmd->parsed()) return cmd_predict(g, data_bits, weighting);
        if (reduce_cmd->parsed())
            return cmd_reduce(g, reduce_task, reduce_steps, reduce_m, auto_steps, map_out,
                              reduce_solve);
        if (bench_cmd->parsed())
            return cmd_bench(g, family_name, family_file, bench_c, out_prefix,
                             bench_max_instances);
        if (disasm_cmd->parsed()) return cmd_disasm(g, disasm_bits, disasm_in);
    } catch (const ParseError& e) {
        std::cerr << "error: line " << e.line << ", column " << e.column << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
