#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kts/problems.hpp"
#include "kts/rational.hpp"
#include "kts/search.hpp"

namespace kts {

enum class InverterKind { OptimalKt, NativeBruteForce };

// Both inverters consume an InversionTask and report an integer step count in
// the shared cost model: machine opcode steps plus verifier steps for the
// phase search; per-candidate verifier steps for the native enumerator.
struct InverterSpec {
    InverterKind kind = InverterKind::OptimalKt;
    SearchConfig search;                         // OptimalKt parameters
    uint64_t native_candidate_cap = uint64_t(1) << 22;  // NativeBruteForce guard
};

struct ProblemInstance {
    enum class Kind { Identity, Sat, ThreeCol, Tiling };
    Kind kind = Kind::Identity;
    std::string id;
    std::variant<BitString, CnfFormula, Graph, TilingInstance> payload;

    InversionTask to_task() const;
};

struct InverterRun {
    bool found = false;
    uint64_t steps = 0;
    std::optional<int> kt;  // witness kt (phase search only)
};

InverterRun run_inverter(const InverterSpec& spec, const ProblemInstance& instance);

struct BenchRecord {
    std::string instance_id;
    InverterRun first;   // steps_optimal column
    InverterRun second;  // steps_native column
    std::optional<Rational> ratio;  // first.steps / second.steps, both found
    uint64_t wall_micros = 0;       // informational only; steps are the metric
};

struct SpeedupReport {
    uint64_t c = 10;
    std::string family;
    std::vector<BenchRecord> records;
    std::vector<std::string> subset;  // instance ids with ratio >= c
    uint64_t compared = 0;            // records with a defined ratio
    uint64_t not_found_first = 0;
    uint64_t not_found_second = 0;
    std::optional<Rational> ratio_min, ratio_median, ratio_max;
    uint64_t wall_micros_total = 0;  // secondary; omitted from byte-stable reports
    // Finite sample disclaimer, included in every report.
    std::string scope_note;

    std::string to_csv() const;
    std::string to_json(bool with_timestamp) const;
};

// Families are finite, deterministically ordered instance generators.
struct FamilySpec {
    enum class Kind { ThreeColAll, IdentityAll, SatRandom };
    Kind kind = Kind::ThreeColAll;
    int nmax = 4;        // 3col: vertices; identity: max string length
    int vars = 3;        // sat
    int clauses = 4;     // sat
    int count = 20;      // sat
    uint64_t seed = 1;   // sat

    std::vector<ProblemInstance> generate() const;
    std::string describe() const;
};

// "3col-n4", "identity-len3", "sat-v3-c4-n20-s7".
FamilySpec parse_family_name(const std::string& name);
// One family per line: "3col nmax=4" | "identity maxlen=3" |
// "sat vars=3 clauses=4 count=20 seed=7". The first non-comment line is used.
FamilySpec parse_family_file(const std::string& path);

struct BenchLimits {
    size_t max_instances = size_t(-1);
};

SpeedupReport run_bench(const FamilySpec& family,
                        const std::pair<InverterSpec, InverterSpec>& inverters, uint64_t c,
                        const BenchLimits& limits);

// first.steps / second.steps as an exact rational; empty when either inverter
// fails to find a witness.
std::optional<Rational> overhead_factor(const ProblemInstance& instance,
                                        const InverterSpec& first, const InverterSpec& second);

}  // namespace kts
