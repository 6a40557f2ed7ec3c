#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "kts/bench.hpp"

using namespace kts;

namespace {

InverterSpec optimal_with_k(int max_k) {
    InverterSpec spec;
    spec.kind = InverterKind::OptimalKt;
    spec.search.max_k = max_k;
    return spec;
}

InverterSpec native() {
    InverterSpec spec;
    spec.kind = InverterKind::NativeBruteForce;
    return spec;
}

}  // namespace

TEST_CASE("[bench] self-comparison gives unit ratios and an empty subset") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::IdentityAll;
    family.nmax = 2;
    auto pair = std::make_pair(optimal_with_k(14), optimal_with_k(14));
    SpeedupReport report = run_bench(family, pair, 10, {});
    CHECK(report.records.size() == 7);  // strings of length 0..2
    for (const BenchRecord& r : report.records) {
        if (r.ratio) CHECK(*r.ratio == Rational(1, 1));
        CHECK(r.first.found == r.second.found);
    }
    CHECK(report.subset.empty());
    CHECK(report.compared + report.not_found_first == report.records.size());
}

TEST_CASE("[bench] ratios equal the recount quotient exactly") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::IdentityAll;
    family.nmax = 1;
    auto pair = std::make_pair(optimal_with_k(14), native());
    SpeedupReport report = run_bench(family, pair, 10, {});
    for (const BenchRecord& rec : report.records) {
        if (!rec.ratio) continue;
        CHECK(*rec.ratio == Rational(rec.first.steps, rec.second.steps));
    }
    // Subset membership is exactly ratio >= c.
    for (const BenchRecord& rec : report.records) {
        bool in_subset = std::find(report.subset.begin(), report.subset.end(),
                                   rec.instance_id) != report.subset.end();
        bool should = rec.ratio && Rational(10, 1) <= *rec.ratio;
        CHECK(in_subset == should);
    }
}

TEST_CASE("[bench] native brute force charges verifier costs per candidate") {
    ProblemInstance inst;
    inst.kind = ProblemInstance::Kind::ThreeCol;
    inst.id = "k3";
    Graph g;
    g.n = 3;
    g.edges = {{0, 1}, {0, 2}, {1, 2}};
    inst.payload = g;
    InverterRun run = run_inverter(native(), inst);
    REQUIRE(run.found);
    // Lexicographic colorings: 000110 = (0,1,2) is the seventh candidate and
    // the first proper one. Six candidates cost the full n + |E| + 1 = 7; the
    // fourth, 000011, carries color 3 and rejects at decode cost n + 1 = 4.
    CHECK(run.steps == 6 * 7 + 4);
}

TEST_CASE("[bench] overhead factor: defined exactly when both find") {
    ProblemInstance sat_inst;
    sat_inst.kind = ProblemInstance::Kind::Sat;
    sat_inst.id = "unsat";
    CnfFormula unsat;
    unsat.num_vars = 1;
    unsat.clauses = {{1}, {-1}};
    sat_inst.payload = unsat;
    CHECK(!overhead_factor(sat_inst, optimal_with_k(14), native()).has_value());

    ProblemInstance id_inst;
    id_inst.kind = ProblemInstance::Kind::Identity;
    id_inst.id = "zero";
    id_inst.payload = *BitString::parse("0");
    auto ratio = overhead_factor(id_inst, optimal_with_k(14), native());
    REQUIRE(ratio.has_value());
    InverterRun a = run_inverter(optimal_with_k(14), id_inst);
    InverterRun b = run_inverter(native(), id_inst);
    CHECK(*ratio == Rational(a.steps, b.steps));
}

TEST_CASE("[bench] empty family produces an empty report") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::SatRandom;
    family.count = 0;
    SpeedupReport report = run_bench(family, {optimal_with_k(10), native()}, 10, {});
    CHECK(report.records.empty());
    CHECK(!report.ratio_min.has_value());
    std::string json = report.to_json(false);
    CHECK(json.find("\"ratio_min\": null") != std::string::npos);
}

TEST_CASE("[bench] family generation is deterministic") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::SatRandom;
    family.vars = 3;
    family.clauses = 4;
    family.count = 5;
    family.seed = 42;
    auto a = family.generate();
    auto b = family.generate();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(std::get<CnfFormula>(a[i].payload).clauses ==
              std::get<CnfFormula>(b[i].payload).clauses);
    }
}

TEST_CASE("[bench] three-coloring family enumerates all small graphs") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::ThreeColAll;
    family.nmax = 3;
    auto instances = family.generate();
    CHECK(instances.size() == 1 + 2 + 8);  // n=1, n=2, n=3 edge subsets
}

TEST_CASE("[bench] family names parse") {
    FamilySpec f = parse_family_name("3col-n4");
    CHECK(f.kind == FamilySpec::Kind::ThreeColAll);
    CHECK(f.nmax == 4);
    FamilySpec id = parse_family_name("identity-len3");
    CHECK(id.kind == FamilySpec::Kind::IdentityAll);
    CHECK(id.nmax == 3);
    FamilySpec sat = parse_family_name("sat-v3-c4-n20-s7");
    CHECK(sat.kind == FamilySpec::Kind::SatRandom);
    CHECK(sat.vars == 3);
    CHECK(sat.clauses == 4);
    CHECK(sat.count == 20);
    CHECK(sat.seed == 7);
    CHECK_THROWS_AS(parse_family_name("nope"), std::invalid_argument);
}

TEST_CASE("[bench] family spec files parse") {
    const char* path = "/tmp/kts_family_test.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "sat vars=2 clauses=3 count=7 seed=11\n";
    }
    FamilySpec spec = parse_family_file(path);
    CHECK(spec.kind == FamilySpec::Kind::SatRandom);
    CHECK(spec.vars == 2);
    CHECK(spec.clauses == 3);
    CHECK(spec.count == 7);
    CHECK(spec.seed == 11);
    {
        std::ofstream out(path);
        out << "identity maxlen=3\n";
    }
    spec = parse_family_file(path);
    CHECK(spec.kind == FamilySpec::Kind::IdentityAll);
    CHECK(spec.nmax == 3);
    {
        std::ofstream out(path);
        out << "frobnicate x=1\n";
    }
    CHECK_THROWS_AS(parse_family_file(path), std::invalid_argument);
    std::remove(path);
}

TEST_CASE("[bench] csv header matches the documented interface") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::IdentityAll;
    family.nmax = 0;
    SpeedupReport report = run_bench(family, {optimal_with_k(10), native()}, 10, {});
    std::string csv = report.to_csv();
    CHECK(csv.rfind("instance_id,steps_optimal,steps_native,ratio_num,ratio_den,found_optimal,"
                    "found_native,kt\n",
                    0) == 0);
}

TEST_CASE("[bench] repeated runs produce identical records") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::IdentityAll;
    family.nmax = 2;
    auto pair = std::make_pair(optimal_with_k(13), native());
    SpeedupReport a = run_bench(family, pair, 10, {});
    SpeedupReport b = run_bench(family, pair, 10, {});
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_json(false) == b.to_json(false));
}

TEST_CASE("[bench] c must exceed one") {
    FamilySpec family;
    family.kind = FamilySpec::Kind::IdentityAll;
    family.nmax = 0;
    CHECK_THROWS_AS(run_bench(family, {optimal_with_k(10), native()}, 1, {}),
                    std::invalid_argument);
}
