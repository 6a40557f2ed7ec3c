#include <doctest.h>

#include "kts/machine_programs.hpp"
#include "kts/problems.hpp"
#include "kts/reduction.hpp"
#include "kts/tiling_solver.hpp"

using namespace kts;

namespace {

BitString bits(const std::string& s) { return *BitString::parse(s); }

BitString nth(uint64_t v, int m) {
    BitString w;
    for (int i = m - 1; i >= 0; --i) w.push_back((v >> i) & 1);
    return w;
}

bool some_witness_accepted(const InversionTask& task, uint64_t S, int m) {
    for (uint64_t v = 0; v < (uint64_t(1) << m); ++v) {
        if (machine_accepts(*task.verifier_program, nth(v, m), S)) return true;
    }
    return false;
}

// Solvable iff some witness is accepted within S steps; any extracted witness
// must be machine-accepted and pass the native verifier.
void check_round_trip(const InversionTask& task, uint64_t S, int m) {
    TableauReduction red = reduce_to_tiling(task, S, m);
    CHECK(red.instance.n == int(S) + 2);
    SolveResult solved = solve_tiling_bruteforce(red.instance);
    REQUIRE(solved.status != SolveResult::Status::Overflow);
    bool expected = some_witness_accepted(task, S, m);
    CHECK((solved.status == SolveResult::Status::Solved) == expected);
    if (solved.status == SolveResult::Status::Solved) {
        BitString w = red.witness_map.extract(solved.placement, red.instance.n);
        CHECK(int(w.size()) == m);
        CHECK(machine_accepts(*task.verifier_program, w, S));
        CHECK(task.verifier(w).accepted);
        // The solver's placement is itself a valid tiling witness.
        CHECK(verify_tiling(red.instance,
                            encode_placement(solved.placement, int(red.instance.tiles.size())))
                  .accepted);
    }
}

}  // namespace

TEST_CASE("[reduction] empty identity: solvable with the empty witness") {
    InversionTask task = make_identity_task(bits(""));
    TableauReduction red = reduce_to_tiling(task, 4, 0);
    SolveResult solved = solve_tiling_bruteforce(red.instance);
    REQUIRE(solved.status == SolveResult::Status::Solved);
    BitString w = red.witness_map.extract(solved.placement, red.instance.n);
    CHECK(w.empty());
    CHECK(task.verifier(w).accepted);
}

TEST_CASE("[reduction] unsatisfiable formula gives an unsolvable tiling") {
    CnfFormula f;
    f.num_vars = 1;
    f.clauses = {{1}, {-1}};
    InversionTask task = make_sat_task(f);
    TableauReduction red = reduce_to_tiling(task, 50, 1);
    SolveResult solved = solve_tiling_bruteforce(red.instance);
    CHECK(solved.status == SolveResult::Status::Unsolvable);
}

TEST_CASE("[reduction] triangle coloring: extracted witness is a proper coloring") {
    Graph g;
    g.n = 3;
    g.edges = {{0, 1}, {0, 2}, {1, 2}};
    InversionTask task = make_3col_task(g);
    auto S = max_accepting_steps(*task.verifier_program, 6, 1 << 12);
    REQUIRE(S.has_value());
    TableauReduction red = reduce_to_tiling(task, *S, 6);
    SolveResult solved = solve_tiling_bruteforce(red.instance);
    REQUIRE(solved.status == SolveResult::Status::Solved);
    BitString w = red.witness_map.extract(solved.placement, red.instance.n);
    auto colors = decode_coloring(w, 3);
    REQUIRE(colors.has_value());
    CHECK((*colors)[0] != (*colors)[1]);
    CHECK((*colors)[0] != (*colors)[2]);
    CHECK((*colors)[1] != (*colors)[2]);
}

TEST_CASE("[reduction] round trips across identity tasks") {
    for (std::string target : {"", "0", "1", "01", "11", "100", "0110", "10101"}) {
        InversionTask task = make_identity_task(bits(target));
        uint64_t S = 2 * target.size() + 8;
        check_round_trip(task, S, int(target.size()));
    }
}

TEST_CASE("[reduction] round trips across sat tasks") {
    std::vector<CnfFormula> formulas;
    {
        CnfFormula f;
        f.num_vars = 1;
        f.clauses = {{1}};
        formulas.push_back(f);
    }
    {
        CnfFormula f;
        f.num_vars = 1;
        f.clauses = {{1}, {-1}};  // unsolvable
        formulas.push_back(f);
    }
    {
        CnfFormula f;
        f.num_vars = 2;
        f.clauses = {{1, 2}};
        formulas.push_back(f);
    }
    {
        CnfFormula f;
        f.num_vars = 2;
        f.clauses = {{-1}, {-2}};
        formulas.push_back(f);
    }
    for (const CnfFormula& f : formulas) {
        InversionTask task = make_sat_task(f);
        auto S = max_accepting_steps(*task.verifier_program, f.num_vars, 1 << 12);
        uint64_t bound = S ? *S : 60;  // unsolvable tasks still need a bound
        check_round_trip(task, bound, f.num_vars);
    }
}

TEST_CASE("[reduction] round trips across three-coloring tasks") {
    std::vector<Graph> graphs;
    {
        Graph g;
        g.n = 2;
        g.edges = {{0, 1}};
        graphs.push_back(g);
    }
    {
        Graph g;
        g.n = 1;
        graphs.push_back(g);
    }
    for (const Graph& g : graphs) {
        InversionTask task = make_3col_task(g);
        auto S = max_accepting_steps(*task.verifier_program, 2 * g.n, 1 << 12);
        REQUIRE(S.has_value());
        check_round_trip(task, *S, 2 * g.n);
    }
}

TEST_CASE("[reduction] a short budget starves an otherwise fine task") {
    InversionTask task = make_identity_task(bits("11"));
    auto needed = accepting_steps(*task.verifier_program, bits("11"), 1 << 12);
    REQUIRE(needed.has_value());
    // One step short: unsolvable.
    check_round_trip(task, *needed - 1, 2);
    // Exactly enough: solvable.
    check_round_trip(task, *needed, 2);
}

TEST_CASE("[reduction] precondition violations are rejected") {
    InversionTask task = make_identity_task(bits("0"));
    CHECK_THROWS_AS(reduce_to_tiling(task, 80, 1), std::invalid_argument);   // grid cap
    CHECK_THROWS_AS(reduce_to_tiling(task, 10, 11), std::invalid_argument);  // m > S
    InversionTask bare;
    bare.x = bits("");
    bare.verifier = [](const BitString&) { return VerifyResult{true, 1}; };
    CHECK_THROWS_AS(reduce_to_tiling(bare, 10, 0), std::invalid_argument);   // no program
}

TEST_CASE("[reduction] grid side stays within the cap") {
    InversionTask task = make_identity_task(bits("0"));
    TableauReduction red = reduce_to_tiling(task, 62, 1);
    CHECK(red.instance.n == 64);
    CHECK_THROWS_AS(reduce_to_tiling(task, 63, 1), std::invalid_argument);
}
