#pragma once

#include <optional>

#include "kts/bitstring.hpp"
#include "kts/machine.hpp"

namespace kts {

struct Graph;
struct CnfFormula;

// Verifier checks realized as machine programs. Convention: the program reads
// the witness from the input tape and accepts by halting with the current work
// cell set to 1. A failed check parks the machine in a tight loop instead of
// halting, so only accepting runs need to fit a step bound.

// Accepts exactly w == x (witness length |x|).
ProgramCode compile_identity_checker(const BitString& x);

// Accepts exactly the satisfying assignments (witness length num_vars).
ProgramCode compile_sat_checker(const CnfFormula& f);

// Accepts exactly the proper 3-colorings (witness length 2n). Uses compact
// parity circuits for a triangle and for a single edge; general graphs go
// through a copy-and-check compilation that costs more steps.
ProgramCode compile_3col_checker(const Graph& g);

// Runs the program on witness w. True when it halts within `fuel` steps with
// the current work cell equal to 1.
bool machine_accepts(const ProgramCode& program, const BitString& w, uint64_t fuel);

// Number of steps an accepting run takes on witness w; empty when the run does
// not accept within `fuel`.
std::optional<uint64_t> accepting_steps(const ProgramCode& program, const BitString& w, uint64_t fuel);

// Max accepting steps over all witnesses of length m; empty when no witness is
// accepted within `fuel`. Enumerates 2^m runs, so m is capped at 20.
std::optional<uint64_t> max_accepting_steps(const ProgramCode& program, int m, uint64_t fuel);

}  // namespace kts
