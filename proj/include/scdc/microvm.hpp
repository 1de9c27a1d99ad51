#pragma once

#include <cstdint>

#include "scdc/bitstring.hpp"
#include "scdc/rng.hpp"

namespace scdc {

struct SamplerSpec;

// Bit-level machine shared by the micro-vm sampler kind and the program
// enumeration lab. A program is a plain bit string, decoded front to back:
//
//   00                LIT   emit the rest of the program literally, halt
//   01 cccc           CPY   copy c+1 tape bits to the output
//   10 b cccc         RPT   emit bit b c+1 times
//   11 v...           RSS   run the attached sampler and emit its output,
//                           seeded from the raw tape when v is empty, else
//                           from a pseudorandom function of (tape, v); halts
//
// Anything else (truncated fields, RSS without an attached sampler) aborts.
// Reads past the end of a fixed tape return 0, so a program's behaviour is
// total and deterministic in (program, tape).
//
// Step costs: 1 per instruction decode, 1 per emitted bit, 1 per tape bit
// read (RSS reads 64), plus the attached sampler's declared steps. Execution
// stops once the budget is hit, keeping whatever output exists by then.
struct VmContext {
    const SamplerSpec* sampler = nullptr;
    int sampler_n = 0;
};

struct VmResult {
    BitString output;
    uint64_t steps = 0;
    bool halted = false;        // ran to completion
    bool out_of_budget = false;
    bool aborted = false;       // malformed program or missing context
    bool read_tape = false;     // whether any tape bit influenced the run
};

VmResult run_program(const BitString& program, const BitString& tape, uint64_t budget,
                     const VmContext& ctx = {});

// Same machine against an unbounded random tape (micro-vm sampler kind).
// RSS-with-index is not available here: there is no finite tape to key the
// pseudorandom function from.
VmResult run_program_stream(const BitString& program, RngStream& tape, uint64_t budget,
                            const VmContext& ctx = {});

}  // namespace scdc
