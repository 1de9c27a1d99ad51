#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"

namespace scdc {

enum class SamplerKind { uniform_subset, biased_bit, dyadic_table, prg_stretch, micro_vm };

struct DyadicEntry {
    BitString value;
    Rational prob;  // numerator over a power-of-two denominator
};

// Description of a polynomial-time sampler producing n-bit strings. The
// description itself serializes to a short, canonical bit string (code_bits),
// which is what certificates charge for. Every kind consumes exact dyadic
// randomness, so declared probabilities are hit exactly, not approximately.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::uniform_subset;
    int n = 0;

    std::vector<BitString> subset;    // uniform-subset, sorted, distinct
    Rational bias;                    // biased-bit: P(bit = 1), 0 < p < 1
    std::vector<DyadicEntry> table;   // dyadic-table, sorted by value, sums to 1
    BitString program;                // micro-vm
    uint64_t step_budget = 0;         // micro-vm

    static SamplerSpec uniform_subset_of(std::vector<BitString> strings);
    static SamplerSpec biased(int n, Rational p);
    static SamplerSpec dyadic(std::vector<DyadicEntry> entries);
    static SamplerSpec prg(int n);
    static SamplerSpec micro(int n, BitString program, uint64_t step_budget);

    // sd(kind tag) ++ sd(params blob); parses back bit-exactly.
    BitString code_bits() const;
    static SamplerSpec from_code_bits(const BitString& bits);

    // Analytic step count per run (measured for micro-vm, which reports its
    // declared budget as the bound used in accounting).
    uint64_t declared_steps() const;

    std::string kind_name() const;
};

struct SampleResult {
    BitString output;
    uint64_t steps = 0;
};

// One run of the sampler. `n` must match the declared output length.
// Micro-vm programs that overrun their budget raise BudgetError; programs
// that halt with the wrong output length are rejected as malformed.
SampleResult run_sampler(const SamplerSpec& spec, int n, RngSeed rng);

// Exact output probability, for kinds with enumerable distributions.
Rational declared_probability(const SamplerSpec& spec, const BitString& x);

struct SuspectsResult {
    std::vector<BitString> set;  // sorted, deduplicated
    uint64_t steps = 0;
};

// K independent runs (seeds derived per index), collected as a sorted set.
SuspectsResult build_suspects_steps(const SamplerSpec& spec, int n, uint64_t K, RngSeed rng);
std::vector<BitString> build_suspects(const SamplerSpec& spec, int n, uint64_t K, RngSeed rng);

// Toy length-doubling generator behind prg-stretch: an injective map from
// n/2-bit seeds built from two public fixed permutations.
BitString prg_expand(uint64_t z, int n);
// Inverse membership test: the seed if y is in the generator's range.
std::optional<uint64_t> prg_seed_of(const BitString& y);

// Named samplers used across tests and harnesses.
const std::vector<std::pair<std::string, SamplerSpec>>& builtin_samplers();
SamplerSpec builtin_sampler(std::string_view name);

}  // namespace scdc
