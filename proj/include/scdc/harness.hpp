#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/dyadic.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"
#include "scdc/sampler.hpp"

namespace scdc {

struct CutCompressResult {
    BitString codeword;
    uint64_t steps = 0;
};

struct CutDecompressResult {
    std::optional<BitString> output;
    uint64_t steps = 0;
};

// Any compressor/decompressor pair, not just this repo's codec. decompress_fn
// must be deterministic given its seed; `serial` opts out of trial fan-out.
struct CompressorUnderTest {
    std::function<CutCompressResult(const BitString& x, DyadicProb delta, RngSeed rng)>
        compress_fn;
    std::function<CutDecompressResult(const BitString& codeword, RngSeed rng)> decompress_fn;
    bool serial = false;
};

// The repo codec wrapped for the harness; decode failures of every kind
// (malformed wire, not-found) surface as an empty output.
CompressorUnderTest make_codec_cut(SamplerSpec spec, Rational eps);

using LengthBudget = std::function<size_t(DyadicProb)>;

// floor((1 + gamma') * log2(1/delta') + C * (log2 n)^C)
LengthBudget power_length_budget(double gamma_prime, int C, int n);

struct GuessOutcome {
    int q = 0;
    size_t codeword_bits = 0;
    bool length_ok = false;
    bool recovered = false;  // decoded back to y
    bool accepted = false;   // length_ok && recovered && within step budget
    uint64_t decode_steps = 0;
};

struct DistinguisherRun {
    bool accepted = false;
    std::vector<GuessOutcome> guesses;  // q = 0..ell
};

// Sweeps the guess grid delta'_q = 2^q/2^ell, q = 0..ell, reusing one
// compressor seed and one decompressor seed across the whole sweep. Accepts
// iff some q stays within the length budget and decodes y back within
// step_budget. Requires ell <= |y|/2.
DistinguisherRun run_distinguisher(const CompressorUnderTest& cut, const BitString& y, int ell,
                                   const LengthBudget& budget, uint64_t step_budget, RngSeed rng);

struct DistinguisherReport {
    int trials = 0;
    int ell = 0;
    uint64_t structured_accepts = 0;
    uint64_t uniform_accepts = 0;
    Rational accept_structured{0, 1};
    Rational accept_uniform{0, 1};
    Rational gap{0, 1};  // structured minus uniform
    // accepted counts per guess index q, [0] structured side, [1] uniform side
    std::vector<std::array<uint64_t, 2>> per_guess;
};

// `trials` runs per side: y drawn from `structured` versus y uniform on n
// bits. Honors SCDC_THREADS for fan-out (results independent of the thread
// count; every trial derives its own seed by index).
DistinguisherReport distinguisher_report(const CompressorUnderTest& cut,
                                         const SamplerSpec& structured, int n, int ell,
                                         const LengthBudget& budget, uint64_t step_budget,
                                         int trials, RngSeed rng);

// min(1, 2^(k+1)/2^n): the fraction of n-bit strings any fixed deterministic
// decoder can produce from inputs of length <= k.
Rational counting_bound(int k, int n);

// Kraft mass of the sd-encoded codewords, exact.
DyadicSum kraft_sum(const std::vector<BitString>& codewords);
bool kraft_audit(const std::vector<BitString>& codewords);  // mass <= 1

// Probability mass (aligned lists) of codewords whose sd-encoded length is
// at most max_bits.
Rational short_mass(const std::vector<BitString>& codewords, const std::vector<Rational>& probs,
                    size_t max_bits);

struct RecoveryAudit {
    uint64_t inputs = 0;
    uint64_t distinct = 0;
    uint64_t bound = 0;  // 2^(k+1)
    bool ok = false;
};

// Feeds every bit string of length 0..k to `decode` and counts the distinct
// n-bit outputs against the counting bound.
RecoveryAudit recovery_audit(const std::function<std::optional<BitString>(const BitString&)>& decode,
                             int k, int n);

// SCDC_THREADS, clamped to [1, 64]; 1 when unset or unparsable.
int harness_thread_count();

}  // namespace scdc
