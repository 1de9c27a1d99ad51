#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/dyadic.hpp"
#include "scdc/invertible.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"
#include "scdc/sampler.hpp"

namespace scdc {

enum class CodewordMode { trivial, fingerprint };

// Wire layout, MSB-first:
//   mode bit ++ sd(n) ++ sd(log2 K) ++ body
//   body, trivial mode:     x verbatim (n bits)
//   body, fingerprint mode: sd(epsNum) ++ sd(epsDen) ++ Fingerprint
// eps rides in the body because decompression rebuilds the fingerprint
// widths from (n, k, eps) and has no other channel for it. Serialized
// length is a function of (n, log2 K, eps) only.
struct Codeword {
    CodewordMode mode = CodewordMode::trivial;
    int n = 0;
    int log2_suspects = 0;  // log2 K; suspect count at decompression is 2^this
    Rational eps{1, 2};     // caller's eps; internal stages run at eps/3
    BitString trivial_body;
    Fingerprint fp;

    // log2 K clamped into the fingerprint's legal range [1, n]
    int fingerprint_k() const;

    BitString serialize() const;
    static Codeword deserialize(const BitString& bits);
    size_t serialized_bits() const { return serialize().size(); }
};

struct CompressResult {
    Codeword codeword;
    uint64_t steps = 0;
};

// K = smallest power of two at least ceil(ln(1/eps) / delta). Trivial mode
// whenever delta < 2^-|x|. Never consults any sampler.
CompressResult compress(const BitString& x, DyadicProb delta, const Rational& eps, RngSeed rng);

struct DecompressResult {
    std::optional<BitString> output;
    CodewordMode mode = CodewordMode::trivial;
    bool prune_degraded = false;
    uint64_t steps = 0;
};

DecompressResult decompress(const SamplerSpec& spec, const Codeword& code, RngSeed rng);

struct Certificate {
    BitString representation;  // sd(codeword wire) ++ sampler code bits
    Codeword codeword;
    uint64_t t_c = 0;     // compression steps
    uint64_t t_d = 0;     // worst successful decompression steps
    int trials = 0;
    int successes = 0;
    uint64_t gamma_rkt = 0;        // |representation| + ceil(log2 tD)
    uint64_t gamma_two_sided = 0;  // |codeword wire| + ceil(log2 (tC + tD))
};

// Runs compress once, then `trials` decompressions on fresh derived seeds.
// Throws CertifyError when the success rate drops below 1 - 2*sqrt(eps).
Certificate certify(const BitString& x, DyadicProb delta, const Rational& eps,
                    const SamplerSpec& spec, RngSeed rng, int trials = 64);

// Codeword container file: magic "SCDC", version byte, the serialized
// codeword packed MSB-first, zero padding to a byte boundary, and a final
// byte holding the pad length.
std::vector<uint8_t> codeword_file_bytes(const Codeword& cw);
Codeword codeword_from_file_bytes(const std::vector<uint8_t>& bytes);
void write_codeword_file(const std::string& path, const Codeword& cw);
Codeword read_codeword_file(const std::string& path);

// Largest dyadic probability 2^-j at or below r; feeds estimates into
// compress, which wants a lower bound on the sampling probability.
DyadicProb dyadic_floor(const Rational& r);

}  // namespace scdc
