#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/conductor.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"

namespace scdc {

// Derived widths for the two-stage fingerprint at a given (n, k, eps).
// Everything downstream (graph shape, prime universe, serialized layout)
// is a pure function of these three inputs, which is what makes the
// fingerprint length deterministic.
struct FingerprintParams {
    int n = 0;
    int k = 0;
    Rational eps{1, 2};
    int j = 0;           // ceil(log2 1/eps)
    int d = 0;           // graph seed bits
    int m = 0;           // graph output bits, k + d + j
    uint64_t s = 0;      // worst-case pruned-list size, (1+k) * 2^(d+1)
    uint64_t p_floor = 0;  // primes drawn uniformly from [p_floor, 2*p_floor]
    int hash_width = 0;    // fixed storage width of both prime and residue
    int serialized_bits = 0;
    int delta = 0;         // serialized_bits - k, the length overhead
};

// Throws DomainError unless 1 <= k <= n and 0 < eps < 1, or when the graph
// output would not fit in a packed word.
FingerprintParams fingerprint_params(int n, int k, const Rational& eps);

// The seeded-family graph both endpoints rebuild from public data alone.
HashGraph fingerprint_graph(int n, int k, const Rational& eps);

struct PrimeHash {
    uint64_t prime = 0;
    uint64_t residue = 0;
};

// prime uniform among primes in [P, 2P], P = max(3, ceil(4*s*|x|/eps));
// residue = int(x) mod prime. `attempts` feeds the step accounting.
struct PrimeHashResult {
    PrimeHash hash;
    uint64_t attempts = 0;
};
PrimeHashResult prime_hash(const BitString& x, uint64_t s, const Rational& eps, RngSeed rng);

struct Fingerprint {
    int n = 0;
    int k = 0;
    Rational eps{1, 2};
    BitString f1;         // graph output, m bits
    BitString seed_used;  // the d seed bits behind f1 (diagnostic, not serialized)
    PrimeHash f2;

    // f1 ++ sd(prime at hash_width bits) ++ residue at hash_width bits.
    // Length depends only on (n, k, eps).
    BitString serialize() const;
    static Fingerprint deserialize(BitReader& r, int n, int k, const Rational& eps);
};

struct FingerprintResult {
    Fingerprint fp;
    uint64_t steps = 0;
};

FingerprintResult fingerprint_steps(const BitString& x, int k, const Rational& eps, RngSeed rng);
Fingerprint fingerprint(const BitString& x, int k, const Rational& eps, RngSeed rng);

// Same fingerprint with the graph seed pinned instead of drawn; the seed
// enumeration oracle iterates this over all 2^d values of rho.
Fingerprint fingerprint_at(const BitString& x, int k, const Rational& eps, uint64_t rho,
                           RngSeed prime_rng);

struct PruneResult {
    std::vector<BitString> candidates;  // collection order, no duplicates
    int levels = 0;
    bool degraded = false;  // cap hit or a level failed to shrink
    uint64_t steps = 0;
};

// Candidates of S adjacent to right node y, at most 2^(r+1) collected per
// level in lexicographic order. When a level has more neighbors than fit,
// the search recurses on the left nodes with more than a 2*eps fraction of
// heavily loaded hash slots. The output never exceeds
// (1 + ceil(log2 |S|)) * 2^(r+1) and the level count never exceeds g.n_bits();
// hitting either limit truncates and sets `degraded`.
// Requires r == g.d_bits() and |y| == g.m_bits().
PruneResult prune_suspects(const HashGraph& g, const std::vector<BitString>& S,
                           const BitString& y, int r, const Rational& eps);

struct InvertResult {
    std::optional<BitString> value;
    bool prune_degraded = false;
    uint64_t steps = 0;
};

// First pruned candidate whose residue matches fp.f2. Deterministic in
// (S, fp). Requires |S| <= 2^fp.k and graph dimensions matching fp.
InvertResult invert_with_graph(const std::vector<BitString>& S, const Fingerprint& fp,
                               const HashGraph& g);
InvertResult invert(const std::vector<BitString>& S, const Fingerprint& fp);

}  // namespace scdc
