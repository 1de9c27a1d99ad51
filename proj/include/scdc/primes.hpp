#pragma once

#include <cstdint>

#include "scdc/rng.hpp"

namespace scdc {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

struct PrimeDraw {
    uint64_t prime;
    uint64_t attempts;  // candidates tested, for step accounting
};

// Uniform over the primes in [lo, hi]. Narrow ranges are enumerated; wide
// ranges use rejection sampling, which is exact too. Throws NoPrimeError when
// the interval contains no prime. Requires hi <= 2^62.
PrimeDraw random_prime(uint64_t lo, uint64_t hi, RngSeed rng);

}  // namespace scdc
