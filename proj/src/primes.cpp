#include "scdc/primes.hpp"

#include <vector>

#include "scdc/errors.hpp"

namespace scdc {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this base set decides primality exactly below 2^64
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeDraw random_prime(uint64_t lo, uint64_t hi, RngSeed rng) {
    if (lo > hi || hi > (1ull << 62)) throw DomainError("random_prime: bad interval");
    uint64_t width = hi - lo + 1;
    RngStream s = rng.stream();

    // Narrow interval: enumerate the primes and pick one uniformly. This also
    // decides emptiness exactly.
    if (width <= 4096) {
        std::vector<uint64_t> primes;
        uint64_t attempts = 0;
        for (uint64_t v = lo; v <= hi; ++v) {
            ++attempts;
            if (is_prime_u64(v)) primes.push_back(v);
        }
        if (primes.empty()) throw NoPrimeError("random_prime: no prime in interval");
        return {primes[s.next_below(primes.size())], attempts};
    }

    // Wide interval: rejection sampling stays exactly uniform over the primes.
    // Prime gaps below 2^62 are far smaller than 4096, so a prime exists and
    // the expected number of candidates is O(log hi).
    uint64_t attempts = 0;
    for (;;) {
        ++attempts;
        uint64_t v = lo + s.next_below(width);
        if (is_prime_u64(v)) return {v, attempts};
    }
}

}  // namespace scdc
