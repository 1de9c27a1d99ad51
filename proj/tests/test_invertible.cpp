#include <set>
#include <vector>

#include "doctest.h"
#include "scdc/errors.hpp"
#include "scdc/invertible.hpp"
#include "scdc/primes.hpp"

using namespace scdc;

namespace {

std::vector<BitString> distinct_strings(size_t count, size_t n, RngStream& rng) {
    std::set<BitString> s;
    while (s.size() < count) s.insert(rng.next_bits(n));
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("derived fingerprint widths: pinned example") {
    FingerprintParams p = fingerprint_params(6, 3, Rational(1, 8));
    CHECK(p.j == 3);
    CHECK(p.d == 5);   // ceil(log2(3 + 3 + 3)) + 1
    CHECK(p.m == 11);  // 3 + 5 + 3
    CHECK(p.s == 256); // 4 * 2^6
    CHECK(p.p_floor == 49152);  // 4 * 256 * 6 * 8
    CHECK(p.hash_width == 17);  // bits of 98304
    CHECK(p.serialized_bits == 57);  // 11 + (17 + 10 + 2) + 17
    CHECK(p.delta == 54);

    CHECK_THROWS_AS(fingerprint_params(6, 0, Rational(1, 8)), DomainError);
    CHECK_THROWS_AS(fingerprint_params(6, 7, Rational(1, 8)), DomainError);
    CHECK_THROWS_AS(fingerprint_params(6, 3, Rational(1, 1)), DomainError);
}

TEST_CASE("fingerprints have parameter-determined length") {
    const Rational eps(1, 8);
    RngStream rng = RngSeed(17).stream();
    FingerprintParams p = fingerprint_params(24, 10, eps);
    for (int i = 0; i < 100; ++i) {
        Fingerprint fp = fingerprint(rng.next_bits(24), 10, eps, RngSeed(800 + i));
        CHECK(fp.serialize().size() == static_cast<size_t>(p.serialized_bits));
    }
}

TEST_CASE("fingerprints replay and serialize bit-exactly") {
    const Rational eps(1, 8);
    BitString x = RngSeed(19).stream().next_bits(16);
    FingerprintResult a = fingerprint_steps(x, 6, eps, RngSeed(21));
    FingerprintResult b = fingerprint_steps(x, 6, eps, RngSeed(21));
    CHECK(a.fp.serialize() == b.fp.serialize());
    CHECK(a.steps == b.steps);
    CHECK(a.steps >= 8 + 4 + 64 + 16);  // base + graph + one prime attempt + bits

    BitString wire = a.fp.serialize();
    BitReader r(wire);
    Fingerprint back = Fingerprint::deserialize(r, 16, 6, eps);
    CHECK(r.remaining() == 0);
    CHECK(back.serialize() == wire);
    CHECK(back.f2.prime == a.fp.f2.prime);
    CHECK(back.f2.residue == a.fp.f2.residue);

    BitString garbage;
    for (size_t i = 0; i < wire.size(); ++i) garbage.push_back(true);
    BitReader g(garbage);
    CHECK_THROWS_AS(Fingerprint::deserialize(g, 16, 6, eps), FormatError);
}

TEST_CASE("prime hash draws from the declared universe") {
    const Rational eps(1, 8);
    BitString x = RngSeed(23).stream().next_bits(20);
    // P = ceil(4 * s * n / eps) = 4 * 8 * 20 * 8
    PrimeHashResult r = prime_hash(x, 8, eps, RngSeed(25));
    CHECK(is_prime_u64(r.hash.prime));
    CHECK(r.hash.prime >= 5120);
    CHECK(r.hash.prime <= 10240);
    CHECK(r.hash.residue == x.mod_u64(r.hash.prime));
    CHECK(r.attempts >= 1);
    CHECK_THROWS_AS(prime_hash(x, 0, eps, RngSeed(1)), DomainError);
}

TEST_CASE("prime hash separates long strings at the declared rate") {
    // long inputs against a small prime universe, where collisions are
    // actually possible: bad primes / universe is well under 11%
    RngStream rng = RngSeed(27).stream();
    int collisions = 0;
    const int pairs = 400;
    for (int i = 0; i < pairs; ++i) {
        BitString x = rng.next_bits(120);
        BitString y = rng.next_bits(120);
        if (x == y) continue;
        PrimeHash h = prime_hash(x, 1, Rational(1, 2), RngSeed(9000 + i)).hash;
        if (y.mod_u64(h.prime) == h.residue) ++collisions;
    }
    CHECK(collisions <= pairs / 5);
}

TEST_CASE("full fingerprints never collide at in-range scale") {
    // at n = 16 the prime floor towers over 2^16, so distinct inputs always
    // differ in residue; only the graph stage could collide, and m = 16 bits
    const Rational eps(1, 8);
    RngStream rng = RngSeed(29).stream();
    int f1_collisions = 0;
    for (int i = 0; i < 300; ++i) {
        BitString x = rng.next_bits(16);
        BitString y = rng.next_bits(16);
        if (x == y) continue;
        uint64_t rho = static_cast<uint64_t>(i) % 32;
        RngSeed shared(7000 + i);
        Fingerprint fx = fingerprint_at(x, 8, eps, rho, shared);
        Fingerprint fy = fingerprint_at(y, 8, eps, rho, shared);
        CHECK(fx.serialize() != fy.serialize());
        if (fx.f1 == fy.f1) ++f1_collisions;
    }
    CHECK(f1_collisions <= 3);  // expectation is 300 * 2^-18
}

TEST_CASE("inversion is exact over an exhaustive seed sweep") {
    // n = 6, k = 3: d = 5, so all 32 seeds enumerate; every x in every S
    // must come back for at least a 1 - eps fraction of seeds
    const Rational eps(1, 8);
    RngStream rng = RngSeed(31).stream();
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<BitString> S = distinct_strings(8, 6, rng);
        for (const BitString& x : S) {
            int good = 0;
            RngSeed prime_rng(4000 + rep);
            for (uint64_t rho = 0; rho < 32; ++rho) {
                Fingerprint fp = fingerprint_at(x, 3, eps, rho, prime_rng);
                InvertResult inv = invert(S, fp);
                if (inv.value && *inv.value == x) ++good;
            }
            CHECK(good >= 28);
        }
    }
}

TEST_CASE("inversion succeeds with probability 1 on an injective graph") {
    // k = n and the identity-on-input graph: y pins x down completely,
    // the prime hash only confirms
    const Rational eps(1, 8);
    RngStream rng = RngSeed(37).stream();
    HashGraph g = HashGraph::identity_input(6, 5);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<BitString> S = distinct_strings(40, 6, rng);
        const BitString& x = S[rep % S.size()];

        Fingerprint fp;
        fp.n = 6;
        fp.k = 6;
        fp.eps = eps;
        fp.f1 = x;
        fp.f2 = prime_hash(x, fingerprint_params(6, 6, eps).s, eps, RngSeed(600 + rep)).hash;
        InvertResult inv = invert_with_graph(S, fp, g);
        REQUIRE(inv.value.has_value());
        CHECK(*inv.value == x);
        CHECK(!inv.prune_degraded);
    }
}

TEST_CASE("invert refuses oversized suspect sets") {
    const Rational eps(1, 8);
    RngStream rng = RngSeed(41).stream();
    std::vector<BitString> S = distinct_strings(9, 6, rng);  // 9 > 2^3
    Fingerprint fp = fingerprint(S[0], 3, eps, RngSeed(43));
    CHECK_THROWS_AS(invert(S, fp), DomainError);
}

TEST_CASE("pruning respects its unconditional output bound") {
    const Rational eps(1, 8);
    RngStream rng = RngSeed(47).stream();
    for (int rep = 0; rep < 200; ++rep) {
        HashGraph g = HashGraph::seeded_family(12, 3, 8, 0xfeed + rep);
        std::vector<BitString> S = distinct_strings(64, 12, rng);
        BitString y = BitString::from_u64(rng.next_below(256), 8);

        PruneResult pr = prune_suspects(g, S, y, 3, eps);
        CHECK(pr.candidates.size() <= 112);  // (1 + ceil(log2 64)) * 2^4
        CHECK(pr.levels >= 1);
        CHECK(pr.levels <= 12);
        std::set<BitString> uniq(pr.candidates.begin(), pr.candidates.end());
        CHECK(uniq.size() == pr.candidates.size());
    }
}

TEST_CASE("pruning degrades gracefully when recursion cannot shrink") {
    // seed-identity graph: every left node is adjacent to y and every slot
    // overloads, so the heavy set never shrinks
    const Rational eps(1, 8);
    RngStream rng = RngSeed(53).stream();
    HashGraph g = HashGraph::identity_seed(8, 3);
    std::vector<BitString> S = distinct_strings(20, 8, rng);
    BitString y = BitString::from_u64(5, 3);

    PruneResult pr = prune_suspects(g, S, y, 3, eps);
    CHECK(pr.degraded);
    CHECK(pr.candidates.size() == 16);  // one full level, lexicographically first
    std::vector<BitString> sorted_S(S);
    std::sort(sorted_S.begin(), sorted_S.end());
    for (size_t i = 0; i < 16; ++i) CHECK(pr.candidates[i] == sorted_S[i]);

    CHECK_THROWS_AS(prune_suspects(g, S, y, 2, eps), DomainError);  // r != d
    CHECK_THROWS_AS(prune_suspects(g, S, BitString::from_u64(5, 4), 3, eps), DomainError);
}
