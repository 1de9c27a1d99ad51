#include "scdc/invertible.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "scdc/constants.hpp"
#include "scdc/errors.hpp"
#include "scdc/primes.hpp"
#include "scdc/sd_code.hpp"

namespace scdc {

namespace {

using namespace constants;

int ceil_log2_u64(uint64_t v) {
    int w = 0;
    while ((1ull << w) < v) ++w;
    return w;
}

int bit_length(uint64_t v) {
    int w = 0;
    while (v) {
        ++w;
        v >>= 1;
    }
    return w;
}

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

}  // namespace

FingerprintParams fingerprint_params(int n, int k, const Rational& eps) {
    if (n < 1 || k < 1 || k > n) throw DomainError("fingerprint: need 1 <= k <= n");
    if (!(Rational(0, 1) < eps && eps < Rational(1, 1)))
        throw DomainError("fingerprint: eps outside (0,1)");

    FingerprintParams p;
    p.n = n;
    p.k = k;
    p.eps = eps;
    p.j = eps.ceil_log2_inverse();
    int lg_n = ceil_log2_u64(static_cast<uint64_t>(n));
    p.d = ceil_log2_u64(static_cast<uint64_t>(lg_n + k + p.j)) + kSeedSlack;
    p.m = k + p.d + p.j;
    if (p.m > kMaxGraphOutputBits || p.d > 40)
        throw DomainError("fingerprint: parameters beyond desk scale");
    p.s = (1ull + static_cast<uint64_t>(k)) << (p.d + 1);

    // 4*s*n/eps, rounded up; eps.den/eps.num fits well inside 64 bits here
    unsigned __int128 num = static_cast<unsigned __int128>(4) * p.s * static_cast<uint64_t>(n) *
                            static_cast<uint64_t>(eps.den());
    uint64_t floor64 = static_cast<uint64_t>(num / static_cast<uint64_t>(eps.num()));
    uint64_t rem = static_cast<uint64_t>(num % static_cast<uint64_t>(eps.num()));
    p.p_floor = std::max<uint64_t>(3, floor64 + (rem ? 1 : 0));
    if (p.p_floor > (1ull << 60)) throw DomainError("fingerprint: prime universe too large");
    p.hash_width = bit_length(2 * p.p_floor);
    p.serialized_bits =
        p.m + static_cast<int>(sd_encoded_size(static_cast<size_t>(p.hash_width))) + p.hash_width;
    p.delta = p.serialized_bits - k;
    return p;
}

HashGraph fingerprint_graph(int n, int k, const Rational& eps) {
    FingerprintParams p = fingerprint_params(n, k, eps);
    uint64_t fam = mix64(kFingerprintFamilySeed ^
                         (static_cast<uint64_t>(n) << 32 ^ static_cast<uint64_t>(k) << 8 ^
                          static_cast<uint64_t>(p.j)));
    return HashGraph::seeded_family(n, p.d, p.m, fam);
}

PrimeHashResult prime_hash(const BitString& x, uint64_t s, const Rational& eps, RngSeed rng) {
    if (s < 1) throw DomainError("prime_hash: s must be positive");
    unsigned __int128 num = static_cast<unsigned __int128>(4) * s * x.size() *
                            static_cast<uint64_t>(eps.den());
    uint64_t hi_part = static_cast<uint64_t>(num / static_cast<uint64_t>(eps.num()));
    uint64_t rem = static_cast<uint64_t>(num % static_cast<uint64_t>(eps.num()));
    uint64_t P = std::max<uint64_t>(3, hi_part + (rem ? 1 : 0));
    PrimeDraw draw = random_prime(P, 2 * P, rng);
    PrimeHashResult r;
    r.hash.prime = draw.prime;
    r.hash.residue = x.mod_u64(draw.prime);
    r.attempts = draw.attempts;
    return r;
}

namespace {

FingerprintResult fingerprint_impl(const BitString& x, int k, const Rational& eps,
                                   std::optional<uint64_t> rho_pinned, RngSeed rng) {
    FingerprintParams p = fingerprint_params(static_cast<int>(x.size()), k, eps);
    HashGraph g = fingerprint_graph(p.n, k, eps);

    uint64_t rho;
    if (rho_pinned) {
        rho = *rho_pinned;
        if (p.d < 64 && rho >= (1ull << p.d)) throw DomainError("fingerprint: rho out of range");
    } else {
        rho = rng.derive("rho").stream().next_below(1ull << p.d);
    }

    FingerprintResult res;
    res.fp.n = p.n;
    res.fp.k = k;
    res.fp.eps = eps;
    res.fp.seed_used = BitString::from_u64(rho, p.d);
    res.fp.f1 = BitString::from_u64(g.evaluate_packed(x, rho), p.m);
    PrimeHashResult ph = prime_hash(x, p.s, eps, rng.derive("prime"));
    res.fp.f2 = ph.hash;
    res.steps = kStepBase + kStepGraphEval + ph.attempts * kStepPrimeAttempt +
                kStepPerBit * x.size();
    return res;
}

}  // namespace

FingerprintResult fingerprint_steps(const BitString& x, int k, const Rational& eps, RngSeed rng) {
    return fingerprint_impl(x, k, eps, std::nullopt, rng);
}

Fingerprint fingerprint(const BitString& x, int k, const Rational& eps, RngSeed rng) {
    return fingerprint_impl(x, k, eps, std::nullopt, rng).fp;
}

Fingerprint fingerprint_at(const BitString& x, int k, const Rational& eps, uint64_t rho,
                           RngSeed prime_rng) {
    return fingerprint_impl(x, k, eps, rho, prime_rng).fp;
}

BitString Fingerprint::serialize() const {
    FingerprintParams p = fingerprint_params(n, k, eps);
    BitString out = f1;
    out.append(sd_encode(BitString::from_u64(f2.prime, p.hash_width)));
    out.append(BitString::from_u64(f2.residue, p.hash_width));
    return out;
}

Fingerprint Fingerprint::deserialize(BitReader& r, int n, int k, const Rational& eps) {
    FingerprintParams p = fingerprint_params(n, k, eps);
    Fingerprint fp;
    fp.n = n;
    fp.k = k;
    fp.eps = eps;
    fp.f1 = r.read_string(static_cast<size_t>(p.m));
    BitString prime_bits = sd_decode(r);
    if (prime_bits.size() != static_cast<size_t>(p.hash_width))
        throw FormatError("fingerprint: prime field width mismatch");
    fp.f2.prime = prime_bits.to_u64();
    fp.f2.residue = r.read_string(static_cast<size_t>(p.hash_width)).to_u64();
    if (fp.f2.prime < p.p_floor || fp.f2.prime > 2 * p.p_floor || !is_prime_u64(fp.f2.prime))
        throw FormatError("fingerprint: stored prime outside its universe");
    if (fp.f2.residue >= fp.f2.prime) throw FormatError("fingerprint: residue not reduced");
    return fp;
}

PruneResult prune_suspects(const HashGraph& g, const std::vector<BitString>& S,
                           const BitString& y, int r, const Rational& eps) {
    if (r != g.d_bits()) throw DomainError("prune: r must equal the graph seed width");
    if (static_cast<int>(y.size()) != g.m_bits())
        throw DomainError("prune: y must be a right node");
    if (r > 24) throw DomainError("prune: seed width beyond enumeration budget");
    if (!(Rational(0, 1) < eps && eps < Rational(1, 1)))
        throw DomainError("prune: eps outside (0,1)");

    std::vector<BitString> cur(S);
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());

    PruneResult res;
    if (cur.empty()) return res;

    const uint64_t deg = 1ull << r;
    const uint64_t per_level = deg * 2;  // 2^(r+1)
    const uint64_t y_packed = y.to_u64();
    const size_t cap =
        (1 + static_cast<size_t>(ceil_log2_u64(cur.size()))) * static_cast<size_t>(per_level);
    const int level_cap = g.n_bits();

    std::unordered_set<BitString> emitted;
    std::unordered_map<uint64_t, uint64_t> counts;
    std::vector<uint64_t> images;  // row-major [u][rho], rebuilt per level

    while (true) {
        ++res.levels;
        counts.clear();
        images.assign(cur.size() * deg, 0);
        for (size_t i = 0; i < cur.size(); ++i)
            for (uint64_t rho = 0; rho < deg; ++rho) {
                uint64_t w = g.evaluate_packed(cur[i], rho);
                images[i * deg + rho] = w;
                ++counts[w];
            }
        res.steps += kStepBase + cur.size() * deg * kStepGraphEval;

        uint64_t appended = 0;
        bool overflow = false;
        for (size_t i = 0; i < cur.size(); ++i) {
            bool adjacent = false;
            for (uint64_t rho = 0; rho < deg && !adjacent; ++rho)
                adjacent = images[i * deg + rho] == y_packed;
            if (!adjacent || emitted.count(cur[i])) continue;
            if (appended == per_level || res.candidates.size() == cap) {
                overflow = true;
                if (res.candidates.size() == cap) res.degraded = true;
                break;
            }
            res.candidates.push_back(cur[i]);
            emitted.insert(cur[i]);
            ++appended;
        }
        if (!overflow) break;
        if (res.degraded) break;

        // heavy rule: keep u when more than a 2*eps fraction of its deg
        // slots land on nodes holding more than 2^(r+1) collisions
        std::vector<BitString> next;
        for (size_t i = 0; i < cur.size(); ++i) {
            uint64_t bad = 0;
            for (uint64_t rho = 0; rho < deg; ++rho)
                if (counts[images[i * deg + rho]] > per_level) ++bad;
            unsigned __int128 lhs = static_cast<unsigned __int128>(bad) *
                                    static_cast<uint64_t>(eps.den());
            unsigned __int128 rhs = static_cast<unsigned __int128>(
                                        static_cast<uint64_t>(eps.num())) *
                                    per_level;
            if (lhs > rhs) next.push_back(cur[i]);
        }
        if (next.empty()) break;
        if (next.size() == cur.size() || res.levels >= level_cap) {
            res.degraded = true;
            break;
        }
        cur = std::move(next);
    }
    return res;
}

InvertResult invert_with_graph(const std::vector<BitString>& S, const Fingerprint& fp,
                               const HashGraph& g) {
    if (fp.k < 1 || fp.k > 62) throw DomainError("invert: k out of range");
    if (S.size() > (1ull << fp.k)) throw DomainError("invert: suspect set larger than 2^k");
    if (g.m_bits() != static_cast<int>(fp.f1.size()))
        throw DomainError("invert: graph output width does not match f1");

    PruneResult pr = prune_suspects(g, S, fp.f1, g.d_bits(), fp.eps);
    InvertResult res;
    res.prune_degraded = pr.degraded;
    res.steps = pr.steps + kStepBase;
    for (const auto& c : pr.candidates) {
        res.steps += kStepHashCheck;
        if (c.mod_u64(fp.f2.prime) == fp.f2.residue) {
            res.value = c;
            return res;
        }
    }
    return res;
}

InvertResult invert(const std::vector<BitString>& S, const Fingerprint& fp) {
    return invert_with_graph(S, fp, fingerprint_graph(fp.n, fp.k, fp.eps));
}

}  // namespace scdc
