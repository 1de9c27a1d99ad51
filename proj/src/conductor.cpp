#include "scdc/conductor.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "scdc/constants.hpp"
#include "scdc/errors.hpp"
#include "scdc/rng.hpp"

namespace scdc {

namespace {

int ceil_log2_u64(uint64_t v) {
    int w = 0;
    while ((1ull << w) < v) ++w;
    return w;
}

// Keyed polynomial hash over the field GF(2^61 - 1), one key per seed, with a
// bijective finalizer before truncation to m bits. The per-seed key depends
// only on (family_seed, seed), so both endpoints of a protocol reconstruct
// the identical graph from the public family seed.
uint64_t family_eval(uint64_t family_seed, uint64_t seed, const BitString& x, int m) {
    constexpr uint64_t P = constants::kHashFieldPrime;
    uint64_t key = mix64(family_seed ^ mix64(seed ^ 0x7a39d0b1c4e5f623ull)) % (P - 2) + 1;
    uint64_t tweak = mix64(family_seed + 0x3c6ef372fe94f82bull * (seed + 1));
    unsigned __int128 acc = 0;
    const auto& words = x.words();
    size_t n = x.size();
    for (size_t w = 0; w < words.size(); ++w) {
        size_t bits_here = std::min<size_t>(64, n - 64 * w);
        uint64_t chunk = words[w] >> (64 - bits_here);
        acc = (acc * key + chunk) % P;
    }
    uint64_t h = mix64(static_cast<uint64_t>(acc) ^ tweak);
    return m == 64 ? h : h >> (64 - m);
}

}  // namespace

HashGraph HashGraph::seeded_family(int n, int d, int m, uint64_t family_seed) {
    if (n < 1 || d < 0 || m < 1) throw DomainError("seeded_family: bad widths");
    if (d > 62 || m > constants::kMaxGraphOutputBits)
        throw DomainError("seeded_family: width beyond desk scale");
    HashGraph g;
    g.kind_ = GraphKind::seeded_family;
    g.n_ = n;
    g.d_ = d;
    g.m_ = m;
    g.family_seed_ = family_seed;
    return g;
}

HashGraph HashGraph::identity_seed(int n, int d) {
    if (n < 1 || d < 1 || d > constants::kMaxGraphOutputBits)
        throw DomainError("identity_seed: bad widths");
    HashGraph g;
    g.kind_ = GraphKind::identity_seed;
    g.n_ = n;
    g.d_ = d;
    g.m_ = d;
    return g;
}

HashGraph HashGraph::identity_input(int n, int d) {
    if (n < 1 || n > constants::kMaxGraphOutputBits || d < 1 || d > 62)
        throw DomainError("identity_input: bad widths");
    HashGraph g;
    g.kind_ = GraphKind::identity_input;
    g.n_ = n;
    g.d_ = d;
    g.m_ = n;
    return g;
}

HashGraph HashGraph::compose(const HashGraph& outer, const HashGraph& inner) {
    if (inner.m_ != outer.n_)
        throw DomainError("compose: inner output width must equal outer input width");
    if (inner.d_ + outer.d_ > 62) throw DomainError("compose: seed too wide");
    HashGraph g;
    g.kind_ = GraphKind::compose;
    g.n_ = inner.n_;
    g.d_ = inner.d_ + outer.d_;
    g.m_ = outer.m_;
    g.outer_ = std::make_shared<HashGraph>(outer);
    g.inner_ = std::make_shared<HashGraph>(inner);
    return g;
}

uint64_t HashGraph::evaluate_packed(const BitString& x, uint64_t seed) const {
    if (static_cast<int>(x.size()) != n_) throw DomainError("evaluate: input length mismatch");
    switch (kind_) {
        case GraphKind::seeded_family:
            return family_eval(family_seed_, seed & ((d_ == 0 ? 0 : (~0ull >> (64 - d_)))), x, m_);
        case GraphKind::identity_seed:
            return seed & (~0ull >> (64 - d_));
        case GraphKind::identity_input:
            return x.to_u64();
        case GraphKind::compose: {
            // seed bits: inner seed first, outer seed after it
            uint64_t inner_seed = seed >> outer_->d_bits();
            uint64_t outer_seed = seed & (outer_->d_bits() == 0 ? 0 : (~0ull >> (64 - outer_->d_bits())));
            uint64_t mid = inner_->evaluate_packed(x, inner_seed);
            return outer_->evaluate_packed(BitString::from_u64(mid, inner_->m_bits()), outer_seed);
        }
    }
    throw DomainError("evaluate: unknown kind");
}

BitString HashGraph::evaluate(const BitString& x, const BitString& seed) const {
    if (static_cast<int>(seed.size()) != d_) throw DomainError("evaluate: seed length mismatch");
    return BitString::from_u64(evaluate_packed(x, seed.to_u64()), m_);
}

ConductorParams conductor_params(ConductorConstruction c, int n, int t_max, Rational eps) {
    if (n < 2 || t_max < 1) throw DomainError("conductor_params: need n >= 2, tMax >= 1");
    if (t_max > n) throw DomainError("conductor_params: entropy bound above input length");
    if (!(Rational(0, 1) < eps && eps < Rational(1, 1)))
        throw DomainError("conductor_params: eps outside (0,1)");

    int lg_n = ceil_log2_u64(static_cast<uint64_t>(n));
    int lg_t = ceil_log2_u64(static_cast<uint64_t>(t_max));
    int lg_eps = eps.ceil_log2_inverse();

    auto guv = [&](int nn, int tt) {
        ConductorParams p;
        p.d = ceil_log2_u64(static_cast<uint64_t>(nn)) + ceil_log2_u64(static_cast<uint64_t>(tt)) + lg_eps + 1;
        p.m = p.d * (tt + 2);
        return p;
    };
    auto bz = [&](int nn, int tt) {
        ConductorParams p;
        int lg_ne = ceil_log2_u64(static_cast<uint64_t>(nn)) + lg_eps;  // ceil(lg n) + ceil(lg 1/eps)
        p.d = lg_ne * std::max(1, ceil_log2_u64(static_cast<uint64_t>(tt)));
        p.m = tt + p.d;
        return p;
    };

    switch (c) {
        case ConductorConstruction::guv:
            return guv(n, t_max);
        case ConductorConstruction::bz:
            return bz(n, t_max);
        case ConductorConstruction::composed: {
            // Tiny entropy bound: the seed alone covers the source.
            if (t_max < 62 && (1ull << t_max) < static_cast<uint64_t>(lg_n)) {
                ConductorParams p;
                p.d = t_max;
                p.m = t_max;
                return p;
            }
            ConductorParams first = guv(n, t_max);
            ConductorParams second = bz(first.m, t_max + first.d);
            ConductorParams p;
            p.d = first.d + second.d;
            p.m = second.m;
            return p;
        }
    }
    throw DomainError("conductor_params: unknown construction");
}

Rational condenser_deficit(const HashGraph& g, const std::vector<BitString>& S, int t_prime) {
    if (S.empty()) throw DomainError("condenser_deficit: empty source");
    if (t_prime < 0 || t_prime > g.m_bits())
        throw DomainError("condenser_deficit: t_prime outside [0, m]");
    uint64_t pairs = static_cast<uint64_t>(S.size()) << g.d_bits();
    if ((pairs >> g.d_bits()) != S.size() || pairs > constants::kEnumBudget)
        throw BudgetError("condenser_deficit: enumeration budget exceeded");
    // exact denominators: N * 2^t' must stay inside the rational range
    if (63 - std::countl_zero(pairs) + t_prime > 61)
        throw BudgetError("condenser_deficit: exact arithmetic range exceeded");

    std::unordered_map<uint64_t, uint64_t> counts;
    counts.reserve(std::min<uint64_t>(pairs, 1u << 16));
    uint64_t seeds = 1ull << g.d_bits();
    for (const BitString& x : S)
        for (uint64_t s = 0; s < seeds; ++s) ++counts[g.evaluate_packed(x, s)];

    // deficit = sum_v max(0, c_v/N - 2^-t'); v is heavy iff c_v * 2^t' > N
    unsigned __int128 heavy_num = 0;
    uint64_t N = pairs;
    unsigned __int128 scale = static_cast<unsigned __int128>(1) << t_prime;
    for (auto& [v, c] : counts) {
        unsigned __int128 lhs = scale * c;
        if (lhs > N) heavy_num += lhs - N;
    }
    return Rational(static_cast<int64_t>(heavy_num), static_cast<int64_t>(scale * N));
}

}  // namespace scdc
