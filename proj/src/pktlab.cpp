#include "scdc/pktlab.hpp"

#include <algorithm>

#include "scdc/constants.hpp"
#include "scdc/errors.hpp"

namespace scdc {

namespace {

using namespace constants;

int ceil_log2_u64(uint64_t v) {
    int w = 0;
    while ((1ull << w) < v) ++w;
    return w;
}

bool prints(const VmResult& r, const BitString& x) {
    return r.halted && r.output == x;
}

}  // namespace

std::optional<PktResult> pkt_brute_force(const BitString& x, uint64_t t, int k_max,
                                         uint64_t w_budget, RngSeed rng, const VmContext& ctx) {
    if (k_max < 1 || k_max > 20) throw DomainError("pkt: k_max out of range");
    if (t < 1 || t > (1u << 20)) throw DomainError("pkt: time bound out of range");
    if (w_budget < 1) throw DomainError("pkt: need a tape budget");

    const bool exhaustive = t <= 62 && (1ull << t) <= w_budget;
    const uint64_t n_tapes = exhaustive ? 1ull << t : w_budget;
    const BitString zero_tape = BitString::zeros(static_cast<size_t>(t));

    std::vector<BitString> tapes;
    if (!exhaustive) {
        tapes.reserve(n_tapes);
        for (uint64_t i = 0; i < n_tapes; ++i)
            tapes.push_back(rng.derive("tape", i).stream().next_bits(static_cast<size_t>(t)));
    }

    for (int k = 1; k <= k_max; ++k) {
        bool oblivious_hit = false;
        std::vector<BitString> dependent;
        for (uint64_t p = 0; p < (1ull << k); ++p) {
            BitString prog = BitString::from_u64(p, k);
            VmResult r0 = run_program(prog, zero_tape, t, ctx);
            if (!r0.read_tape) {
                if (prints(r0, x)) {
                    oblivious_hit = true;
                    break;
                }
            } else {
                dependent.push_back(std::move(prog));
            }
        }

        PktResult res;
        res.k = k;
        res.tapes = n_tapes;
        res.tapes_exhaustive = exhaustive;
        if (oblivious_hit) {
            res.witness_fraction = Rational(1, 1);
            return res;
        }
        if (dependent.empty()) continue;

        uint64_t hits = 0;
        for (uint64_t i = 0; i < n_tapes; ++i) {
            const BitString& w =
                exhaustive ? BitString::from_u64(i, static_cast<int>(t)) : tapes[i];
            for (const auto& prog : dependent) {
                if (prints(run_program(prog, w, t, ctx), x)) {
                    ++hits;
                    break;
                }
            }
        }
        if (3 * hits >= 2 * n_tapes) {
            res.witness_fraction = Rational(static_cast<int64_t>(hits),
                                            static_cast<int64_t>(n_tapes));
            return res;
        }
    }
    return std::nullopt;
}

std::optional<int> k_toy(const BitString& x, int k_max, uint64_t step_budget,
                         const VmContext& ctx) {
    if (k_max < 1 || k_max > 20) throw DomainError("k_toy: k_max out of range");
    BitString empty_tape;
    for (int k = 1; k <= k_max; ++k)
        for (uint64_t p = 0; p < (1ull << k); ++p)
            if (prints(run_program(BitString::from_u64(p, k), empty_tape, step_budget, ctx), x))
                return k;
    return std::nullopt;
}

Rational hitting_experiment(const BitString& M, const BitString& x, int ell, uint64_t T,
                            int trials, RngSeed rng, const VmContext& ctx) {
    if (ell < 0 || ell > 20) throw DomainError("hitting: ell out of range");
    if (T < 1 || T > (1u << 20)) throw DomainError("hitting: T out of range");
    if (trials < 1) throw DomainError("hitting: need trials");

    int64_t hit = 0;
    for (int trial = 0; trial < trials; ++trial) {
        RngSeed h = rng.derive("trial", static_cast<uint64_t>(trial));
        for (uint64_t v = 0; v < (1ull << ell); ++v) {
            BitString w = h.derive(v).stream().next_bits(static_cast<size_t>(T));
            if (prints(run_program(M, w, T, ctx), x)) {
                ++hit;
                break;
            }
        }
    }
    return Rational(hit, trials);
}

uint64_t PolySpec::eval(int n) const {
    if (n < 0 || n > 4096 || degree < 0 || degree > 4)
        throw DomainError("poly: argument out of range");
    uint64_t pw = 1;
    for (int i = 0; i < degree; ++i) pw *= static_cast<uint64_t>(n);
    return constant + coeff * pw;
}

Rational mixture_weight(int n) {
    if (n < 1) throw DomainError("mixture_weight: n must be positive");
    return Rational(1, static_cast<int64_t>(n) * (n + 1));
}

namespace {

// least m with U*(m+1) < 2^63 * m, i.e. the 1/(m(m+1)) mixture up to 2^-63
int draw_mixture_n(RngStream& s, int cap) {
    const unsigned __int128 D = static_cast<unsigned __int128>(1) << 63;
    while (true) {
        uint64_t U = s.next_u64() >> 1;
        int m = 1;
        while (m <= cap &&
               static_cast<unsigned __int128>(U) * (static_cast<uint64_t>(m) + 1) >=
                   D * static_cast<uint64_t>(m))
            ++m;
        if (m <= cap) return m;
    }
}

}  // namespace

BitString m_sampler(const MixtureParams& mix, RngSeed rng, const VmContext& ctx) {
    if (mix.d < 0 || mix.n_cap < 1 || mix.n_cap > kMixtureLengthCap)
        throw DomainError("m_sampler: bad mixture parameters");
    RngStream s = rng.stream();
    int n = draw_mixture_n(s, mix.n_cap);
    uint64_t j = 1 + s.next_below(static_cast<uint64_t>(n) + mix.d);
    BitString prog = s.next_bits(static_cast<size_t>(j));
    uint64_t steps = mix.p.eval(n);
    BitString tape = s.next_bits(static_cast<size_t>(steps));
    return run_program(prog, tape, steps, ctx).output;
}

bool domination_check(const std::vector<std::pair<BitString, Rational>>& D,
                      const std::vector<std::pair<BitString, Rational>>& D_prime, int c) {
    if (c < 0 || c > 10) throw DomainError("domination: c out of range");
    if (D.size() != D_prime.size()) throw DomainError("domination: support size mismatch");
    auto a = D;
    auto b = D_prime;
    auto by_value = [](const auto& l, const auto& r) { return l.first < r.first; };
    std::sort(a.begin(), a.end(), by_value);
    std::sort(b.begin(), b.end(), by_value);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].first != b[i].first) throw DomainError("domination: supports differ");
        if (a[i].first.empty()) throw DomainError("domination: empty string in support");
        int64_t scale = 1;
        for (int e = 0; e < c; ++e) scale *= static_cast<int64_t>(a[i].first.size());
        if (a[i].second * Rational(scale, 1) < b[i].second) return false;
    }
    return true;
}

std::vector<BatteryEntry> builtin_battery() {
    std::vector<BatteryEntry> v;
    auto add = [&v](std::string name, SamplerSpec spec, const char* x, int q) {
        BatteryEntry e;
        e.name = std::move(name);
        e.x = BitString::from_string(x);
        e.delta = DyadicProb::pow2_inv(q);
        e.t = 64 + 4 * spec.declared_steps();
        e.spec = std::move(spec);
        v.push_back(std::move(e));
    };
    add("table3-00", builtin_sampler("table3-n2"), "00", 1);
    add("table3-01", builtin_sampler("table3-n2"), "01", 2);
    add("pair-1111", builtin_sampler("pair-n4"), "1111", 1);
    add("biased34-ones", builtin_sampler("biased34-n8"), "11111111", 4);
    add("vm-zeros", builtin_sampler("vm-zeros-n6"), "000000", 0);
    return v;
}

BatteryRow run_battery_entry(const BatteryEntry& entry, RngSeed rng) {
    VmContext ctx{&entry.spec, entry.spec.n};
    BatteryRow row;
    row.name = entry.name;
    row.n = static_cast<int>(entry.x.size());
    row.log2_inv_delta = entry.delta.log2_inverse();

    row.pkt = pkt_brute_force(entry.x, entry.t, 12, 256, rng.derive("pkt"), ctx);
    row.plain_k = k_toy(entry.x, 12, entry.t, ctx);
    row.ell = row.log2_inv_delta + kPktHittingSlack;
    row.hitting_fraction = hitting_experiment(BitString::from_string("11"), entry.x, row.ell,
                                              entry.t, 200, rng.derive("hit"), ctx);

    if (row.pkt) {
        row.coding_bound_ok =
            row.pkt->k <= row.log2_inv_delta + kPktCodingC * ceil_log2_u64(entry.t);
        if (row.plain_k)
            row.description_gap_ok =
                *row.plain_k <=
                row.pkt->k + kPktDescriptionGapB * ceil_log2_u64(static_cast<uint64_t>(row.n));
    }
    row.hitting_ok = 3 * row.hitting_fraction.num() >= 2 * row.hitting_fraction.den();
    return row;
}

}  // namespace scdc
