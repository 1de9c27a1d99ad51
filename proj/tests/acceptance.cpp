// Acceptance gate: eleven numbered criteria, one line each, nonzero exit on
// any failure. Tolerances and grids are pinned here, not configurable; the
// law constants they check live in scdc/constants.hpp.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/codec.hpp"
#include "scdc/conductor.hpp"
#include "scdc/constants.hpp"
#include "scdc/dyadic.hpp"
#include "scdc/errors.hpp"
#include "scdc/estimator.hpp"
#include "scdc/harness.hpp"
#include "scdc/invertible.hpp"
#include "scdc/microvm.hpp"
#include "scdc/pktlab.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"
#include "scdc/sampler.hpp"
#include "scdc/sd_code.hpp"

using namespace scdc;

namespace {

// Pinned experiment scales. Time caps come from the criteria themselves.
constexpr int kGridNs[] = {16, 32, 64};
constexpr int kGridQLo = 4, kGridQHi = 12;
constexpr int kRoundtripTrials = 1000;
constexpr double kRoundtripEps = 0.125;  // compress eps 1/8, threshold 1-2eps
constexpr int kMissTrials = 10000;
constexpr double kMissTolerance = 0.005;
constexpr int kPruneInstances = 10000;
constexpr int kSeedEnumSets = 100;
constexpr int kCertTrials = 48;
constexpr double kCertRatioLo = 1.5, kCertRatioHi = 3.0;
constexpr int kEstimatorRuns = 1000;
constexpr int kDistTrials = 1000;
constexpr int kMixtureDraws = 1000000;
constexpr int kCondenserInstances = 50;
constexpr int kCondenserSamples = 100000;

uint64_t master_seed() { return 0x5cdcacce97ull; }

int ceil_log2_u64(uint64_t v) {
    int w = 0;
    while ((1ull << w) < v) ++w;
    return w;
}

double to_double(const Rational& r) {
    return static_cast<double>(r.num()) / static_cast<double>(r.den());
}

BitString repeat_bit(bool b, size_t n) {
    BitString out;
    for (size_t i = 0; i < n; ++i) out.push_back(b);
    return out;
}

std::vector<BitString> random_distinct(RngStream& s, size_t count, int n) {
    std::set<BitString> set;
    while (set.size() < count) set.insert(s.next_bits(static_cast<size_t>(n)));
    return {set.begin(), set.end()};
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// 1. Fingerprint codeword length: exact header + log2 K + delta arithmetic
// and the calibrated law bound, across the full (n, Q, eps) grid.
Outcome criterion_length_law() {
    RngSeed seed(master_seed() ^ 1);
    int cells = 0;
    double worst_slack = 1e9;
    for (int n : kGridNs)
        for (int Q = kGridQLo; Q <= kGridQHi; ++Q)
            for (int epsJ : {3, 4}) {
                Rational eps = Rational::pow2_inv(epsJ);
                BitString x = seed.derive("x", static_cast<uint64_t>(cells)).stream().next_bits(
                    static_cast<size_t>(n));
                CompressResult r = compress(x, DyadicProb::pow2_inv(Q), eps,
                                            seed.derive("c", static_cast<uint64_t>(cells)));
                ++cells;
                if (r.codeword.mode != CodewordMode::fingerprint)
                    return {false, fmt("cell n=%d Q=%d eps=2^-%d not in fingerprint mode", n,
                                       Q, epsJ)};
                int k = r.codeword.fingerprint_k();
                if (k != r.codeword.log2_suspects)
                    return {false, fmt("k clamp active inside the grid at n=%d Q=%d", n, Q)};
                FingerprintParams p = fingerprint_params(n, k, eps / Rational(3, 1));
                size_t headers = 1 + sd_encode_integer(static_cast<uint64_t>(n)).size() +
                                 sd_encode_integer(static_cast<uint64_t>(k)).size() +
                                 sd_encode_integer(static_cast<uint64_t>(eps.num())).size() +
                                 sd_encode_integer(static_cast<uint64_t>(eps.den())).size();
                size_t expect = headers + static_cast<size_t>(k) + static_cast<size_t>(p.delta);
                size_t got = r.codeword.serialized_bits();
                if (got != expect)
                    return {false, fmt("length %zu != headers+log2K+delta %zu at n=%d Q=%d "
                                       "eps=2^-%d", got, expect, n, Q, epsJ)};
                double loglog = std::log2(static_cast<double>(Q));
                double law = Q + constants::kLengthLawC *
                                     (std::log2(static_cast<double>(n)) +
                                      (loglog + epsJ) * loglog);
                worst_slack = std::min(worst_slack, law - static_cast<double>(got));
                if (static_cast<double>(got) > law)
                    return {false, fmt("length %zu exceeds law %.1f at n=%d Q=%d eps=2^-%d",
                                       got, law, n, Q, epsJ)};
            }
    return {true, fmt("%d grid cells exact, min law slack %.1f bits", cells, worst_slack)};
}

// 2. Roundtrip reliability on every builtin sampler, per eligible x.
Outcome criterion_roundtrip() {
    struct Case {
        const char* name;
        int Q;
        std::vector<BitString> xs;
    };
    RngSeed pick(master_seed() ^ 2);
    auto prg_subset = [&pick](int n, int count, uint64_t tag) {
        std::set<uint64_t> seeds;
        RngStream s = pick.derive("prg", tag).stream();
        uint64_t range = 1ull << (n / 2);
        while (seeds.size() < static_cast<size_t>(count)) seeds.insert(s.next_below(range));
        std::vector<BitString> xs;
        for (uint64_t z : seeds) xs.push_back(prg_expand(z, n));
        return xs;
    };

    std::vector<Case> cases;
    cases.push_back({"pair-n4", 1, builtin_sampler("pair-n4").subset});
    cases.push_back({"uniform8-n8", 3, builtin_sampler("uniform8-n8").subset});
    cases.push_back({"const1-n4", 0, builtin_sampler("const1-n4").subset});
    {
        std::vector<BitString> xs;
        for (const auto& e : builtin_sampler("table3-n2").table) xs.push_back(e.value);
        cases.push_back({"table3-n2", 2, xs});
    }
    cases.push_back({"biased34-n8", 4, {repeat_bit(true, 8)}});
    cases.push_back({"prg-n8", 4, prg_subset(8, 16, 8)});
    cases.push_back({"prg-n16", 8, prg_subset(16, 10, 16)});
    cases.push_back({"prg-n24", 12, prg_subset(24, 3, 24)});
    cases.push_back({"vm-zeros-n6", 0, {BitString::zeros(6)}});

    Rational eps(1, 8);
    int threshold = static_cast<int>(
        std::ceil((1.0 - 2.0 * kRoundtripEps) * kRoundtripTrials));
    RngSeed seed(master_seed() ^ 0x22);
    int pairs = 0;
    int worst = kRoundtripTrials;
    std::string worst_at = "-";
    for (const auto& c : cases) {
        SamplerSpec spec = builtin_sampler(c.name);
        for (size_t xi = 0; xi < c.xs.size(); ++xi) {
            RngSeed at = seed.derive(c.name).derive(xi);
            int good = 0;
            for (int t = 0; t < kRoundtripTrials; ++t) {
                RngSeed trial = at.derive(static_cast<uint64_t>(t));
                CompressResult cr =
                    compress(c.xs[xi], DyadicProb::pow2_inv(c.Q), eps, trial.derive("c"));
                DecompressResult dr = decompress(spec, cr.codeword, trial.derive("d"));
                if (dr.output && *dr.output == c.xs[xi]) ++good;
            }
            ++pairs;
            if (good < worst) {
                worst = good;
                worst_at = c.name;
            }
            if (good < threshold)
                return {false, fmt("%s x#%zu recovered %d/%d < %d", c.name, xi, good,
                                   kRoundtripTrials, threshold)};
        }
    }
    return {true, fmt("%d (sampler, x) pairs, worst %d/%d (%s), threshold %d", pairs, worst,
                      kRoundtripTrials, worst_at.c_str(), threshold)};
}

// 3. Suspect-miss rate against exact (1-delta)^K.
Outcome criterion_suspect_miss() {
    SamplerSpec spec = builtin_sampler("table3-n2");
    BitString x = BitString::from_string("01");  // declared probability 1/4
    RngSeed seed(master_seed() ^ 3);
    int misses = 0;
    for (int t = 0; t < kMissTrials; ++t) {
        std::vector<BitString> sus =
            build_suspects(spec, 2, 16, seed.derive(static_cast<uint64_t>(t)));
        if (!std::binary_search(sus.begin(), sus.end(), x)) ++misses;
    }
    double rate = static_cast<double>(misses) / kMissTrials;
    double exact = std::pow(0.75, 16);
    double gap = std::fabs(rate - exact);
    if (gap > kMissTolerance)
        return {false, fmt("miss rate %.5f vs exact %.5f, |gap| %.5f > %.3f", rate, exact,
                           gap, kMissTolerance)};
    return {true, fmt("miss rate %.5f vs exact %.5f over %d trials", rate, exact, kMissTrials)};
}

// 4. Unconditional pruning output bound on randomized instances.
Outcome criterion_prune_bound() {
    RngSeed seed(master_seed() ^ 4);
    Rational eps(1, 8);
    uint64_t worst_ratio_num = 0, worst_ratio_den = 1;
    for (int i = 0; i < kPruneInstances; ++i) {
        RngStream s = seed.derive(static_cast<uint64_t>(i)).stream();
        int n = 4 + static_cast<int>(s.next_below(9));   // 4..12
        int d = 2 + static_cast<int>(s.next_below(3));   // 2..4
        int m = d + 1 + static_cast<int>(s.next_below(12));
        HashGraph g = HashGraph::seeded_family(n, d, m, s.next_u64());
        size_t set_size = 1 + s.next_below(std::min<uint64_t>(64, 1ull << n));
        std::vector<BitString> S = random_distinct(s, set_size, n);
        BitString y = s.next_bits(static_cast<size_t>(m));
        PruneResult pr = prune_suspects(g, S, y, d, eps);
        uint64_t bound =
            (1ull + static_cast<uint64_t>(ceil_log2_u64(S.size()))) * (1ull << (d + 1));
        if (pr.candidates.size() > bound)
            return {false, fmt("instance %d: %zu candidates > bound %llu (|S|=%zu, r=%d)", i,
                               pr.candidates.size(),
                               static_cast<unsigned long long>(bound), S.size(), d)};
        std::set<BitString> uniq(pr.candidates.begin(), pr.candidates.end());
        if (uniq.size() != pr.candidates.size())
            return {false, fmt("instance %d: duplicate candidates", i)};
        if (pr.candidates.size() * worst_ratio_den > worst_ratio_num * bound) {
            worst_ratio_num = pr.candidates.size();
            worst_ratio_den = bound;
        }
    }
    return {true, fmt("%d instances within (1+ceil(lg|S|))*2^(r+1); fullest list %llu/%llu",
                      kPruneInstances, static_cast<unsigned long long>(worst_ratio_num),
                      static_cast<unsigned long long>(worst_ratio_den))};
}

// 5. Exhaustive seed enumeration: inversion succeeds on >= 1-eps of seeds
// for every member of every random suspect set.
Outcome criterion_seed_enumeration() {
    const int n = 6, k = 3;
    Rational eps(1, 8);
    FingerprintParams p = fingerprint_params(n, k, eps);
    uint64_t seeds = 1ull << p.d;
    uint64_t need = seeds - seeds / 8;  // ceil((1-eps) * 2^d) for eps 1/8
    RngSeed root(master_seed() ^ 5);
    uint64_t worst = seeds;
    for (int rep = 0; rep < kSeedEnumSets; ++rep) {
        RngSeed rs = root.derive(static_cast<uint64_t>(rep));
        RngStream stream = rs.derive("S").stream();
        std::vector<BitString> S = random_distinct(stream, 8, n);
        RngSeed prime_rng = rs.derive("prime");
        for (const auto& x : S) {
            uint64_t good = 0;
            for (uint64_t rho = 0; rho < seeds; ++rho) {
                Fingerprint fp = fingerprint_at(x, k, eps, rho, prime_rng);
                InvertResult inv = invert(S, fp);
                if (inv.value && *inv.value == x) ++good;
            }
            worst = std::min(worst, good);
            if (good < need)
                return {false, fmt("set %d: only %llu/%llu seeds invert x", rep,
                                   static_cast<unsigned long long>(good),
                                   static_cast<unsigned long long>(seeds))};
        }
    }
    return {true, fmt("%d sets x 8 members x %llu seeds, worst %llu/%llu good",
                      kSeedEnumSets, static_cast<unsigned long long>(seeds),
                      static_cast<unsigned long long>(worst),
                      static_cast<unsigned long long>(seeds))};
}

// 6. Certificate law and decoder-time scaling on the uniform8 grid.
Outcome criterion_certificate() {
    SamplerSpec spec = builtin_sampler("uniform8-n8");
    BitString x = BitString::from_string("00000011");
    Rational eps(1, 8);
    RngSeed seed(master_seed() ^ 6);
    std::vector<uint64_t> tds;
    std::string gammas;
    for (int Q = 5; Q <= 8; ++Q) {
        Certificate cert;
        try {
            cert = certify(x, DyadicProb::pow2_inv(Q), eps, spec,
                           seed.derive("q", static_cast<uint64_t>(Q)), kCertTrials);
        } catch (const CertifyError& e) {
            return {false, fmt("certify failed at Q=%d: %s", Q, e.what())};
        }
        FingerprintParams p = fingerprint_params(
            cert.codeword.n, cert.codeword.fingerprint_k(), cert.codeword.eps / Rational(3, 1));
        double law = 2.0 * Q + constants::kCertLawC * p.delta;
        if (static_cast<double>(cert.gamma_rkt) > law)
            return {false, fmt("gammaRkt %llu > 2Q + c*delta = %.0f at Q=%d (delta %d)",
                               static_cast<unsigned long long>(cert.gamma_rkt), law, Q,
                               p.delta)};
        gammas += fmt("%sQ=%d:%llu<=%.0f", gammas.empty() ? "" : " ", Q,
                      static_cast<unsigned long long>(cert.gamma_rkt), law);
        tds.push_back(cert.t_d);
    }
    for (size_t i = 1; i < tds.size(); ++i) {
        double ratio = static_cast<double>(tds[i]) / static_cast<double>(tds[i - 1]);
        if (ratio < kCertRatioLo || ratio > kCertRatioHi)
            return {false, fmt("tD ratio %.2f outside [%.1f, %.1f] between Q=%zu and Q=%zu",
                               ratio, kCertRatioLo, kCertRatioHi, 4 + i, 5 + i)};
    }
    return {true, fmt("%s; tD %llu/%llu/%llu/%llu", gammas.c_str(),
                      static_cast<unsigned long long>(tds[0]),
                      static_cast<unsigned long long>(tds[1]),
                      static_cast<unsigned long long>(tds[2]),
                      static_cast<unsigned long long>(tds[3]))};
}

// 7. Estimator hit rate, call bound inside the event, and the hard cap.
Outcome criterion_estimator() {
    SamplerSpec spec = builtin_sampler("uniform8-n8");
    BitString x = BitString::from_string("00000101");  // p_x = 1/8
    Rational eps(1, 16);
    RngSeed seed(master_seed() ^ 7);
    const uint64_t call_bound = 8 * 8 * 4;  // (1/p_x) * 8 * log2(1/eps)
    const uint64_t hard_cap = 2ull * 16 * 256;
    int in_event = 0;
    for (int r = 0; r < kEstimatorRuns; ++r) {
        Estimate est = estimate_probability(spec, x, eps, seed.derive(static_cast<uint64_t>(r)));
        if (est.calls > hard_cap)
            return {false, fmt("run %d used %llu calls, above the hard cap %llu", r,
                               static_cast<unsigned long long>(est.calls),
                               static_cast<unsigned long long>(hard_cap))};
        bool in_range = est.p_tilde >= Rational(1, 16) && est.p_tilde <= Rational(1, 4);
        if (in_range && est.calls <= call_bound) ++in_event;
    }
    double rate = static_cast<double>(in_event) / kEstimatorRuns;
    double need = 1.0 - 2.0 / 16 - 0.03;
    if (rate < need)
        return {false, fmt("event rate %.3f < %.3f over %d runs", rate, need, kEstimatorRuns)};
    return {true, fmt("p~ in [p/2, 2p] with calls <= %llu in %.1f%% of runs (need %.1f%%)",
                      static_cast<unsigned long long>(call_bound), 100 * rate, 100 * need)};
}

// 8. Counting bound audits at n = 10 plus Kraft audits of whole-population
// codeword sets in both modes.
Outcome criterion_counting() {
    const int n = 10;
    RngSeed seed(master_seed() ^ 8);
    RngStream subset_stream = seed.derive("subset").stream();
    std::vector<SamplerSpec> configs;
    configs.push_back(SamplerSpec::uniform_subset_of(random_distinct(subset_stream, 40, n)));
    configs.push_back(SamplerSpec::biased(n, Rational(3, 4)));

    for (size_t ci = 0; ci < configs.size(); ++ci) {
        RngSeed decode_seed = seed.derive("decode", ci);
        auto decode = [&](const BitString& w) -> std::optional<BitString> {
            try {
                Codeword cw = Codeword::deserialize(w);
                DecompressResult d = decompress(configs[ci], cw, decode_seed);
                if (d.output && d.output->size() == n) return d.output;
            } catch (const FormatError&) {
            } catch (const DomainError&) {
            } catch (const BudgetError&) {
            }
            return std::nullopt;
        };
        for (int k = 2; k <= 8; ++k) {
            RecoveryAudit audit = recovery_audit(decode, k, n);
            if (!audit.ok)
                return {false, fmt("config %zu k=%d: %llu distinct > 2^(k+1) = %llu", ci, k,
                                   static_cast<unsigned long long>(audit.distinct),
                                   static_cast<unsigned long long>(audit.bound))};
        }
    }

    for (int Q : {12, 4}) {
        std::vector<BitString> population;
        for (uint64_t v = 0; v < (1ull << n); ++v) {
            CompressResult r = compress(BitString::from_u64(v, n), DyadicProb::pow2_inv(Q),
                                        Rational(1, 8), seed.derive("pop", v));
            bool want_trivial = Q > n;
            if ((r.codeword.mode == CodewordMode::trivial) != want_trivial)
                return {false, fmt("population Q=%d produced the wrong mode", Q)};
            population.push_back(r.codeword.serialize());
        }
        if (!kraft_audit(population))
            return {false, fmt("Kraft mass above 1 on the full population at Q=%d", Q)};
    }
    return {true, fmt("recovery audits k=2..8 on 2 decoder configs; Kraft <= 1 on two "
                      "%d-string populations", 1 << n)};
}

// 9. Distinguisher separates the PRG sampler from uniform.
Outcome criterion_distinguisher() {
    SamplerSpec spec = builtin_sampler("prg-n16");
    CompressorUnderTest cut = make_codec_cut(spec, Rational(1, 8));
    LengthBudget budget = power_length_budget(1.0, 3, 16);
    DistinguisherReport rep = distinguisher_report(cut, spec, 16, 8, budget, 1000000000ull,
                                                   kDistTrials, RngSeed(master_seed() ^ 9));
    double structured = to_double(rep.accept_structured);
    double uniform = to_double(rep.accept_uniform);
    double gap = to_double(rep.gap);
    double base = 1.0 / 256;
    double limit = base + 3 * std::sqrt(base * (1 - base) / kDistTrials);
    if (structured < 0.5)
        return {false, fmt("structured accept %.3f < 0.5", structured)};
    if (uniform > limit)
        return {false, fmt("uniform accept %.4f > 2^-8 + 3 sigma = %.4f", uniform, limit)};
    if (gap < 0.25) return {false, fmt("gap %.3f < 0.25", gap)};
    return {true, fmt("structured %.3f, uniform %.4f (limit %.4f), gap %.3f", structured,
                      uniform, limit, gap)};
}

// 10. Battery laws plus the mixture-sampler frequency law.
Outcome criterion_battery() {
    RngSeed seed(master_seed() ^ 10);
    auto battery = builtin_battery();
    for (size_t i = 0; i < battery.size(); ++i) {
        BatteryRow row = run_battery_entry(battery[i], seed.derive("entry", i));
        if (!row.pkt) return {false, fmt("%s: brute force found no k", row.name.c_str())};
        if (!row.coding_bound_ok)
            return {false, fmt("%s: k=%d above log2(1/delta) + c*log2 T", row.name.c_str(),
                               row.pkt->k)};
        if (!row.hitting_ok)
            return {false, fmt("%s: hitting fraction %lld/%lld below 2/3", row.name.c_str(),
                               static_cast<long long>(row.hitting_fraction.num()),
                               static_cast<long long>(row.hitting_fraction.den()))};
        if (!row.description_gap_ok)
            return {false, fmt("%s: plain k exceeds pkt k + b*log2 n", row.name.c_str())};
    }

    // Mixture law: frequency of x at least (2/3) * 2^-k0 / (n(n+1)(n+d))
    // within 3 standard errors, k0 the brute-forced complexity under the
    // same step polynomial.
    MixtureParams mix;
    mix.p = PolySpec{16, 4, 1};
    mix.d = constants::kPktProgramMargin;
    mix.n_cap = 64;
    BitString x = BitString::from_string("0000");
    const int n = 4;
    auto pkt = pkt_brute_force(x, mix.p.eval(n), 12, 256, seed.derive("pkt"));
    if (!pkt) return {false, "mixture target has no brute-force complexity"};
    int k0 = pkt->k;
    uint64_t hits = 0;
    for (int i = 0; i < kMixtureDraws; ++i)
        if (m_sampler(mix, seed.derive("mix", static_cast<uint64_t>(i))) == x) ++hits;
    double freq = static_cast<double>(hits) / kMixtureDraws;
    double bound = (2.0 / 3.0) * std::pow(2.0, -k0) /
                   (n * (n + 1.0) * (n + mix.d));
    double se = std::sqrt(std::max(freq, 1e-9) * (1 - freq) / kMixtureDraws);
    if (freq < bound - 3 * se)
        return {false, fmt("mixture freq %.6f below bound %.6f - 3 se (k0=%d)", freq, bound,
                           k0)};
    return {true, fmt("5 battery rows green; mixture freq %.5f >= %.5f (k0=%d, %d draws)",
                      freq, bound, k0, kMixtureDraws)};
}

// 11. Condenser deficit: exact enumeration vs Monte-Carlo, and monotonicity
// in the min-entropy target.
Outcome criterion_condenser() {
    RngSeed root(master_seed() ^ 11);
    double worst_pull = 0;
    for (int inst = 0; inst < kCondenserInstances; ++inst) {
        RngStream s = root.derive(static_cast<uint64_t>(inst)).stream();
        int n = 6 + static_cast<int>(s.next_below(5));  // 6..10
        int d = 2 + static_cast<int>(s.next_below(3));  // 2..4
        int m = 3 + static_cast<int>(s.next_below(3));  // 3..5
        HashGraph g = HashGraph::seeded_family(n, d, m, s.next_u64());
        size_t set_size = 4 + s.next_below(21);  // 4..24
        std::vector<BitString> S = random_distinct(s, set_size, n);
        int t_prime = 1 + static_cast<int>(s.next_below(static_cast<uint64_t>(m)));

        Rational exact = condenser_deficit(g, S, t_prime);

        std::vector<uint64_t> counts(1ull << m, 0);
        RngStream mc = root.derive("mc", static_cast<uint64_t>(inst)).stream();
        for (int i = 0; i < kCondenserSamples; ++i) {
            const BitString& x = S[mc.next_below(S.size())];
            uint64_t rho = mc.next_below(1ull << d);
            ++counts[g.evaluate_packed(x, rho)];
        }
        double ceiling = std::pow(2.0, -t_prime);
        double mc_deficit = 0, variance = 0, near_allowance = 0;
        for (uint64_t c : counts) {
            double p = static_cast<double>(c) / kCondenserSamples;
            double sd = std::sqrt(p * (1 - p) / kCondenserSamples);
            mc_deficit += std::max(0.0, p - ceiling);
            variance += sd * sd;
            // slots whose mass sits within 2 sd of the ceiling contribute a
            // one-sided clipping bias up to about one sd each
            if (std::fabs(p - ceiling) <= 2 * sd) near_allowance += sd;
        }
        double tolerance = 3 * std::sqrt(variance) + near_allowance;
        double pull = std::fabs(mc_deficit - to_double(exact));
        worst_pull = std::max(worst_pull, pull - tolerance);
        if (pull > tolerance)
            return {false, fmt("instance %d: |mc %.5f - exact %.5f| > tolerance %.5f", inst,
                               mc_deficit, to_double(exact), tolerance)};

        Rational prev(0, 1);
        for (int t = 0; t <= m; ++t) {
            Rational cur = condenser_deficit(g, S, t);
            if (cur < prev)
                return {false, fmt("instance %d: deficit decreased from t'=%d to %d", inst,
                                   t - 1, t)};
            prev = cur;
        }
    }
    return {true, fmt("%d instances agree within 3 sigma and are monotone in t'",
                      kCondenserInstances)};
}

struct Criterion {
    int number;
    const char* title;
    std::function<Outcome()> run;
    double time_cap_s;  // 0 = no cap pinned by the criterion
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "codeword length law", criterion_length_law, 60},
        {2, "roundtrip reliability", criterion_roundtrip, 300},
        {3, "suspect-miss arithmetic", criterion_suspect_miss, 0},
        {4, "pruning bound", criterion_prune_bound, 0},
        {5, "invertibility seed enumeration", criterion_seed_enumeration, 120},
        {6, "rKt certificate law", criterion_certificate, 0},
        {7, "probability estimator", criterion_estimator, 0},
        {8, "counting and Kraft audits", criterion_counting, 0},
        {9, "distinguisher gap", criterion_distinguisher, 0},
        {10, "program-enumeration battery", criterion_battery, 0},
        {11, "condenser deficit oracle", criterion_condenser, 0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("unexpected exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (out.pass && c.time_cap_s > 0 && secs > c.time_cap_s) {
            out.pass = false;
            out.detail += fmt(" [exceeded %.0fs cap]", c.time_cap_s);
        }
        std::printf("[%s] criterion %d: %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL",
                    c.number, c.title, out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d of %zu criteria failing\n", failures, criteria.size());
    return failures ? 1 : 0;
}
