#include "scdc/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <unordered_set>

#include "scdc/codec.hpp"
#include "scdc/errors.hpp"
#include "scdc/sd_code.hpp"

namespace scdc {

CompressorUnderTest make_codec_cut(SamplerSpec spec, Rational eps) {
    CompressorUnderTest cut;
    cut.compress_fn = [eps](const BitString& x, DyadicProb delta, RngSeed rng) {
        CompressResult r = compress(x, delta, eps, rng);
        return CutCompressResult{r.codeword.serialize(), r.steps};
    };
    cut.decompress_fn = [spec = std::move(spec)](const BitString& wire, RngSeed rng) {
        CutDecompressResult out;
        try {
            Codeword cw = Codeword::deserialize(wire);
            DecompressResult d = decompress(spec, cw, rng);
            out.output = d.output;
            out.steps = d.steps;
        } catch (const FormatError&) {
        } catch (const DomainError&) {
        }
        return out;
    };
    return cut;
}

LengthBudget power_length_budget(double gamma_prime, int C, int n) {
    if (gamma_prime < 0 || C < 0 || n < 2) throw DomainError("length budget: bad parameters");
    double fixed = C * std::pow(std::log2(static_cast<double>(n)), C);
    return [gamma_prime, fixed](DyadicProb delta) {
        double v = (1.0 + gamma_prime) * delta.log2_inverse() + fixed;
        return static_cast<size_t>(v);
    };
}

DistinguisherRun run_distinguisher(const CompressorUnderTest& cut, const BitString& y, int ell,
                                   const LengthBudget& budget, uint64_t step_budget, RngSeed rng) {
    if (ell < 0 || static_cast<size_t>(ell) > y.size() / 2)
        throw DomainError("distinguisher: need ell <= |y|/2");

    RngSeed compress_seed = rng.derive("compress");
    RngSeed decompress_seed = rng.derive("decompress");

    DistinguisherRun run;
    for (int q = 0; q <= ell; ++q) {
        DyadicProb delta(q, ell);
        GuessOutcome g;
        g.q = q;
        CutCompressResult c = cut.compress_fn(y, delta, compress_seed);
        g.codeword_bits = c.codeword.size();
        g.length_ok = g.codeword_bits <= budget(delta);
        if (g.length_ok) {
            CutDecompressResult d = cut.decompress_fn(c.codeword, decompress_seed);
            g.decode_steps = d.steps;
            g.recovered = d.output && *d.output == y;
            g.accepted = g.recovered && d.steps <= step_budget;
        }
        run.accepted = run.accepted || g.accepted;
        run.guesses.push_back(g);
    }
    return run;
}

int harness_thread_count() {
    const char* env = std::getenv("SCDC_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    if (v < 1) return 1;
    return v > 64 ? 64 : v;
}

DistinguisherReport distinguisher_report(const CompressorUnderTest& cut,
                                         const SamplerSpec& structured, int n, int ell,
                                         const LengthBudget& budget, uint64_t step_budget,
                                         int trials, RngSeed rng) {
    if (trials < 1) throw DomainError("distinguisher report: need trials");
    DistinguisherReport rep;
    rep.trials = trials;
    rep.ell = ell;
    rep.per_guess.assign(static_cast<size_t>(ell) + 1, {0, 0});

    // side 0 structured, side 1 uniform; flat [side][trial][q] accept grid
    std::vector<uint8_t> accepted(2ull * trials, 0);
    std::vector<uint8_t> guess_accepted(2ull * trials * (ell + 1), 0);

    auto worker = [&](int side, int begin, int end) {
        for (int i = begin; i < end; ++i) {
            RngSeed trial_seed =
                rng.derive(side == 0 ? "structured" : "uniform", static_cast<uint64_t>(i));
            BitString y = side == 0
                              ? run_sampler(structured, n, trial_seed.derive("y")).output
                              : trial_seed.derive("y").stream().next_bits(static_cast<size_t>(n));
            DistinguisherRun run =
                run_distinguisher(cut, y, ell, budget, step_budget, trial_seed.derive("run"));
            accepted[static_cast<size_t>(side) * trials + i] = run.accepted ? 1 : 0;
            for (int q = 0; q <= ell; ++q)
                guess_accepted[(static_cast<size_t>(side) * trials + i) * (ell + 1) + q] =
                    run.guesses[q].accepted ? 1 : 0;
        }
    };

    int threads = cut.serial ? 1 : harness_thread_count();
    for (int side = 0; side < 2; ++side) {
        if (threads == 1) {
            worker(side, 0, trials);
        } else {
            std::vector<std::thread> pool;
            int chunk = (trials + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                int begin = t * chunk;
                int end = std::min(trials, begin + chunk);
                if (begin < end) pool.emplace_back(worker, side, begin, end);
            }
            for (auto& th : pool) th.join();
        }
    }

    for (int side = 0; side < 2; ++side)
        for (int i = 0; i < trials; ++i) {
            uint64_t& acc = side == 0 ? rep.structured_accepts : rep.uniform_accepts;
            acc += accepted[static_cast<size_t>(side) * trials + i];
            for (int q = 0; q <= ell; ++q)
                rep.per_guess[q][side] +=
                    guess_accepted[(static_cast<size_t>(side) * trials + i) * (ell + 1) + q];
        }

    rep.accept_structured = Rational(static_cast<int64_t>(rep.structured_accepts), trials);
    rep.accept_uniform = Rational(static_cast<int64_t>(rep.uniform_accepts), trials);
    rep.gap = rep.accept_structured - rep.accept_uniform;
    return rep;
}

Rational counting_bound(int k, int n) {
    if (k < 0 || n < 1) throw DomainError("counting bound: bad parameters");
    if (k + 1 >= n) return Rational(1, 1);
    if (n - k - 1 > 62) throw DomainError("counting bound: beyond exact range");
    return Rational::pow2_inv(n - k - 1);
}

DyadicSum kraft_sum(const std::vector<BitString>& codewords) {
    DyadicSum sum;
    for (const auto& c : codewords) sum.add_pow2_inv(sd_encoded_size(c.size()));
    return sum;
}

bool kraft_audit(const std::vector<BitString>& codewords) {
    return kraft_sum(codewords).compare_one() <= 0;
}

Rational short_mass(const std::vector<BitString>& codewords, const std::vector<Rational>& probs,
                    size_t max_bits) {
    if (codewords.size() != probs.size()) throw DomainError("short_mass: lists not aligned");
    Rational mass(0, 1);
    for (size_t i = 0; i < codewords.size(); ++i)
        if (sd_encoded_size(codewords[i].size()) <= max_bits) mass = mass + probs[i];
    return mass;
}

RecoveryAudit recovery_audit(
    const std::function<std::optional<BitString>(const BitString&)>& decode, int k, int n) {
    if (k < 0 || k > 24 || n < 1) throw DomainError("recovery audit: out of range");
    RecoveryAudit audit;
    audit.bound = 2ull << k;
    std::unordered_set<BitString> seen;
    for (int len = 0; len <= k; ++len)
        for (uint64_t v = 0; v < (1ull << len); ++v) {
            ++audit.inputs;
            std::optional<BitString> out = decode(BitString::from_u64(v, len));
            if (out && out->size() == static_cast<size_t>(n)) seen.insert(*out);
        }
    audit.distinct = seen.size();
    audit.ok = audit.distinct <= audit.bound;
    return audit;
}

}  // namespace scdc
