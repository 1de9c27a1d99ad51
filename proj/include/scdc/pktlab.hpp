#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/dyadic.hpp"
#include "scdc/microvm.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"
#include "scdc/sampler.hpp"

namespace scdc {

struct PktResult {
    int k = 0;
    Rational witness_fraction{0, 1};  // fraction of tapes with a k-bit witness
    uint64_t tapes = 0;
    bool tapes_exhaustive = false;
};

// Least k <= k_max such that at least 2/3 of tapes w of length t admit some
// exactly-k-bit program printing x within t steps. Tapes enumerate
// exhaustively when 2^t <= w_budget, otherwise w_budget sampled tapes.
// Programs that never touch the tape are classified on a single run and
// count for every tape. Empty when no k reaches the threshold.
std::optional<PktResult> pkt_brute_force(const BitString& x, uint64_t t, int k_max,
                                         uint64_t w_budget, RngSeed rng,
                                         const VmContext& ctx = {});

// Least k such that some exactly-k-bit program prints x on the empty tape
// (the machine's plain description complexity). Empty when no program of
// length <= k_max works within the step budget.
std::optional<int> k_toy(const BitString& x, int k_max, uint64_t step_budget,
                         const VmContext& ctx = {});

// Fraction of `trials` random functions H: {0,1}^ell -> {0,1}^T for which
// some v has M(H(v)) = x within T steps. For M printing x on a delta
// fraction of tapes the expectation is 1 - (1-delta)^(2^ell).
Rational hitting_experiment(const BitString& M, const BitString& x, int ell, uint64_t T,
                            int trials, RngSeed rng, const VmContext& ctx = {});

// p(n) = constant + coeff * n^degree
struct PolySpec {
    uint64_t constant = 0;
    uint64_t coeff = 1;
    int degree = 1;
    uint64_t eval(int n) const;
};

// Mixture weight of output length n in the universal sampler: 1/(n(n+1)).
Rational mixture_weight(int n);

struct MixtureParams {
    PolySpec p;     // step polynomial
    int d = 2;      // program-length margin, j uniform in 1..n+d
    int n_cap = 64; // lengths above the cap resample
};

// One draw of the universal mixture: pick n with weight 1/(n(n+1)), then a
// uniform program of j <= n+d bits, run it for p(n) steps on a uniform
// tape of p(n) bits, and return whatever output exists, finished or not.
BitString m_sampler(const MixtureParams& mix, RngSeed rng, const VmContext& ctx = {});

// Pointwise D(x) >= D'(x)/|x|^c over a shared support; tables must list the
// same value sets or the check throws.
bool domination_check(const std::vector<std::pair<BitString, Rational>>& D,
                      const std::vector<std::pair<BitString, Rational>>& D_prime, int c);

struct BatteryEntry {
    std::string name;
    SamplerSpec spec;
    BitString x;
    DyadicProb delta;  // declared sampling probability of x
    uint64_t t = 0;    // time bound handed to the brute force
};

struct BatteryRow {
    std::string name;
    int n = 0;
    int log2_inv_delta = 0;
    std::optional<PktResult> pkt;
    std::optional<int> plain_k;
    Rational hitting_fraction{0, 1};
    int ell = 0;
    bool coding_bound_ok = false;   // pkt.k <= log2(1/delta) + c*log2(t)
    bool hitting_ok = false;        // hitting_fraction >= 2/3
    bool description_gap_ok = false;  // plain_k <= pkt.k + b*ceil(log2 n)
};

std::vector<BatteryEntry> builtin_battery();
BatteryRow run_battery_entry(const BatteryEntry& entry, RngSeed rng);

}  // namespace scdc
