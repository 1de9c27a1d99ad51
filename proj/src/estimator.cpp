#include "scdc/estimator.hpp"

#include <cmath>

#include "scdc/errors.hpp"

namespace scdc {

namespace {

int success_target(const Rational& eps) {
    // exact for the dyadic eps used everywhere; long double ceil otherwise
    int64_t den = eps.den();
    if (eps.num() == 1 && (den & (den - 1)) == 0) {
        int j = 0;
        while ((int64_t(1) << j) != den) ++j;
        return 4 * j;
    }
    long double l = log2l(static_cast<long double>(den) / eps.num());
    return static_cast<int>(ceill(4.0L * l));
}

}  // namespace

Estimate estimate_probability(const SamplerSpec& spec, const BitString& x, const Rational& eps,
                              RngSeed rng) {
    if (!(Rational(0, 1) < eps && eps < Rational(1, 2)))
        throw DomainError("estimate: eps outside (0, 1/2)");
    if (x.size() != static_cast<size_t>(spec.n))
        throw DomainError("estimate: target length differs from sampler output length");
    if (spec.n > 48) throw BudgetError("estimate: sampling cap beyond desk scale");

    Estimate est;
    est.s = success_target(eps);
    const uint64_t cap = 2ull * static_cast<uint64_t>(est.s) << spec.n;

    uint64_t successes = 0;
    while (est.calls < cap) {
        SampleResult r = run_sampler(spec, spec.n, rng.derive(est.calls));
        ++est.calls;
        if (r.output == x && ++successes == static_cast<uint64_t>(est.s)) {
            est.p_tilde = Rational(est.s, static_cast<int64_t>(est.calls));
            est.mode = Estimate::Mode::success_count;
            return est;
        }
    }
    est.p_tilde = Rational::pow2_inv(spec.n);
    est.mode = Estimate::Mode::cap_hit;
    return est;
}

}  // namespace scdc
