#pragma once

#include <cstdint>

#include "scdc/bitstring.hpp"
#include "scdc/rational.hpp"
#include "scdc/rng.hpp"
#include "scdc/sampler.hpp"

namespace scdc {

struct Estimate {
    enum class Mode { success_count, cap_hit };

    Rational p_tilde{1, 1};
    uint64_t calls = 0;
    Mode mode = Mode::success_count;
    int s = 0;  // success target, ceil(4 * log2(1/eps))
};

// Sequential sampling until s outputs equal x (p_tilde = s/T) or until
// 2*s*2^n rounds pass without that (p_tilde = 2^-n). The cap is
// unconditional; requires 0 < eps < 1/2 and n small enough for the cap to
// be representable.
Estimate estimate_probability(const SamplerSpec& spec, const BitString& x, const Rational& eps,
                              RngSeed rng);

}  // namespace scdc
