#pragma once

#include <string>

#include "scdc/errors.hpp"
#include "scdc/rational.hpp"

namespace scdc {

// Probability on the dyadic grid, stored as 2^q / 2^ell. The pair is kept
// rather than the reduced exponent because guess schedules enumerate q at a
// fixed ell. Invariants: 0 <= q <= ell, so 0 < value <= 1.
struct DyadicProb {
    int q = 0;
    int ell = 0;

    DyadicProb() = default;
    DyadicProb(int q_, int ell_) : q(q_), ell(ell_) {
        if (q < 0 || ell < 0 || q > ell) throw DomainError("DyadicProb: need 0 <= q <= ell");
    }

    // 2^-j
    static DyadicProb pow2_inv(int j) { return DyadicProb(0, j); }

    int log2_inverse() const { return ell - q; }  // log2(1/value)
    Rational value() const { return Rational::pow2_inv(log2_inverse()); }
    double to_double() const { return std::pow(0.5, double(log2_inverse())); }

    bool operator==(const DyadicProb& o) const { return log2_inverse() == o.log2_inverse(); }

    std::string to_string() const { return "2^-" + std::to_string(log2_inverse()); }
};

}  // namespace scdc
