#pragma once

#include <memory>
#include <vector>

#include "scdc/bitstring.hpp"
#include "scdc/rational.hpp"

namespace scdc {

enum class GraphKind { seeded_family, identity_seed, identity_input, compose };

// Bipartite graph {0,1}^n x {0,1}^d -> {0,1}^m, viewed as a degree-2^d
// left-regular graph. seeded_family is a keyed hash family derived from
// family_seed; identity_seed ignores x and returns the seed (d == m);
// identity_input ignores the seed and returns x (m == n, injective);
// compose(outer, inner) evaluates inner on the first d_inner seed bits and
// feeds its output to outer. Immutable after construction.
class HashGraph {
  public:
    static HashGraph seeded_family(int n, int d, int m, uint64_t family_seed);
    static HashGraph identity_seed(int n, int d);
    static HashGraph identity_input(int n, int d);
    static HashGraph compose(const HashGraph& outer, const HashGraph& inner);

    GraphKind kind() const { return kind_; }
    int n_bits() const { return n_; }
    int d_bits() const { return d_; }
    int m_bits() const { return m_; }
    uint64_t family_seed() const { return family_seed_; }

    // Right node for (x, seed); seed is the low d bits of the integer.
    // Throws DomainError when |x| != n.
    uint64_t evaluate_packed(const BitString& x, uint64_t seed) const;
    BitString evaluate(const BitString& x, const BitString& seed) const;

  private:
    HashGraph() = default;

    GraphKind kind_ = GraphKind::identity_seed;
    int n_ = 0, d_ = 0, m_ = 0;
    uint64_t family_seed_ = 0;
    std::shared_ptr<const HashGraph> outer_, inner_;
};

struct ConductorParams {
    int d = 0;
    int m = 0;
};

enum class ConductorConstruction { guv, bz, composed };

// Seed and output widths for the named explicit constructions, every log
// rounded up and every hidden constant set to 1. These are parameter
// calculators only; desk-scale graphs are built as seeded families.
//   guv:      d = ceil(lg n) + ceil(lg tMax) + ceil(lg 1/eps) + 1, m = d*(tMax+2)
//   bz:       d = (ceil(lg n) + ceil(lg 1/eps)) * max(1, ceil(lg tMax)), m = tMax + d
//   composed: guv then bz on the guv output, entropy bound tMax + d_guv;
//             below the threshold 2^tMax < log2(n) the seed itself suffices
//             and the params degenerate to d = m = tMax.
// Throws DomainError when tMax > n or a parameter is nonpositive.
ConductorParams conductor_params(ConductorConstruction c, int n, int t_max, Rational eps);

// Exact mass of the output distribution of evaluate(g, U_S, U_seed) above the
// 2^-t_prime ceiling: sum_v max(0, P(v) - 2^-t_prime). Zero iff the source
// S x seeds condenses losslessly to min-entropy t_prime. Enumerates
// |S| * 2^d pairs; throws BudgetError past the enumeration budget.
Rational condenser_deficit(const HashGraph& g, const std::vector<BitString>& S, int t_prime);

}  // namespace scdc
