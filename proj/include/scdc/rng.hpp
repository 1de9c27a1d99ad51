#pragma once

#include <cstdint>
#include <string_view>

#include "scdc/bitstring.hpp"

namespace scdc {

uint64_t mix64(uint64_t z);  // splitmix64 finalizer (a 64-bit bijection)

class RngStream;

// Immutable seed with labeled splitting. Deriving the same label chain from
// the same root always yields the same stream, independent of call order or
// platform, which is what makes every experiment replayable. Operations take
// an RngSeed by value and derive what they consume; sibling derivations are
// independent streams.
class RngSeed {
  public:
    explicit RngSeed(uint64_t seed) : state_(seed) {}

    RngSeed derive(uint64_t label) const;
    RngSeed derive(std::string_view label) const;
    RngSeed derive(std::string_view label, uint64_t index) const {
        return derive(label).derive(index);
    }

    RngStream stream() const;
    uint64_t raw() const { return state_; }

  private:
    uint64_t state_;
};

// splitmix64 generator over the derived state.
class RngStream {
  public:
    explicit RngStream(uint64_t state) : state_(state) {}

    uint64_t next_u64();
    uint64_t next_below(uint64_t n);  // uniform on [0, n), unbiased
    bool next_bit();
    BitString next_bits(size_t count);
    double next_unit();  // [0, 1), 53-bit resolution

    using result_type = uint64_t;
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~0ull; }
    uint64_t operator()() { return next_u64(); }

  private:
    uint64_t state_;
    uint64_t bit_buf_ = 0;
    int bits_left_ = 0;
};

}  // namespace scdc
