#include "scdc/rng.hpp"

namespace scdc {

uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {
uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}
}  // namespace

RngSeed RngSeed::derive(uint64_t label) const {
    return RngSeed(mix64(state_ ^ mix64(label ^ 0xa5a5a5a5a5a5a5a5ull)));
}

RngSeed RngSeed::derive(std::string_view label) const { return derive(fnv1a(label)); }

RngStream RngSeed::stream() const { return RngStream(state_); }

uint64_t RngStream::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t RngStream::next_below(uint64_t n) {
    if (n == 0) return 0;
    if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
    // rejection keeps the draw exactly uniform
    uint64_t limit = ~0ull - ~0ull % n;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

bool RngStream::next_bit() {
    if (bits_left_ == 0) {
        bit_buf_ = next_u64();
        bits_left_ = 64;
    }
    bool b = bit_buf_ >> 63;
    bit_buf_ <<= 1;
    --bits_left_;
    return b;
}

BitString RngStream::next_bits(size_t count) {
    BitString r;
    for (size_t i = 0; i < count; ++i) r.push_back(next_bit());
    return r;
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace scdc
