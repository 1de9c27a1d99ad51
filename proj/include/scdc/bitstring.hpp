#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scdc {

// Bit-exact string over {0,1}. Bit 0 is the leftmost (most significant) bit;
// "101" read as an integer is 5. Ordering is lexicographic on the bit
// sequence, so a proper prefix sorts before its extensions. Interpreting a
// BitString as an integer never truncates: modular reductions walk the words,
// whatever the length.
class BitString {
  public:
    BitString() = default;

    // Low `width` bits of v, most significant first. width <= 64.
    static BitString from_u64(uint64_t v, int width);
    // Minimal binary form, no leading zeros; 0 encodes as "0".
    static BitString from_integer(uint64_t v);
    static BitString from_string(std::string_view s);  // '0'/'1' only
    static BitString zeros(size_t n);

    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool bit(size_t i) const;
    void set_bit(size_t i, bool v);

    void push_back(bool v);
    void append(const BitString& other);
    BitString slice(size_t pos, size_t count) const;

    // Value of the whole string as an integer; requires size() <= 64.
    uint64_t to_u64() const;
    // int(x) mod m for any length, m >= 1.
    uint64_t mod_u64(uint64_t m) const;

    std::string to_string() const;

    bool operator==(const BitString& o) const;
    std::strong_ordering operator<=>(const BitString& o) const;

    size_t hash() const;

    const std::vector<uint64_t>& words() const { return words_; }

  private:
    // words_[w] holds bits [64w, 64w+63], bit i at position 63 - (i & 63).
    // Slack bits past size_ stay zero so ==, <=> and hash can work wordwise.
    std::vector<uint64_t> words_;
    size_t size_ = 0;
};

// Cursor for parsing a BitString front to back.
class BitReader {
  public:
    explicit BitReader(const BitString& s) : src_(&s) {}

    size_t remaining() const { return src_->size() - pos_; }
    bool read_bit();
    uint64_t read_bits(int width);        // width <= 64
    BitString read_string(size_t count);
    size_t position() const { return pos_; }
    BitString rest() const;

  private:
    const BitString* src_;
    size_t pos_ = 0;
};

}  // namespace scdc

template <>
struct std::hash<scdc::BitString> {
    size_t operator()(const scdc::BitString& b) const { return b.hash(); }
};
