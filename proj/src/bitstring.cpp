#include "scdc/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "scdc/errors.hpp"

namespace scdc {

BitString BitString::from_u64(uint64_t v, int width) {
    if (width < 0 || width > 64) throw DomainError("from_u64: width out of range");
    if (width < 64 && (v >> width) != 0)
        throw DomainError("from_u64: value does not fit the width");
    BitString r;
    r.size_ = static_cast<size_t>(width);
    if (width == 0) return r;
    r.words_.resize(1);
    r.words_[0] = v << (64 - width);
    return r;
}

BitString BitString::from_integer(uint64_t v) {
    int w = v == 0 ? 1 : 64 - std::countl_zero(v);
    return from_u64(v, w);
}

BitString BitString::from_string(std::string_view s) {
    BitString r;
    for (char c : s) {
        if (c == '0')
            r.push_back(false);
        else if (c == '1')
            r.push_back(true);
        else
            throw FormatError("bit string literal: expected '0' or '1'");
    }
    return r;
}

BitString BitString::zeros(size_t n) {
    BitString r;
    r.size_ = n;
    r.words_.assign((n + 63) / 64, 0);
    return r;
}

bool BitString::bit(size_t i) const {
    assert(i < size_);
    return (words_[i >> 6] >> (63 - (i & 63))) & 1;
}

void BitString::set_bit(size_t i, bool v) {
    assert(i < size_);
    uint64_t mask = 1ull << (63 - (i & 63));
    if (v)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

void BitString::push_back(bool v) {
    if ((size_ & 63) == 0) words_.push_back(0);
    ++size_;
    if (v) set_bit(size_ - 1, true);
}

void BitString::append(const BitString& other) {
    // Fast path when this ends on a word boundary.
    if ((size_ & 63) == 0) {
        words_.insert(words_.end(), other.words_.begin(), other.words_.end());
        size_ += other.size_;
        return;
    }
    for (size_t i = 0; i < other.size_; ++i) push_back(other.bit(i));
}

BitString BitString::slice(size_t pos, size_t count) const {
    if (pos + count > size_) throw DomainError("slice: out of range");
    BitString r;
    for (size_t i = 0; i < count; ++i) r.push_back(bit(pos + i));
    return r;
}

uint64_t BitString::to_u64() const {
    if (size_ > 64) throw DomainError("to_u64: string longer than 64 bits");
    if (size_ == 0) return 0;
    return words_[0] >> (64 - size_);
}

uint64_t BitString::mod_u64(uint64_t m) const {
    if (m == 0) throw DomainError("mod_u64: zero modulus");
    if (m == 1) return 0;
    // Horner over 64-bit chunks, most significant first. The final chunk may
    // be short; all earlier chunks are full words.
    auto mulmod = [m](uint64_t a, uint64_t b) -> uint64_t {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    uint64_t pow64 = (static_cast<unsigned __int128>(1) << 64) % m;
    uint64_t res = 0;
    size_t nwords = words_.size();
    for (size_t w = 0; w < nwords; ++w) {
        size_t bits_here = std::min<size_t>(64, size_ - 64 * w);
        uint64_t chunk = words_[w] >> (64 - bits_here);
        uint64_t scale = bits_here == 64
                             ? pow64
                             : static_cast<uint64_t>((static_cast<unsigned __int128>(1) << bits_here) % m);
        res = mulmod(res, scale);
        res = (res + chunk % m) % m;
    }
    return res;
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(size_);
    for (size_t i = 0; i < size_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

bool BitString::operator==(const BitString& o) const {
    return size_ == o.size_ && words_ == o.words_;
}

std::strong_ordering BitString::operator<=>(const BitString& o) const {
    size_t common = std::min(size_, o.size_);
    size_t full_words = common / 64;
    for (size_t w = 0; w < full_words; ++w) {
        if (words_[w] != o.words_[w])
            return words_[w] < o.words_[w] ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
    }
    size_t tail = common & 63;
    if (tail != 0) {
        uint64_t mask = ~0ull << (64 - tail);
        uint64_t a = words_[full_words] & mask;
        uint64_t b = o.words_[full_words] & mask;
        if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return size_ <=> o.size_;
}

size_t BitString::hash() const {
    // splitmix-style fold; good enough for container use.
    uint64_t h = 0x9e3779b97f4a7c15ull ^ (static_cast<uint64_t>(size_) << 1);
    for (uint64_t w : words_) {
        uint64_t z = w + 0x9e3779b97f4a7c15ull + h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        h = z ^ (z >> 31);
    }
    return static_cast<size_t>(h);
}

bool BitReader::read_bit() {
    if (pos_ >= src_->size()) throw FormatError("bit stream exhausted");
    return src_->bit(pos_++);
}

uint64_t BitReader::read_bits(int width) {
    if (width < 0 || width > 64) throw DomainError("read_bits: width out of range");
    if (remaining() < static_cast<size_t>(width)) throw FormatError("bit stream exhausted");
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (src_->bit(pos_++) ? 1 : 0);
    return v;
}

BitString BitReader::read_string(size_t count) {
    if (remaining() < count) throw FormatError("bit stream exhausted");
    BitString r = src_->slice(pos_, count);
    pos_ += count;
    return r;
}

BitString BitReader::rest() const { return src_->slice(pos_, remaining()); }

}  // namespace scdc
