#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace scdc {

// Exact rational on int64 with 128-bit intermediates. Wide enough for every
// probability and deficit this library manipulates; anything that would not
// reduce back into 64 bits throws instead of silently rounding.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t num, int64_t den) : num_(num), den_(den) { normalize(); }
    static Rational from_int(int64_t v) { return Rational(v, 1); }
    // 1 / 2^j
    static Rational pow2_inv(int j) {
        if (j < 0 || j > 62) throw std::overflow_error("pow2_inv: exponent out of range");
        return Rational(1, int64_t(1) << j);
    }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator+(const Rational& o) const {
        return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return make(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        i128 l = i128(num_) * o.den_, r = i128(o.num_) * den_;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // Least j >= 0 with 2^j >= 1/this. Requires 0 < this <= 1.
    int ceil_log2_inverse() const {
        if (num_ <= 0 || *this > Rational(1, 1))
            throw std::domain_error("ceil_log2_inverse: needs value in (0, 1]");
        int j = 0;
        i128 lhs = num_;
        while (lhs < den_) {
            lhs <<= 1;
            ++j;
        }
        return j;
    }

  private:
    using i128 = __int128;
    int64_t num_;
    int64_t den_;

    static Rational make(i128 n, i128 d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    void assign(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 a = n < 0 ? -n : n;
        i128 g = gcd128(a, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        num_ = static_cast<int64_t>(n);
        den_ = static_cast<int64_t>(d);
    }

    void normalize() { assign(num_, den_); }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }
};

// Exact accumulator for sums of 2^-e with e >= 0, used where the exponents
// overflow any fixed-width rational (Kraft sums over real codeword lengths).
// Kept normalized: every count is 0 or 1, except exponent 0 which may carry
// the surplus once the sum has passed 1.
class DyadicSum {
  public:
    void add_pow2_inv(uint64_t e) {
        ++counts_[e];
        carry(e);
    }

    std::strong_ordering compare_one() const {
        if (counts_.empty()) return std::strong_ordering::less;
        auto first = counts_.begin();
        if (first->first != 0) return std::strong_ordering::less;
        if (first->second > 1) return std::strong_ordering::greater;
        return counts_.size() == 1 ? std::strong_ordering::equal : std::strong_ordering::greater;
    }

    double to_double() const {
        double v = 0;
        for (auto& [e, c] : counts_) v += static_cast<double>(c) * std::pow(0.5, double(e));
        return v;
    }

  private:
    std::map<uint64_t, uint64_t> counts_;  // exponent -> count

    void carry(uint64_t e) {
        while (true) {
            auto it = counts_.find(e);
            if (it == counts_.end() || it->second < 2) break;
            if (e == 0) break;  // sum >= 2 already; nowhere further to carry
            it->second -= 2;
            if (it->second == 0) counts_.erase(it);
            --e;
            ++counts_[e];
        }
    }
};

}  // namespace scdc
