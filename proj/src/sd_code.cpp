#include "scdc/sd_code.hpp"

#include "scdc/errors.hpp"

namespace scdc {

BitString sd_encode(const BitString& payload) {
    BitString len_bits = BitString::from_integer(payload.size());
    BitString out;
    for (size_t i = 0; i < len_bits.size(); ++i) {
        bool b = len_bits.bit(i);
        out.push_back(b);
        out.push_back(b);
    }
    out.push_back(false);
    out.push_back(true);
    out.append(payload);
    return out;
}

size_t sd_encoded_size(size_t payload_size) {
    size_t w = 1;  // binary length of payload_size, with 0 -> "0"
    while ((payload_size >> w) != 0) ++w;
    return payload_size + 2 * w + 2;
}

BitString sd_decode(BitReader& in) {
    BitString len_bits;
    for (;;) {
        bool a = in.read_bit();
        bool b = in.read_bit();
        if (a == b) {
            len_bits.push_back(a);
            continue;
        }
        if (!a && b) break;               // "01" terminator
        throw FormatError("sd_decode: non-doubled pair in length prefix");
    }
    if (len_bits.empty()) throw FormatError("sd_decode: empty length prefix");
    if (len_bits.size() > 1 && !len_bits.bit(0))
        throw FormatError("sd_decode: length prefix has leading zero");
    if (len_bits.size() > 40) throw FormatError("sd_decode: length prefix out of range");
    return in.read_string(len_bits.to_u64());
}

std::pair<BitString, BitString> sd_decode(const BitString& in) {
    BitReader r(in);
    BitString payload = sd_decode(r);
    return {std::move(payload), r.rest()};
}

BitString sd_encode_integer(uint64_t v) { return sd_encode(BitString::from_integer(v)); }

uint64_t sd_decode_integer(BitReader& in) {
    BitString payload = sd_decode(in);
    if (payload.size() > 64) throw FormatError("sd_decode_integer: value out of range");
    if (payload.size() > 1 && !payload.bit(0))
        throw FormatError("sd_decode_integer: leading zero");
    return payload.to_u64();
}

}  // namespace scdc
