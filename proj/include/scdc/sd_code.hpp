#pragma once

#include <utility>

#include "scdc/bitstring.hpp"

namespace scdc {

// Self-delimiting frame: the payload length in binary with every bit doubled,
// the terminator "01", then the payload. "101" frames as "111101" + "101";
// the empty payload as "0001". Framed strings are prefix-free, so frames can
// be concatenated and parsed back without any out-of-band lengths.
BitString sd_encode(const BitString& payload);

// Exact frame length: |p| + 2*max(1, ceil(log2(|p|+1))) + 2.
size_t sd_encoded_size(size_t payload_size);

// Parses one frame from the front of the reader, leaving it positioned on the
// remainder. Throws FormatError on a malformed prefix (a non-doubled bit pair
// before the terminator, or truncation).
BitString sd_decode(BitReader& in);

// Convenience split: frame at the front, rest after it.
std::pair<BitString, BitString> sd_decode(const BitString& in);

// sd_encode of the minimal binary form of v (no leading zeros, 0 -> "0").
BitString sd_encode_integer(uint64_t v);
uint64_t sd_decode_integer(BitReader& in);

}  // namespace scdc
