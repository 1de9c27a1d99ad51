#include "scdc/codec.hpp"

#include <cmath>
#include <fstream>

#include "scdc/constants.hpp"
#include "scdc/errors.hpp"
#include "scdc/sd_code.hpp"

namespace scdc {

namespace {

using namespace constants;

// least k with 2^k >= ceil(ln(1/eps) * 2^Q); the ceiling never moves k
// except across a power of two, where both forms agree
int log2_suspect_count(int Q, const Rational& eps) {
    long double ln_inv = logl(static_cast<long double>(eps.den()) /
                              static_cast<long double>(eps.num()));
    long double v = ldexpl(ln_inv, Q);
    int k = 0;
    while (ldexpl(1.0L, k) < v && k < 127) ++k;
    return k;
}

int ceil_log2_u64(uint64_t v) {
    int w = 0;
    while ((1ull << w) < v) ++w;
    return w;
}

void check_eps(const Rational& eps) {
    if (!(Rational(0, 1) < eps && eps < Rational(1, 1)))
        throw DomainError("codec: eps outside (0,1)");
}

Rational eps_stage(const Rational& eps) { return eps / Rational(3, 1); }

}  // namespace

int Codeword::fingerprint_k() const {
    return std::min(std::max(log2_suspects, 1), n);
}

BitString Codeword::serialize() const {
    BitString out;
    out.push_back(mode == CodewordMode::fingerprint);
    out.append(sd_encode_integer(static_cast<uint64_t>(n)));
    out.append(sd_encode_integer(static_cast<uint64_t>(log2_suspects)));
    if (mode == CodewordMode::trivial) {
        out.append(trivial_body);
    } else {
        out.append(sd_encode_integer(static_cast<uint64_t>(eps.num())));
        out.append(sd_encode_integer(static_cast<uint64_t>(eps.den())));
        out.append(fp.serialize());
    }
    return out;
}

Codeword Codeword::deserialize(const BitString& bits) {
    BitReader r(bits);
    Codeword cw;
    cw.mode = r.read_bit() ? CodewordMode::fingerprint : CodewordMode::trivial;
    uint64_t n = sd_decode_integer(r);
    uint64_t k = sd_decode_integer(r);
    if (n < 1 || n > 4096 || k > 120) throw FormatError("codeword: header out of range");
    cw.n = static_cast<int>(n);
    cw.log2_suspects = static_cast<int>(k);
    if (cw.mode == CodewordMode::trivial) {
        cw.trivial_body = r.read_string(n);
    } else {
        uint64_t num = sd_decode_integer(r);
        uint64_t den = sd_decode_integer(r);
        if (num == 0 || den == 0 || num >= den || den > (1ull << 62))
            throw FormatError("codeword: bad eps field");
        Rational eps(static_cast<int64_t>(num), static_cast<int64_t>(den));
        if (eps.num() != static_cast<int64_t>(num) || eps.den() != static_cast<int64_t>(den))
            throw FormatError("codeword: eps field not in lowest terms");
        cw.eps = eps;
        cw.fp = Fingerprint::deserialize(r, cw.n, cw.fingerprint_k(), eps_stage(eps));
    }
    if (r.remaining() != 0) throw FormatError("codeword: trailing bits");
    return cw;
}

CompressResult compress(const BitString& x, DyadicProb delta, const Rational& eps, RngSeed rng) {
    if (x.empty() || x.size() > 4096) throw DomainError("compress: input length out of range");
    check_eps(eps);

    const int Q = delta.log2_inverse();
    CompressResult res;
    res.codeword.n = static_cast<int>(x.size());
    res.codeword.eps = eps;
    res.codeword.log2_suspects = log2_suspect_count(Q, eps);

    if (Q > static_cast<int>(x.size())) {  // delta < 2^-n: nothing to gain
        res.codeword.mode = CodewordMode::trivial;
        res.codeword.trivial_body = x;
        res.steps = kStepBase + kStepPerBit * x.size();
        return res;
    }

    res.codeword.mode = CodewordMode::fingerprint;
    FingerprintResult fr = fingerprint_steps(x, res.codeword.fingerprint_k(), eps_stage(eps),
                                             rng.derive("fingerprint"));
    res.codeword.fp = fr.fp;
    res.steps = kStepBase + fr.steps;
    return res;
}

DecompressResult decompress(const SamplerSpec& spec, const Codeword& code, RngSeed rng) {
    DecompressResult res;
    res.mode = code.mode;
    if (code.mode == CodewordMode::trivial) {
        res.output = code.trivial_body;
        res.steps = kStepBase + kStepPerBit * code.trivial_body.size();
        return res;
    }
    if (code.log2_suspects > 40) throw BudgetError("decompress: suspect count beyond desk scale");

    SuspectsResult sus = build_suspects_steps(spec, code.n, 1ull << code.log2_suspects,
                                              rng.derive("suspects"));
    InvertResult inv = invert(sus.set, code.fp);
    res.output = inv.value;
    res.prune_degraded = inv.prune_degraded;
    res.steps = kStepBase + sus.steps + inv.steps;
    return res;
}

Certificate certify(const BitString& x, DyadicProb delta, const Rational& eps,
                    const SamplerSpec& spec, RngSeed rng, int trials) {
    if (trials < 1) throw DomainError("certify: need at least one trial");
    CompressResult c = compress(x, delta, eps, rng.derive("compress"));

    Certificate cert;
    cert.codeword = c.codeword;
    cert.t_c = c.steps;
    cert.trials = trials;
    for (int i = 0; i < trials; ++i) {
        DecompressResult d =
            decompress(spec, c.codeword, rng.derive("certify").derive(static_cast<uint64_t>(i)));
        if (d.output && *d.output == x) {
            ++cert.successes;
            cert.t_d = std::max(cert.t_d, d.steps);
        }
    }
    double rate = static_cast<double>(cert.successes) / trials;
    double threshold = 1.0 - 2.0 * std::sqrt(static_cast<double>(eps.num()) / eps.den());
    if (rate < threshold) throw CertifyError("certify: decompression success rate too low", rate);

    BitString wire = c.codeword.serialize();
    cert.representation = sd_encode(wire);
    cert.representation.append(spec.code_bits());
    cert.gamma_rkt = cert.representation.size() + ceil_log2_u64(std::max<uint64_t>(1, cert.t_d));
    cert.gamma_two_sided =
        wire.size() + ceil_log2_u64(std::max<uint64_t>(1, cert.t_c + cert.t_d));
    return cert;
}

std::vector<uint8_t> codeword_file_bytes(const Codeword& cw) {
    BitString bits = cw.serialize();
    std::vector<uint8_t> out = {'S', 'C', 'D', 'C', kCodewordFileVersion};
    uint8_t cur = 0;
    int used = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        cur = static_cast<uint8_t>(cur << 1 | (bits.bit(i) ? 1 : 0));
        if (++used == 8) {
            out.push_back(cur);
            cur = 0;
            used = 0;
        }
    }
    uint8_t pad = used == 0 ? 0 : static_cast<uint8_t>(8 - used);
    if (used != 0) out.push_back(static_cast<uint8_t>(cur << pad));
    out.push_back(pad);
    return out;
}

Codeword codeword_from_file_bytes(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 6 || bytes[0] != 'S' || bytes[1] != 'C' || bytes[2] != 'D' ||
        bytes[3] != 'C')
        throw FormatError("codeword file: bad magic");
    if (bytes[4] != kCodewordFileVersion) throw FormatError("codeword file: unknown version");
    uint8_t pad = bytes.back();
    if (pad > 7) throw FormatError("codeword file: bad padding length");
    size_t payload = bytes.size() - 6;
    size_t nbits = payload * 8;
    if (nbits < pad || (payload == 0 && pad != 0)) throw FormatError("codeword file: truncated");
    nbits -= pad;
    BitString bits;
    for (size_t i = 0; i < nbits; ++i)
        bits.push_back((bytes[5 + i / 8] >> (7 - i % 8)) & 1);
    return Codeword::deserialize(bits);
}

void write_codeword_file(const std::string& path, const Codeword& cw) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + path);
    auto bytes = codeword_file_bytes(cw);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw FormatError("write failed: " + path);
}

Codeword read_codeword_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    return codeword_from_file_bytes(bytes);
}

DyadicProb dyadic_floor(const Rational& r) {
    if (!(Rational(0, 1) < r)) throw DomainError("dyadic_floor: need a positive value");
    if (Rational(1, 1) <= r) return DyadicProb(0, 0);
    return DyadicProb::pow2_inv(r.ceil_log2_inverse());
}

}  // namespace scdc
