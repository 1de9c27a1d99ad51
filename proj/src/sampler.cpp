#include "scdc/sampler.hpp"

#include <algorithm>
#include <map>

#include "scdc/constants.hpp"
#include "scdc/errors.hpp"
#include "scdc/microvm.hpp"
#include "scdc/sd_code.hpp"

namespace scdc {

namespace {

using constants::kStepBase;
using constants::kStepPermRound;

int ceil_log2_u64(uint64_t v) {
    int w = 0;
    while ((1ull << w) < v) ++w;
    return w;
}

// power-of-two denominator check; returns the exponent
int dyadic_exponent(const Rational& p) {
    int64_t den = p.den();
    if (den <= 0 || (den & (den - 1)) != 0) throw DomainError("probability must be dyadic");
    int l = 0;
    while ((int64_t(1) << l) != den) ++l;
    return l;
}

constexpr uint64_t kPrgKeyA = 0x1d0c5cdcb4a7f391ull;
constexpr uint64_t kPrgKeyB = 0x9b7e1544d34cf8a3ull;

uint64_t toy_perm(uint64_t v, int w, uint64_t key) {
    uint64_t mask = ~0ull >> (64 - w);
    v &= mask;
    int s = std::max(1, w / 2);
    for (int r = 0; r < 4; ++r) {
        uint64_t c = (mix64(key + static_cast<uint64_t>(r)) | 1) & mask;
        v = (v * c) & mask;
        v ^= v >> s;
    }
    return v;
}

uint64_t inv_mod_pow2(uint64_t c, uint64_t mask) {
    // Newton iteration; c odd
    uint64_t inv = c;
    for (int i = 0; i < 6; ++i) inv *= 2 - c * inv;
    return inv & mask;
}

uint64_t toy_perm_inv(uint64_t v, int w, uint64_t key) {
    uint64_t mask = ~0ull >> (64 - w);
    v &= mask;
    int s = std::max(1, w / 2);
    for (int r = 3; r >= 0; --r) {
        uint64_t x = v;
        for (int sh = s; sh < w; sh += s) x = v ^ (x >> s);
        uint64_t c = (mix64(key + static_cast<uint64_t>(r)) | 1) & mask;
        v = (x * inv_mod_pow2(c, mask)) & mask;
    }
    return v;
}

void validate(const SamplerSpec& s) {
    if (s.n < 1 || s.n > 4096) throw DomainError("sampler: output length out of range");
    switch (s.kind) {
        case SamplerKind::uniform_subset: {
            if (s.subset.empty()) throw DomainError("uniform-subset: empty support");
            for (const auto& v : s.subset)
                if (static_cast<int>(v.size()) != s.n)
                    throw DomainError("uniform-subset: member length mismatch");
            if (!std::is_sorted(s.subset.begin(), s.subset.end()))
                throw DomainError("uniform-subset: members must be sorted");
            if (std::adjacent_find(s.subset.begin(), s.subset.end()) != s.subset.end())
                throw DomainError("uniform-subset: duplicate member");
            break;
        }
        case SamplerKind::biased_bit: {
            if (!(Rational(0, 1) < s.bias && s.bias < Rational(1, 1)))
                throw DomainError("biased-bit: bias outside (0,1)");
            if (dyadic_exponent(s.bias) > 32) throw DomainError("biased-bit: bias too fine");
            break;
        }
        case SamplerKind::dyadic_table: {
            if (s.table.empty()) throw DomainError("dyadic-table: empty table");
            Rational sum(0, 1);
            for (const auto& e : s.table) {
                if (static_cast<int>(e.value.size()) != s.n)
                    throw DomainError("dyadic-table: entry length mismatch");
                if (!(Rational(0, 1) < e.prob)) throw DomainError("dyadic-table: zero entry");
                if (dyadic_exponent(e.prob) > 62) throw DomainError("dyadic-table: prob too fine");
                sum = sum + e.prob;
            }
            if (sum != Rational(1, 1)) throw DomainError("dyadic-table: probabilities must sum to 1");
            for (size_t i = 0; i + 1 < s.table.size(); ++i)
                if (!(s.table[i].value < s.table[i + 1].value))
                    throw DomainError("dyadic-table: values must be sorted and distinct");
            break;
        }
        case SamplerKind::prg_stretch: {
            if (s.n % 2 != 0 || s.n < 2 || s.n > 126)
                throw DomainError("prg-stretch: length must be even and at most 126");
            break;
        }
        case SamplerKind::micro_vm: {
            if (s.program.empty() || s.program.size() > 4096)
                throw DomainError("micro-vm: program size out of range");
            if (s.step_budget < 1) throw DomainError("micro-vm: zero step budget");
            break;
        }
    }
}

int table_denominator_exp(const std::vector<DyadicEntry>& table) {
    int L = 0;
    for (const auto& e : table) L = std::max(L, dyadic_exponent(e.prob));
    return L;
}

}  // namespace

SamplerSpec SamplerSpec::uniform_subset_of(std::vector<BitString> strings) {
    SamplerSpec s;
    s.kind = SamplerKind::uniform_subset;
    std::sort(strings.begin(), strings.end());
    s.subset = std::move(strings);
    s.n = s.subset.empty() ? 0 : static_cast<int>(s.subset[0].size());
    validate(s);
    return s;
}

SamplerSpec SamplerSpec::biased(int n, Rational p) {
    SamplerSpec s;
    s.kind = SamplerKind::biased_bit;
    s.n = n;
    s.bias = p;
    validate(s);
    return s;
}

SamplerSpec SamplerSpec::dyadic(std::vector<DyadicEntry> entries) {
    SamplerSpec s;
    s.kind = SamplerKind::dyadic_table;
    std::sort(entries.begin(), entries.end(),
              [](const DyadicEntry& a, const DyadicEntry& b) { return a.value < b.value; });
    s.table = std::move(entries);
    s.n = s.table.empty() ? 0 : static_cast<int>(s.table[0].value.size());
    validate(s);
    return s;
}

SamplerSpec SamplerSpec::prg(int n) {
    SamplerSpec s;
    s.kind = SamplerKind::prg_stretch;
    s.n = n;
    validate(s);
    return s;
}

SamplerSpec SamplerSpec::micro(int n, BitString program, uint64_t step_budget) {
    SamplerSpec s;
    s.kind = SamplerKind::micro_vm;
    s.n = n;
    s.program = std::move(program);
    s.step_budget = step_budget;
    validate(s);
    return s;
}

BitString SamplerSpec::code_bits() const {
    BitString blob;
    switch (kind) {
        case SamplerKind::uniform_subset: {
            blob.append(sd_encode_integer(subset.size()));
            blob.append(sd_encode_integer(static_cast<uint64_t>(n)));
            for (const auto& v : subset) blob.append(v);
            break;
        }
        case SamplerKind::biased_bit: {
            blob.append(sd_encode_integer(static_cast<uint64_t>(n)));
            blob.append(sd_encode_integer(static_cast<uint64_t>(bias.num())));
            blob.append(sd_encode_integer(static_cast<uint64_t>(dyadic_exponent(bias))));
            break;
        }
        case SamplerKind::dyadic_table: {
            int L = table_denominator_exp(table);
            blob.append(sd_encode_integer(table.size()));
            blob.append(sd_encode_integer(static_cast<uint64_t>(n)));
            blob.append(sd_encode_integer(static_cast<uint64_t>(L)));
            for (const auto& e : table) {
                blob.append(e.value);
                uint64_t num = static_cast<uint64_t>(e.prob.num())
                               << (L - dyadic_exponent(e.prob));
                blob.append(sd_encode_integer(num));
            }
            break;
        }
        case SamplerKind::prg_stretch: {
            blob.append(sd_encode_integer(static_cast<uint64_t>(n)));
            break;
        }
        case SamplerKind::micro_vm: {
            blob.append(sd_encode_integer(static_cast<uint64_t>(n)));
            blob.append(sd_encode(program));
            blob.append(sd_encode_integer(step_budget));
            break;
        }
    }
    BitString out = sd_encode(BitString::from_u64(static_cast<uint64_t>(kind), 3));
    out.append(sd_encode(blob));
    return out;
}

SamplerSpec SamplerSpec::from_code_bits(const BitString& bits) {
    BitReader r(bits);
    BitString tag = sd_decode(r);
    if (tag.size() != 3) throw FormatError("sampler code: bad kind tag");
    uint64_t kind_v = tag.to_u64();
    if (kind_v > 4) throw FormatError("sampler code: unknown kind");
    BitString blob = sd_decode(r);
    if (r.remaining() != 0) throw FormatError("sampler code: trailing bits");
    BitReader b(blob);

    SamplerSpec s;
    s.kind = static_cast<SamplerKind>(kind_v);
    switch (s.kind) {
        case SamplerKind::uniform_subset: {
            uint64_t count = sd_decode_integer(b);
            uint64_t n = sd_decode_integer(b);
            if (count == 0 || count > (1u << 20) || n == 0 || n > 4096)
                throw FormatError("sampler code: bad subset shape");
            for (uint64_t i = 0; i < count; ++i)
                s.subset.push_back(b.read_string(static_cast<size_t>(n)));
            s.n = static_cast<int>(n);
            break;
        }
        case SamplerKind::biased_bit: {
            s.n = static_cast<int>(sd_decode_integer(b));
            uint64_t num = sd_decode_integer(b);
            uint64_t l = sd_decode_integer(b);
            if (l > 32 || num == 0) throw FormatError("sampler code: bad bias");
            s.bias = Rational(static_cast<int64_t>(num), int64_t(1) << l);
            break;
        }
        case SamplerKind::dyadic_table: {
            uint64_t count = sd_decode_integer(b);
            uint64_t n = sd_decode_integer(b);
            uint64_t L = sd_decode_integer(b);
            if (count == 0 || count > (1u << 20) || L > 62)
                throw FormatError("sampler code: bad table shape");
            for (uint64_t i = 0; i < count; ++i) {
                DyadicEntry e;
                e.value = b.read_string(static_cast<size_t>(n));
                uint64_t num = sd_decode_integer(b);
                if (num == 0) throw FormatError("sampler code: zero table entry");
                e.prob = Rational(static_cast<int64_t>(num), int64_t(1) << L);
                s.table.push_back(std::move(e));
            }
            s.n = static_cast<int>(n);
            break;
        }
        case SamplerKind::prg_stretch: {
            s.n = static_cast<int>(sd_decode_integer(b));
            break;
        }
        case SamplerKind::micro_vm: {
            s.n = static_cast<int>(sd_decode_integer(b));
            s.program = sd_decode(b);
            s.step_budget = sd_decode_integer(b);
            break;
        }
    }
    if (b.remaining() != 0) throw FormatError("sampler code: trailing parameter bits");
    validate(s);
    return s;
}

uint64_t SamplerSpec::declared_steps() const {
    switch (kind) {
        case SamplerKind::uniform_subset:
            return kStepBase + ceil_log2_u64(subset.size()) + static_cast<uint64_t>(n);
        case SamplerKind::biased_bit:
            return kStepBase + static_cast<uint64_t>(n) * (dyadic_exponent(bias) + 1);
        case SamplerKind::dyadic_table:
            return kStepBase + table_denominator_exp(table) + table.size() +
                   static_cast<uint64_t>(n);
        case SamplerKind::prg_stretch:
            return kStepBase + static_cast<uint64_t>(n) / 2 +
                   kStepPermRound * static_cast<uint64_t>(n);
        case SamplerKind::micro_vm:
            return kStepBase + step_budget;
    }
    return kStepBase;
}

std::string SamplerSpec::kind_name() const {
    switch (kind) {
        case SamplerKind::uniform_subset: return "uniform-subset";
        case SamplerKind::biased_bit: return "biased-bit";
        case SamplerKind::dyadic_table: return "dyadic-table";
        case SamplerKind::prg_stretch: return "prg-stretch";
        case SamplerKind::micro_vm: return "micro-vm";
    }
    return "?";
}

BitString prg_expand(uint64_t z, int n) {
    int w = n / 2;
    BitString out = BitString::from_u64(toy_perm(z, w, kPrgKeyA), w);
    out.append(BitString::from_u64(toy_perm(z, w, kPrgKeyB), w));
    return out;
}

std::optional<uint64_t> prg_seed_of(const BitString& y) {
    if (y.size() % 2 != 0 || y.empty()) return std::nullopt;
    int w = static_cast<int>(y.size()) / 2;
    uint64_t hi = y.slice(0, w).to_u64();
    uint64_t lo = y.slice(w, w).to_u64();
    uint64_t z = toy_perm_inv(hi, w, kPrgKeyA);
    if (toy_perm(z, w, kPrgKeyB) != lo) return std::nullopt;
    return z;
}

SampleResult run_sampler(const SamplerSpec& spec, int n, RngSeed rng) {
    validate(spec);
    if (n != spec.n) throw DomainError("run_sampler: length mismatch with declared n");
    RngStream s = rng.stream();
    SampleResult res;
    switch (spec.kind) {
        case SamplerKind::uniform_subset: {
            res.output = spec.subset[s.next_below(spec.subset.size())];
            break;
        }
        case SamplerKind::biased_bit: {
            int l = dyadic_exponent(spec.bias);
            uint64_t a = static_cast<uint64_t>(spec.bias.num());
            BitString out;
            for (int i = 0; i < n; ++i) out.push_back(s.next_below(1ull << l) < a);
            res.output = std::move(out);
            break;
        }
        case SamplerKind::dyadic_table: {
            int L = table_denominator_exp(spec.table);
            uint64_t u = s.next_below(1ull << L);
            uint64_t acc = 0;
            for (const auto& e : spec.table) {
                acc += static_cast<uint64_t>(e.prob.num()) << (L - dyadic_exponent(e.prob));
                if (u < acc) {
                    res.output = e.value;
                    break;
                }
            }
            break;
        }
        case SamplerKind::prg_stretch: {
            uint64_t z = s.next_below(1ull << (n / 2));
            res.output = prg_expand(z, n);
            break;
        }
        case SamplerKind::micro_vm: {
            VmResult vm = run_program_stream(spec.program, s, spec.step_budget);
            if (vm.out_of_budget) throw BudgetError("micro-vm sampler: step budget exceeded");
            if (vm.aborted || !vm.halted || vm.output.size() != static_cast<size_t>(n))
                throw FormatError("micro-vm sampler: program does not emit the declared length");
            res.output = std::move(vm.output);
            res.steps = kStepBase + vm.steps;
            return res;
        }
    }
    res.steps = spec.declared_steps();
    return res;
}

Rational declared_probability(const SamplerSpec& spec, const BitString& x) {
    switch (spec.kind) {
        case SamplerKind::uniform_subset: {
            bool present = std::binary_search(spec.subset.begin(), spec.subset.end(), x);
            return present ? Rational(1, static_cast<int64_t>(spec.subset.size())) : Rational(0, 1);
        }
        case SamplerKind::biased_bit: {
            if (static_cast<int>(x.size()) != spec.n) return Rational(0, 1);
            Rational p(1, 1);
            Rational one(1, 1);
            for (size_t i = 0; i < x.size(); ++i)
                p = p * (x.bit(i) ? spec.bias : one - spec.bias);
            return p;
        }
        case SamplerKind::dyadic_table: {
            auto it = std::lower_bound(
                spec.table.begin(), spec.table.end(), x,
                [](const DyadicEntry& e, const BitString& v) { return e.value < v; });
            if (it != spec.table.end() && it->value == x) return it->prob;
            return Rational(0, 1);
        }
        case SamplerKind::prg_stretch: {
            if (static_cast<int>(x.size()) != spec.n) return Rational(0, 1);
            if (!prg_seed_of(x)) return Rational(0, 1);
            return Rational::pow2_inv(spec.n / 2);
        }
        case SamplerKind::micro_vm:
            throw DomainError("declared_probability: not enumerable for micro-vm");
    }
    return Rational(0, 1);
}

SuspectsResult build_suspects_steps(const SamplerSpec& spec, int n, uint64_t K, RngSeed rng) {
    if (K == 0) throw DomainError("build_suspects: K must be positive");
    SuspectsResult r;
    r.set.reserve(std::min<uint64_t>(K, 1u << 20));
    for (uint64_t i = 0; i < K; ++i) {
        SampleResult one = run_sampler(spec, n, rng.derive(i));
        r.steps += one.steps;
        r.set.push_back(std::move(one.output));
    }
    std::sort(r.set.begin(), r.set.end());
    r.set.erase(std::unique(r.set.begin(), r.set.end()), r.set.end());
    return r;
}

std::vector<BitString> build_suspects(const SamplerSpec& spec, int n, uint64_t K, RngSeed rng) {
    return build_suspects_steps(spec, n, K, rng).set;
}

const std::vector<std::pair<std::string, SamplerSpec>>& builtin_samplers() {
    static const std::vector<std::pair<std::string, SamplerSpec>> reg = [] {
        std::vector<std::pair<std::string, SamplerSpec>> v;
        v.emplace_back("pair-n4", SamplerSpec::uniform_subset_of(
                                      {BitString::from_string("0000"), BitString::from_string("1111")}));
        {
            std::vector<BitString> eight;
            for (uint64_t i = 0; i < 8; ++i) eight.push_back(BitString::from_u64(i, 8));
            v.emplace_back("uniform8-n8", SamplerSpec::uniform_subset_of(std::move(eight)));
        }
        v.emplace_back("const1-n4",
                       SamplerSpec::uniform_subset_of({BitString::from_string("1111")}));
        v.emplace_back("table3-n2",
                       SamplerSpec::dyadic({{BitString::from_string("00"), Rational(1, 2)},
                                            {BitString::from_string("01"), Rational(1, 4)},
                                            {BitString::from_string("10"), Rational(1, 4)}}));
        v.emplace_back("biased34-n8", SamplerSpec::biased(8, Rational(3, 4)));
        v.emplace_back("prg-n8", SamplerSpec::prg(8));
        v.emplace_back("prg-n16", SamplerSpec::prg(16));
        v.emplace_back("prg-n24", SamplerSpec::prg(24));
        v.emplace_back("vm-zeros-n6",
                       SamplerSpec::micro(6, BitString::from_string("1000101"), 64));
        return v;
    }();
    return reg;
}

SamplerSpec builtin_sampler(std::string_view name) {
    for (const auto& [k, s] : builtin_samplers())
        if (k == name) return s;
    throw DomainError("unknown builtin sampler: " + std::string(name));
}

}  // namespace scdc
