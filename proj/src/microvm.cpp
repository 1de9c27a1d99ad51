#include "scdc/microvm.hpp"

#include "scdc/sampler.hpp"

namespace scdc {

namespace {

// Tape abstraction: fixed bit string (zero-extended past its end) or an
// unbounded stream. Only fixed tapes can key the RSS pseudorandom function.
struct Tape {
    const BitString* fixed = nullptr;
    RngStream* stream = nullptr;
    size_t cursor = 0;

    bool read(bool* read_real_bit) {
        if (stream) {
            *read_real_bit = true;
            return stream->next_bit();
        }
        if (cursor < fixed->size()) {
            *read_real_bit = true;
            return fixed->bit(cursor++);
        }
        ++cursor;
        return false;
    }
};

uint64_t prf_seed(const BitString& tape, const BitString& v) {
    uint64_t key = mix64(tape.size() ^ 0x8f1bbcdcbfa53e0aull);
    for (uint64_t w : tape.words()) key = mix64(key ^ w);
    uint64_t vv = v.empty() ? 0 : v.to_u64();
    return mix64(key ^ mix64(vv + (static_cast<uint64_t>(v.size()) << 57)));
}

VmResult run(const BitString& prog, Tape tape, uint64_t budget, const VmContext& ctx) {
    VmResult r;
    size_t pc = 0;
    auto prog_bits_left = [&] { return prog.size() - pc; };
    auto charge = [&](uint64_t cost) {
        if (r.steps + cost > budget) {
            r.out_of_budget = true;
            return false;
        }
        r.steps += cost;
        return true;
    };

    while (pc < prog.size()) {
        if (prog_bits_left() < 2) {
            r.aborted = true;
            return r;
        }
        if (!charge(1)) return r;
        int op = (prog.bit(pc) ? 2 : 0) | (prog.bit(pc + 1) ? 1 : 0);
        pc += 2;
        switch (op) {
            case 0: {  // LIT
                while (pc < prog.size()) {
                    if (!charge(1)) return r;
                    r.output.push_back(prog.bit(pc++));
                }
                r.halted = true;
                return r;
            }
            case 1: {  // CPY
                if (prog_bits_left() < 4) {
                    r.aborted = true;
                    return r;
                }
                uint64_t c = 0;
                for (int i = 0; i < 4; ++i) c = (c << 1) | (prog.bit(pc++) ? 1 : 0);
                for (uint64_t i = 0; i <= c; ++i) {
                    if (!charge(2)) return r;  // read + write
                    bool real = false;
                    bool b = tape.read(&real);
                    if (real) r.read_tape = true;
                    r.output.push_back(b);
                }
                break;
            }
            case 2: {  // RPT
                if (prog_bits_left() < 5) {
                    r.aborted = true;
                    return r;
                }
                bool b = prog.bit(pc++);
                uint64_t c = 0;
                for (int i = 0; i < 4; ++i) c = (c << 1) | (prog.bit(pc++) ? 1 : 0);
                for (uint64_t i = 0; i <= c; ++i) {
                    if (!charge(1)) return r;
                    r.output.push_back(b);
                }
                break;
            }
            case 3: {  // RSS
                if (ctx.sampler == nullptr) {
                    r.aborted = true;
                    return r;
                }
                BitString v = prog.slice(pc, prog.size() - pc);
                pc = prog.size();
                uint64_t z;
                if (v.empty()) {
                    if (!charge(64)) return r;
                    z = 0;
                    for (int i = 0; i < 64; ++i) {
                        bool real = false;
                        z = (z << 1) | (tape.read(&real) ? 1 : 0);
                        if (real) r.read_tape = true;
                    }
                } else {
                    if (tape.stream != nullptr) {
                        r.aborted = true;  // indexed RSS needs a finite tape
                        return r;
                    }
                    if (!charge(64)) return r;
                    z = prf_seed(*tape.fixed, v);
                    r.read_tape = true;
                }
                SampleResult s = run_sampler(*ctx.sampler, ctx.sampler_n, RngSeed(z));
                if (!charge(s.steps)) return r;
                for (size_t i = 0; i < s.output.size(); ++i) {
                    if (!charge(1)) return r;
                    r.output.push_back(s.output.bit(i));
                }
                r.halted = true;
                return r;
            }
        }
    }
    r.halted = true;
    return r;
}

}  // namespace

VmResult run_program(const BitString& program, const BitString& tape, uint64_t budget,
                     const VmContext& ctx) {
    Tape t;
    t.fixed = &tape;
    return run(program, t, budget, ctx);
}

VmResult run_program_stream(const BitString& program, RngStream& tape, uint64_t budget,
                            const VmContext& ctx) {
    Tape t;
    t.stream = &tape;
    return run(program, t, budget, ctx);
}

}  // namespace scdc
