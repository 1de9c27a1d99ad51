#pragma once

#include <string>
#include <vector>

#include "scdc/codec.hpp"
#include "scdc/dyadic.hpp"
#include "scdc/estimator.hpp"
#include "scdc/harness.hpp"
#include "scdc/pktlab.hpp"
#include "scdc/rational.hpp"
#include "scdc/sampler.hpp"

namespace scdc {

// Strict dyadic surface syntax: delta "2^-Q", eps "1/2^J". Anything else is
// a FormatError; there is no float fallback.
DyadicProb parse_delta(const std::string& s);
Rational parse_eps(const std::string& s);
uint64_t parse_seed_hex(const std::string& s);

// Sampler config JSON: {"kind": ..., kind parameters...} or
// {"builtin": name}. micro-vm bytecode travels as hex plus a bit count.
SamplerSpec sampler_from_json_text(const std::string& text);
std::string sampler_to_json_text(const SamplerSpec& spec);
SamplerSpec load_sampler_file(const std::string& path);

struct HarnessConfig {
    SamplerSpec sampler;
    int n = 0;
    int ell = 0;
    double gamma_prime = 1.0;
    int length_c = 3;
    uint64_t step_budget = 0;
    int trials = 0;
    Rational eps{1, 8};
};
HarnessConfig load_harness_config(const std::string& path);

// Battery JSON: {"builtin": true} or {"entries": [{name, sampler, x,
// delta, t}, ...]}.
std::vector<BatteryEntry> load_battery_file(const std::string& path);

// One-line machine-readable records (JSON), each carrying the schema tag.
std::string estimate_record(const Estimate& est, const BitString& x);
std::string certificate_record(const Certificate& cert);
std::string battery_record(const BatteryRow& row);
std::string distinguisher_record(const DistinguisherReport& rep);
std::string manifest_record(const std::string& command,
                            const std::vector<std::pair<std::string, std::string>>& params,
                            uint64_t seed);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace scdc
